#include "mexcode/graph.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace mexcode {

std::string_view op_name(OpKind op) {
  switch (op) {
    case OpKind::Pow: return "Pow";
    case OpKind::Mul: return "Mul";
    case OpKind::Div: return "Div";
    case OpKind::Add: return "Add";
    case OpKind::Neg: return "Neg";
    case OpKind::Sin: return "Sin";
    case OpKind::Cos: return "Cos";
    case OpKind::Tan: return "Tan";
    case OpKind::Log: return "Log";
    case OpKind::Exp: return "Exp";
    case OpKind::Sqrt: return "Sqrt";
  }
  return "?";
}

bool is_commutative(OpKind op) { return op == OpKind::Add || op == OpKind::Mul; }

int op_rank(OpKind op) { return static_cast<int>(op); }

VertexLabel VertexLabel::symbol(std::string name, bool preserved) {
  return VertexLabel{VertexClass::Sym, OpKind::Add, std::move(name), preserved};
}

VertexLabel VertexLabel::number(std::string numeral, bool preserved) {
  return VertexLabel{VertexClass::Num, OpKind::Add, std::move(numeral), preserved};
}

VertexLabel VertexLabel::oper(OpKind op) {
  return VertexLabel{VertexClass::Op, op, {}, false};
}

std::string VertexLabel::emitted() const {
  switch (cls) {
    case VertexClass::Op: return std::string(op_name(op));
    case VertexClass::Sym: return preserved ? "Sym:" + detail : "Sym";
    case VertexClass::Num: return preserved ? "Num:" + detail : "Num";
  }
  return {};
}

std::vector<Edge> ExpressionGraph::edges() const {
  std::vector<Edge> out;
  for (std::size_t v = 0; v < child_order.size(); ++v) {
    for (std::size_t c : child_order[v]) out.emplace_back(std::minmax(v, c));
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

namespace {

OpKind function_op(const std::string& name) {
  if (name == "sin") return OpKind::Sin;
  if (name == "cos") return OpKind::Cos;
  if (name == "tan") return OpKind::Tan;
  if (name == "log") return OpKind::Log;
  if (name == "exp") return OpKind::Exp;
  if (name == "sqrt") return OpKind::Sqrt;
  throw std::invalid_argument("unknown function '" + name + "'");
}

OpKind operator_of(const Ast& ast) {
  switch (ast.kind()) {
    case Ast::Kind::Neg: return OpKind::Neg;
    case Ast::Kind::Func: return function_op(ast.text());
    case Ast::Kind::Pow: return OpKind::Pow;
    case Ast::Kind::Div: return OpKind::Div;
    case Ast::Kind::Add: return OpKind::Add;
    case Ast::Kind::Mul: return OpKind::Mul;
    default: break;
  }
  throw std::invalid_argument("leaf has no operator");
}

class GraphBuilder {
 public:
  explicit GraphBuilder(const EncoderConfig& config) : config_(config) {}

  ExpressionGraph build(const Ast& ast) {
    graph_.root = add(ast, false);
    return std::move(graph_);
  }

 private:
  std::size_t push(VertexLabel label) {
    graph_.vertices.push_back(std::move(label));
    graph_.child_order.emplace_back();
    return graph_.vertices.size() - 1;
  }

  std::size_t add(const Ast& ast, bool is_exponent) {
    switch (ast.kind()) {
      case Ast::Kind::Sym: {
        if (auto it = symbols_.find(ast.text()); it != symbols_.end()) {
          return it->second;
        }
        const bool keep = config_.preserve_symbols.contains(ast.text());
        const std::size_t v = push(VertexLabel::symbol(ast.text(), keep));
        symbols_.emplace(ast.text(), v);
        return v;
      }
      case Ast::Kind::Num: {
        const bool keep =
            config_.preserve_numbers.contains(ast.text()) ||
            (is_exponent && config_.preserve_exponents.contains(ast.text()));
        return push(VertexLabel::number(ast.text(), keep));
      }
      default:
        break;
    }
    const std::size_t v = push(VertexLabel::oper(operator_of(ast)));
    std::vector<std::size_t> children;
    children.reserve(ast.children().size());
    for (std::size_t i = 0; i < ast.children().size(); ++i) {
      const bool exponent_slot = ast.kind() == Ast::Kind::Pow && i == 1;
      children.push_back(add(ast.child(i), exponent_slot));
    }
    graph_.child_order[v] = std::move(children);
    return v;
  }

  const EncoderConfig& config_;
  ExpressionGraph graph_;
  std::map<std::string, std::size_t> symbols_;
};

Ast rebuild(const ExpressionGraph& graph, std::size_t v) {
  const VertexLabel& label = graph.vertices[v];
  if (label.cls == VertexClass::Sym) return Ast::sym(label.detail);
  if (label.cls == VertexClass::Num) return Ast::num(label.detail);
  std::vector<Ast> kids;
  for (std::size_t c : graph.child_order[v]) kids.push_back(rebuild(graph, c));
  switch (label.op) {
    case OpKind::Add: return Ast::nested(Ast::Kind::Add, std::move(kids));
    case OpKind::Mul: return Ast::nested(Ast::Kind::Mul, std::move(kids));
    case OpKind::Pow: return Ast::pow(std::move(kids.at(0)), std::move(kids.at(1)));
    case OpKind::Div: return Ast::div(std::move(kids.at(0)), std::move(kids.at(1)));
    case OpKind::Neg: return Ast::neg(std::move(kids.at(0)));
    case OpKind::Sin: return Ast::func("sin", std::move(kids.at(0)));
    case OpKind::Cos: return Ast::func("cos", std::move(kids.at(0)));
    case OpKind::Tan: return Ast::func("tan", std::move(kids.at(0)));
    case OpKind::Log: return Ast::func("log", std::move(kids.at(0)));
    case OpKind::Exp: return Ast::func("exp", std::move(kids.at(0)));
    case OpKind::Sqrt: return Ast::func("sqrt", std::move(kids.at(0)));
  }
  throw std::logic_error("unreachable");
}

}  // namespace

ExpressionGraph build_graph(const Ast& ast, const EncoderConfig& config) {
  return GraphBuilder(config).build(ast);
}

Ast binarize(const Ast& ast) {
  if (ast.is_leaf()) return ast;
  std::vector<Ast> kids;
  kids.reserve(ast.children().size());
  for (const auto& child : ast.children()) kids.push_back(binarize(child));

  switch (ast.kind()) {
    case Ast::Kind::Add:
    case Ast::Kind::Mul: {
      // Ast::add/mul would re-flatten nested same-kind nodes, so build the
      // binary chain from raw pairs.
      const auto pair = [&](Ast lhs, Ast rhs) {
        std::vector<Ast> operands;
        operands.push_back(std::move(lhs));
        operands.push_back(std::move(rhs));
        return Ast::nested(ast.kind(), std::move(operands));
      };
      const std::size_t n = kids.size();
      Ast acc = pair(std::move(kids[n - 2]), std::move(kids[n - 1]));
      for (std::size_t i = n - 2; i-- > 0;) acc = pair(std::move(acc), std::move(kids[i]));
      return acc;
    }
    case Ast::Kind::Neg: return Ast::neg(std::move(kids[0]));
    case Ast::Kind::Func: return Ast::func(ast.text(), std::move(kids[0]));
    case Ast::Kind::Pow: return Ast::pow(std::move(kids[0]), std::move(kids[1]));
    case Ast::Kind::Div: return Ast::div(std::move(kids[0]), std::move(kids[1]));
    default: break;
  }
  throw std::logic_error("unreachable");
}

Ast to_ast(const ExpressionGraph& graph) { return rebuild(graph, graph.root); }

}  // namespace mexcode
