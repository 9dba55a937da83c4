#include "mexcode/parser.hpp"

#include <algorithm>
#include <array>
#include <span>
#include <stdexcept>
#include <utility>

#include "mexcode/error.hpp"

namespace mexcode {

std::string_view to_string(TokenKind kind) {
  switch (kind) {
    case TokenKind::Number: return "NUMBER";
    case TokenKind::Ident: return "IDENT";
    case TokenKind::Func: return "FUNC";
    case TokenKind::Plus: return "PLUS";
    case TokenKind::Minus: return "MINUS";
    case TokenKind::Star: return "STAR";
    case TokenKind::Slash: return "SLASH";
    case TokenKind::Caret: return "CARET";
    case TokenKind::LParen: return "LPAREN";
    case TokenKind::RParen: return "RPAREN";
  }
  return "?";
}

namespace {

constexpr std::array<std::string_view, 6> kFunctionNames = {
    "sin", "cos", "tan", "log", "exp", "sqrt"};

constexpr std::array<std::string_view, 24> kGreekNames = {
    "alpha", "beta",    "gamma", "delta", "epsilon", "zeta",
    "eta",   "theta",   "iota",  "kappa", "lambda",  "mu",
    "nu",    "xi",      "omicron", "pi",  "rho",     "sigma",
    "tau",   "upsilon", "phi",   "chi",   "psi",     "omega"};

bool is_ascii_letter(char c) {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}

bool is_digit(char c) { return c >= '0' && c <= '9'; }

bool is_space(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

// Greek and Coptic block letters: U+0391..U+03A9 and U+03B1..U+03C9.
bool is_greek_letter(std::string_view text) {
  if (text.size() < 2) return false;
  const auto b0 = static_cast<unsigned char>(text[0]);
  const auto b1 = static_cast<unsigned char>(text[1]);
  const unsigned cp = ((b0 & 0x1Fu) << 6) | (b1 & 0x3Fu);
  if ((b0 & 0xE0u) != 0xC0u || (b1 & 0xC0u) != 0x80u) return false;
  return (cp >= 0x391 && cp <= 0x3A9 && cp != 0x3A2) ||
         (cp >= 0x3B1 && cp <= 0x3C9);
}

std::size_t utf8_length(unsigned char lead) {
  if (lead < 0x80) return 1;
  if ((lead & 0xE0u) == 0xC0u) return 2;
  if ((lead & 0xF0u) == 0xE0u) return 3;
  if ((lead & 0xF8u) == 0xF0u) return 4;
  return 1;
}

std::size_t match_word(std::string_view text,
                       std::span<const std::string_view> words) {
  std::size_t best = 0;
  for (auto word : words) {
    if (word.size() > best && text.starts_with(word)) best = word.size();
  }
  return best;
}

}  // namespace

bool is_function_name(std::string_view name) {
  return std::find(kFunctionNames.begin(), kFunctionNames.end(), name) !=
         kFunctionNames.end();
}

std::size_t match_identifier(std::string_view text) {
  if (text.empty()) return 0;
  if (std::size_t n = match_word(text, kGreekNames); n > 0) return n;
  if (is_ascii_letter(text[0])) return 1;
  if (is_greek_letter(text)) return 2;
  return 0;
}

bool is_numeral(std::string_view text) {
  std::size_t i = 0;
  while (i < text.size() && is_digit(text[i])) ++i;
  if (i == 0) return false;
  if (i == text.size()) return true;
  if (text[i] != '.') return false;
  const std::size_t frac = ++i;
  while (i < text.size() && is_digit(text[i])) ++i;
  return i > frac && i == text.size();
}

std::vector<Token> tokenize(std::string_view source) {
  std::vector<Token> tokens;
  std::size_t i = 0;
  std::size_t cp = 0;  // code-point offset of source[i]

  auto push = [&](TokenKind kind, std::size_t bytes, std::size_t cps) {
    tokens.push_back(Token{kind, std::string(source.substr(i, bytes)), cp});
    i += bytes;
    cp += cps;
  };

  while (i < source.size()) {
    const char c = source[i];
    if (is_space(c)) {
      ++i;
      ++cp;
      continue;
    }
    switch (c) {
      case '+': push(TokenKind::Plus, 1, 1); continue;
      case '-': push(TokenKind::Minus, 1, 1); continue;
      case '*': push(TokenKind::Star, 1, 1); continue;
      case '/': push(TokenKind::Slash, 1, 1); continue;
      case '^': push(TokenKind::Caret, 1, 1); continue;
      case '(': push(TokenKind::LParen, 1, 1); continue;
      case ')': push(TokenKind::RParen, 1, 1); continue;
      default: break;
    }
    if (c == '.') {
      throw Error(ErrorKind::MalformedNumber,
                  "numeral must start with a digit", cp);
    }
    if (is_digit(c)) {
      std::size_t j = i;
      while (j < source.size() && is_digit(source[j])) ++j;
      if (j < source.size() && source[j] == '.') {
        const std::size_t frac = ++j;
        while (j < source.size() && is_digit(source[j])) ++j;
        if (j == frac) {
          throw Error(ErrorKind::MalformedNumber,
                      "missing digits after decimal point", cp);
        }
      }
      push(TokenKind::Number, j - i, j - i);
      continue;
    }
    const std::string_view rest = source.substr(i);
    if (std::size_t n = match_word(rest, kFunctionNames); n > 0) {
      push(TokenKind::Func, n, n);
      continue;
    }
    if (std::size_t n = match_identifier(rest); n > 0) {
      push(TokenKind::Ident, n, is_greek_letter(rest) ? 1 : n);
      continue;
    }
    throw Error(ErrorKind::UnknownCharacter,
                "unexpected character '" +
                    std::string(rest.substr(
                        0, std::min(rest.size(),
                                    utf8_length(static_cast<unsigned char>(c))))) +
                    "'",
                cp);
  }
  if (tokens.empty()) {
    throw Error(ErrorKind::EmptyExpression, "expression is empty", 0);
  }
  return tokens;
}

// ---------------------------------------------------------------------------
// Ast

Ast::Ast(Kind kind, std::string text, std::vector<Ast> children)
    : kind_(kind), text_(std::move(text)), children_(std::move(children)) {}

Ast Ast::num(std::string numeral) { return Ast(Kind::Num, std::move(numeral), {}); }

Ast Ast::sym(std::string name) { return Ast(Kind::Sym, std::move(name), {}); }

Ast Ast::neg(Ast child) { return Ast(Kind::Neg, "", {std::move(child)}); }

Ast Ast::func(std::string name, Ast child) {
  return Ast(Kind::Func, std::move(name), {std::move(child)});
}

Ast Ast::pow(Ast base, Ast exponent) {
  return Ast(Kind::Pow, "", {std::move(base), std::move(exponent)});
}

Ast Ast::div(Ast numerator, Ast denominator) {
  return Ast(Kind::Div, "", {std::move(numerator), std::move(denominator)});
}

namespace {

Ast make_nary(Ast::Kind kind, std::vector<Ast> children,
              Ast (*build)(Ast::Kind, std::vector<Ast>)) {
  if (children.empty()) throw std::invalid_argument("n-ary node needs operands");
  if (children.size() == 1) return std::move(children.front());
  std::vector<Ast> flat;
  flat.reserve(children.size());
  for (auto& child : children) {
    if (child.kind() == kind) {
      for (const auto& grandchild : child.children()) flat.push_back(grandchild);
    } else {
      flat.push_back(std::move(child));
    }
  }
  return build(kind, std::move(flat));
}

}  // namespace

Ast Ast::add(std::vector<Ast> children) {
  return make_nary(Kind::Add, std::move(children), [](Kind k, std::vector<Ast> c) {
    return Ast(k, "", std::move(c));
  });
}

Ast Ast::mul(std::vector<Ast> children) {
  return make_nary(Kind::Mul, std::move(children), [](Kind k, std::vector<Ast> c) {
    return Ast(k, "", std::move(c));
  });
}

Ast Ast::nested(Kind kind, std::vector<Ast> children) {
  if ((kind != Kind::Add && kind != Kind::Mul) || children.size() < 2) {
    throw std::invalid_argument("nested() builds Add/Mul with 2+ operands");
  }
  return Ast(kind, "", std::move(children));
}

std::size_t Ast::node_count() const {
  std::size_t n = 1;
  for (const auto& child : children_) n += child.node_count();
  return n;
}

// ---------------------------------------------------------------------------
// Parser

namespace {

std::size_t code_points(std::string_view text) {
  std::size_t n = 0;
  for (char c : text) {
    if ((static_cast<unsigned char>(c) & 0xC0u) != 0x80u) ++n;
  }
  return n;
}

class Parser {
 public:
  explicit Parser(const std::vector<Token>& tokens) : tokens_(tokens) {}

  Ast parse_all() {
    if (tokens_.empty()) {
      throw Error(ErrorKind::EmptyExpression, "expression is empty", 0);
    }
    Ast result = expr();
    if (pos_ < tokens_.size()) {
      const Token& t = tokens_[pos_];
      if (t.kind == TokenKind::RParen) {
        throw Error(ErrorKind::UnbalancedParens, "unmatched ')'", t.position);
      }
      throw Error(ErrorKind::UnexpectedToken,
                  "unexpected " + std::string(to_string(t.kind)) + " '" +
                      t.text + "'",
                  t.position);
    }
    return result;
  }

 private:
  const Token* peek() const {
    return pos_ < tokens_.size() ? &tokens_[pos_] : nullptr;
  }

  bool at(TokenKind kind) const {
    const Token* t = peek();
    return t != nullptr && t->kind == kind;
  }

  std::size_t end_position() const {
    const Token& last = tokens_.back();
    return last.position + code_points(last.text);
  }

  [[noreturn]] void unexpected() const {
    const Token* t = peek();
    if (t == nullptr) {
      throw Error(ErrorKind::UnexpectedToken, "unexpected end of expression",
                  end_position());
    }
    throw Error(ErrorKind::UnexpectedToken,
                "unexpected " + std::string(to_string(t->kind)) + " '" +
                    t->text + "'",
                t->position);
  }

  void expect_close(std::size_t open_position) {
    if (at(TokenKind::RParen)) {
      ++pos_;
      return;
    }
    if (peek() == nullptr) {
      throw Error(ErrorKind::UnbalancedParens, "'(' is never closed",
                  open_position);
    }
    unexpected();
  }

  bool starts_operand() const {
    const Token* t = peek();
    if (t == nullptr) return false;
    switch (t->kind) {
      case TokenKind::Number:
      case TokenKind::Ident:
      case TokenKind::Func:
      case TokenKind::LParen:
        return true;
      default:
        return false;
    }
  }

  Ast expr() {
    std::vector<Ast> terms;
    terms.push_back(term());
    while (true) {
      if (at(TokenKind::Plus)) {
        ++pos_;
        terms.push_back(term());
      } else if (at(TokenKind::Minus)) {
        ++pos_;
        terms.push_back(Ast::neg(term()));
      } else {
        break;
      }
    }
    return Ast::add(std::move(terms));
  }

  Ast term() {
    std::vector<Ast> factors;
    factors.push_back(unary());
    while (true) {
      if (at(TokenKind::Star)) {
        ++pos_;
        factors.push_back(unary());
      } else if (at(TokenKind::Slash)) {
        ++pos_;
        Ast denominator = unary();
        Ast numerator = Ast::mul(std::move(factors));
        factors.clear();
        factors.push_back(Ast::div(std::move(numerator), std::move(denominator)));
      } else if (starts_operand()) {
        factors.push_back(power());
      } else {
        break;
      }
    }
    return Ast::mul(std::move(factors));
  }

  Ast unary() {
    if (at(TokenKind::Minus)) {
      ++pos_;
      return Ast::neg(unary());
    }
    return power();
  }

  Ast power() {
    Ast base = primary();
    if (at(TokenKind::Caret)) {
      ++pos_;
      return Ast::pow(std::move(base), exponent());
    }
    return base;
  }

  Ast exponent() {
    if (at(TokenKind::Minus)) {
      ++pos_;
      return Ast::neg(exponent());
    }
    return power();
  }

  Ast primary() {
    const Token* t = peek();
    if (t == nullptr) unexpected();
    switch (t->kind) {
      case TokenKind::Number:
        ++pos_;
        return Ast::num(t->text);
      case TokenKind::Ident:
        ++pos_;
        return Ast::sym(t->text);
      case TokenKind::Func: {
        ++pos_;
        if (!at(TokenKind::LParen)) unexpected();
        const std::size_t open = peek()->position;
        ++pos_;
        Ast argument = expr();
        expect_close(open);
        return Ast::func(t->text, std::move(argument));
      }
      case TokenKind::LParen: {
        ++pos_;
        Ast inner = expr();
        expect_close(t->position);
        return inner;
      }
      default:
        unexpected();
    }
  }

  const std::vector<Token>& tokens_;
  std::size_t pos_ = 0;
};

// Binding strength used by unparse; a child printed below its required level
// gets parentheses.
enum Level { kSum = 1, kProduct = 2, kNegation = 3, kPower = 4, kAtom = 5 };

Level level_of(const Ast& ast) {
  switch (ast.kind()) {
    case Ast::Kind::Add: return kSum;
    case Ast::Kind::Mul:
    case Ast::Kind::Div: return kProduct;
    case Ast::Kind::Neg: return kNegation;
    case Ast::Kind::Pow: return kPower;
    default: return kAtom;
  }
}

void print(const Ast& ast, Level required, std::string& out);

void print_node(const Ast& ast, std::string& out) {
  switch (ast.kind()) {
    case Ast::Kind::Num:
    case Ast::Kind::Sym:
      out += ast.text();
      return;
    case Ast::Kind::Func:
      out += ast.text();
      out += '(';
      print(ast.child(0), kSum, out);
      out += ')';
      return;
    case Ast::Kind::Neg:
      out += '-';
      print(ast.child(0), kNegation, out);
      return;
    case Ast::Kind::Pow:
      print(ast.child(0), kAtom, out);
      out += '^';
      print(ast.child(1), kNegation, out);
      return;
    case Ast::Kind::Div:
      print(ast.child(0), kProduct, out);
      out += '/';
      print(ast.child(1), kNegation, out);
      return;
    case Ast::Kind::Mul: {
      bool first = true;
      for (const auto& child : ast.children()) {
        if (!first) out += '*';
        first = false;
        // "c*a/b" would re-associate as (c*a)/b.
        print(child, child.kind() == Ast::Kind::Div ? kAtom : kNegation, out);
      }
      return;
    }
    case Ast::Kind::Add: {
      bool first = true;
      for (const auto& child : ast.children()) {
        if (!first && child.kind() == Ast::Kind::Neg) {
          out += '-';
          print(child.child(0), kProduct, out);
        } else {
          if (!first) out += '+';
          print(child, kProduct, out);
        }
        first = false;
      }
      return;
    }
  }
}

void print(const Ast& ast, Level required, std::string& out) {
  if (level_of(ast) < required) {
    out += '(';
    print_node(ast, out);
    out += ')';
  } else {
    print_node(ast, out);
  }
}

std::string_view kind_name(Ast::Kind kind) {
  switch (kind) {
    case Ast::Kind::Num: return "Num";
    case Ast::Kind::Sym: return "Sym";
    case Ast::Kind::Neg: return "Neg";
    case Ast::Kind::Func: return "Func";
    case Ast::Kind::Pow: return "Pow";
    case Ast::Kind::Div: return "Div";
    case Ast::Kind::Add: return "Add";
    case Ast::Kind::Mul: return "Mul";
  }
  return "?";
}

void sexpr(const Ast& ast, std::string& out) {
  if (ast.is_leaf()) {
    out += ast.text();
    return;
  }
  out += '(';
  out += ast.kind() == Ast::Kind::Func ? std::string_view(ast.text())
                                       : kind_name(ast.kind());
  for (const auto& child : ast.children()) {
    out += ' ';
    sexpr(child, out);
  }
  out += ')';
}

}  // namespace

Ast parse(const std::vector<Token>& tokens) { return Parser(tokens).parse_all(); }

std::string unparse(const Ast& ast) {
  std::string out;
  print(ast, kSum, out);
  return out;
}

std::string to_sexpr(const Ast& ast) {
  std::string out;
  sexpr(ast, out);
  return out;
}

}  // namespace mexcode
