#pragma once

// Infix expression front end.
//
// Grammar (highest precedence first):
//   primary  := NUMBER | IDENT | FUNC '(' expr ')' | '(' expr ')'
//   power    := primary ('^' exponent)?          right-associative
//   exponent := '-' exponent | power
//   unary    := '-' unary | power
//   term     := unary (('*' | '/') unary | <juxtaposed> unary)*
//   expr     := term (('+' | '-') term)*
//
// Juxtaposition ("2xy", "sin(x)cos(x)", "(a)(b)") is multiplication. A
// subtraction `a-b` becomes Add(a, Neg(b)); chains of + and * are flattened.

#include <compare>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

namespace mexcode {

enum class TokenKind {
  Number,
  Ident,
  Func,
  Plus,
  Minus,
  Star,
  Slash,
  Caret,
  LParen,
  RParen,
};

std::string_view to_string(TokenKind kind);

struct Token {
  TokenKind kind;
  std::string text;
  // Code-point offset of the first character of `text` in the source.
  std::size_t position = 0;

  bool operator==(const Token&) const = default;
};

// Names recognized as unary functions: sin, cos, tan, log, exp, sqrt.
bool is_function_name(std::string_view name);

// Length in bytes of the identifier starting at `text[0]`, or 0 if none.
// Identifiers are a single ASCII letter, a single Greek letter (UTF-8), or a
// spelled-out lowercase Greek letter name (longest match wins).
std::size_t match_identifier(std::string_view text);

// True for text that matches [0-9]+(\.[0-9]+)?.
bool is_numeral(std::string_view text);

std::vector<Token> tokenize(std::string_view source);

class Ast {
 public:
  enum class Kind { Num, Sym, Neg, Func, Pow, Div, Add, Mul };

  static Ast num(std::string numeral);
  static Ast sym(std::string name);
  static Ast neg(Ast child);
  static Ast func(std::string name, Ast child);
  static Ast pow(Ast base, Ast exponent);
  static Ast div(Ast numerator, Ast denominator);
  // Add and Mul splice same-kind children into themselves, so the result is
  // always flat. A single operand is returned unchanged.
  static Ast add(std::vector<Ast> children);
  static Ast mul(std::vector<Ast> children);
  // Add/Mul node with exactly these operands, no flattening. Used for the
  // binary rewrite, whose output nests same-kind nodes on purpose.
  static Ast nested(Kind kind, std::vector<Ast> children);

  Kind kind() const { return kind_; }
  // Numeral text for Num, name for Sym, lowercase function name for Func.
  const std::string& text() const { return text_; }
  const std::vector<Ast>& children() const { return children_; }
  const Ast& child(std::size_t i) const { return children_.at(i); }

  bool is_leaf() const { return kind_ == Kind::Num || kind_ == Kind::Sym; }
  bool is_nary() const { return kind_ == Kind::Add || kind_ == Kind::Mul; }

  std::size_t node_count() const;

  bool operator==(const Ast&) const = default;

 private:
  Ast(Kind kind, std::string text, std::vector<Ast> children);

  Kind kind_;
  std::string text_;
  std::vector<Ast> children_;
};

Ast parse(const std::vector<Token>& tokens);

inline Ast parse(std::string_view source) { return parse(tokenize(source)); }

// Debug pretty-printer: infix text with explicit operators that parses back to
// an identical Ast.
std::string unparse(const Ast& ast);

// S-expression form, e.g. "(Add (Mul 2 x y) 5)". Used in test diagnostics.
std::string to_sexpr(const Ast& ast);

}  // namespace mexcode
