#pragma once

#include <cstddef>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "defekt/errors.hpp"
#include "defekt/rational.hpp"

namespace defekt::expr {

enum class Kind {
  Number,  // nonnegative rational literal
  TPower,  // t^(q); plain "t" is t^(1)
  PPower,  // p^(q)
  Var,     // X
  Neg,     // leading unary minus
  Call,    // v, inv, frob, proot, neg
  Add,
  Sub,
  Mul,
  Div,
  Pow,  // base ^ unsigned integer
};

enum class Func { V, Inv, Frob, Proot, Neg };

// Abstract syntax tree with value semantics; equality is structural.
struct Node {
  Kind kind = Kind::Number;
  Rational value;     // Number literal, or the exponent of TPower / PPower
  Func func = Func::V;  // Call only
  unsigned long exponent = 0;  // Pow only
  std::vector<Node> children;

  friend bool operator==(const Node&, const Node&) = default;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t offset, std::set<std::string> expected, const std::string& message);
  std::size_t offset() const { return offset_; }
  const std::set<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::set<std::string> expected_;
};

// expr   := ['-'] term (('+' | '-') term)*
// term   := factor (('*' | '/') factor)*
// factor := atom ('^' uint)?
// atom   := rational | 't' ['^' '(' rational ')'] | 'p' '^' '(' rational ')' | 'X'
//         | func '(' expr ')' | '(' expr ')'
// A digit run followed directly by '/' and a digit is one rational literal.
Node parse(std::string_view src);

// Canonical text; parse(print(n)) == n for every tree that parse produces.
std::string print(const Node& n);

std::string to_string(Func f);

Node number(Rational q);
Node t_power(Rational q);
Node p_power(Rational q);
Node var();
Node neg(Node a);
Node call(Func f, Node a);
Node binary(Kind k, Node a, Node b);
Node power(Node base, unsigned long n);

}  // namespace defekt::expr
