#include "defekt/expr.hpp"

#include <cctype>

namespace defekt::expr {

ParseError::ParseError(std::size_t offset, std::set<std::string> expected, const std::string& message)
    : Error(message), offset_(offset), expected_(std::move(expected)) {}

std::string to_string(Func f) {
  switch (f) {
    case Func::V: return "v";
    case Func::Inv: return "inv";
    case Func::Frob: return "frob";
    case Func::Proot: return "proot";
    case Func::Neg: return "neg";
  }
  return "?";
}

Node number(Rational q) {
  Node n;
  n.kind = Kind::Number;
  n.value = std::move(q);
  return n;
}

Node t_power(Rational q) {
  Node n;
  n.kind = Kind::TPower;
  n.value = std::move(q);
  return n;
}

Node p_power(Rational q) {
  Node n;
  n.kind = Kind::PPower;
  n.value = std::move(q);
  return n;
}

Node var() {
  Node n;
  n.kind = Kind::Var;
  return n;
}

Node neg(Node a) {
  Node n;
  n.kind = Kind::Neg;
  n.children.push_back(std::move(a));
  return n;
}

Node call(Func f, Node a) {
  Node n;
  n.kind = Kind::Call;
  n.func = f;
  n.children.push_back(std::move(a));
  return n;
}

Node binary(Kind k, Node a, Node b) {
  Node n;
  n.kind = k;
  n.children.push_back(std::move(a));
  n.children.push_back(std::move(b));
  return n;
}

Node power(Node base, unsigned long e) {
  Node n;
  n.kind = Kind::Pow;
  n.exponent = e;
  n.children.push_back(std::move(base));
  return n;
}

namespace {

class Parser {
 public:
  explicit Parser(std::string_view src) : src_(src) {}

  Node parse_all() {
    Node n = parse_expr();
    skip_ws();
    if (pos_ != src_.size()) fail({"'+'", "'-'", "'*'", "'/'", "'^'", "end of input"});
    return n;
  }

 private:
  void skip_ws() {
    while (pos_ < src_.size() && std::isspace(static_cast<unsigned char>(src_[pos_]))) ++pos_;
  }

  bool peek(char c) {
    skip_ws();
    return pos_ < src_.size() && src_[pos_] == c;
  }

  bool accept(char c) {
    if (!peek(c)) return false;
    ++pos_;
    return true;
  }

  void expect(char c) {
    if (!accept(c)) fail({std::string("'") + c + "'"});
  }

  [[noreturn]] void fail(std::set<std::string> expected, const std::string& detail = "") {
    std::string msg = "parse error at offset " + std::to_string(pos_) + ": ";
    if (!detail.empty()) {
      msg += detail;
    } else {
      msg += "expected ";
      bool first = true;
      for (const auto& e : expected) {
        msg += (first ? "" : " or ") + e;
        first = false;
      }
      msg += pos_ < src_.size() ? std::string(", found '") + src_[pos_] + "'" : ", found end of input";
    }
    throw ParseError(pos_, std::move(expected), msg);
  }

  Node parse_expr() {
    Node lhs = accept('-') ? neg(parse_term()) : parse_term();
    for (;;) {
      if (accept('+'))
        lhs = binary(Kind::Add, std::move(lhs), parse_term());
      else if (accept('-'))
        lhs = binary(Kind::Sub, std::move(lhs), parse_term());
      else
        return lhs;
    }
  }

  Node parse_term() {
    Node lhs = parse_factor();
    for (;;) {
      if (accept('*'))
        lhs = binary(Kind::Mul, std::move(lhs), parse_factor());
      else if (accept('/'))
        lhs = binary(Kind::Div, std::move(lhs), parse_factor());
      else
        return lhs;
    }
  }

  Node parse_factor() {
    Node base = parse_atom();
    if (accept('^')) {
      skip_ws();
      std::size_t start = pos_;
      std::string digits = read_digits();
      if (digits.empty()) fail({"unsigned integer exponent"});
      if (digits.size() > 6) {
        pos_ = start;
        fail({"unsigned integer exponent"}, "exponent " + digits + " is too large");
      }
      return power(std::move(base), std::stoul(digits));
    }
    return base;
  }

  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < src_.size() && std::isdigit(static_cast<unsigned char>(src_[pos_]))) ++pos_;
    return std::string(src_.substr(start, pos_ - start));
  }

  // digits ['/' digits]; the slash is consumed only when a digit follows it.
  Rational parse_unsigned_rational() {
    skip_ws();
    std::size_t start = pos_;
    std::string num = read_digits();
    if (num.empty()) fail({"rational literal"});
    if (pos_ + 1 < src_.size() && src_[pos_] == '/' && std::isdigit(static_cast<unsigned char>(src_[pos_ + 1]))) {
      ++pos_;
      std::string den = read_digits();
      if (den.find_first_not_of('0') == std::string::npos) {
        pos_ = start;
        fail({"rational literal"}, "bad rational '" + num + "/" + den + "': zero denominator");
      }
      return Rational(BigInt(num), BigInt(den));
    }
    return Rational(BigInt(num));
  }

  Rational parse_signed_rational() {
    bool negative = false;
    if (accept('-'))
      negative = true;
    else
      accept('+');
    Rational q = parse_unsigned_rational();
    return negative ? -q : q;
  }

  Rational parse_paren_exponent() {
    expect('(');
    Rational q = parse_signed_rational();
    expect(')');
    return q;
  }

  Node parse_atom() {
    skip_ws();
    if (pos_ >= src_.size()) fail(atom_starts());
    char c = src_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c))) return number(parse_unsigned_rational());
    if (c == '(') {
      ++pos_;
      Node inner = parse_expr();
      expect(')');
      return inner;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < src_.size() && std::isalpha(static_cast<unsigned char>(src_[pos_]))) ++pos_;
      std::string word(src_.substr(start, pos_ - start));
      if (word == "t") {
        std::size_t save = pos_;
        if (accept('^')) {
          if (peek('(')) return t_power(parse_paren_exponent());
          pos_ = save;  // "t^n" is a power of the atom t
        }
        return t_power(Rational(1));
      }
      if (word == "p") {
        expect('^');
        return p_power(parse_paren_exponent());
      }
      if (word == "X") return var();
      Func f;
      if (word == "v")
        f = Func::V;
      else if (word == "inv")
        f = Func::Inv;
      else if (word == "frob")
        f = Func::Frob;
      else if (word == "proot")
        f = Func::Proot;
      else if (word == "neg")
        f = Func::Neg;
      else {
        pos_ = start;
        fail(atom_starts(), "unknown identifier '" + word + "'");
      }
      expect('(');
      Node arg = parse_expr();
      expect(')');
      return call(f, std::move(arg));
    }
    fail(atom_starts());
  }

  static std::set<std::string> atom_starts() {
    return {"rational literal", "'t'", "'p'", "'X'", "'('", "function name"};
  }

  std::string_view src_;
  std::size_t pos_ = 0;
};

// Binding strength: sums 1, products 2, powers 3, atoms 4.
int level(const Node& n) {
  switch (n.kind) {
    case Kind::Add:
    case Kind::Sub:
    case Kind::Neg:
      return 1;
    case Kind::Mul:
    case Kind::Div:
      return 2;
    case Kind::Pow:
      return 3;
    default:
      return 4;
  }
}

std::string print_at(const Node& n, int min_level);

std::string print_node(const Node& n) {
  switch (n.kind) {
    case Kind::Number:
      return n.value.str();
    case Kind::TPower:
      return n.value == Rational(1) ? "t" : "t^(" + n.value.str() + ")";
    case Kind::PPower:
      return "p^(" + n.value.str() + ")";
    case Kind::Var:
      return "X";
    case Kind::Neg:
      return "-" + print_at(n.children[0], 2);
    case Kind::Call:
      return to_string(n.func) + "(" + print(n.children[0]) + ")";
    case Kind::Add:
      return print_at(n.children[0], 1) + " + " + print_at(n.children[1], 2);
    case Kind::Sub:
      return print_at(n.children[0], 1) + " - " + print_at(n.children[1], 2);
    case Kind::Mul:
      return print_at(n.children[0], 2) + "*" + print_at(n.children[1], 3);
    case Kind::Div: {
      const Node& rhs = n.children[1];
      std::string r = rhs.kind == Kind::Number && !rhs.value.is_integer() ? "(" + print(rhs) + ")" : print_at(rhs, 3);
      return print_at(n.children[0], 2) + " / " + r;  // spaced, so "2 / 3" is not the literal 2/3
    }
    case Kind::Pow: {
      const Node& base = n.children[0];
      std::string b = base.kind == Kind::Number && !base.value.is_integer() ? "(" + print(base) + ")" : print_at(base, 4);
      return b + "^" + std::to_string(n.exponent);
    }
  }
  return "?";
}

std::string print_at(const Node& n, int min_level) {
  std::string s = print_node(n);
  return level(n) < min_level ? "(" + s + ")" : s;
}

}  // namespace

Node parse(std::string_view src) { return Parser(src).parse_all(); }

std::string print(const Node& n) { return print_at(n, 1); }

}  // namespace defekt::expr
