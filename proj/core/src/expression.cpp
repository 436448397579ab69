#include "spinlab/expression.hpp"

#include <cctype>
#include <cstdlib>
#include <set>

namespace spinlab {

// Recursive descent:
//   expr   := term (('+' | '-') term)*
//   term   := unary (('*' | '/') unary)*
//   unary  := '-' unary | '+' unary | power
//   power  := atom ('^' unary)?
//   atom   := number | var | fn '(' expr ')' | '(' expr ')'
class ExpressionParser {
 public:
  explicit ExpressionParser(const std::string& s) : s_(s) {}

  Expression run() {
    out_.text_ = s_;
    out_.root_ = expr();
    skip();
    if (pos_ != s_.size()) fail("unexpected '" + std::string(1, s_[pos_]) + "'");
    return std::move(out_);
  }

 private:
  using Op = Expression::Op;

  [[noreturn]] void fail(const std::string& what) const {
    throw ConfigError("expression '" + s_ + "' at offset " + std::to_string(pos_) + ": " + what);
  }
  void skip() {
    while (pos_ < s_.size() && std::isspace(static_cast<unsigned char>(s_[pos_]))) ++pos_;
  }
  bool eat(char c) {
    skip();
    if (pos_ < s_.size() && s_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }
  int add(Expression::Node n) {
    out_.nodes_.push_back(std::move(n));
    return static_cast<int>(out_.nodes_.size()) - 1;
  }
  int binary(Op op, int a, int b) {
    Expression::Node n;
    n.op = op;
    n.args = {a, b};
    return add(n);
  }

  int expr() {
    int lhs = term();
    for (;;) {
      if (eat('+')) lhs = binary(Op::Add, lhs, term());
      else if (eat('-')) lhs = binary(Op::Sub, lhs, term());
      else return lhs;
    }
  }
  int term() {
    int lhs = unary();
    for (;;) {
      if (eat('*')) lhs = binary(Op::Mul, lhs, unary());
      else if (eat('/')) lhs = binary(Op::Div, lhs, unary());
      else return lhs;
    }
  }
  int unary() {
    if (eat('-')) {
      Expression::Node n;
      n.op = Op::Neg;
      n.args = {unary()};
      return add(n);
    }
    if (eat('+')) return unary();
    return power();
  }
  int power() {
    int base = atom();
    if (eat('^')) return binary(Op::Pow, base, unary());
    return base;
  }
  int atom() {
    skip();
    if (pos_ >= s_.size()) fail("unexpected end of input");
    if (eat('(')) {
      int e = expr();
      if (!eat(')')) fail("missing ')'");
      return e;
    }
    char c = s_[pos_];
    if (std::isdigit(static_cast<unsigned char>(c)) || c == '.') {
      const char* begin = s_.c_str() + pos_;
      char* end = nullptr;
      double v = std::strtod(begin, &end);
      if (end == begin) fail("bad number");
      pos_ += static_cast<size_t>(end - begin);
      Expression::Node n;
      n.value = v;
      return add(n);
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      size_t start = pos_;
      while (pos_ < s_.size() && std::isalnum(static_cast<unsigned char>(s_[pos_]))) ++pos_;
      std::string id = s_.substr(start, pos_ - start);
      if (id == "x" || id == "y" || id == "z") {
        Expression::Node n;
        n.op = Op::Var;
        n.var = id[0] - 'x';
        return add(n);
      }
      if (id == "pi") {
        Expression::Node n;
        n.value = 3.14159265358979323846;
        return add(n);
      }
      static const std::set<std::string> fns = {"sin",  "cos",  "tan",  "exp",  "log",
                                                "sqrt", "tanh", "sinh", "cosh", "atan"};
      if (!fns.count(id)) fail("unknown identifier '" + id + "'");
      if (!eat('(')) fail("expected '(' after " + id);
      Expression::Node n;
      n.op = Op::Call;
      n.fn = id;
      n.args = {expr()};
      if (!eat(')')) fail("missing ')'");
      return add(n);
    }
    fail("unexpected '" + std::string(1, c) + "'");
  }

  std::string s_;
  size_t pos_ = 0;
  Expression out_;
};

Expression Expression::parse(const std::string& text) { return ExpressionParser(text).run(); }

}  // namespace spinlab
