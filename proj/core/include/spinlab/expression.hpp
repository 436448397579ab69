#pragma once

// Small arithmetic expression language for graph hypersurfaces:
// numbers, variables x y z, + - * / ^, parentheses and
// sin cos tan exp log sqrt tanh sinh cosh atan.

#include <cmath>
#include <memory>
#include <string>
#include <vector>

#include "spinlab/dual.hpp"
#include "spinlab/errors.hpp"

namespace spinlab {

class Expression {
 public:
  enum class Op { Const, Var, Neg, Add, Sub, Mul, Div, Pow, Call };

  struct Node {
    Op op = Op::Const;
    double value = 0.0;  // Const
    int var = 0;         // Var
    std::string fn;      // Call
    std::vector<int> args;
  };

  /// Throws ConfigError on malformed input.
  static Expression parse(const std::string& text);

  const std::string& text() const { return text_; }

  template <typename S>
  S eval(const S& x, const S& y, const S& z) const {
    return eval_node<S>(root_, x, y, z);
  }

 private:
  template <typename S>
  S eval_node(int id, const S& x, const S& y, const S& z) const {
    using std::atan;
    using std::cos;
    using std::cosh;
    using std::exp;
    using std::log;
    using std::pow;
    using std::sin;
    using std::sinh;
    using std::sqrt;
    using std::tan;
    using std::tanh;
    const Node& n = nodes_[id];
    switch (n.op) {
      case Op::Const: return S(n.value);
      case Op::Var: return n.var == 0 ? x : (n.var == 1 ? y : z);
      case Op::Neg: return -eval_node<S>(n.args[0], x, y, z);
      case Op::Add: return eval_node<S>(n.args[0], x, y, z) + eval_node<S>(n.args[1], x, y, z);
      case Op::Sub: return eval_node<S>(n.args[0], x, y, z) - eval_node<S>(n.args[1], x, y, z);
      case Op::Mul: return eval_node<S>(n.args[0], x, y, z) * eval_node<S>(n.args[1], x, y, z);
      case Op::Div: return eval_node<S>(n.args[0], x, y, z) / eval_node<S>(n.args[1], x, y, z);
      case Op::Pow: {
        S base = eval_node<S>(n.args[0], x, y, z);
        const Node& e = nodes_[n.args[1]];
        if (e.op == Op::Const) {
          double p = e.value;
          if (p == std::floor(p) && std::abs(p) <= 16) {
            S r(1.0);
            for (int i = 0; i < static_cast<int>(std::abs(p)); ++i) r = r * base;
            return p < 0 ? S(1.0 / r) : r;
          }
          return pow(base, p);
        }
        return exp(eval_node<S>(n.args[1], x, y, z) * log(base));
      }
      case Op::Call: {
        S a = eval_node<S>(n.args[0], x, y, z);
        if (n.fn == "sin") return sin(a);
        if (n.fn == "cos") return cos(a);
        if (n.fn == "tan") return tan(a);
        if (n.fn == "exp") return exp(a);
        if (n.fn == "log") return log(a);
        if (n.fn == "sqrt") return sqrt(a);
        if (n.fn == "tanh") return tanh(a);
        if (n.fn == "sinh") return sinh(a);
        if (n.fn == "cosh") return cosh(a);
        return atan(a);
      }
    }
    return S(0.0);
  }

  friend class ExpressionParser;
  std::string text_;
  std::vector<Node> nodes_;
  int root_ = 0;
};

}  // namespace spinlab
