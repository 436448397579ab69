#pragma once

// Forward-mode automatic differentiation with a fixed number of directions.
// Dual<T, N> nests: Dual<Dual<double, 3>, 3> carries exact second
// derivatives, one more level carries third derivatives.

#include <array>
#include <cmath>
#include <type_traits>

#include <Eigen/Core>

namespace spinlab::ad {

template <typename T, int N>
struct Dual;

template <typename T>
struct is_dual : std::false_type {};
template <typename T, int N>
struct is_dual<Dual<T, N>> : std::true_type {};
template <typename T>
inline constexpr bool is_dual_v = is_dual<T>::value;

template <typename T, int N>
struct Dual {
  using value_type = T;
  static constexpr int size = N;

  T v{};
  std::array<T, N> d{};

  constexpr Dual() = default;
  constexpr Dual(const T& x) : v(x) {}
  template <typename A>
    requires(std::is_arithmetic_v<A> && !std::is_same_v<T, A>)
  constexpr Dual(A x) : v(T(x)) {}
  constexpr Dual(const T& x, const std::array<T, N>& g) : v(x), d(g) {}

  Dual& operator+=(const Dual& o) {
    v += o.v;
    for (int i = 0; i < N; ++i) d[i] += o.d[i];
    return *this;
  }
  Dual& operator-=(const Dual& o) {
    v -= o.v;
    for (int i = 0; i < N; ++i) d[i] -= o.d[i];
    return *this;
  }
  Dual& operator*=(const Dual& o) {
    for (int i = 0; i < N; ++i) d[i] = d[i] * o.v + v * o.d[i];
    v *= o.v;
    return *this;
  }
  Dual& operator/=(const Dual& o) {
    T inv = T(1.0) / o.v;
    v *= inv;
    for (int i = 0; i < N; ++i) d[i] = (d[i] - v * o.d[i]) * inv;
    return *this;
  }
  Dual& operator*=(double s) {
    v *= s;
    for (auto& x : d) x *= s;
    return *this;
  }
};

// Applies f(x.v) with derivative df at x.v via the chain rule.
template <typename T, int N>
Dual<T, N> chain(const Dual<T, N>& x, const T& f, const T& df) {
  Dual<T, N> r(f);
  for (int i = 0; i < N; ++i) r.d[i] = df * x.d[i];
  return r;
}

template <typename T, int N>
Dual<T, N> operator-(const Dual<T, N>& a) {
  Dual<T, N> r;
  r.v = -a.v;
  for (int i = 0; i < N; ++i) r.d[i] = -a.d[i];
  return r;
}
template <typename T, int N>
Dual<T, N> operator+(const Dual<T, N>& a) {
  return a;
}

template <typename T, int N>
Dual<T, N> operator+(Dual<T, N> a, const Dual<T, N>& b) {
  return a += b;
}
template <typename T, int N>
Dual<T, N> operator-(Dual<T, N> a, const Dual<T, N>& b) {
  return a -= b;
}
template <typename T, int N>
Dual<T, N> operator*(Dual<T, N> a, const Dual<T, N>& b) {
  return a *= b;
}
template <typename T, int N>
Dual<T, N> operator/(Dual<T, N> a, const Dual<T, N>& b) {
  return a /= b;
}

// Mixed arithmetic with plain doubles, at every nesting depth.
template <typename T, int N>
Dual<T, N> operator+(Dual<T, N> a, double b) {
  a.v += b;
  return a;
}
template <typename T, int N>
Dual<T, N> operator+(double b, Dual<T, N> a) {
  a.v += b;
  return a;
}
template <typename T, int N>
Dual<T, N> operator-(Dual<T, N> a, double b) {
  a.v -= b;
  return a;
}
template <typename T, int N>
Dual<T, N> operator-(double b, const Dual<T, N>& a) {
  Dual<T, N> r = -a;
  r.v += b;
  return r;
}
template <typename T, int N>
Dual<T, N> operator*(Dual<T, N> a, double b) {
  return a *= b;
}
template <typename T, int N>
Dual<T, N> operator*(double b, Dual<T, N> a) {
  return a *= b;
}
template <typename T, int N>
Dual<T, N> operator/(Dual<T, N> a, double b) {
  return a *= (1.0 / b);
}
template <typename T, int N>
Dual<T, N> operator/(double b, const Dual<T, N>& a) {
  return Dual<T, N>(T(b)) / a;
}

// Comparisons look at the value only; used for branch selection.
template <typename T, int N>
bool operator<(const Dual<T, N>& a, const Dual<T, N>& b) {
  return a.v < b.v;
}
template <typename T, int N>
bool operator>(const Dual<T, N>& a, const Dual<T, N>& b) {
  return a.v > b.v;
}
template <typename T, int N>
bool operator<=(const Dual<T, N>& a, const Dual<T, N>& b) {
  return a.v <= b.v;
}
template <typename T, int N>
bool operator>=(const Dual<T, N>& a, const Dual<T, N>& b) {
  return a.v >= b.v;
}
template <typename T, int N>
bool operator==(const Dual<T, N>& a, const Dual<T, N>& b) {
  return a.v == b.v;
}
template <typename T, int N>
bool operator!=(const Dual<T, N>& a, const Dual<T, N>& b) {
  return a.v != b.v;
}
template <typename T, int N>
bool operator<(const Dual<T, N>& a, double b) {
  return a.v < b;
}
template <typename T, int N>
bool operator>(const Dual<T, N>& a, double b) {
  return a.v > b;
}

template <typename T, int N>
Dual<T, N> sqrt(const Dual<T, N>& x) {
  using std::sqrt;
  T s = sqrt(x.v);
  return chain(x, s, T(0.5) / s);
}
template <typename T, int N>
Dual<T, N> sin(const Dual<T, N>& x) {
  using std::cos;
  using std::sin;
  return chain(x, sin(x.v), cos(x.v));
}
template <typename T, int N>
Dual<T, N> cos(const Dual<T, N>& x) {
  using std::cos;
  using std::sin;
  return chain(x, cos(x.v), -sin(x.v));
}
template <typename T, int N>
Dual<T, N> tan(const Dual<T, N>& x) {
  using std::tan;
  T t = tan(x.v);
  return chain(x, t, T(1.0) + t * t);
}
template <typename T, int N>
Dual<T, N> exp(const Dual<T, N>& x) {
  using std::exp;
  T e = exp(x.v);
  return chain(x, e, e);
}
template <typename T, int N>
Dual<T, N> log(const Dual<T, N>& x) {
  using std::log;
  return chain(x, log(x.v), T(1.0) / x.v);
}
template <typename T, int N>
Dual<T, N> tanh(const Dual<T, N>& x) {
  using std::tanh;
  T t = tanh(x.v);
  return chain(x, t, T(1.0) - t * t);
}
template <typename T, int N>
Dual<T, N> sinh(const Dual<T, N>& x) {
  using std::cosh;
  using std::sinh;
  return chain(x, sinh(x.v), cosh(x.v));
}
template <typename T, int N>
Dual<T, N> cosh(const Dual<T, N>& x) {
  using std::cosh;
  using std::sinh;
  return chain(x, cosh(x.v), sinh(x.v));
}
template <typename T, int N>
Dual<T, N> atan(const Dual<T, N>& x) {
  using std::atan;
  return chain(x, atan(x.v), T(1.0) / (T(1.0) + x.v * x.v));
}
template <typename T, int N>
Dual<T, N> abs(const Dual<T, N>& x) {
  return x.v < 0.0 ? -x : x;
}
template <typename T, int N>
Dual<T, N> pow(const Dual<T, N>& x, double p) {
  using std::pow;
  return chain(x, pow(x.v, p), p * pow(x.v, p - 1.0));
}
template <typename T, int N>
Dual<T, N> pow(const Dual<T, N>& x, const Dual<T, N>& y) {
  return exp(y * log(x));
}
template <typename T, int N>
bool isfinite(const Dual<T, N>& x) {
  using std::isfinite;
  if (!isfinite(x.v)) return false;
  for (const auto& g : x.d)
    if (!isfinite(g)) return false;
  return true;
}

// Innermost double value.
inline double value_of(double x) { return x; }
template <typename T, int N>
double value_of(const Dual<T, N>& x) {
  return value_of(x.v);
}

// Seeds the N coordinates of a point as independent variables.
template <typename S, int N>
Eigen::Matrix<Dual<S, N>, N, 1> seed(const Eigen::Matrix<S, N, 1>& u) {
  Eigen::Matrix<Dual<S, N>, N, 1> r;
  for (int i = 0; i < N; ++i) {
    r(i).v = u(i);
    r(i).d[i] = S(1.0);
  }
  return r;
}

// Drops one nesting level: value part and k-th directional derivative.
template <typename Derived>
auto val(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const typename Derived::Scalar& x) { return x.v; }).eval();
}
template <typename Derived>
auto der(const Eigen::MatrixBase<Derived>& m, int k) {
  return m.unaryExpr([k](const typename Derived::Scalar& x) { return x.d[k]; }).eval();
}
template <typename Derived>
auto to_double(const Eigen::MatrixBase<Derived>& m) {
  return m.unaryExpr([](const typename Derived::Scalar& x) { return value_of(x); }).eval();
}

using D1 = Dual<double, 3>;
using D2 = Dual<D1, 3>;
using D3 = Dual<D2, 3>;

}  // namespace spinlab::ad

namespace Eigen {

template <typename T, int N>
struct NumTraits<spinlab::ad::Dual<T, N>> {
  using Real = spinlab::ad::Dual<T, N>;
  using NonInteger = spinlab::ad::Dual<T, N>;
  using Nested = spinlab::ad::Dual<T, N>;
  using Literal = spinlab::ad::Dual<T, N>;
  enum {
    IsComplex = 0,
    IsInteger = 0,
    IsSigned = 1,
    RequireInitialization = 1,
    ReadCost = (N + 1) * NumTraits<T>::ReadCost,
    AddCost = (N + 1) * NumTraits<T>::AddCost,
    MulCost = (2 * N + 1) * NumTraits<T>::MulCost
  };
  static inline Real epsilon() { return Real(NumTraits<T>::epsilon()); }
  static inline Real dummy_precision() { return Real(NumTraits<T>::dummy_precision()); }
  static inline Real highest() { return Real(NumTraits<T>::highest()); }
  static inline Real lowest() { return Real(NumTraits<T>::lowest()); }
  static inline int digits10() { return NumTraits<T>::digits10(); }
};

template <typename T, int N, typename BinaryOp>
struct ScalarBinaryOpTraits<spinlab::ad::Dual<T, N>, double, BinaryOp> {
  using ReturnType = spinlab::ad::Dual<T, N>;
};
template <typename T, int N, typename BinaryOp>
struct ScalarBinaryOpTraits<double, spinlab::ad::Dual<T, N>, BinaryOp> {
  using ReturnType = spinlab::ad::Dual<T, N>;
};

}  // namespace Eigen
