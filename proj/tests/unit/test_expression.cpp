#include <gtest/gtest.h>

#include "spinlab/dual.hpp"
#include "spinlab/errors.hpp"
#include "spinlab/expression.hpp"

using spinlab::ConfigError;
using spinlab::Expression;

TEST(Expression, EvaluatesArithmeticAndFunctions) {
  Expression e = Expression::parse("0.3*sin(x)*cos(y)+0.2*z*z-0.1*x*y*z");
  double x = 0.4, y = -0.3, z = 0.25;
  EXPECT_NEAR(e.eval(x, y, z), 0.3 * std::sin(x) * std::cos(y) + 0.2 * z * z - 0.1 * x * y * z, 1e-15);
  EXPECT_NEAR(Expression::parse("2^3^2").eval(0.0, 0.0, 0.0), 512.0, 1e-12);
  EXPECT_NEAR(Expression::parse("-x^2").eval(3.0, 0.0, 0.0), -9.0, 1e-12);
  EXPECT_NEAR(Expression::parse("(x+1)/(y-2)").eval(1.0, 4.0, 0.0), 1.0, 1e-15);
  EXPECT_NEAR(Expression::parse("pi").eval(0.0, 0.0, 0.0), M_PI, 1e-15);
  EXPECT_NEAR(Expression::parse("exp(log(2)) + sqrt(4) + tanh(0) + atan(0)").eval(0.0, 0.0, 0.0), 4.0, 1e-14);
}

TEST(Expression, DifferentiatesThroughDuals) {
  Expression e = Expression::parse("x*x*y + sin(z)");
  auto u = spinlab::ad::seed<double, 3>(Eigen::Vector3d(2.0, 3.0, 0.5));
  auto v = e.eval(u(0), u(1), u(2));
  EXPECT_NEAR(v.d[0], 12.0, 1e-14);
  EXPECT_NEAR(v.d[1], 4.0, 1e-14);
  EXPECT_NEAR(v.d[2], std::cos(0.5), 1e-14);
}

TEST(Expression, RejectsMalformedInput) {
  for (const char* bad : {"", "x+", "sin x", "foo(x)", "(x", "x y", "w", "1..2", "x)"})
    EXPECT_THROW(Expression::parse(bad), ConfigError) << bad;
}
