#include <array>
#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "parageo/errors.hpp"
#include "parageo/expr.hpp"

namespace parageo {
namespace {

const std::vector<std::string> kXYZ = {"x", "y", "z"};

Expression parse(const std::string& text) { return parse_expression(text, kXYZ); }

Jet2 eval(const std::string& text, std::array<double, 3> at) { return eval_jet2(parse(text), at, kXYZ); }

TEST(Parse, PowerOfCoordinate) {
  const Expression e = parse("x^2");
  ASSERT_EQ(e.kind(), Expression::Kind::kPower);
  EXPECT_EQ(e.exponent(), 2);
  EXPECT_EQ(e.operand().kind(), Expression::Kind::kCoordinate);
  EXPECT_EQ(e.operand().coordinate_index(), 0u);
}

TEST(Parse, RationalCoefficientShape) {
  const Expression e = parse("(4*x^3+1)/(2*x)");
  const Expression x = Expression::coordinate(0);
  const Expression want =
      (Expression::constant(4) * pow(x, 3) + Expression::constant(1)) / (Expression::constant(2) * x);
  EXPECT_TRUE(e == want);
}

TEST(Parse, Precedence) {
  // Power binds tighter than unary minus: -x^2 is -(x^2).
  EXPECT_TRUE(parse("-x^2") == -pow(Expression::coordinate(0), 2));
  EXPECT_TRUE(parse("x - y - z") ==
              (Expression::coordinate(0) - Expression::coordinate(1)) - Expression::coordinate(2));
  EXPECT_TRUE(parse("x / y * z") ==
              (Expression::coordinate(0) / Expression::coordinate(1)) * Expression::coordinate(2));
}

TEST(Parse, SyntaxErrorOffset) {
  try {
    parse("2*/x");
    FAIL() << "no error";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.offset(), 2u);
  }
}

TEST(Parse, Rejects) {
  EXPECT_THROW(parse("x^9"), ParseError);
  EXPECT_THROW(parse("x^-9"), ParseError);
  EXPECT_THROW(parse("w + 1"), ParseError);
  EXPECT_THROW(parse("(x + 1"), ParseError);
  EXPECT_THROW(parse(""), ParseError);
  EXPECT_THROW(parse("x y"), ParseError);
  EXPECT_THROW(pow(Expression::coordinate(0), 12), std::invalid_argument);
}

TEST(Parse, NegativeExponent) {
  const Expression e = parse("x^-2");
  ASSERT_EQ(e.kind(), Expression::Kind::kPower);
  EXPECT_EQ(e.exponent(), -2);
  EXPECT_DOUBLE_EQ(eval("x^-2", {2, 0, 0}).value(), 0.25);
}

TEST(Eval, Monomial) {
  const Jet2 j = eval_jet2(parse_expression("x^2", std::vector<std::string>{"x"}), std::array{3.0});
  EXPECT_EQ(j.value(), 9.0);
  EXPECT_EQ(j.grad(0), 6.0);
  EXPECT_EQ(j.hess(0, 0), 2.0);
}

TEST(Eval, ConnectionCoefficientAtOne) {
  EXPECT_DOUBLE_EQ(eval("(4*x^3+1)/(2*x)", {1, 0, 0}).value(), 2.5);
}

TEST(Eval, PoleRaises) {
  EXPECT_THROW(eval("1/x", {0, 1, 1}), EvalError);
  EXPECT_THROW(eval("x^-1", {0, 1, 1}), EvalError);
  EXPECT_NO_THROW(eval("1/x", {1e-3, 1, 1}));
}

TEST(Eval, ConstantHasNoDerivatives) {
  const Jet2 j = eval("3.5 * 2 - 1/4", {0.3, -0.2, 1.1});
  EXPECT_DOUBLE_EQ(j.value(), 6.75);
  for (std::size_t i = 0; i < 3; ++i) {
    EXPECT_EQ(j.grad(i), 0.0);
    for (std::size_t k = 0; k < 3; ++k) EXPECT_EQ(j.hess(i, k), 0.0);
  }
}

TEST(Eval, MixedPartials) {
  // f = x^2 y z^3: f_xy = 2x z^3, f_xz = 6 x y z^2, f_zz = 6 x^2 y z.
  const Jet2 j = eval("x^2*y*z^3", {1.5, -2, 0.5});
  EXPECT_DOUBLE_EQ(j.hess(0, 1), 2 * 1.5 * 0.125);
  EXPECT_DOUBLE_EQ(j.hess(2, 0), 6 * 1.5 * -2 * 0.25);
  EXPECT_DOUBLE_EQ(j.hess(2, 2), 6 * 2.25 * -2 * 0.5);
  EXPECT_EQ(j.hess(0, 1), j.hess(1, 0));
}

TEST(Eval, AgreesWithQuadFiniteDifferences) {
  oracle::ExpressionGenerator gen(3, 7);
  std::mt19937_64 rng(11);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int c = 0; c < 200; ++c) {
    const Expression e = gen.next();
    const std::array<double, 3> p{u(rng), u(rng), u(rng)};
    const Jet2 j = eval_jet2(e, p);
    const oracle::FdJet fd = oracle::finite_difference(e, p);
    const std::string text = to_string(e, kXYZ);
    EXPECT_TRUE(oracle::close(j.value(), fd.value, 1e-12, 1e-12)) << text;
    for (std::size_t i = 0; i < 3; ++i) {
      EXPECT_TRUE(oracle::close(j.grad(i), fd.grad(i), 1e-6, 1e-9)) << text << " d" << i;
      for (std::size_t k = 0; k < 3; ++k)
        EXPECT_TRUE(oracle::close(j.hess(i, k), fd.hess(i, k), 1e-6, 1e-9)) << text << " d" << i << k;
    }
  }
}

TEST(Eval, LeibnizRule) {
  oracle::ExpressionGenerator gen(3, 99);
  const std::array<double, 3> p{0.3, -0.7, 0.45};
  for (int c = 0; c < 100; ++c) {
    const Expression a = gen.next(3);
    const Expression b = gen.next(3);
    const Jet2 ja = eval_jet2(a, p);
    const Jet2 jb = eval_jet2(b, p);
    const Jet2 jab = eval_jet2(a * b, p);
    for (std::size_t i = 0; i < 3; ++i) {
      const double want = ja.grad(i) * jb.value() + ja.value() * jb.grad(i);
      EXPECT_TRUE(oracle::close(jab.grad(i), want, 1e-12, 1e-14));
      for (std::size_t k = 0; k < 3; ++k) {
        const double h = ja.hess(i, k) * jb.value() + ja.value() * jb.hess(i, k) + ja.grad(i) * jb.grad(k) +
                         ja.grad(k) * jb.grad(i);
        EXPECT_TRUE(oracle::close(jab.hess(i, k), h, 1e-12, 1e-14));
      }
    }
  }
}

TEST(Print, RoundTripsGeneratedTrees) {
  oracle::ExpressionGenerator gen(3, 2024);
  for (int c = 0; c < 300; ++c) {
    const Expression e = gen.next(5);
    const std::string text = to_string(e, kXYZ);
    EXPECT_TRUE(parse(text) == e) << text;
  }
}

TEST(Print, RoundTripsAwkwardConstants) {
  for (double v : {0.1, -0.25, 1e-20, 123456789.125, 1.0 / 3.0}) {
    const Expression e = Expression::constant(v) * Expression::coordinate(1);
    EXPECT_TRUE(parse(to_string(e, kXYZ)) == e) << to_string(e, kXYZ);
  }
}

}  // namespace
}  // namespace parageo
