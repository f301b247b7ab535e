#pragma once

#include <cstddef>
#include <memory>
#include <span>
#include <string>
#include <string_view>

#include "parageo/jet.hpp"

namespace parageo {

class Chart;
class Point;

/// Immutable arithmetic expression tree over chart coordinates.
///
/// Nodes are constants, coordinate references, negation, the four binary
/// operators and integer powers with exponents in [-8, 8]. Copies share the
/// underlying tree.
class Expression {
 public:
  enum class Kind { kConstant, kCoordinate, kNegate, kAdd, kSubtract, kMultiply, kDivide, kPower };

  static constexpr int kMinExponent = -8;
  static constexpr int kMaxExponent = 8;

  /// The constant 0.
  Expression();

  static Expression constant(double value);
  static Expression coordinate(std::size_t index);

  friend Expression operator-(const Expression& a);
  friend Expression operator+(const Expression& a, const Expression& b);
  friend Expression operator-(const Expression& a, const Expression& b);
  friend Expression operator*(const Expression& a, const Expression& b);
  friend Expression operator/(const Expression& a, const Expression& b);
  /// Throws std::invalid_argument for an exponent outside [-8, 8].
  friend Expression pow(const Expression& base, int exponent);

  Kind kind() const noexcept;
  double constant_value() const;
  std::size_t coordinate_index() const;
  int exponent() const;
  /// Operand of a negation or base of a power.
  const Expression& operand() const;
  const Expression& lhs() const;
  const Expression& rhs() const;

  /// One past the largest coordinate index referenced (0 if none).
  std::size_t coordinate_bound() const noexcept;

  /// Structural equality.
  friend bool operator==(const Expression& a, const Expression& b);

 private:
  struct Node;
  explicit Expression(std::shared_ptr<const Node> node);
  static Expression binary(Kind kind, const Expression& a, const Expression& b);
  std::shared_ptr<const Node> node_;
};

/// Parses `text` with standard precedence: power > unary minus > mul/div >
/// add/sub, left-associative, parentheses override. Identifiers must be
/// coordinate names. Throws ParseError.
Expression parse_expression(std::string_view text, std::span<const std::string> coordinate_names);
Expression parse_expression(std::string_view text, const Chart& chart);

/// Canonical text form; parse_expression(to_string(e)) reproduces e exactly.
std::string to_string(const Expression& e, std::span<const std::string> coordinate_names);

/// Value, gradient and Hessian of `e` at `coords`. Throws EvalError when a
/// denominator falls below 1e-12 * (1 + |numerator|).
Jet2 eval_jet2(const Expression& e, std::span<const double> coords,
               std::span<const std::string> coordinate_names = {});
/// Same, at a chart point (coordinate names are used in error messages).
Jet2 eval_jet2(const Expression& e, const Point& p);

}  // namespace parageo
