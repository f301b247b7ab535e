#pragma once

#include <array>
#include <cstddef>

namespace parageo {

/// Largest chart dimension supported by the fixed-capacity jet storage.
inline constexpr std::size_t kMaxDim = 8;

/// Second-order truncated Taylor jet of a scalar field at a point:
/// value, gradient and (symmetric) Hessian with respect to the chart
/// coordinates. Arithmetic on jets propagates exact derivatives.
class Jet2 {
 public:
  Jet2() = default;
  explicit Jet2(std::size_t dim);

  static Jet2 constant(std::size_t dim, double value);
  /// The coordinate function x^index evaluated at `value`.
  static Jet2 variable(std::size_t dim, std::size_t index, double value);

  std::size_t dim() const noexcept { return dim_; }
  double value() const noexcept { return value_; }
  double grad(std::size_t i) const noexcept { return grad_[i]; }
  double hess(std::size_t i, std::size_t j) const noexcept { return hess_[tri(i, j)]; }

  void set_value(double v) noexcept { value_ = v; }
  void set_grad(std::size_t i, double v) noexcept { grad_[i] = v; }
  void set_hess(std::size_t i, std::size_t j, double v) noexcept { hess_[tri(i, j)] = v; }

  Jet2& operator+=(const Jet2& o) noexcept;
  Jet2& operator-=(const Jet2& o) noexcept;
  Jet2& operator*=(double s) noexcept;

  friend Jet2 operator+(Jet2 a, const Jet2& b) noexcept { return a += b; }
  friend Jet2 operator-(Jet2 a, const Jet2& b) noexcept { return a -= b; }
  friend Jet2 operator*(Jet2 a, double s) noexcept { return a *= s; }
  friend Jet2 operator*(double s, Jet2 a) noexcept { return a *= s; }
  friend Jet2 operator-(Jet2 a) noexcept { return a *= -1.0; }
  friend Jet2 operator*(const Jet2& a, const Jet2& b) noexcept;

  /// Quotient a/b. The caller is responsible for checking b.value() != 0.
  friend Jet2 divide(const Jet2& a, const Jet2& b) noexcept;
  /// a^k for an integer k; for k < 0 the caller checks a.value() != 0.
  friend Jet2 ipow(const Jet2& a, int k) noexcept;
  /// sqrt(a) for a.value() > 0.
  friend Jet2 sqrt(const Jet2& a) noexcept;

 private:
  static constexpr std::size_t tri(std::size_t i, std::size_t j) noexcept {
    return i <= j ? j * (j + 1) / 2 + i : i * (i + 1) / 2 + j;
  }

  std::size_t dim_ = 0;
  double value_ = 0.0;
  std::array<double, kMaxDim> grad_{};
  std::array<double, kMaxDim*(kMaxDim + 1) / 2> hess_{};
};

}  // namespace parageo
