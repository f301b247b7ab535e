#include "parageo/jet.hpp"

#include <cmath>

namespace parageo {

namespace {

// x^m for integer m, by repeated squaring; m < 0 gives the reciprocal.
double int_power(double x, int m) {
  if (m < 0) return 1.0 / int_power(x, -m);
  double result = 1.0;
  double base = x;
  while (m > 0) {
    if (m & 1) result *= base;
    base *= base;
    m >>= 1;
  }
  return result;
}

}  // namespace

Jet2::Jet2(std::size_t dim) : dim_(dim) {}

Jet2 Jet2::constant(std::size_t dim, double value) {
  Jet2 j(dim);
  j.value_ = value;
  return j;
}

Jet2 Jet2::variable(std::size_t dim, std::size_t index, double value) {
  Jet2 j(dim);
  j.value_ = value;
  j.grad_[index] = 1.0;
  return j;
}

Jet2& Jet2::operator+=(const Jet2& o) noexcept {
  value_ += o.value_;
  for (std::size_t i = 0; i < dim_; ++i) grad_[i] += o.grad_[i];
  const std::size_t m = dim_ * (dim_ + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) hess_[i] += o.hess_[i];
  return *this;
}

Jet2& Jet2::operator-=(const Jet2& o) noexcept {
  value_ -= o.value_;
  for (std::size_t i = 0; i < dim_; ++i) grad_[i] -= o.grad_[i];
  const std::size_t m = dim_ * (dim_ + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) hess_[i] -= o.hess_[i];
  return *this;
}

Jet2& Jet2::operator*=(double s) noexcept {
  value_ *= s;
  for (std::size_t i = 0; i < dim_; ++i) grad_[i] *= s;
  const std::size_t m = dim_ * (dim_ + 1) / 2;
  for (std::size_t i = 0; i < m; ++i) hess_[i] *= s;
  return *this;
}

Jet2 operator*(const Jet2& a, const Jet2& b) noexcept {
  const std::size_t n = a.dim_;
  Jet2 r(n);
  r.value_ = a.value_ * b.value_;
  for (std::size_t i = 0; i < n; ++i) r.grad_[i] = a.grad_[i] * b.value_ + a.value_ * b.grad_[i];
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const std::size_t t = Jet2::tri(i, j);
      r.hess_[t] = a.hess_[t] * b.value_ + a.value_ * b.hess_[t] + a.grad_[i] * b.grad_[j] +
                   a.grad_[j] * b.grad_[i];
    }
  }
  return r;
}

Jet2 divide(const Jet2& a, const Jet2& b) noexcept {
  const std::size_t n = a.dim_;
  Jet2 q(n);
  const double inv = 1.0 / b.value_;
  q.value_ = a.value_ * inv;
  for (std::size_t i = 0; i < n; ++i) q.grad_[i] = (a.grad_[i] - q.value_ * b.grad_[i]) * inv;
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const std::size_t t = Jet2::tri(i, j);
      q.hess_[t] = (a.hess_[t] - q.value_ * b.hess_[t] - q.grad_[i] * b.grad_[j] -
                    b.grad_[i] * q.grad_[j]) *
                   inv;
    }
  }
  return q;
}

Jet2 ipow(const Jet2& a, int k) noexcept {
  const std::size_t n = a.dim_;
  if (k == 0) return Jet2::constant(n, 1.0);
  if (k == 1) return a;
  const double c1 = k * int_power(a.value_, k - 1);
  const double c2 = (k == 2) ? 2.0 : static_cast<double>(k) * (k - 1) * int_power(a.value_, k - 2);
  Jet2 r(n);
  r.value_ = int_power(a.value_, k);
  for (std::size_t i = 0; i < n; ++i) r.grad_[i] = c1 * a.grad_[i];
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const std::size_t t = Jet2::tri(i, j);
      r.hess_[t] = c1 * a.hess_[t] + c2 * a.grad_[i] * a.grad_[j];
    }
  }
  return r;
}

Jet2 sqrt(const Jet2& a) noexcept {
  const std::size_t n = a.dim_;
  Jet2 r(n);
  const double s = std::sqrt(a.value_);
  r.value_ = s;
  for (std::size_t i = 0; i < n; ++i) r.grad_[i] = a.grad_[i] / (2.0 * s);
  const double c = 1.0 / (4.0 * s * s * s);
  for (std::size_t j = 0; j < n; ++j) {
    for (std::size_t i = 0; i <= j; ++i) {
      const std::size_t t = Jet2::tri(i, j);
      r.hess_[t] = a.hess_[t] / (2.0 * s) - c * a.grad_[i] * a.grad_[j];
    }
  }
  return r;
}

}  // namespace parageo
