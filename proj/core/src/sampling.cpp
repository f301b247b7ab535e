#include "parageo/sampling.hpp"

#include <array>
#include <random>

#include "parageo/errors.hpp"

namespace parageo {

namespace {

constexpr std::array<unsigned, kMaxDim> kPrimes = {2, 3, 5, 7, 11, 13, 17, 19};

double radical_inverse(std::size_t index, unsigned base) {
  double result = 0.0;
  double f = 1.0 / base;
  while (index > 0) {
    result += f * static_cast<double>(index % base);
    index /= base;
    f /= base;
  }
  return result;
}

double unit_uniform(std::mt19937_64& rng) {
  // 53 random mantissa bits; identical on every standard library.
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

}  // namespace

std::vector<Point> sample_points(const ChartPtr& chart, const Box& box, std::size_t count, std::uint64_t seed) {
  const std::size_t n = chart->dimension();
  if (box.size() != n) throw DomainError("sample box has wrong dimension");
  std::vector<Point> out;
  out.reserve(count);
  const std::size_t n_grid = (count + 1) / 2;
  for (std::size_t s = 0; s < n_grid; ++s) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) {
      const double u = radical_inverse(s + 1, kPrimes[i]);
      c[i] = box[i].lo + u * (box[i].hi - box[i].lo);
    }
    out.emplace_back(chart, std::move(c));
  }
  std::mt19937_64 rng(seed);
  for (std::size_t s = n_grid; s < count; ++s) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = box[i].lo + unit_uniform(rng) * (box[i].hi - box[i].lo);
    out.emplace_back(chart, std::move(c));
  }
  return out;
}

std::vector<Point> grid_points(const ChartPtr& chart, const std::vector<double>& axis_values) {
  const std::size_t n = chart->dimension();
  std::vector<Point> out;
  std::vector<std::size_t> idx(n, 0);
  if (axis_values.empty()) return out;
  for (;;) {
    std::vector<double> c(n);
    for (std::size_t i = 0; i < n; ++i) c[i] = axis_values[idx[i]];
    out.emplace_back(chart, std::move(c));
    std::size_t d = 0;
    while (d < n && ++idx[d] == axis_values.size()) idx[d++] = 0;
    if (d == n) break;
  }
  return out;
}

}  // namespace parageo
