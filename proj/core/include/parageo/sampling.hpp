#pragma once

#include <cstddef>
#include <cstdint>
#include <vector>

#include "parageo/chart.hpp"

namespace parageo {

/// Deterministic sample of `count` points inside `box`: the first
/// ceil(count/2) come from a Halton sequence, the rest are uniform draws
/// from mt19937_64 seeded with `seed`.
std::vector<Point> sample_points(const ChartPtr& chart, const Box& box, std::size_t count, std::uint64_t seed);

/// Tensor-product grid with the given values on every axis.
std::vector<Point> grid_points(const ChartPtr& chart, const std::vector<double>& axis_values);

}  // namespace parageo
