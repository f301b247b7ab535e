#pragma once

// Jet-valued Gram-Schmidt shared by the plain, J-paired and phi-adapted frames.

#include <optional>
#include <vector>

#include "parageo/chart.hpp"
#include "parageo/metric.hpp"

namespace parageo::detail {

using JetVec = std::vector<Jet2>;

JetVec coordinate_vector(std::size_t dim, std::size_t index);
JetVec vector_of(const JetTensor& v);
JetTensor tensor_of(JetVec v);
/// (T v)^k = T^k_j v^j.
JetVec apply(const JetTensor& endo, const JetVec& v);
JetVec axpy(const Jet2& a, const JetVec& x, const JetVec& y);  // a*x + y

class FrameBuilder {
 public:
  explicit FrameBuilder(JetTensor metric);

  Jet2 inner(const JetVec& a, const JetVec& b) const;
  /// w minus its components along the frame built so far.
  JetVec project(const JetVec& w) const;
  /// Best pivot among the projected candidates, or nullopt below 1e-10.
  std::optional<JetVec> best_candidate() const;
  /// Normalizes v to |g(v,v)| = 1 and appends it; returns the sign of g(v,v).
  int add(const JetVec& v);
  /// Appends an already normalized vector with the given sign.
  void push(JetVec v, int sign);

  std::size_t size() const noexcept { return vectors_.size(); }
  const std::vector<JetVec>& vectors() const noexcept { return vectors_; }
  const std::vector<int>& signs() const noexcept { return signs_; }

  FrameJet finish() const;

  static constexpr double kPivotFloor = 1e-10;

 private:
  JetTensor g_;
  std::size_t n_;
  std::vector<JetVec> vectors_;
  std::vector<int> signs_;
};

}  // namespace parageo::detail
