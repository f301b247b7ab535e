#pragma once

#include <cstddef>
#include <vector>

#include <Eigen/Dense>

#include "parageo/chart.hpp"

namespace parageo {

/// Counts of positive and negative eigenvalues.
struct Signature {
  int positive = 0;
  int negative = 0;

  friend bool operator==(const Signature&, const Signature&) = default;
};

/// A symmetric (0,2) field with a declared signature.
class MetricField {
 public:
  /// Throws Error unless `g` is a (0,2) field with symmetric components and
  /// the signature adds up to the chart dimension.
  MetricField(TensorField g, Signature signature);

  const TensorField& tensor() const noexcept { return g_; }
  Signature signature() const noexcept { return signature_; }
  const Chart& chart() const noexcept { return g_.chart(); }
  const ChartPtr& chart_ptr() const noexcept { return g_.chart_ptr(); }
  std::size_t dimension() const noexcept { return g_.chart().dimension(); }

 private:
  TensorField g_;
  Signature signature_;
};

/// Christoffel symbols of the second kind at a point.
struct ChristoffelValue {
  std::size_t n = 0;
  /// Gamma^k_ij stored at (k*n + i)*n + j, with (i,j) and (j,i) equal.
  std::vector<double> table;

  double operator()(std::size_t k, std::size_t i, std::size_t j) const { return table[(k * n + i) * n + j]; }
};

/// Everything about the metric at one point that first-order calculus needs.
struct LocalMetric {
  JetTensor jets;
  Eigen::MatrixXd g;
  Eigen::MatrixXd inverse;
  ChristoffelValue gamma;
};

/// Throws SingularMetricError when |det g| <= 1e-10 * (max|g_ij|)^n or the
/// computed inverse fails g * inv = I to 1e-10.
Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g);
Eigen::MatrixXd metric_inverse(const MetricField& g, const Point& p);

/// Gamma^k_ij = 1/2 g^kl (d_i g_jl + d_j g_il - d_l g_ij).
ChristoffelValue christoffel(const JetTensor& g_jets, const Eigen::MatrixXd& inverse);
ChristoffelValue christoffel(const MetricField& g, const Point& p);

LocalMetric local_metric(const MetricField& g, const Point& p);

/// Eigenvalue sign counts of a symmetric matrix (|lambda| <= 1e-12 * scale
/// is counted as neither).
Signature signature_of(const Eigen::MatrixXd& g);

/// (nabla_X T) for T of rank (1,0), (0,1), (1,1) or (0,2); the result has
/// the same shape as JetTensor::values().
Eigen::MatrixXd covariant_derivative(const JetTensor& T, const ChristoffelValue& gamma, const Eigen::VectorXd& X);
Eigen::MatrixXd covariant_derivative(const TensorField& T, const MetricField& g, const Point& p,
                                     const Eigen::VectorXd& X);
Eigen::MatrixXd covariant_derivative(const TensorField& T, const MetricField& g, const Point& p,
                                     std::size_t direction);

/// g^ij B_ij.
double metric_trace_bilinear(const Eigen::MatrixXd& B, const Eigen::MatrixXd& inverse);
double metric_trace_bilinear(const BilinearValue& B, const MetricField& g, const Point& p);

/// (div T)^k = g^ij ((nabla_i T) d_j)^k.
Eigen::VectorXd divergence_11(const JetTensor& T, const LocalMetric& m);
VectorValue divergence_11(const TensorField& T, const MetricField& g, const Point& p);

/// Pseudo-orthonormal frame: g(E_a, E_b) = signs[a] * delta_ab.
struct FrameValue {
  Point point;
  std::vector<Eigen::VectorXd> vectors;
  std::vector<int> signs;
};

/// Frame vector fields near a point, with exact first derivatives, so that
/// brackets and covariant derivatives of frame fields can be taken.
struct FrameJet {
  std::vector<JetTensor> vectors;
  std::vector<int> signs;

  FrameValue value(const Point& p) const;
};

/// Gram-Schmidt pivoting on the largest |g(w,w)| / |w|^2 among projected
/// coordinate vectors and their pairwise sums and differences.
/// Throws FrameError when every candidate falls below 1e-10.
FrameJet orthonormal_frame_jet(const MetricField& g, const Point& p);
FrameValue orthonormal_frame(const MetricField& g, const Point& p);

}  // namespace parageo
