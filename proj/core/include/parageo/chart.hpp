#pragma once

#include <cstddef>
#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

#include "parageo/expr.hpp"
#include "parageo/jet.hpp"

namespace parageo {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

using Box = std::vector<Interval>;

/// A single coordinate patch: named coordinates and a closed domain box.
class Chart {
 public:
  Chart(std::string name, std::vector<std::string> coordinate_names, Box domain);

  const std::string& name() const noexcept { return name_; }
  std::size_t dimension() const noexcept { return names_.size(); }
  std::span<const std::string> coordinate_names() const noexcept { return names_; }
  const Box& domain() const noexcept { return domain_; }

  std::optional<std::size_t> index_of(std::string_view coordinate) const;
  bool contains(std::span<const double> coords) const;
  bool contains(std::span<const double> coords, const Box& box) const;

 private:
  std::string name_;
  std::vector<std::string> names_;
  Box domain_;
};

using ChartPtr = std::shared_ptr<const Chart>;

ChartPtr make_chart(std::string name, std::vector<std::string> coordinate_names, Box domain);

/// A point of a chart. Construction throws DomainError outside the box.
class Point {
 public:
  Point(ChartPtr chart, std::vector<double> coords);

  const Chart& chart() const noexcept { return *chart_; }
  const ChartPtr& chart_ptr() const noexcept { return chart_; }
  std::span<const double> coordinates() const noexcept { return coords_; }
  double operator[](std::size_t i) const { return coords_[i]; }
  std::size_t dimension() const noexcept { return coords_.size(); }

 private:
  ChartPtr chart_;
  std::vector<double> coords_;
};

/// Jets of every component of a tensor field at one point.
///
/// Layout: rank (1,0)/(0,1) stores c[k]; rank (1,1) stores c[k*n + j] for
/// the component (T d_j)^k; rank (0,2) stores c[i*n + j] for B(d_i, d_j).
struct JetTensor {
  int upper = 0;
  int lower = 0;
  std::size_t dim = 0;
  std::vector<Jet2> c;

  const Jet2& operator()(std::size_t k) const { return c[k]; }
  const Jet2& operator()(std::size_t a, std::size_t b) const { return c[a * dim + b]; }
  Jet2& operator()(std::size_t k) { return c[k]; }
  Jet2& operator()(std::size_t a, std::size_t b) { return c[a * dim + b]; }

  /// Component values: an n-vector as n x 1, rank-2 as n x n, scalar as 1 x 1.
  Eigen::MatrixXd values() const;

  static JetTensor vector(std::vector<Jet2> components);
};

/// Component-wise tensor field of rank (r, s), r in {0,1}, s in {0,1,2}.
class TensorField {
 public:
  static TensorField scalar(ChartPtr chart, Expression f);
  static TensorField vector(ChartPtr chart, std::vector<Expression> components);
  static TensorField covector(ChartPtr chart, std::vector<Expression> components);
  /// rows[k][j] is the k-th component of T applied to d_j.
  static TensorField endomorphism(ChartPtr chart, std::vector<std::vector<Expression>> rows);
  /// rows[i][j] = B(d_i, d_j).
  static TensorField bilinear(ChartPtr chart, std::vector<std::vector<Expression>> rows,
                              bool symmetric = false);
  /// Convenience: parse every component from text in the chart's coordinates.
  static TensorField parse(ChartPtr chart, int upper, int lower,
                           const std::vector<std::string>& flat_components, bool symmetric = false);

  int upper() const noexcept { return upper_; }
  int lower() const noexcept { return lower_; }
  const Chart& chart() const noexcept { return *chart_; }
  const ChartPtr& chart_ptr() const noexcept { return chart_; }
  bool declared_symmetric() const noexcept { return symmetric_; }
  std::span<const Expression> components() const noexcept { return components_; }

  JetTensor jets(const Point& p) const;

 private:
  TensorField(ChartPtr chart, int upper, int lower, std::vector<Expression> components, bool symmetric);

  ChartPtr chart_;
  int upper_ = 0;
  int lower_ = 0;
  bool symmetric_ = false;
  std::vector<Expression> components_;
};

struct VectorValue {
  Point point;
  Eigen::VectorXd components;
};

struct CovectorValue {
  Point point;
  Eigen::VectorXd components;
};

struct EndoValue {
  Point point;
  Eigen::MatrixXd components;
};

struct BilinearValue {
  Point point;
  Eigen::MatrixXd components;
};

/// Component values of `T` at `p` (see JetTensor::values for the shape).
Eigen::MatrixXd evaluate_tensor(const TensorField& T, const Point& p);

/// [X, Y]^k = X^i d_i Y^k - Y^i d_i X^k.
VectorValue lie_bracket(const TensorField& X, const TensorField& Y, const Point& p);
Eigen::VectorXd lie_bracket(const JetTensor& X, const JetTensor& Y);
/// Bracket as a field: exact value and gradient; Hessians are left zero.
JetTensor lie_bracket_jet(const JetTensor& X, const JetTensor& Y);

/// d eta(d_i, d_j) = 1/2 (d_i eta_j - d_j eta_i).
BilinearValue exterior_derivative_1form(const TensorField& eta, const Point& p);
Eigen::MatrixXd exterior_derivative_1form(const JetTensor& eta);

/// Checks B_ij == B_ji at 16 seeded sample points; throws Error otherwise.
void validate_symmetric(const TensorField& B, double tol = 1e-10);

}  // namespace parageo
