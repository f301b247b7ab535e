#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Dense>

namespace parageo {

struct SubResidual {
  std::string identity;
  double residual = 0.0;
};

/// Outcome of one verifier: pass iff max_residual <= tolerance.
struct CheckReport {
  std::string name;
  double max_residual = 0.0;
  double tolerance = 0.0;
  bool passed = true;
  /// Set by scenarios for checks that are supposed to fail.
  bool expected_fail = false;
  std::vector<double> worst_point;
  std::vector<SubResidual> sub_residuals;
  std::vector<std::string> notes;
};

template <class Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}
inline double max_abs(double v) { return std::abs(v); }

/// Largest magnitude among the terms of an identity.
template <class... Terms>
double term_scale(const Terms&... terms) {
  return std::max({0.0, max_abs(terms)...});
}

/// max|lhs - rhs| / (1 + scale): the residual convention used by every check.
template <class A, class B>
double scaled_residual(const Eigen::MatrixBase<A>& lhs, const Eigen::MatrixBase<B>& rhs, double scale) {
  return max_abs(lhs - rhs) / (1.0 + scale);
}
inline double scaled_residual(double lhs, double rhs, double scale) {
  return std::abs(lhs - rhs) / (1.0 + scale);
}

/// Running max-reduction of residuals into a CheckReport.
class ResidualTracker {
 public:
  ResidualTracker(std::string name, double tolerance);

  void record(std::string_view identity, double residual, std::span<const double> point);
  void note(std::string text);

  double max_residual() const noexcept { return report_.max_residual; }
  CheckReport report() const;

 private:
  CheckReport report_;
  bool any_ = false;
  bool nan_ = false;
};

enum class ReportFormat { kText, kJson };

std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format);
/// 0 iff every check not marked expected_fail passed.
int report_exit_code(const std::vector<CheckReport>& reports);
/// Inverse of emit_report(..., kJson).
std::vector<CheckReport> parse_report_json(std::string_view json_text);

}  // namespace parageo
