#pragma once

#include <span>
#include <string>
#include <variant>

#include <Eigen/Dense>

#include "parageo/chart.hpp"
#include "parageo/metric.hpp"
#include "parageo/report.hpp"

namespace parageo {

/// Almost paracontact metric data (phi, xi, eta, g) on an odd-dimensional chart.
class ParacontactStructure {
 public:
  /// Validates ranks, chart agreement and odd dimension; axioms are checked
  /// separately by the check_* functions.
  ParacontactStructure(TensorField phi, TensorField xi, TensorField eta, MetricField g);

  const TensorField& phi() const noexcept { return phi_; }
  const TensorField& xi() const noexcept { return xi_; }
  const TensorField& eta() const noexcept { return eta_; }
  const MetricField& metric() const noexcept { return g_; }
  const Chart& chart() const noexcept { return g_.chart(); }
  const ChartPtr& chart_ptr() const noexcept { return g_.chart_ptr(); }
  std::size_t dimension() const noexcept { return g_.dimension(); }
  /// The n of dimension 2n+1.
  std::size_t half_rank() const noexcept { return (dimension() - 1) / 2; }

 private:
  TensorField phi_, xi_, eta_;
  MetricField g_;
};

/// Almost para-Hermitian data (J, h) on an even-dimensional chart.
class ParaHermitianStructure {
 public:
  ParaHermitianStructure(TensorField J, MetricField h);

  const TensorField& J() const noexcept { return J_; }
  const MetricField& metric() const noexcept { return h_; }
  const Chart& chart() const noexcept { return h_.chart(); }
  const ChartPtr& chart_ptr() const noexcept { return h_.chart_ptr(); }
  std::size_t dimension() const noexcept { return h_.dimension(); }
  std::size_t half_rank() const noexcept { return dimension() / 2; }

 private:
  TensorField J_;
  MetricField h_;
};

using AnyStructure = std::variant<ParacontactStructure, ParaHermitianStructure, MetricField>;

const MetricField& metric_of(const AnyStructure& s);

/// Jets and values of a paracontact structure at one point.
struct LocalParacontact {
  Point point;
  LocalMetric metric;
  JetTensor phi_jets, xi_jets, eta_jets;
  Eigen::MatrixXd phi;
  Eigen::VectorXd xi, eta;
};
LocalParacontact local_paracontact(const ParacontactStructure& S, const Point& p);

struct LocalParaHermitian {
  Point point;
  LocalMetric metric;
  JetTensor J_jets;
  Eigen::MatrixXd J;
};
LocalParaHermitian local_para_hermitian(const ParaHermitianStructure& S, const Point& p);

// ---- almost paracontact metric structures ----

CheckReport check_almost_paracontact(const ParacontactStructure& S, std::span<const Point> points, double tol);
CheckReport check_compatible_metric(const ParacontactStructure& S, std::span<const Point> points, double tol);
/// d eta(X, Y) = g(X, phi Y) on coordinate pairs.
CheckReport check_paracontact_metric(const ParacontactStructure& S, std::span<const Point> points, double tol);

/// N(X,Y) = [phi,phi](X,Y) - 2 d eta(X,Y) xi for vector fields given as jets.
Eigen::VectorXd nijenhuis_paracontact(const LocalParacontact& L, const JetTensor& X, const JetTensor& Y);
VectorValue nijenhuis_paracontact(const ParacontactStructure& S, const Point& p, const TensorField& X,
                                  const TensorField& Y);
CheckReport check_normal(const ParacontactStructure& S, std::span<const Point> points, double tol);

struct StructureFunctions {
  double p = 0.0;
  double q = 0.0;
};
/// 2p = tr(X -> nabla_X xi), 2q = tr(X -> phi nabla_X xi).
StructureFunctions extract_pq(const LocalParacontact& L);
StructureFunctions extract_pq(const ParacontactStructure& S, const Point& p);

/// The two equivalent forms of nabla phi and nabla xi in terms of (p, q).
CheckReport check_structure_functions(const ParacontactStructure& S, std::span<const Point> points, double tol);
/// (nabla_X phi) Y = -g(X,Y) xi + eta(Y) X.
CheckReport check_para_sasakian(const ParacontactStructure& S, std::span<const Point> points, double tol);
/// nabla_X xi = -phi X and nabla_xi xi = 0.
CheckReport check_k_paracontact(const ParacontactStructure& S, std::span<const Point> points, double tol);

enum class StructureClass { kParacosymplectic, kParaSasakian, kOtherNormal, kNotNormal };
std::string to_string(StructureClass c);

struct StructureClassification {
  double p = 0.0;
  double q = 0.0;
  /// max - min of p and of q over the samples, whichever is larger.
  double spread = 0.0;
  double normal_residual = 0.0;
  StructureClass tag = StructureClass::kNotNormal;
};
StructureClassification classify_normal_3(const ParacontactStructure& S, std::span<const Point> points, double tol);

/// {X_1..X_n, phi X_1..phi X_n, xi} with X_i, xi spacelike and phi X_i timelike.
FrameJet phi_basis_jet(const ParacontactStructure& S, const Point& p);
FrameValue phi_basis(const ParacontactStructure& S, const Point& p);

// ---- almost para-Hermitian structures ----

CheckReport check_para_hermitian(const ParaHermitianStructure& S, std::span<const Point> points, double tol);
/// Phi(X, Y) = h(JX, Y).
BilinearValue fundamental_form(const ParaHermitianStructure& S, const Point& p);
/// delta Phi(X) = sum_a eps_a (nabla_{E_a} Phi)(E_a, X) over an orthonormal frame.
CovectorValue codifferential_form(const ParaHermitianStructure& S, const Point& p);
/// Frame sum against the metric route h(div J, X).
CheckReport check_codifferential(const ParaHermitianStructure& S, std::span<const Point> points, double tol);
/// max |nabla J|.
CheckReport check_para_kahler(const ParaHermitianStructure& S, std::span<const Point> points, double tol);

/// {e_1..e_m, J e_1..J e_m} with e_i spacelike.
FrameJet para_hermitian_frame_jet(const ParaHermitianStructure& S, const Point& p);
FrameValue para_hermitian_frame(const ParaHermitianStructure& S, const Point& p);

/// sum {nabla_{Je_i} Je_i - nabla_{e_i} e_i} = J{div J - sum [e_i, Je_i]}, with
/// the expansion of div J over the same frame reported as a sub-identity.
CheckReport verify_frame_identity(const ParaHermitianStructure& S, std::span<const Point> points, double tol);

// ---- metric-only properties ----

/// nabla g = 0 in every coordinate direction.
CheckReport check_metric_compatibility(const MetricField& g, std::span<const Point> points, double tol);
/// Sign counts of g match the declared signature.
CheckReport check_metric_signature(const MetricField& g, std::span<const Point> points, double tol);
/// g^ij B_ij against sum_a eps_a B(E_a, E_a) for B = g and, when a structure
/// tensor T is given, B(X, Y) = g(TX, TY).
CheckReport check_trace_frame_consistency(const AnyStructure& s, std::span<const Point> points, double tol);
/// Pairings of the adapted frame (phi-basis or J-paired frame) against its signs.
CheckReport check_adapted_frame(const AnyStructure& s, std::span<const Point> points, double tol);

}  // namespace parageo
