#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "parageo/chart.hpp"
#include "parageo/metric.hpp"
#include "parageo/report.hpp"
#include "parageo/structures.hpp"

namespace parageo {

/// f: source -> target given by one expression per target coordinate.
class SmoothMap {
 public:
  SmoothMap(ChartPtr source, ChartPtr target, std::vector<Expression> components);
  static SmoothMap parse(ChartPtr source, ChartPtr target, const std::vector<std::string>& components);

  const Chart& source() const noexcept { return *source_; }
  const Chart& target() const noexcept { return *target_; }
  const ChartPtr& source_ptr() const noexcept { return source_; }
  const ChartPtr& target_ptr() const noexcept { return target_; }
  std::span<const Expression> components() const noexcept { return components_; }

  /// f(p); throws DomainError if it leaves the target box.
  Point image(const Point& p) const;

 private:
  ChartPtr source_, target_;
  std::vector<Expression> components_;
};

enum class MapTag { kContactToHermitian, kHermitianToContact, kContactToContact };

/// Which structure tensors a map intertwines, and with which sign.
struct MapKind {
  MapTag tag = MapTag::kContactToContact;
  /// +1 paraholomorphic, -1 anti-paraholomorphic.
  int sign = 1;
};
std::string to_string(MapKind kind);

struct SectionAlongMap {
  Point source;
  Point target;
  Eigen::VectorXd components;
};

/// Order-2 data of f at a point.
struct MapPointData {
  Point source;
  Point target;
  /// jacobian(gamma, i) = d_i f^gamma.
  Eigen::MatrixXd jacobian;
  /// hessians[gamma](i, j) = d_i d_j f^gamma.
  std::vector<Eigen::MatrixXd> hessians;
};
MapPointData map_point_data(const SmoothMap& f, const Point& p);

/// Map data plus the local geometry of both metrics.
struct MapGeometry {
  MapPointData map;
  LocalMetric source;
  LocalMetric target;
};
MapGeometry map_geometry(const SmoothMap& f, const MetricField& g1, const MetricField& g2, const Point& p);

SectionAlongMap pushforward(const SmoothMap& f, const Point& p, const Eigen::VectorXd& X);
/// (f*g2)_ij = g2(f_* d_i, f_* d_j).
BilinearValue pullback_metric(const SmoothMap& f, const MetricField& g2, const Point& p);
/// 1/2 Tr_g1 (f*g2); signed, since the metrics are indefinite.
double energy_density(const SmoothMap& f, const MetricField& g1, const MetricField& g2, const Point& p);

/// alpha(X,Y)^c = X^i Y^j (d_i d_j f^c - Gamma^k_ij d_k f^c + Gamma'^c_ab d_i f^a d_j f^b).
Eigen::VectorXd second_fundamental_form(const MapGeometry& G, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);
SectionAlongMap second_fundamental_form(const SmoothMap& f, const MetricField& g1, const MetricField& g2,
                                        const Point& p, const Eigen::VectorXd& X, const Eigen::VectorXd& Y);
/// tau = g1^ij alpha(d_i, d_j).
Eigen::VectorXd tension_field(const MapGeometry& G);
SectionAlongMap tension_field(const SmoothMap& f, const MetricField& g1, const MetricField& g2, const Point& p);
CheckReport is_harmonic(const SmoothMap& f, const MetricField& g1, const MetricField& g2,
                        std::span<const Point> points, double tol);

/// Everything a map check needs: the map, its kind and both structures.
/// `source` and `target` may be bare metrics for the metric-only checks.
struct MapSetting {
  const SmoothMap& map;
  const AnyStructure& source;
  const AnyStructure& target;
  std::optional<MapKind> kind;
};

/// f_* o Psi_s = sign * Psi_t o f_* on coordinate fields, plus the
/// consequences of each kind (f_* xi = 0; image orthogonal to xi; eta_2 of
/// the image of ker eta_1 vanishes and f_* xi_1 is parallel to xi_2).
CheckReport check_paraholomorphic(const MapSetting& s, std::span<const Point> points, double tol);

/// (nabla'_{f_*X} Psi_t)(f_*Y), where Psi_t is the target structure tensor.
SectionAlongMap beta_along_map(const SmoothMap& f, const AnyStructure& target, const Point& p,
                               const Eigen::VectorXd& X, const Eigen::VectorXd& Y);

/// sign * Psi_t(tau) = f_*(div Psi_s) - sign * Tr_g1 beta.
CheckReport verify_tension_transfer(const MapSetting& s, std::span<const Point> points, double tol);
/// sign * Psi_t(alpha(X,Y)) + sign * beta(X,Y) = f_*((nabla_X Psi_s)Y) + alpha(X, Psi_s Y)
/// over coordinate pairs (and xi when the source is paracontact).
CheckReport verify_pointwise_transfer(const MapSetting& s, std::span<const Point> points, double tol);
/// Same identity at one point for given X, Y.
CheckReport verify_pointwise_transfer(const MapSetting& s, const Point& p, const Eigen::VectorXd& X,
                                      const Eigen::VectorXd& Y, double tol);

/// g_t(tau, xi_t) = 0 for maps into a paracontact target.
CheckReport verify_tension_vertical(const MapSetting& s, std::span<const Point> points, double tol);

/// alpha(X,Y) = alpha(phi X, phi Y) on coordinate pairs and alpha(X, xi) = 0.
CheckReport check_parapluriharmonic(const MapSetting& s, std::span<const Point> points, double tol);

/// f_*((nabla_X phi)Y) = -{q f_*X + p f_* phi X} eta(Y) and
/// sign * J alpha(X,Y) = -{q f_*X + p f_* phi X} eta(Y) + alpha(X, phi Y),
/// with (p, q) from extract_pq unless overridden.
CheckReport verify_normality_transfer(const MapSetting& s, std::span<const Point> points, double tol,
                                      std::optional<StructureFunctions> override_pq = std::nullopt);

/// lambda = eta_2(f_* xi_1). Throws MapError when f_* xi_1 is not parallel
/// to xi_2 within `tol` (scaled wedge residual).
double lambda_of_map(const SmoothMap& f, const ParacontactStructure& S1, const ParacontactStructure& S2,
                     const Point& p, double tol = 1e-8);
/// f_* xi_1 = lambda xi_2 and f* eta_2 = lambda eta_1.
CheckReport check_lambda_consistency(const MapSetting& s, std::span<const Point> points, double tol);

/// Over X, Y in the ker eta_1 basis d_j - eta_1(d_j) xi_1:
///   alpha(X, phi Y) - alpha(phi X, Y) = eta_2(f_*Y) f_*X - eta_2(f_*X) f_*Y
///   alpha(X, Y) - alpha(phi X, phi Y) = -eta_2(f_*X) phi_2(f_*Y)
CheckReport verify_pluriharmonic_obstruction(const MapSetting& s, std::span<const Point> points, double tol);
/// g_2(xi_2, f_*X) = 0 for X in the ker eta_1 basis.
CheckReport check_image_orthogonal(const MapSetting& s, std::span<const Point> points, double tol);

/// alpha(E_a, E_b) = alpha(E_b, E_a) with alpha taken as nabla'_X f_*Y - f_* nabla_X Y
/// on adapted frame fields.
CheckReport check_second_fundamental_form_symmetry(const MapSetting& s, std::span<const Point> points, double tol);
/// g1^ij alpha(d_i, d_j) against sum_a eps_a alpha(E_a, E_a).
CheckReport check_tension_trace_consistency(const MapSetting& s, std::span<const Point> points, double tol);
/// 1/2 Tr_g1 (f*g2) against the frame sum of g2(f_*E_a, f_*E_a).
CheckReport check_energy_density(const MapSetting& s, std::span<const Point> points, double tol);

}  // namespace parageo
