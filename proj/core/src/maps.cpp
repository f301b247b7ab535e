#include "parageo/maps.hpp"

#include <algorithm>
#include <cmath>

#include "parageo/errors.hpp"

namespace parageo {

namespace {

Eigen::VectorXd unit(Eigen::Index n, Eigen::Index i) { return Eigen::VectorXd::Unit(n, i); }

const TensorField& structure_field(const AnyStructure& s) {
  if (const auto* c = std::get_if<ParacontactStructure>(&s)) return c->phi();
  if (const auto* h = std::get_if<ParaHermitianStructure>(&s)) return h->J();
  throw MapError("a structure tensor is required but only a metric was given");
}

const ParacontactStructure& contact(const AnyStructure& s, const char* side) {
  if (const auto* c = std::get_if<ParacontactStructure>(&s)) return *c;
  throw MapError(std::string(side) + " must carry a paracontact structure");
}

const ParaHermitianStructure& hermitian(const AnyStructure& s, const char* side) {
  if (const auto* h = std::get_if<ParaHermitianStructure>(&s)) return *h;
  throw MapError(std::string(side) + " must carry a para-Hermitian structure");
}

void validate(const MapSetting& s) {
  if (s.map.source().name() != metric_of(s.source).chart().name()) {
    throw MapError("map source chart '" + s.map.source().name() + "' does not match the source structure");
  }
  if (s.map.target().name() != metric_of(s.target).chart().name()) {
    throw MapError("map target chart '" + s.map.target().name() + "' does not match the target structure");
  }
}

MapKind require_kind(const MapSetting& s) {
  validate(s);
  if (!s.kind) throw MapError("this check needs a map kind");
  switch (s.kind->tag) {
    case MapTag::kContactToHermitian:
      contact(s.source, "source");
      hermitian(s.target, "target");
      break;
    case MapTag::kHermitianToContact:
      hermitian(s.source, "source");
      contact(s.target, "target");
      break;
    case MapTag::kContactToContact:
      contact(s.source, "source");
      contact(s.target, "target");
      break;
  }
  if (s.kind->sign != 1 && s.kind->sign != -1) throw MapError("map kind sign must be +1 or -1");
  return *s.kind;
}

MapGeometry geometry(const MapSetting& s, const Point& p) {
  return map_geometry(s.map, metric_of(s.source), metric_of(s.target), p);
}

FrameJet source_frame_jet(const AnyStructure& s, const Point& p) {
  if (const auto* c = std::get_if<ParacontactStructure>(&s)) return phi_basis_jet(*c, p);
  if (const auto* h = std::get_if<ParaHermitianStructure>(&s)) return para_hermitian_frame_jet(*h, p);
  return orthonormal_frame_jet(std::get<MetricField>(s), p);
}

/// Alpha from its definition nabla'_X (f_*Y) - f_*(nabla_X Y) on jet fields.
Eigen::VectorXd alpha_by_definition(const MapGeometry& G, const JetTensor& X, const JetTensor& Y) {
  const auto& J = G.map.jacobian;
  const Eigen::Index n1 = J.cols(), n2 = J.rows();
  const Eigen::VectorXd x = X.values().col(0), y = Y.values().col(0);
  Eigen::MatrixXd dY(n1, n1);  // dY(j, i) = d_i Y^j
  for (Eigen::Index j = 0; j < n1; ++j)
    for (Eigen::Index i = 0; i < n1; ++i) dY(j, i) = Y(static_cast<std::size_t>(j)).grad(static_cast<std::size_t>(i));
  // X(f_*Y)^c = X^i (d_i d_j f^c Y^j + d_j f^c d_i Y^j)
  Eigen::VectorXd along(n2);
  for (Eigen::Index c = 0; c < n2; ++c) along(c) = x.dot(G.map.hessians[static_cast<std::size_t>(c)] * y);
  along += J * (dY * x);
  const Eigen::VectorXd fx = J * x, fy = J * y;
  const auto& Gt = G.target.gamma;
  for (Eigen::Index c = 0; c < n2; ++c)
    for (Eigen::Index a = 0; a < n2; ++a)
      for (Eigen::Index b = 0; b < n2; ++b)
        along(c) += Gt(static_cast<std::size_t>(c), static_cast<std::size_t>(a), static_cast<std::size_t>(b)) *
                    fx(a) * fy(b);
  const Eigen::VectorXd nabla_xy = covariant_derivative(Y, G.source.gamma, x);
  return along - J * nabla_xy;
}

double wedge_residual(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  double w = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    for (Eigen::Index j = i + 1; j < a.size(); ++j) w = std::max(w, std::abs(a(i) * b(j) - a(j) * b(i)));
  return w / (1.0 + max_abs(a) * max_abs(b));
}

/// The ker eta basis d_j - eta(d_j) xi.
std::vector<Eigen::VectorXd> horizontal_basis(const Eigen::VectorXd& xi, const Eigen::VectorXd& eta) {
  std::vector<Eigen::VectorXd> out;
  for (Eigen::Index j = 0; j < xi.size(); ++j) out.push_back(unit(xi.size(), j) - eta(j) * xi);
  return out;
}

}  // namespace

SmoothMap::SmoothMap(ChartPtr source, ChartPtr target, std::vector<Expression> components)
    : source_(std::move(source)), target_(std::move(target)), components_(std::move(components)) {
  if (!source_ || !target_) throw MapError("map needs source and target charts");
  if (components_.size() != target_->dimension()) {
    throw MapError("map has " + std::to_string(components_.size()) + " components but the target has dimension " +
                   std::to_string(target_->dimension()));
  }
  for (const auto& c : components_) {
    if (c.coordinate_bound() > source_->dimension()) throw MapError("map component uses an unknown coordinate");
  }
}

SmoothMap SmoothMap::parse(ChartPtr source, ChartPtr target, const std::vector<std::string>& components) {
  std::vector<Expression> parsed;
  for (const auto& c : components) parsed.push_back(parse_expression(c, *source));
  return SmoothMap(std::move(source), std::move(target), std::move(parsed));
}

Point SmoothMap::image(const Point& p) const { return map_point_data(*this, p).target; }

std::string to_string(MapKind kind) {
  std::string s = kind.sign < 0 ? "anti-" : "";
  switch (kind.tag) {
    case MapTag::kContactToHermitian: return s + "(phi,J)";
    case MapTag::kHermitianToContact: return s + "(J,phi)";
    case MapTag::kContactToContact: return s + "(phi1,phi2)";
  }
  return s;
}

MapPointData map_point_data(const SmoothMap& f, const Point& p) {
  if (p.chart().name() != f.source().name()) throw DomainError("point is not on the map's source chart");
  const auto n1 = static_cast<Eigen::Index>(f.source().dimension());
  const auto n2 = static_cast<Eigen::Index>(f.target().dimension());
  Eigen::MatrixXd jac(n2, n1);
  std::vector<Eigen::MatrixXd> hess;
  std::vector<double> image;
  for (Eigen::Index c = 0; c < n2; ++c) {
    const Jet2 j = eval_jet2(f.components()[static_cast<std::size_t>(c)], p);
    image.push_back(j.value());
    Eigen::MatrixXd H(n1, n1);
    for (Eigen::Index i = 0; i < n1; ++i) {
      jac(c, i) = j.grad(static_cast<std::size_t>(i));
      for (Eigen::Index k = 0; k < n1; ++k) H(i, k) = j.hess(static_cast<std::size_t>(i), static_cast<std::size_t>(k));
    }
    hess.push_back(std::move(H));
  }
  if (!f.target().contains(image)) {
    std::string where;
    for (std::size_t i = 0; i < image.size(); ++i) where += (i ? ", " : "") + std::to_string(image[i]);
    throw DomainError("map image (" + where + ") lies outside the target domain");
  }
  return {p, Point(f.target_ptr(), std::move(image)), std::move(jac), std::move(hess)};
}

MapGeometry map_geometry(const SmoothMap& f, const MetricField& g1, const MetricField& g2, const Point& p) {
  if (g1.chart().name() != f.source().name() || g2.chart().name() != f.target().name()) {
    throw MapError("metrics do not live on the map's charts");
  }
  auto data = map_point_data(f, p);
  auto src = local_metric(g1, p);
  auto tgt = local_metric(g2, data.target);
  return {std::move(data), std::move(src), std::move(tgt)};
}

SectionAlongMap pushforward(const SmoothMap& f, const Point& p, const Eigen::VectorXd& X) {
  auto d = map_point_data(f, p);
  if (X.size() != d.jacobian.cols()) throw Error("pushforward: vector has the wrong dimension");
  return {p, d.target, d.jacobian * X};
}

BilinearValue pullback_metric(const SmoothMap& f, const MetricField& g2, const Point& p) {
  if (g2.chart().name() != f.target().name()) throw MapError("metric does not live on the map's target chart");
  auto d = map_point_data(f, p);
  const Eigen::MatrixXd g = evaluate_tensor(g2.tensor(), d.target);
  return {p, d.jacobian.transpose() * g * d.jacobian};
}

double energy_density(const SmoothMap& f, const MetricField& g1, const MetricField& g2, const Point& p) {
  return 0.5 * metric_trace_bilinear(pullback_metric(f, g2, p), g1, p);
}

Eigen::VectorXd second_fundamental_form(const MapGeometry& G, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const auto& J = G.map.jacobian;
  const Eigen::Index n1 = J.cols(), n2 = J.rows();
  Eigen::VectorXd out(n2);
  for (Eigen::Index c = 0; c < n2; ++c) out(c) = X.dot(G.map.hessians[static_cast<std::size_t>(c)] * Y);
  Eigen::VectorXd gxy = Eigen::VectorXd::Zero(n1);
  const auto& Gs = G.source.gamma;
  for (Eigen::Index k = 0; k < n1; ++k)
    for (Eigen::Index i = 0; i < n1; ++i)
      for (Eigen::Index j = 0; j < n1; ++j)
        gxy(k) += Gs(static_cast<std::size_t>(k), static_cast<std::size_t>(i), static_cast<std::size_t>(j)) * X(i) * Y(j);
  out -= J * gxy;
  const Eigen::VectorXd fx = J * X, fy = J * Y;
  const auto& Gt = G.target.gamma;
  for (Eigen::Index c = 0; c < n2; ++c)
    for (Eigen::Index a = 0; a < n2; ++a)
      for (Eigen::Index b = 0; b < n2; ++b)
        out(c) += Gt(static_cast<std::size_t>(c), static_cast<std::size_t>(a), static_cast<std::size_t>(b)) * fx(a) * fy(b);
  return out;
}

SectionAlongMap second_fundamental_form(const SmoothMap& f, const MetricField& g1, const MetricField& g2,
                                        const Point& p, const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const auto G = map_geometry(f, g1, g2, p);
  if (X.size() != G.map.jacobian.cols() || Y.size() != G.map.jacobian.cols()) {
    throw Error("second_fundamental_form: vectors have the wrong dimension");
  }
  return {p, G.map.target, second_fundamental_form(G, X, Y)};
}

Eigen::VectorXd tension_field(const MapGeometry& G) {
  const Eigen::Index n1 = G.map.jacobian.cols();
  Eigen::VectorXd tau = Eigen::VectorXd::Zero(G.map.jacobian.rows());
  for (Eigen::Index i = 0; i < n1; ++i)
    for (Eigen::Index j = 0; j < n1; ++j) {
      if (G.source.inverse(i, j) == 0.0) continue;
      tau += G.source.inverse(i, j) * second_fundamental_form(G, unit(n1, i), unit(n1, j));
    }
  return tau;
}

SectionAlongMap tension_field(const SmoothMap& f, const MetricField& g1, const MetricField& g2, const Point& p) {
  const auto G = map_geometry(f, g1, g2, p);
  return {p, G.map.target, tension_field(G)};
}

CheckReport is_harmonic(const SmoothMap& f, const MetricField& g1, const MetricField& g2,
                        std::span<const Point> points, double tol) {
  ResidualTracker t("harmonic", tol);
  for (const auto& p : points) {
    const auto G = map_geometry(f, g1, g2, p);
    const Eigen::VectorXd tau = tension_field(G);
    // Scale by the traced second derivatives, the largest contribution to tau.
    Eigen::VectorXd hess_part(tau.size());
    for (Eigen::Index c = 0; c < tau.size(); ++c)
      hess_part(c) = G.source.inverse.cwiseProduct(G.map.hessians[static_cast<std::size_t>(c)]).sum();
    t.record("tau(f) = 0", max_abs(tau) / (1.0 + max_abs(hess_part)), p.coordinates());
  }
  return t.report();
}

CheckReport check_paraholomorphic(const MapSetting& s, std::span<const Point> points, double tol) {
  const MapKind kind = require_kind(s);
  ResidualTracker t("paraholomorphic", tol);
  const TensorField& psi_s = structure_field(s.source);
  const TensorField& psi_t = structure_field(s.target);
  for (const auto& p : points) {
    const auto d = map_point_data(s.map, p);
    const Eigen::MatrixXd& J = d.jacobian;
    const Eigen::MatrixXd lhs = J * evaluate_tensor(psi_s, p);
    const Eigen::MatrixXd rhs = kind.sign * evaluate_tensor(psi_t, d.target) * J;
    t.record("f_* Psi_s = sign Psi_t f_*", scaled_residual(lhs, rhs, term_scale(lhs, rhs)), p.coordinates());
    switch (kind.tag) {
      case MapTag::kContactToHermitian: {
        const Eigen::VectorXd xi = evaluate_tensor(contact(s.source, "source").xi(), p).col(0);
        const Eigen::VectorXd fxi = J * xi;
        t.record("f_* xi = 0", max_abs(fxi) / (1.0 + max_abs(J) * max_abs(xi)), p.coordinates());
        break;
      }
      case MapTag::kHermitianToContact: {
        const auto& S2 = contact(s.target, "target");
        const Eigen::VectorXd xi = evaluate_tensor(S2.xi(), d.target).col(0);
        const Eigen::VectorXd gxi = evaluate_tensor(S2.metric().tensor(), d.target) * xi;
        const Eigen::RowVectorXd pair = gxi.transpose() * J;
        t.record("g(f_* X, xi) = 0", max_abs(pair) / (1.0 + max_abs(gxi) * max_abs(J)), p.coordinates());
        break;
      }
      case MapTag::kContactToContact: {
        const auto& S1 = contact(s.source, "source");
        const auto& S2 = contact(s.target, "target");
        const Eigen::VectorXd xi1 = evaluate_tensor(S1.xi(), p).col(0);
        const Eigen::VectorXd eta1 = evaluate_tensor(S1.eta(), p).col(0);
        const Eigen::VectorXd xi2 = evaluate_tensor(S2.xi(), d.target).col(0);
        const Eigen::VectorXd eta2 = evaluate_tensor(S2.eta(), d.target).col(0);
        for (const auto& X : horizontal_basis(xi1, eta1)) {
          const Eigen::VectorXd fx = J * X;
          t.record("eta_2(f_* X) = 0 on ker eta_1", std::abs(eta2.dot(fx)) / (1.0 + max_abs(eta2) * max_abs(fx)),
                   p.coordinates());
        }
        t.record("f_* xi_1 parallel to xi_2", wedge_residual(J * xi1, xi2), p.coordinates());
        break;
      }
    }
  }
  return t.report();
}

SectionAlongMap beta_along_map(const SmoothMap& f, const AnyStructure& target, const Point& p,
                               const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  if (metric_of(target).chart().name() != f.target().name()) throw MapError("target structure is on another chart");
  const auto d = map_point_data(f, p);
  const auto m = local_metric(metric_of(target), d.target);
  const Eigen::MatrixXd nabla = covariant_derivative(structure_field(target).jets(d.target), m.gamma, d.jacobian * X);
  return {p, d.target, nabla * (d.jacobian * Y)};
}

CheckReport verify_tension_transfer(const MapSetting& s, std::span<const Point> points, double tol) {
  const MapKind kind = require_kind(s);
  ResidualTracker t("tension-transfer", tol);
  const TensorField& psi_s = structure_field(s.source);
  const TensorField& psi_t = structure_field(s.target);
  for (const auto& p : points) {
    const auto G = geometry(s, p);
    const Eigen::MatrixXd& J = G.map.jacobian;
    const Eigen::Index n1 = J.cols();
    const JetTensor psi_t_jets = psi_t.jets(G.map.target);
    const Eigen::MatrixXd psi_t_val = psi_t_jets.values();
    const Eigen::VectorXd lhs = kind.sign * (psi_t_val * tension_field(G));
    const Eigen::VectorXd fdiv = J * divergence_11(psi_s.jets(p), G.source);
    Eigen::VectorXd trace_beta = Eigen::VectorXd::Zero(J.rows());
    for (Eigen::Index i = 0; i < n1; ++i) {
      const Eigen::MatrixXd nabla = covariant_derivative(psi_t_jets, G.target.gamma, J.col(i));
      for (Eigen::Index j = 0; j < n1; ++j) trace_beta += G.source.inverse(i, j) * (nabla * J.col(j));
    }
    const Eigen::VectorXd rhs = fdiv - kind.sign * trace_beta;
    t.record("sign Psi_t(tau) = f_* div Psi_s - sign Tr beta",
             scaled_residual(lhs, rhs, term_scale(lhs, fdiv, trace_beta)), p.coordinates());
  }
  return t.report();
}

namespace {

void pointwise_transfer_at(ResidualTracker& t, const MapSetting& s, MapKind kind, const MapGeometry& G,
                           const Eigen::VectorXd& X, const Eigen::VectorXd& Y) {
  const Eigen::MatrixXd& J = G.map.jacobian;
  const JetTensor psi_s = structure_field(s.source).jets(G.map.source);
  const JetTensor psi_t = structure_field(s.target).jets(G.map.target);
  const Eigen::MatrixXd psi_s_val = psi_s.values();
  const Eigen::VectorXd a = kind.sign * (psi_t.values() * second_fundamental_form(G, X, Y));
  const Eigen::VectorXd b =
      kind.sign * (covariant_derivative(psi_t, G.target.gamma, J * X) * (J * Y));
  const Eigen::VectorXd c = J * (covariant_derivative(psi_s, G.source.gamma, X) * Y);
  const Eigen::VectorXd e = second_fundamental_form(G, X, psi_s_val * Y);
  t.record("sign Psi_t alpha(X,Y) + sign beta(X,Y) = f_*((nabla_X Psi_s)Y) + alpha(X, Psi_s Y)",
           scaled_residual(Eigen::VectorXd(a + b), Eigen::VectorXd(c + e), term_scale(a, b, c, e)),
           G.map.source.coordinates());
}

}  // namespace

CheckReport verify_pointwise_transfer(const MapSetting& s, std::span<const Point> points, double tol) {
  const MapKind kind = require_kind(s);
  ResidualTracker t("pointwise-transfer", tol);
  for (const auto& p : points) {
    const auto G = geometry(s, p);
    const Eigen::Index n1 = G.map.jacobian.cols();
    std::vector<Eigen::VectorXd> dirs;
    for (Eigen::Index i = 0; i < n1; ++i) dirs.push_back(unit(n1, i));
    if (const auto* c = std::get_if<ParacontactStructure>(&s.source)) dirs.push_back(evaluate_tensor(c->xi(), p).col(0));
    for (const auto& X : dirs)
      for (const auto& Y : dirs) pointwise_transfer_at(t, s, kind, G, X, Y);
  }
  return t.report();
}

CheckReport verify_pointwise_transfer(const MapSetting& s, const Point& p, const Eigen::VectorXd& X,
                                      const Eigen::VectorXd& Y, double tol) {
  const MapKind kind = require_kind(s);
  ResidualTracker t("pointwise-transfer", tol);
  const auto G = geometry(s, p);
  if (X.size() != G.map.jacobian.cols() || Y.size() != G.map.jacobian.cols()) {
    throw Error("verify_pointwise_transfer: vectors have the wrong dimension");
  }
  pointwise_transfer_at(t, s, kind, G, X, Y);
  return t.report();
}

CheckReport verify_tension_vertical(const MapSetting& s, std::span<const Point> points, double tol) {
  validate(s);
  const auto& S2 = contact(s.target, "target");
  ResidualTracker t("tension-vertical", tol);
  for (const auto& p : points) {
    const auto G = geometry(s, p);
    const Eigen::VectorXd tau = tension_field(G);
    const Eigen::VectorXd gxi = G.target.g * evaluate_tensor(S2.xi(), G.map.target).col(0);
    t.record("g(tau, xi) = 0", std::abs(gxi.dot(tau)) / (1.0 + max_abs(gxi) * max_abs(tau)), p.coordinates());
  }
  return t.report();
}

CheckReport check_parapluriharmonic(const MapSetting& s, std::span<const Point> points, double tol) {
  validate(s);
  const auto& S1 = contact(s.source, "source");
  ResidualTracker t("parapluriharmonic", tol);
  for (const auto& p : points) {
    const auto G = geometry(s, p);
    const Eigen::Index n1 = G.map.jacobian.cols();
    const Eigen::MatrixXd phi = evaluate_tensor(S1.phi(), p);
    const Eigen::VectorXd xi = evaluate_tensor(S1.xi(), p).col(0);
    for (Eigen::Index i = 0; i < n1; ++i) {
      const Eigen::VectorXd X = unit(n1, i);
      for (Eigen::Index j = 0; j < n1; ++j) {
        const Eigen::VectorXd Y = unit(n1, j);
        const Eigen::VectorXd a = second_fundamental_form(G, X, Y);
        const Eigen::VectorXd b = second_fundamental_form(G, phi * X, phi * Y);
        t.record("alpha(X,Y) = alpha(phi X, phi Y)", scaled_residual(a, b, term_scale(a, b)), p.coordinates());
      }
      const Eigen::VectorXd ax = second_fundamental_form(G, X, xi);
      t.record("alpha(X, xi) = 0", max_abs(ax) / (1.0 + max_abs(G.map.jacobian)), p.coordinates());
    }
  }
  return t.report();
}

CheckReport verify_normality_transfer(const MapSetting& s, std::span<const Point> points, double tol,
                                      std::optional<StructureFunctions> override_pq) {
  const MapKind kind = require_kind(s);
  if (kind.tag != MapTag::kContactToHermitian) throw MapError("normality transfer needs a (phi,J) map");
  const auto& S1 = contact(s.source, "source");
  const auto& S2 = hermitian(s.target, "target");
  ResidualTracker t("normality-transfer", tol);
  if (override_pq) t.note("structure functions overridden");
  for (const auto& p : points) {
    const auto G = geometry(s, p);
    const auto L = local_paracontact(S1, p);
    const auto [pf, qf] = override_pq ? *override_pq : extract_pq(L);
    const Eigen::MatrixXd& J = G.map.jacobian;
    const Eigen::MatrixXd Jt = evaluate_tensor(S2.J(), G.map.target);
    const Eigen::Index n1 = J.cols();
    std::vector<Eigen::VectorXd> ys;
    for (Eigen::Index j = 0; j < n1; ++j) ys.push_back(unit(n1, j));
    ys.push_back(L.xi);
    for (Eigen::Index i = 0; i < n1; ++i) {
      const Eigen::VectorXd X = unit(n1, i);
      const Eigen::MatrixXd nphi = covariant_derivative(L.phi_jets, L.metric.gamma, X);
      const Eigen::VectorXd fx = J * X, fphix = J * (L.phi * X);
      for (const auto& Y : ys) {
        const Eigen::VectorXd common = -(qf * fx + pf * fphix) * L.eta.dot(Y);
        const Eigen::VectorXd lhs2 = J * (nphi * Y);
        t.record("f_*((nabla_X phi)Y) = -{q f_*X + p f_* phi X} eta(Y)",
                 scaled_residual(lhs2, common, term_scale(lhs2, common)), p.coordinates());
        const Eigen::VectorXd lhs3 = kind.sign * (Jt * second_fundamental_form(G, X, Y));
        const Eigen::VectorXd a = second_fundamental_form(G, X, L.phi * Y);
        t.record("sign J alpha(X,Y) = -{q f_*X + p f_* phi X} eta(Y) + alpha(X, phi Y)",
                 scaled_residual(lhs3, Eigen::VectorXd(common + a), term_scale(lhs3, common, a)), p.coordinates());
      }
    }
  }
  return t.report();
}

double lambda_of_map(const SmoothMap& f, const ParacontactStructure& S1, const ParacontactStructure& S2,
                     const Point& p, double tol) {
  const auto d = map_point_data(f, p);
  const Eigen::VectorXd fxi = d.jacobian * evaluate_tensor(S1.xi(), p).col(0);
  const Eigen::VectorXd xi2 = evaluate_tensor(S2.xi(), d.target).col(0);
  const double w = wedge_residual(fxi, xi2);
  if (!(w <= tol)) throw MapError("f_* xi_1 is not parallel to xi_2 (residual " + std::to_string(w) + ")");
  return evaluate_tensor(S2.eta(), d.target).col(0).dot(fxi);
}

CheckReport check_lambda_consistency(const MapSetting& s, std::span<const Point> points, double tol) {
  validate(s);
  const auto& S1 = contact(s.source, "source");
  const auto& S2 = contact(s.target, "target");
  ResidualTracker t("lambda", tol);
  for (const auto& p : points) {
    const auto d = map_point_data(s.map, p);
    const Eigen::VectorXd xi1 = evaluate_tensor(S1.xi(), p).col(0);
    const Eigen::VectorXd eta1 = evaluate_tensor(S1.eta(), p).col(0);
    const Eigen::VectorXd xi2 = evaluate_tensor(S2.xi(), d.target).col(0);
    const Eigen::VectorXd eta2 = evaluate_tensor(S2.eta(), d.target).col(0);
    const Eigen::VectorXd fxi = d.jacobian * xi1;
    const double lambda = eta2.dot(fxi);
    const Eigen::VectorXd lxi = lambda * xi2;
    t.record("f_* xi_1 = lambda xi_2", scaled_residual(fxi, lxi, term_scale(fxi, lxi)), p.coordinates());
    const Eigen::VectorXd pull = d.jacobian.transpose() * eta2;
    const Eigen::VectorXd leta = lambda * eta1;
    t.record("f* eta_2 = lambda eta_1", scaled_residual(pull, leta, term_scale(pull, leta)), p.coordinates());
  }
  return t.report();
}

CheckReport verify_pluriharmonic_obstruction(const MapSetting& s, std::span<const Point> points, double tol) {
  validate(s);
  const auto& S1 = contact(s.source, "source");
  const auto& S2 = contact(s.target, "target");
  ResidualTracker t("pluriharmonic-obstruction", tol);
  double obstruction = 0.0;
  for (const auto& p : points) {
    const auto G = geometry(s, p);
    const Eigen::MatrixXd& J = G.map.jacobian;
    const Eigen::MatrixXd phi1 = evaluate_tensor(S1.phi(), p);
    const Eigen::VectorXd xi1 = evaluate_tensor(S1.xi(), p).col(0);
    const Eigen::VectorXd eta1 = evaluate_tensor(S1.eta(), p).col(0);
    const Eigen::MatrixXd phi2 = evaluate_tensor(S2.phi(), G.map.target);
    const Eigen::VectorXd eta2 = evaluate_tensor(S2.eta(), G.map.target).col(0);
    const auto basis = horizontal_basis(xi1, eta1);
    for (const auto& X : basis) {
      const Eigen::VectorXd fx = J * X;
      obstruction = std::max(obstruction, std::abs(eta2.dot(fx)));
      for (const auto& Y : basis) {
        const Eigen::VectorXd fy = J * Y;
        const Eigen::VectorXd l5 = second_fundamental_form(G, X, phi1 * Y) - second_fundamental_form(G, phi1 * X, Y);
        const Eigen::VectorXd r5a = eta2.dot(fy) * fx, r5b = eta2.dot(fx) * fy;
        t.record("alpha(X, phi Y) - alpha(phi X, Y) = eta_2(f_*Y) f_*X - eta_2(f_*X) f_*Y",
                 scaled_residual(l5, Eigen::VectorXd(r5a - r5b), term_scale(l5, r5a, r5b)), p.coordinates());
        const Eigen::VectorXd a = second_fundamental_form(G, X, Y);
        const Eigen::VectorXd b = second_fundamental_form(G, phi1 * X, phi1 * Y);
        const Eigen::VectorXd r6 = -eta2.dot(fx) * (phi2 * fy);
        t.record("alpha(X,Y) - alpha(phi X, phi Y) = -eta_2(f_*X) phi_2(f_*Y)",
                 scaled_residual(Eigen::VectorXd(a - b), r6, term_scale(a, b, r6)), p.coordinates());
      }
    }
  }
  char buf[64];
  std::snprintf(buf, sizeof buf, "max |eta_2(f_* X)| on ker eta_1: %.6e", obstruction);
  t.note(buf);
  return t.report();
}

CheckReport check_image_orthogonal(const MapSetting& s, std::span<const Point> points, double tol) {
  validate(s);
  const auto& S1 = contact(s.source, "source");
  const auto& S2 = contact(s.target, "target");
  ResidualTracker t("xi-orthogonality", tol);
  for (const auto& p : points) {
    const auto d = map_point_data(s.map, p);
    const Eigen::VectorXd xi1 = evaluate_tensor(S1.xi(), p).col(0);
    const Eigen::VectorXd eta1 = evaluate_tensor(S1.eta(), p).col(0);
    const Eigen::VectorXd gxi2 =
        evaluate_tensor(S2.metric().tensor(), d.target) * evaluate_tensor(S2.xi(), d.target).col(0);
    for (const auto& X : horizontal_basis(xi1, eta1)) {
      const Eigen::VectorXd fx = d.jacobian * X;
      t.record("g_2(xi_2, f_* X) = 0 on ker eta_1", std::abs(gxi2.dot(fx)) / (1.0 + max_abs(gxi2) * max_abs(fx)),
               p.coordinates());
    }
  }
  return t.report();
}

CheckReport check_second_fundamental_form_symmetry(const MapSetting& s, std::span<const Point> points, double tol) {
  validate(s);
  ResidualTracker t("second-fundamental-form-symmetry", tol);
  for (const auto& p : points) {
    const auto G = geometry(s, p);
    const FrameJet F = source_frame_jet(s.source, p);
    for (std::size_t a = 0; a < F.vectors.size(); ++a) {
      for (std::size_t b = 0; b < F.vectors.size(); ++b) {
        const Eigen::VectorXd ab = alpha_by_definition(G, F.vectors[a], F.vectors[b]);
        const Eigen::VectorXd ba = alpha_by_definition(G, F.vectors[b], F.vectors[a]);
        t.record("alpha(X,Y) = alpha(Y,X)", scaled_residual(ab, ba, term_scale(ab, ba)), p.coordinates());
        const Eigen::VectorXd coord =
            second_fundamental_form(G, F.vectors[a].values().col(0), F.vectors[b].values().col(0));
        t.record("definition = coordinate formula", scaled_residual(ab, coord, term_scale(ab, coord)),
                 p.coordinates());
      }
    }
  }
  return t.report();
}

CheckReport check_tension_trace_consistency(const MapSetting& s, std::span<const Point> points, double tol) {
  validate(s);
  ResidualTracker t("tension-trace-consistency", tol);
  for (const auto& p : points) {
    const auto G = geometry(s, p);
    const Eigen::VectorXd tau = tension_field(G);
    std::vector<FrameValue> frames{orthonormal_frame(metric_of(s.source), p)};
    if (!std::holds_alternative<MetricField>(s.source)) frames.push_back(source_frame_jet(s.source, p).value(p));
    for (const auto& F : frames) {
      Eigen::VectorXd sum = Eigen::VectorXd::Zero(tau.size());
      double scale = 0.0;
      for (std::size_t a = 0; a < F.vectors.size(); ++a) {
        const Eigen::VectorXd term = F.signs[a] * second_fundamental_form(G, F.vectors[a], F.vectors[a]);
        scale = std::max(scale, max_abs(term));
        sum += term;
      }
      t.record("g^ij alpha_ij = sum eps_a alpha(E_a, E_a)", scaled_residual(tau, sum, std::max(scale, max_abs(tau))),
               p.coordinates());
    }
  }
  return t.report();
}

CheckReport check_energy_density(const MapSetting& s, std::span<const Point> points, double tol) {
  validate(s);
  ResidualTracker t("energy-density", tol);
  const MetricField& g1 = metric_of(s.source);
  const MetricField& g2 = metric_of(s.target);
  for (const auto& p : points) {
    const double e = energy_density(s.map, g1, g2, p);
    const auto d = map_point_data(s.map, p);
    const Eigen::MatrixXd g = evaluate_tensor(g2.tensor(), d.target);
    const FrameValue F = orthonormal_frame(g1, p);
    double sum = 0.0, scale = std::abs(e);
    for (std::size_t a = 0; a < F.vectors.size(); ++a) {
      const Eigen::VectorXd fe = d.jacobian * F.vectors[a];
      const double term = 0.5 * F.signs[a] * fe.dot(g * fe);
      scale = std::max(scale, std::abs(term));
      sum += term;
    }
    t.record("1/2 Tr(f*g) = 1/2 sum eps_a g(f_*E_a, f_*E_a)", scaled_residual(e, sum, scale), p.coordinates());
  }
  return t.report();
}

}  // namespace parageo
