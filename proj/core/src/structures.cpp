#include "parageo/structures.hpp"

#include <algorithm>
#include <cmath>

#include "frame_builder.hpp"
#include "parageo/errors.hpp"

namespace parageo {

using detail::JetVec;

namespace {

void require_same_chart(const Chart& a, const Chart& b, const char* what) {
  if (a.name() != b.name()) throw Error(std::string(what) + " is defined on chart '" + a.name() +
                                        "' but the metric lives on '" + b.name() + "'");
}

Eigen::VectorXd unit(std::size_t n, std::size_t i) {
  return Eigen::VectorXd::Unit(static_cast<Eigen::Index>(n), static_cast<Eigen::Index>(i));
}

/// nabla_{d_i} phi for every coordinate direction.
std::vector<Eigen::MatrixXd> nabla_endo(const JetTensor& T, const ChristoffelValue& G) {
  std::vector<Eigen::MatrixXd> out;
  for (std::size_t i = 0; i < T.dim; ++i) out.push_back(covariant_derivative(T, G, unit(T.dim, i)));
  return out;
}

/// Column i is nabla_{d_i} xi.
Eigen::MatrixXd nabla_vector(const JetTensor& V, const ChristoffelValue& G) {
  Eigen::MatrixXd A(V.dim, V.dim);
  for (std::size_t i = 0; i < V.dim; ++i) A.col(static_cast<Eigen::Index>(i)) = covariant_derivative(V, G, unit(V.dim, i));
  return A;
}

/// The scalar field w(V) as a jet.
Jet2 contract(const JetTensor& w, const JetTensor& V) {
  Jet2 s = Jet2::constant(w.dim, 0.0);
  for (std::size_t k = 0; k < w.dim; ++k) s += w(k) * V(k);
  return s;
}

/// Directional derivative X(f) at the point.
double derivative_along(const JetTensor& X, const Jet2& f) {
  double s = 0.0;
  for (std::size_t i = 0; i < X.dim; ++i) s += X(i).value() * f.grad(i);
  return s;
}

JetTensor coordinate_field(std::size_t n, std::size_t i) {
  return detail::tensor_of(detail::coordinate_vector(n, i));
}

double frame_pairing_residual(const FrameValue& F, const Eigen::MatrixXd& g) {
  double worst = 0.0;
  for (std::size_t a = 0; a < F.vectors.size(); ++a) {
    for (std::size_t b = 0; b < F.vectors.size(); ++b) {
      const double want = a == b ? F.signs[a] : 0.0;
      worst = std::max(worst, std::abs(F.vectors[a].dot(g * F.vectors[b]) - want));
    }
  }
  return worst;
}

}  // namespace

ParacontactStructure::ParacontactStructure(TensorField phi, TensorField xi, TensorField eta, MetricField g)
    : phi_(std::move(phi)), xi_(std::move(xi)), eta_(std::move(eta)), g_(std::move(g)) {
  if (phi_.upper() != 1 || phi_.lower() != 1) throw Error("phi must be a (1,1) tensor field");
  if (xi_.upper() != 1 || xi_.lower() != 0) throw Error("xi must be a vector field");
  if (eta_.upper() != 0 || eta_.lower() != 1) throw Error("eta must be a 1-form");
  require_same_chart(phi_.chart(), g_.chart(), "phi");
  require_same_chart(xi_.chart(), g_.chart(), "xi");
  require_same_chart(eta_.chart(), g_.chart(), "eta");
  if (g_.dimension() % 2 == 0) throw Error("a paracontact structure needs an odd-dimensional chart");
}

ParaHermitianStructure::ParaHermitianStructure(TensorField J, MetricField h) : J_(std::move(J)), h_(std::move(h)) {
  if (J_.upper() != 1 || J_.lower() != 1) throw Error("J must be a (1,1) tensor field");
  require_same_chart(J_.chart(), h_.chart(), "J");
  if (h_.dimension() % 2 != 0) throw Error("a para-Hermitian structure needs an even-dimensional chart");
}

const MetricField& metric_of(const AnyStructure& s) {
  return std::visit(
      [](const auto& v) -> const MetricField& {
        if constexpr (std::is_same_v<std::decay_t<decltype(v)>, MetricField>) {
          return v;
        } else {
          return v.metric();
        }
      },
      s);
}

LocalParacontact local_paracontact(const ParacontactStructure& S, const Point& p) {
  LocalParacontact L{p, local_metric(S.metric(), p), S.phi().jets(p), S.xi().jets(p), S.eta().jets(p), {}, {}, {}};
  L.phi = L.phi_jets.values();
  L.xi = L.xi_jets.values().col(0);
  L.eta = L.eta_jets.values().col(0);
  return L;
}

LocalParaHermitian local_para_hermitian(const ParaHermitianStructure& S, const Point& p) {
  LocalParaHermitian L{p, local_metric(S.metric(), p), S.J().jets(p), {}};
  L.J = L.J_jets.values();
  return L;
}

CheckReport check_almost_paracontact(const ParacontactStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("almost-paracontact", tol);
  const auto n = static_cast<Eigen::Index>(S.dimension());
  const auto I = Eigen::MatrixXd::Identity(n, n);
  for (const auto& p : points) {
    const auto phi = evaluate_tensor(S.phi(), p);
    const Eigen::VectorXd xi = evaluate_tensor(S.xi(), p).col(0);
    const Eigen::VectorXd eta = evaluate_tensor(S.eta(), p).col(0);
    const Eigen::MatrixXd phi2 = phi * phi;
    const Eigen::MatrixXd exi = xi * eta.transpose();
    t.record("phi^2 = Id - eta(x)xi", scaled_residual(phi2, I - exi, term_scale(phi2, I, exi)), p.coordinates());
    t.record("eta(xi) = 1", scaled_residual(eta.dot(xi), 1.0, 1.0), p.coordinates());
    const Eigen::VectorXd phixi = phi * xi;
    t.record("phi xi = 0", max_abs(phixi) / (1.0 + term_scale(phi) * term_scale(xi)), p.coordinates());
    const Eigen::RowVectorXd etaphi = eta.transpose() * phi;
    t.record("eta o phi = 0", max_abs(etaphi) / (1.0 + term_scale(phi) * term_scale(eta)), p.coordinates());
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(phi);
    const auto& sv = svd.singularValues();
    const double cut = 1e-8 * (sv.size() ? sv(0) : 0.0);
    Eigen::Index rank = 0;
    for (Eigen::Index i = 0; i < sv.size(); ++i) rank += sv(i) > cut ? 1 : 0;
    t.record("rank phi = 2n", static_cast<double>(std::abs(rank - (n - 1))), p.coordinates());
    t.record("equal +1/-1 eigenspaces (tr phi = 0)", std::abs(phi.trace()) / (1.0 + term_scale(phi)),
             p.coordinates());
  }
  return t.report();
}

CheckReport check_compatible_metric(const ParacontactStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("compatible-metric", tol);
  const int half = static_cast<int>(S.half_rank());
  for (const auto& p : points) {
    const auto phi = evaluate_tensor(S.phi(), p);
    const Eigen::VectorXd xi = evaluate_tensor(S.xi(), p).col(0);
    const Eigen::VectorXd eta = evaluate_tensor(S.eta(), p).col(0);
    const auto g = evaluate_tensor(S.metric().tensor(), p);
    const Eigen::MatrixXd lhs = phi.transpose() * g * phi;
    const Eigen::MatrixXd ee = eta * eta.transpose();
    t.record("g(phi X, phi Y) = -g(X,Y) + eta(X)eta(Y)", scaled_residual(lhs, ee - g, term_scale(lhs, g, ee)),
             p.coordinates());
    const Eigen::VectorXd gxi = g * xi;
    t.record("g(X, xi) = eta(X)", scaled_residual(gxi, eta, term_scale(gxi, eta)), p.coordinates());
    const Eigen::MatrixXd a = phi.transpose() * g;
    const Eigen::MatrixXd b = g * phi;
    t.record("g(phi X, Y) = -g(X, phi Y)", scaled_residual(a, -b, term_scale(a, b)), p.coordinates());
    const Signature s = signature_of(g);
    t.record("signature (n+1, n)", std::abs(s.positive - (half + 1)) + std::abs(s.negative - half), p.coordinates());
  }
  return t.report();
}

CheckReport check_paracontact_metric(const ParacontactStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("paracontact-metric", tol);
  for (const auto& p : points) {
    const Eigen::MatrixXd deta = exterior_derivative_1form(S.eta().jets(p));
    const Eigen::MatrixXd gphi = evaluate_tensor(S.metric().tensor(), p) * evaluate_tensor(S.phi(), p);
    t.record("d eta(X, Y) = g(X, phi Y)", scaled_residual(deta, gphi, term_scale(deta, gphi)), p.coordinates());
  }
  return t.report();
}

Eigen::VectorXd nijenhuis_paracontact(const LocalParacontact& L, const JetTensor& X, const JetTensor& Y) {
  const JetTensor phiX = detail::tensor_of(detail::apply(L.phi_jets, X.c));
  const JetTensor phiY = detail::tensor_of(detail::apply(L.phi_jets, Y.c));
  const Eigen::VectorXd xy = lie_bracket(X, Y);
  const Eigen::VectorXd torsion = L.phi * (L.phi * xy) + lie_bracket(phiX, phiY) -
                                  L.phi * lie_bracket(phiX, Y) - L.phi * lie_bracket(X, phiY);
  const double deta = 0.5 * (derivative_along(X, contract(L.eta_jets, Y)) -
                             derivative_along(Y, contract(L.eta_jets, X)) - L.eta.dot(xy));
  return torsion - 2.0 * deta * L.xi;
}

VectorValue nijenhuis_paracontact(const ParacontactStructure& S, const Point& p, const TensorField& X,
                                  const TensorField& Y) {
  if (X.upper() != 1 || X.lower() != 0 || Y.upper() != 1 || Y.lower() != 0) {
    throw Error("nijenhuis_paracontact needs vector field arguments");
  }
  return {p, nijenhuis_paracontact(local_paracontact(S, p), X.jets(p), Y.jets(p))};
}

CheckReport check_normal(const ParacontactStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("normal", tol);
  const std::size_t n = S.dimension();
  for (const auto& p : points) {
    const auto L = local_paracontact(S, p);
    double scale = 0.0;
    for (const auto& c : L.phi_jets.c) {
      scale = std::max(scale, std::abs(c.value()));
      for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(c.grad(i)));
    }
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i + 1; j < n; ++j) {
        const Eigen::VectorXd N = nijenhuis_paracontact(L, coordinate_field(n, i), coordinate_field(n, j));
        t.record("N_phi(d_i, d_j) = 0", max_abs(N) / (1.0 + scale * scale), p.coordinates());
      }
    }
  }
  return t.report();
}

StructureFunctions extract_pq(const LocalParacontact& L) {
  const Eigen::MatrixXd A = nabla_vector(L.xi_jets, L.metric.gamma);
  return {0.5 * A.trace(), 0.5 * (L.phi * A).trace()};
}

StructureFunctions extract_pq(const ParacontactStructure& S, const Point& p) {
  return extract_pq(local_paracontact(S, p));
}

CheckReport check_structure_functions(const ParacontactStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("structure-functions", tol);
  const std::size_t n = S.dimension();
  for (const auto& p : points) {
    const auto L = local_paracontact(S, p);
    const auto [pf, qf] = extract_pq(L);
    const auto& g = L.metric.g;
    const auto nphi = nabla_endo(L.phi_jets, L.metric.gamma);
    const Eigen::MatrixXd A = nabla_vector(L.xi_jets, L.metric.gamma);
    const Eigen::MatrixXd gphiXY = L.phi.transpose() * g;  // (i,j) -> g(phi d_i, d_j)
    for (std::size_t i = 0; i < n; ++i) {
      const auto ii = static_cast<Eigen::Index>(i);
      const Eigen::VectorXd e = unit(n, i);
      for (std::size_t j = 0; j < n; ++j) {
        const auto jj = static_cast<Eigen::Index>(j);
        const Eigen::VectorXd lhs = nphi[i].col(jj);
        const Eigen::VectorXd t1 = qf * (g(ii, jj) * L.xi - L.eta(jj) * e);
        const Eigen::VectorXd t2 = pf * (gphiXY(ii, jj) * L.xi - L.eta(jj) * L.phi.col(ii));
        t.record("(nabla_X phi)Y = q(g(X,Y)xi - eta(Y)X) + p(g(phi X,Y)xi - eta(Y)phi X)",
                 scaled_residual(lhs, Eigen::VectorXd(t1 + t2), term_scale(lhs, t1, t2)), p.coordinates());
      }
      const Eigen::VectorXd lhs = A.col(ii);
      const Eigen::VectorXd t1 = pf * (e - L.eta(ii) * L.xi);
      const Eigen::VectorXd t2 = qf * L.phi.col(ii);
      t.record("nabla_X xi = p(X - eta(X)xi) + q phi X",
               scaled_residual(lhs, Eigen::VectorXd(t1 + t2), term_scale(lhs, t1, t2)), p.coordinates());
    }
  }
  return t.report();
}

CheckReport check_para_sasakian(const ParacontactStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("para-sasakian", tol);
  const std::size_t n = S.dimension();
  for (const auto& p : points) {
    const auto L = local_paracontact(S, p);
    const auto nphi = nabla_endo(L.phi_jets, L.metric.gamma);
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < n; ++j) {
        const auto ii = static_cast<Eigen::Index>(i), jj = static_cast<Eigen::Index>(j);
        const Eigen::VectorXd lhs = nphi[i].col(jj);
        const Eigen::VectorXd rhs = -L.metric.g(ii, jj) * L.xi + L.eta(jj) * unit(n, i);
        t.record("(nabla_X phi)Y = -g(X,Y)xi + eta(Y)X", scaled_residual(lhs, rhs, term_scale(lhs, rhs)),
                 p.coordinates());
      }
    }
  }
  return t.report();
}

CheckReport check_k_paracontact(const ParacontactStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("k-paracontact", tol);
  for (const auto& p : points) {
    const auto L = local_paracontact(S, p);
    const Eigen::MatrixXd A = nabla_vector(L.xi_jets, L.metric.gamma);
    t.record("nabla_X xi = -phi X", scaled_residual(A, Eigen::MatrixXd(-L.phi), term_scale(A, L.phi)),
             p.coordinates());
    const Eigen::VectorXd nxx = A * L.xi;
    t.record("nabla_xi xi = 0", max_abs(nxx) / (1.0 + term_scale(A) * term_scale(L.xi)), p.coordinates());
  }
  return t.report();
}

std::string to_string(StructureClass c) {
  switch (c) {
    case StructureClass::kParacosymplectic: return "paracosymplectic";
    case StructureClass::kParaSasakian: return "para-Sasakian";
    case StructureClass::kOtherNormal: return "other-normal";
    case StructureClass::kNotNormal: return "not-normal";
  }
  return "unknown";
}

StructureClassification classify_normal_3(const ParacontactStructure& S, std::span<const Point> points, double tol) {
  if (S.dimension() != 3) throw Error("classify_normal_3 needs a 3-dimensional structure");
  if (points.empty()) throw Error("classify_normal_3 needs at least one sample point");
  StructureClassification out;
  out.normal_residual = check_normal(S, points, tol).max_residual;
  std::vector<double> ps, qs;
  for (const auto& p : points) {
    const auto pq = extract_pq(S, p);
    ps.push_back(pq.p);
    qs.push_back(pq.q);
  }
  // Sorting first makes the floating-point sums independent of sample order.
  std::sort(ps.begin(), ps.end());
  std::sort(qs.begin(), qs.end());
  double sp = 0.0, sq = 0.0;
  for (double v : ps) sp += v;
  for (double v : qs) sq += v;
  out.p = sp / static_cast<double>(ps.size());
  out.q = sq / static_cast<double>(qs.size());
  out.spread = std::max(ps.back() - ps.front(), qs.back() - qs.front());
  if (!(out.normal_residual <= tol)) {
    out.tag = StructureClass::kNotNormal;
  } else if (!(out.spread <= tol)) {
    out.tag = StructureClass::kOtherNormal;
  } else if (std::abs(out.p) <= tol && std::abs(out.q) <= tol) {
    out.tag = StructureClass::kParacosymplectic;
  } else if (std::abs(out.p) <= tol && std::abs(out.q + 1.0) <= tol) {
    out.tag = StructureClass::kParaSasakian;
  } else {
    out.tag = StructureClass::kOtherNormal;
  }
  return out;
}

FrameJet phi_basis_jet(const ParacontactStructure& S, const Point& p) {
  const auto L = local_paracontact(S, p);
  detail::FrameBuilder fb(L.metric.jets);
  const std::size_t half = S.half_rank();
  if (fb.add(L.xi_jets.c) != 1) throw FrameError("xi is not spacelike");
  std::vector<JetVec> xs, pxs;
  for (std::size_t i = 0; i < half; ++i) {
    auto w = fb.best_candidate();
    if (!w) throw FrameError("no spacelike seed in ker eta");
    if (fb.inner(*w, *w).value() < 0.0) w = detail::apply(L.phi_jets, *w);
    const Jet2 q = fb.inner(*w, *w);
    if (!(q.value() > detail::FrameBuilder::kPivotFloor)) throw FrameError("no spacelike seed in ker eta");
    JetVec x(w->size());
    const Jet2 len = sqrt(q);
    for (std::size_t k = 0; k < x.size(); ++k) x[k] = divide((*w)[k], len);
    JetVec px = detail::apply(L.phi_jets, x);
    if (std::abs(fb.inner(px, px).value() + 1.0) > 1e-8) throw FrameError("phi X is not a unit timelike vector");
    fb.push(x, 1);
    fb.push(px, -1);
    xs.push_back(std::move(x));
    pxs.push_back(std::move(px));
  }
  FrameJet F;
  for (auto& x : xs) {
    F.vectors.push_back(detail::tensor_of(x));
    F.signs.push_back(1);
  }
  for (auto& x : pxs) {
    F.vectors.push_back(detail::tensor_of(x));
    F.signs.push_back(-1);
  }
  F.vectors.push_back(detail::tensor_of(fb.vectors().front()));
  F.signs.push_back(1);
  return F;
}

FrameValue phi_basis(const ParacontactStructure& S, const Point& p) { return phi_basis_jet(S, p).value(p); }

CheckReport check_para_hermitian(const ParaHermitianStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("para-hermitian", tol);
  const auto n = static_cast<Eigen::Index>(S.dimension());
  const int half = static_cast<int>(S.half_rank());
  const auto I = Eigen::MatrixXd::Identity(n, n);
  for (const auto& p : points) {
    const auto J = evaluate_tensor(S.J(), p);
    const auto h = evaluate_tensor(S.metric().tensor(), p);
    const Eigen::MatrixXd J2 = J * J;
    t.record("J^2 = Id", scaled_residual(J2, I, term_scale(J2, I)), p.coordinates());
    t.record("equal-rank eigenbundles (tr J = 0)", std::abs(J.trace()) / (1.0 + term_scale(J)), p.coordinates());
    const Eigen::MatrixXd a = J.transpose() * h;
    const Eigen::MatrixXd b = h * J;
    t.record("h(JX, Y) = -h(X, JY)", scaled_residual(a, -b, term_scale(a, b)), p.coordinates());
    const Signature s = signature_of(h);
    t.record("signature (m, m)", std::abs(s.positive - half) + std::abs(s.negative - half), p.coordinates());
  }
  return t.report();
}

namespace {

JetTensor fundamental_form_jets(const LocalParaHermitian& L) {
  const std::size_t n = L.J_jets.dim;
  JetTensor F{0, 2, n, std::vector<Jet2>(n * n, Jet2::constant(n, 0.0))};
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t m = 0; m < n; ++m) F(i, j) += L.J_jets(m, i) * L.metric.jets(m, j);
  return F;
}

Eigen::VectorXd codifferential_by_frame(const LocalParaHermitian& L, const FrameValue& F) {
  const JetTensor Phi = fundamental_form_jets(L);
  Eigen::VectorXd out = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(L.J_jets.dim));
  for (std::size_t a = 0; a < F.vectors.size(); ++a) {
    const Eigen::MatrixXd M = covariant_derivative(Phi, L.metric.gamma, F.vectors[a]);
    out += static_cast<double>(F.signs[a]) * (M.transpose() * F.vectors[a]);
  }
  return out;
}

}  // namespace

BilinearValue fundamental_form(const ParaHermitianStructure& S, const Point& p) {
  const auto J = evaluate_tensor(S.J(), p);
  const auto h = evaluate_tensor(S.metric().tensor(), p);
  return {p, J.transpose() * h};
}

CovectorValue codifferential_form(const ParaHermitianStructure& S, const Point& p) {
  const auto L = local_para_hermitian(S, p);
  return {p, codifferential_by_frame(L, orthonormal_frame(S.metric(), p))};
}

CheckReport check_codifferential(const ParaHermitianStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("codifferential", tol);
  for (const auto& p : points) {
    const auto L = local_para_hermitian(S, p);
    const Eigen::VectorXd by_frame = codifferential_by_frame(L, orthonormal_frame(S.metric(), p));
    const Eigen::VectorXd by_metric = L.metric.g * divergence_11(L.J_jets, L.metric);
    t.record("delta Phi (frame sum) = h(div J, .)", scaled_residual(by_frame, by_metric, term_scale(by_frame, by_metric)),
             p.coordinates());
  }
  return t.report();
}

CheckReport check_para_kahler(const ParaHermitianStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("para-kahler", tol);
  for (const auto& p : points) {
    const auto L = local_para_hermitian(S, p);
    double worst = 0.0;
    for (const auto& m : nabla_endo(L.J_jets, L.metric.gamma)) worst = std::max(worst, max_abs(m));
    t.record("nabla J = 0", worst / (1.0 + term_scale(L.J)), p.coordinates());
  }
  return t.report();
}

FrameJet para_hermitian_frame_jet(const ParaHermitianStructure& S, const Point& p) {
  const auto L = local_para_hermitian(S, p);
  detail::FrameBuilder fb(L.metric.jets);
  std::vector<JetVec> es, jes;
  while (2 * es.size() < S.dimension()) {
    auto w = fb.best_candidate();
    if (!w) throw FrameError("no admissible pivot for a J-paired frame");
    if (fb.inner(*w, *w).value() < 0.0) w = detail::apply(L.J_jets, *w);
    const Jet2 q = fb.inner(*w, *w);
    if (!(q.value() > detail::FrameBuilder::kPivotFloor)) throw FrameError("cannot J-pair the frame");
    JetVec e(w->size());
    const Jet2 len = sqrt(q);
    for (std::size_t k = 0; k < e.size(); ++k) e[k] = divide((*w)[k], len);
    JetVec je = detail::apply(L.J_jets, e);
    if (std::abs(fb.inner(je, je).value() + 1.0) > 1e-8 || std::abs(fb.inner(e, je).value()) > 1e-8) {
      throw FrameError("J e is not a unit timelike vector orthogonal to e");
    }
    fb.push(e, 1);
    fb.push(je, -1);
    es.push_back(std::move(e));
    jes.push_back(std::move(je));
  }
  FrameJet F;
  for (auto& e : es) {
    F.vectors.push_back(detail::tensor_of(e));
    F.signs.push_back(1);
  }
  for (auto& e : jes) {
    F.vectors.push_back(detail::tensor_of(e));
    F.signs.push_back(-1);
  }
  return F;
}

FrameValue para_hermitian_frame(const ParaHermitianStructure& S, const Point& p) {
  return para_hermitian_frame_jet(S, p).value(p);
}

CheckReport verify_frame_identity(const ParaHermitianStructure& S, std::span<const Point> points, double tol) {
  ResidualTracker t("frame-identity", tol);
  const std::size_t m = S.half_rank();
  for (const auto& p : points) {
    const auto L = local_para_hermitian(S, p);
    const FrameJet F = para_hermitian_frame_jet(S, p);
    auto nabla = [&](const JetTensor& V, const JetTensor& W) {
      return Eigen::VectorXd(covariant_derivative(W, L.metric.gamma, V.values().col(0)));
    };
    const auto n = static_cast<Eigen::Index>(S.dimension());
    Eigen::VectorXd lhs = Eigen::VectorXd::Zero(n), brackets = lhs, jnee = lhs, jnjj = lhs;
    for (std::size_t i = 0; i < m; ++i) {
      const auto& e = F.vectors[i];
      const auto& je = F.vectors[m + i];
      const Eigen::VectorXd nee = nabla(e, e);
      const Eigen::VectorXd njj = nabla(je, je);
      lhs += njj - nee;
      brackets += lie_bracket(e, je);
      jnee += L.J * nee;
      jnjj += L.J * njj;
    }
    const Eigen::VectorXd divJ = divergence_11(L.J_jets, L.metric);
    const Eigen::VectorXd jdiv = L.J * divJ;
    const Eigen::VectorXd jbr = L.J * brackets;
    t.record("sum nabla_{Je}Je - nabla_e e = J(div J - sum [e, Je])",
             scaled_residual(lhs, Eigen::VectorXd(jdiv - jbr), term_scale(lhs, jdiv, jbr)), p.coordinates());
    const Eigen::VectorXd expansion = brackets - jnee + jnjj;
    t.record("div J = sum [e, Je] - J nabla_e e + J nabla_{Je}Je",
             scaled_residual(divJ, expansion, term_scale(divJ, brackets, jnee, jnjj)), p.coordinates());
  }
  return t.report();
}

CheckReport check_metric_compatibility(const MetricField& g, std::span<const Point> points, double tol) {
  ResidualTracker t("metric-compatibility", tol);
  const std::size_t n = g.dimension();
  for (const auto& p : points) {
    const auto m = local_metric(g, p);
    double scale = max_abs(m.g);
    for (const auto& c : m.jets.c)
      for (std::size_t i = 0; i < n; ++i) scale = std::max(scale, std::abs(c.grad(i)));
    for (std::size_t i = 0; i < n; ++i) {
      const Eigen::MatrixXd ng = covariant_derivative(m.jets, m.gamma, unit(n, i));
      t.record("nabla g = 0", max_abs(ng) / (1.0 + scale), p.coordinates());
    }
  }
  return t.report();
}

CheckReport check_metric_signature(const MetricField& g, std::span<const Point> points, double tol) {
  ResidualTracker t("metric-signature", tol);
  const Signature want = g.signature();
  for (const auto& p : points) {
    const Eigen::MatrixXd gv = evaluate_tensor(g.tensor(), p);
    const Signature s = signature_of(gv);
    t.record("declared signature", std::abs(s.positive - want.positive) + std::abs(s.negative - want.negative),
             p.coordinates());
    metric_inverse(gv);
    t.record("nondegenerate", 0.0, p.coordinates());
  }
  return t.report();
}

namespace {

std::optional<Eigen::MatrixXd> structure_tensor(const AnyStructure& s, const Point& p) {
  if (const auto* c = std::get_if<ParacontactStructure>(&s)) return evaluate_tensor(c->phi(), p);
  if (const auto* h = std::get_if<ParaHermitianStructure>(&s)) return evaluate_tensor(h->J(), p);
  return std::nullopt;
}

std::optional<FrameValue> adapted_frame(const AnyStructure& s, const Point& p) {
  if (const auto* c = std::get_if<ParacontactStructure>(&s)) return phi_basis(*c, p);
  if (const auto* h = std::get_if<ParaHermitianStructure>(&s)) return para_hermitian_frame(*h, p);
  return std::nullopt;
}

double frame_trace(const FrameValue& F, const Eigen::MatrixXd& B) {
  double s = 0.0;
  for (std::size_t a = 0; a < F.vectors.size(); ++a) s += F.signs[a] * F.vectors[a].dot(B * F.vectors[a]);
  return s;
}

}  // namespace

CheckReport check_trace_frame_consistency(const AnyStructure& s, std::span<const Point> points, double tol) {
  ResidualTracker t("trace-frame-consistency", tol);
  const MetricField& g = metric_of(s);
  for (const auto& p : points) {
    const Eigen::MatrixXd gv = evaluate_tensor(g.tensor(), p);
    const Eigen::MatrixXd inv = metric_inverse(gv);
    std::vector<std::pair<std::string, Eigen::MatrixXd>> forms{{"B = g", gv}};
    if (auto T = structure_tensor(s, p)) forms.emplace_back("B = g(T., T.)", T->transpose() * gv * *T);
    std::vector<FrameValue> frames{orthonormal_frame(g, p)};
    if (auto F = adapted_frame(s, p)) frames.push_back(std::move(*F));
    for (const auto& [label, B] : forms) {
      const double tr = metric_trace_bilinear(B, inv);
      for (const auto& F : frames) {
        t.record("g^ij B_ij = sum eps_a B(E_a, E_a), " + label, scaled_residual(tr, frame_trace(F, B), max_abs(tr)),
                 p.coordinates());
      }
    }
  }
  return t.report();
}

CheckReport check_adapted_frame(const AnyStructure& s, std::span<const Point> points, double tol) {
  const bool contact = std::holds_alternative<ParacontactStructure>(s);
  const bool hermitian = std::holds_alternative<ParaHermitianStructure>(s);
  ResidualTracker t(contact ? "phi-basis" : (hermitian ? "j-frame" : "orthonormal-frame"), tol);
  const MetricField& g = metric_of(s);
  for (const auto& p : points) {
    const Eigen::MatrixXd gv = evaluate_tensor(g.tensor(), p);
    const FrameValue plain = orthonormal_frame(g, p);
    t.record("orthonormal frame pairings", frame_pairing_residual(plain, gv), p.coordinates());
    int pos = 0;
    for (int sgn : plain.signs) pos += sgn > 0 ? 1 : 0;
    t.record("frame signs match signature", std::abs(pos - g.signature().positive), p.coordinates());
    if (auto F = adapted_frame(s, p)) {
      t.record(contact ? "phi-basis pairings" : "J-paired frame pairings", frame_pairing_residual(*F, gv),
               p.coordinates());
      const auto T = *structure_tensor(s, p);
      const std::size_t half = contact ? (F->vectors.size() - 1) / 2 : F->vectors.size() / 2;
      for (std::size_t i = 0; i < half; ++i) {
        const Eigen::VectorXd img = T * F->vectors[i];
        t.record("second half is the image of the first", scaled_residual(img, F->vectors[half + i], max_abs(img)),
                 p.coordinates());
      }
      if (contact) {
        const Eigen::VectorXd xi = evaluate_tensor(std::get<ParacontactStructure>(s).xi(), p).col(0);
        t.record("last vector is xi", scaled_residual(F->vectors.back(), xi, max_abs(xi)), p.coordinates());
      }
    }
  }
  return t.report();
}

}  // namespace parageo
