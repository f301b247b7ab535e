#include "parageo/metric.hpp"

#include <cmath>
#include <utility>

#include "frame_builder.hpp"
#include "parageo/errors.hpp"

namespace parageo {

MetricField::MetricField(TensorField g, Signature signature) : g_(std::move(g)), signature_(signature) {
  if (g_.upper() != 0 || g_.lower() != 2) throw Error("metric must be a (0,2) tensor field");
  if (signature_.positive < 0 || signature_.negative < 0 ||
      static_cast<std::size_t>(signature_.positive + signature_.negative) != g_.chart().dimension()) {
    throw Error("metric signature does not add up to the chart dimension");
  }
  const std::size_t n = g_.chart().dimension();
  auto comps = g_.components();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      if (comps[i * n + j] == comps[j * n + i]) continue;
      validate_symmetric(g_);
      return;
    }
  }
}

Eigen::MatrixXd metric_inverse(const Eigen::MatrixXd& g) {
  const auto n = g.rows();
  const double scale = g.cwiseAbs().maxCoeff();
  const double det = g.determinant();
  if (!(scale > 0.0) || !(std::abs(det) > 1e-10 * std::pow(scale, static_cast<double>(n)))) {
    throw SingularMetricError("singular metric (det = " + std::to_string(det) + ")");
  }
  Eigen::MatrixXd inv = g.fullPivLu().inverse();
  const double err = (g * inv - Eigen::MatrixXd::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(err <= 1e-10)) throw SingularMetricError("metric inverse is ill-conditioned");
  return inv;
}

Eigen::MatrixXd metric_inverse(const MetricField& g, const Point& p) {
  return metric_inverse(evaluate_tensor(g.tensor(), p));
}

ChristoffelValue christoffel(const JetTensor& gj, const Eigen::MatrixXd& inverse) {
  const std::size_t n = gj.dim;
  // First-kind symbols [ij,l] = 1/2 (d_i g_jl + d_j g_il - d_l g_ij), i <= j.
  std::vector<double> first(n * n * n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i; j < n; ++j) {
      for (std::size_t l = 0; l < n; ++l) {
        first[(i * n + j) * n + l] = 0.5 * (gj(j, l).grad(i) + gj(i, l).grad(j) - gj(i, j).grad(l));
      }
    }
  }
  ChristoffelValue G{n, std::vector<double>(n * n * n, 0.0)};
  for (std::size_t k = 0; k < n; ++k) {
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = i; j < n; ++j) {
        double s = 0.0;
        for (std::size_t l = 0; l < n; ++l) s += inverse(k, l) * first[(i * n + j) * n + l];
        G.table[(k * n + i) * n + j] = s;
        G.table[(k * n + j) * n + i] = s;
      }
    }
  }
  return G;
}

LocalMetric local_metric(const MetricField& g, const Point& p) {
  LocalMetric m;
  m.jets = g.tensor().jets(p);
  m.g = m.jets.values();
  m.inverse = metric_inverse(m.g);
  m.gamma = christoffel(m.jets, m.inverse);
  return m;
}

ChristoffelValue christoffel(const MetricField& g, const Point& p) { return local_metric(g, p).gamma; }

Signature signature_of(const Eigen::MatrixXd& g) {
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(0.5 * (g + g.transpose()), Eigen::EigenvaluesOnly);
  const auto& ev = es.eigenvalues();
  const double floor = 1e-12 * std::max(1.0, ev.cwiseAbs().maxCoeff());
  Signature s;
  for (Eigen::Index i = 0; i < ev.size(); ++i) {
    if (ev(i) > floor) ++s.positive;
    if (ev(i) < -floor) ++s.negative;
  }
  return s;
}

Eigen::MatrixXd covariant_derivative(const JetTensor& T, const ChristoffelValue& G, const Eigen::VectorXd& X) {
  const std::size_t n = T.dim;
  auto dX = [&](const Jet2& c) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += X(i) * c.grad(i);
    return s;
  };
  // Gx(k, j) = X^i Gamma^k_ij
  Eigen::MatrixXd Gx = Eigen::MatrixXd::Zero(n, n);
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t i = 0; i < n; ++i) Gx(k, j) += X(i) * G(k, i, j);

  const Eigen::MatrixXd v = T.values();
  if (T.upper == 1 && T.lower == 0) {
    Eigen::VectorXd out(n);
    for (std::size_t k = 0; k < n; ++k) out(k) = dX(T(k));
    return out + Gx * v;
  }
  if (T.upper == 0 && T.lower == 1) {
    Eigen::VectorXd out(n);
    for (std::size_t j = 0; j < n; ++j) out(j) = dX(T(j));
    return out - Gx.transpose() * v;
  }
  if (T.upper == 1 && T.lower == 1) {
    Eigen::MatrixXd out(n, n);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t j = 0; j < n; ++j) out(k, j) = dX(T(k, j));
    return out + Gx * v - v * Gx;
  }
  if (T.upper == 0 && T.lower == 2) {
    Eigen::MatrixXd out(n, n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) out(a, b) = dX(T(a, b));
    return out - Gx.transpose() * v - v * Gx;
  }
  if (T.upper == 0 && T.lower == 0) {
    Eigen::MatrixXd out(1, 1);
    out(0, 0) = dX(T(0));
    return out;
  }
  throw Error("covariant derivative: unsupported tensor rank");
}

Eigen::MatrixXd covariant_derivative(const TensorField& T, const MetricField& g, const Point& p,
                                     const Eigen::VectorXd& X) {
  if (T.chart().name() != g.chart().name()) throw DomainError("tensor and metric live on different charts");
  if (static_cast<std::size_t>(X.size()) != g.dimension()) throw Error("direction has the wrong dimension");
  return covariant_derivative(T.jets(p), christoffel(g, p), X);
}

Eigen::MatrixXd covariant_derivative(const TensorField& T, const MetricField& g, const Point& p,
                                     std::size_t direction) {
  if (direction >= g.dimension()) throw Error("direction index out of range");
  return covariant_derivative(T, g, p, Eigen::VectorXd::Unit(static_cast<Eigen::Index>(g.dimension()),
                                                             static_cast<Eigen::Index>(direction)));
}

double metric_trace_bilinear(const Eigen::MatrixXd& B, const Eigen::MatrixXd& inverse) {
  return inverse.cwiseProduct(B).sum();
}

double metric_trace_bilinear(const BilinearValue& B, const MetricField& g, const Point& p) {
  if (B.point.chart().name() != g.chart().name()) throw DomainError("bilinear form and metric on different charts");
  return metric_trace_bilinear(B.components, metric_inverse(g, p));
}

Eigen::VectorXd divergence_11(const JetTensor& T, const LocalMetric& m) {
  const auto n = static_cast<Eigen::Index>(T.dim);
  Eigen::VectorXd div = Eigen::VectorXd::Zero(n);
  for (Eigen::Index i = 0; i < n; ++i) {
    const Eigen::MatrixXd nabla = covariant_derivative(T, m.gamma, Eigen::VectorXd::Unit(n, i));
    for (Eigen::Index j = 0; j < n; ++j) div += m.inverse(i, j) * nabla.col(j);
  }
  return div;
}

VectorValue divergence_11(const TensorField& T, const MetricField& g, const Point& p) {
  if (T.upper() != 1 || T.lower() != 1) throw Error("divergence_11 needs a (1,1) tensor field");
  if (T.chart().name() != g.chart().name()) throw DomainError("tensor and metric live on different charts");
  return {p, divergence_11(T.jets(p), local_metric(g, p))};
}

FrameValue FrameJet::value(const Point& p) const {
  FrameValue f{p, {}, signs};
  for (const auto& v : vectors) f.vectors.push_back(v.values().col(0));
  return f;
}

FrameJet orthonormal_frame_jet(const MetricField& g, const Point& p) {
  const auto gj = g.tensor().jets(p);
  metric_inverse(gj.values());
  detail::FrameBuilder fb(gj);
  while (fb.size() < g.dimension()) {
    auto w = fb.best_candidate();
    if (!w) throw FrameError("no admissible pivot for orthonormal frame");
    fb.add(*w);
  }
  return fb.finish();
}

FrameValue orthonormal_frame(const MetricField& g, const Point& p) { return orthonormal_frame_jet(g, p).value(p); }

namespace detail {

JetVec coordinate_vector(std::size_t dim, std::size_t index) {
  JetVec v(dim, Jet2::constant(dim, 0.0));
  v[index] = Jet2::constant(dim, 1.0);
  return v;
}

JetVec vector_of(const JetTensor& v) { return v.c; }

JetTensor tensor_of(JetVec v) { return JetTensor::vector(std::move(v)); }

JetVec apply(const JetTensor& T, const JetVec& v) {
  const std::size_t n = T.dim;
  JetVec out(n, Jet2::constant(n, 0.0));
  for (std::size_t k = 0; k < n; ++k)
    for (std::size_t j = 0; j < n; ++j) out[k] += T(k, j) * v[j];
  return out;
}

JetVec axpy(const Jet2& a, const JetVec& x, const JetVec& y) {
  JetVec out = y;
  for (std::size_t k = 0; k < out.size(); ++k) out[k] += a * x[k];
  return out;
}

FrameBuilder::FrameBuilder(JetTensor metric) : g_(std::move(metric)), n_(g_.dim) {}

Jet2 FrameBuilder::inner(const JetVec& a, const JetVec& b) const {
  Jet2 s = Jet2::constant(n_, 0.0);
  for (std::size_t i = 0; i < n_; ++i)
    for (std::size_t j = 0; j < n_; ++j) s += g_(i, j) * (a[i] * b[j]);
  return s;
}

JetVec FrameBuilder::project(const JetVec& w) const {
  JetVec out = w;
  for (std::size_t a = 0; a < vectors_.size(); ++a) {
    const Jet2 c = static_cast<double>(signs_[a]) * inner(w, vectors_[a]);
    out = axpy(-c, vectors_[a], out);
  }
  return out;
}

std::optional<JetVec> FrameBuilder::best_candidate() const {
  std::vector<JetVec> base;
  for (std::size_t i = 0; i < n_; ++i) base.push_back(project(coordinate_vector(n_, i)));
  // Each candidate carries the Euclidean length of its unprojected form, so
  // rounding residue left after projection never looks like a good pivot.
  std::vector<std::pair<JetVec, double>> cands;
  for (const auto& b : base) cands.emplace_back(b, 1.0);
  // Sums and differences reach directions where every coordinate vector is null.
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = i + 1; j < n_; ++j) {
      cands.emplace_back(axpy(Jet2::constant(n_, 1.0), base[i], base[j]), 2.0);
      cands.emplace_back(axpy(Jet2::constant(n_, -1.0), base[j], base[i]), 2.0);
    }
  }
  std::optional<JetVec> best;
  double best_ratio = kPivotFloor;
  for (const auto& [c, raw] : cands) {
    const double ratio = std::abs(inner(c, c).value()) / raw;
    if (ratio > best_ratio) {
      best_ratio = ratio;
      best = c;
    }
  }
  return best;
}

int FrameBuilder::add(const JetVec& v) {
  const Jet2 q = inner(v, v);
  const int sign = q.value() > 0.0 ? 1 : -1;
  const Jet2 len = sqrt(static_cast<double>(sign) * q);
  JetVec unit(n_);
  for (std::size_t k = 0; k < n_; ++k) unit[k] = divide(v[k], len);
  push(std::move(unit), sign);
  return sign;
}

void FrameBuilder::push(JetVec v, int sign) {
  vectors_.push_back(std::move(v));
  signs_.push_back(sign);
}

FrameJet FrameBuilder::finish() const {
  FrameJet f;
  for (const auto& v : vectors_) f.vectors.push_back(tensor_of(v));
  f.signs = signs_;
  return f;
}

}  // namespace detail

}  // namespace parageo
