#include <algorithm>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "oracles.hpp"
#include "parageo/errors.hpp"
#include "parageo/maps.hpp"
#include "parageo/metric.hpp"

namespace parageo {
namespace {

using fixture::at;

ChartPtr cube() { return make_chart("R3", {"x", "y", "z"}, {{-2, 2}, {-2, 2}, {-2, 2}}); }

MetricField diag(const ChartPtr& c, std::string a, std::string b, std::string d, Signature s) {
  return MetricField(TensorField::parse(c, 0, 2, {a, "0", "0", "0", b, "0", "0", "0", d}, true), s);
}

/// Gamma from quad-precision finite differences of the metric components.
double gamma_oracle(const MetricField& g, const Point& p, std::size_t k, std::size_t i, std::size_t j) {
  const std::size_t n = g.dimension();
  const auto comps = g.tensor().components();
  std::vector<oracle::FdJet> fd;
  for (const auto& e : comps) fd.push_back(oracle::finite_difference(e, p.coordinates()));
  Eigen::MatrixXd G(n, n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b) G(a, b) = fd[a * n + b].value;
  const Eigen::MatrixXd inv = G.inverse();
  auto dg = [&](std::size_t d, std::size_t a, std::size_t b) { return fd[a * n + b].grad(d); };
  double s = 0.0;
  for (std::size_t l = 0; l < n; ++l) s += 0.5 * inv(k, l) * (dg(i, j, l) + dg(j, i, l) - dg(l, i, j));
  return s;
}

TEST(Inverse, Diagonal) {
  const Eigen::Matrix3d d = Eigen::Vector3d(1, -1, 1).asDiagonal();
  EXPECT_EQ(metric_inverse(d), d);
}

TEST(Inverse, SourceMetricAtOne) {
  const Point p = at(fixture::M1().chart_ptr(), {1, 0, 0});
  Eigen::Matrix3d want;
  want << -1, 0, 0, 0, 1, -1, 0, -1, 2;
  EXPECT_LT(max_abs(metric_inverse(fixture::M1().metric(), p) - want), 1e-15);
}

TEST(Inverse, SingularRejected) {
  const Eigen::Matrix3d d = Eigen::Vector3d(1, 0, 1).asDiagonal();
  EXPECT_THROW(metric_inverse(d), SingularMetricError);
}

TEST(Christoffel, FlatIsZero) {
  const ChartPtr c = cube();
  const MetricField g = diag(c, "1", "-1", "1", {2, 1});
  const ChristoffelValue G = christoffel(g, at(c, {0.3, 0.1, -1}));
  EXPECT_TRUE(std::all_of(G.table.begin(), G.table.end(), [](double v) { return v == 0.0; }));
}

TEST(Christoffel, SourceTableEntries) {
  const auto& g = fixture::M1().metric();
  const ChartPtr& c = g.chart_ptr();
  EXPECT_NEAR(christoffel(g, at(c, {2, 0, 0}))(0, 0, 0), 0.25, 1e-15);
  const ChristoffelValue G = christoffel(g, at(c, {1, 0, 0}));
  EXPECT_NEAR(G(0, 1, 1), 2.5, 1e-15);
  EXPECT_NEAR(G(1, 0, 2), 1.0, 1e-15);
  EXPECT_NEAR(G(2, 0, 2), -1.0, 1e-15);
}

TEST(Christoffel, MatchesFiniteDifferenceOracle) {
  for (const char* label : {"M1", "M2"}) {
    const auto& g = fixture::contact("paper-4.1", label).metric();
    for (const Point& p : fixture::samples("paper-4.1", label, 8)) {
      const ChristoffelValue G = christoffel(g, p);
      for (std::size_t k = 0; k < 3; ++k)
        for (std::size_t i = 0; i < 3; ++i)
          for (std::size_t j = 0; j < 3; ++j) {
            EXPECT_EQ(G(k, i, j), G(k, j, i));
            EXPECT_NEAR(G(k, i, j), gamma_oracle(g, p, k, i, j), 1e-7 * (1 + std::abs(G(k, i, j))));
          }
    }
  }
}

TEST(Covariant, ReebFieldAlongFirstCoordinate) {
  const auto& M1 = fixture::M1();
  const Point p = at(M1.chart_ptr(), {1, 0.5, 0.25});
  EXPECT_LT(max_abs(covariant_derivative(M1.xi(), M1.metric(), p, 0) - Eigen::MatrixXd(Eigen::Vector3d(0, 1, -1))),
            1e-14);
  EXPECT_LT(max_abs(covariant_derivative(M1.xi(), M1.metric(), p, 2)), 1e-14);
}

TEST(Covariant, FlatStructureIsParallel) {
  const auto& N = fixture::flat_N();
  const Point p = at(N.chart_ptr(), {0.4, -1.2});
  for (std::size_t d = 0; d < 2; ++d) EXPECT_EQ(covariant_derivative(N.J(), N.metric(), p, d), Eigen::Matrix2d::Zero());
}

TEST(Covariant, MetricIsParallel) {
  for (const char* label : {"M1", "M2"}) {
    const auto& g = fixture::contact("paper-4.1", label).metric();
    for (const Point& p : fixture::samples("paper-4.1", label, 16))
      for (std::size_t d = 0; d < 3; ++d) EXPECT_LT(max_abs(covariant_derivative(g.tensor(), g, p, d)), 1e-12);
  }
}

TEST(Covariant, LeibnizOnPairing) {
  // X(eta(V)) = (nabla_X eta)(V) + eta(nabla_X V) with V = xi1, eta = eta1.
  const auto& M1 = fixture::M1();
  for (const Point& p : fixture::samples("paper-4.1", "M1", 8)) {
    const Eigen::Vector3d X(0.3, -1.0, 0.7);
    const Eigen::VectorXd neta = covariant_derivative(M1.eta(), M1.metric(), p, X);
    const Eigen::VectorXd nxi = covariant_derivative(M1.xi(), M1.metric(), p, X);
    const Eigen::VectorXd eta = evaluate_tensor(M1.eta(), p);
    const Eigen::VectorXd xi = evaluate_tensor(M1.xi(), p);
    // eta1(xi1) = 1 is constant, so the derivative is zero.
    EXPECT_NEAR(neta.dot(xi) + eta.dot(nxi), 0.0, 1e-12);
  }
}

TEST(Trace, PullbackUnderSwapMap) {
  const auto& s = fixture::scenario("paper-4.1");
  const Point p = at(fixture::M1().chart_ptr(), {1, 2, 0});
  const BilinearValue pull = pullback_metric(s.map->map, fixture::M2().metric(), p);
  EXPECT_NEAR(metric_trace_bilinear(pull, fixture::M1().metric(), p), 3.0, 1e-14);
  const BilinearValue zero{p, Eigen::Matrix3d::Zero()};
  EXPECT_EQ(metric_trace_bilinear(zero, fixture::M1().metric(), p), 0.0);
}

TEST(Divergence, ParaSasakianPhiIsMinusTwoXi) {
  // trace over X of -g(X, .)xi + eta(.)X: -3 xi + xi.
  const auto& M1 = fixture::M1();
  const Point p = at(M1.chart_ptr(), {1, 1, 1});
  EXPECT_LT(max_abs(divergence_11(M1.phi(), M1.metric(), p).components - Eigen::Vector3d(0, 0, -2)), 1e-13);
}

TEST(Divergence, IdentityAndFlatStructure) {
  const auto& M1 = fixture::M1();
  const TensorField id = TensorField::parse(M1.chart_ptr(), 1, 1, {"1", "0", "0", "0", "1", "0", "0", "0", "1"});
  for (const Point& p : fixture::samples("paper-4.1", "M1", 8))
    EXPECT_LT(max_abs(divergence_11(id, M1.metric(), p).components), 1e-13);
  const auto& N = fixture::flat_N();
  EXPECT_EQ(divergence_11(N.J(), N.metric(), at(N.chart_ptr(), {1, 1})).components, Eigen::Vector2d::Zero());
}

TEST(Frame, DiagonalIsStandardBasis) {
  const ChartPtr c = cube();
  const FrameValue F = orthonormal_frame(diag(c, "1", "-1", "1", {2, 1}), at(c, {0, 0, 0}));
  ASSERT_EQ(F.vectors.size(), 3u);
  std::vector<int> signs(3);
  for (std::size_t a = 0; a < 3; ++a) {
    Eigen::Index k;
    F.vectors[a].cwiseAbs().maxCoeff(&k);
    EXPECT_EQ(F.vectors[a].cwiseAbs(), Eigen::VectorXd(Eigen::Vector3d::Unit(k)));
    signs[k] = F.signs[a];
  }
  EXPECT_EQ(signs, (std::vector<int>{1, -1, 1}));
}

TEST(Frame, SourceMetricFrame) {
  const auto& g = fixture::M1().metric();
  for (const Point& p : fixture::samples("paper-4.1", "M1", 16)) {
    const FrameValue F = orthonormal_frame(g, p);
    const Eigen::MatrixXd G = evaluate_tensor(g.tensor(), p);
    int positive = 0;
    for (std::size_t a = 0; a < 3; ++a) {
      positive += F.signs[a] > 0;
      for (std::size_t b = 0; b < 3; ++b)
        EXPECT_NEAR(F.vectors[a].dot(G * F.vectors[b]), a == b ? F.signs[a] : 0, 1e-9);
    }
    EXPECT_EQ(positive, 2);
  }
}

TEST(Frame, DegenerateMetricRejected) {
  const ChartPtr c = cube();
  EXPECT_THROW(orthonormal_frame(diag(c, "1", "0", "1", {2, 1}), at(c, {0, 0, 0})), Error);
  // Degenerate only on a slice.
  const MetricField g = diag(c, "1", "x", "1", {3, 0});
  EXPECT_NO_THROW(orthonormal_frame(g, at(c, {1, 0, 0})));
  EXPECT_THROW(orthonormal_frame(g, at(c, {0, 0, 0})), Error);
}

TEST(Frame, NullCoordinateVectors) {
  // Every coordinate vector is null; the frame must come from sums and differences.
  const ChartPtr c = make_chart("L", {"a", "b"}, {{-1, 1}, {-1, 1}});
  const MetricField g(TensorField::parse(c, 0, 2, {"0", "1", "1", "0"}, true), {1, 1});
  const FrameValue F = orthonormal_frame(g, at(c, {0, 0}));
  const Eigen::Matrix2d G = evaluate_tensor(g.tensor(), F.point);
  EXPECT_NEAR(F.vectors[0].dot(G * F.vectors[0]), F.signs[0], 1e-12);
  EXPECT_NEAR(F.vectors[1].dot(G * F.vectors[1]), F.signs[1], 1e-12);
  EXPECT_NEAR(F.vectors[0].dot(G * F.vectors[1]), 0.0, 1e-12);
  EXPECT_EQ(F.signs[0] + F.signs[1], 0);
}

TEST(Trace, FrameSumMatchesInverseMetric) {
  const auto& g = fixture::M2().metric();
  const Eigen::Matrix3d B = (Eigen::Matrix3d() << 1, 2, 0, 2, -1, 3, 0, 3, 5).finished();
  for (const Point& p : fixture::samples("paper-4.1", "M2", 16)) {
    const FrameValue F = orthonormal_frame(g, p);
    double sum = 0.0;
    for (std::size_t a = 0; a < 3; ++a) sum += F.signs[a] * F.vectors[a].dot(B * F.vectors[a]);
    const double tr = metric_trace_bilinear(B, metric_inverse(g, p));
    EXPECT_NEAR(sum, tr, 1e-8 * (1 + std::abs(tr)));
  }
}

TEST(Signature, Counts) {
  EXPECT_EQ(signature_of(Eigen::Vector3d(1, -2, 3).asDiagonal()), (Signature{2, 1}));
  const Eigen::MatrixXd g1 = evaluate_tensor(fixture::M1().metric().tensor(), at(fixture::M1().chart_ptr(), {1, 0, 0}));
  EXPECT_EQ(signature_of(g1), (Signature{2, 1}));
}

TEST(MetricField, DeclaredSignatureMustFitDimension) {
  const ChartPtr c = cube();
  EXPECT_THROW(diag(c, "1", "1", "1", {2, 2}), Error);
}

}  // namespace
}  // namespace parageo
