#include <random>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "fixtures.hpp"
#include "parageo/chart.hpp"
#include "parageo/errors.hpp"
#include "parageo/sampling.hpp"

namespace parageo {
namespace {

using fixture::at;

ChartPtr cube() { return make_chart("R3", {"x", "y", "z"}, {{-2, 2}, {-2, 2}, {-2, 2}}); }

TEST(Chart, RejectsBadDefinitions) {
  EXPECT_THROW(make_chart("A", {"x", "x"}, {{0, 1}, {0, 1}}), Error);
  EXPECT_THROW(make_chart("A", {"x", "y"}, {{0, 1}, {2, 1}}), Error);
  EXPECT_THROW(make_chart("A", {"x", "y"}, {{0, 1}}), Error);
}

TEST(Point, StrictDomainCheck) {
  const ChartPtr c = cube();
  EXPECT_NO_THROW(at(c, {2, -2, 0}));
  EXPECT_THROW(at(c, {2.0001, 0, 0}), DomainError);
  EXPECT_THROW(at(c, {0, 0}), DomainError);
}

TEST(Evaluate, ReebFieldOfTarget) {
  const auto& M2 = fixture::M2();
  for (const Point& p : fixture::samples("paper-4.1", "M2", 8)) {
    const Eigen::VectorXd xi = evaluate_tensor(M2.xi(), p);
    EXPECT_EQ(xi, Eigen::Vector3d(0, 0, 1));
  }
}

TEST(Evaluate, ZeroField) {
  const ChartPtr c = cube();
  const TensorField B = TensorField::parse(c, 0, 2, std::vector<std::string>(9, "0"));
  EXPECT_EQ(evaluate_tensor(B, at(c, {0.1, 0.2, 0.3})), Eigen::Matrix3d::Zero());
}

TEST(Bracket, CoordinateFieldsCommute) {
  const ChartPtr c = cube();
  const TensorField dx = TensorField::parse(c, 1, 0, {"1", "0", "0"});
  const TensorField dy = TensorField::parse(c, 1, 0, {"0", "1", "0"});
  EXPECT_EQ(lie_bracket(dx, dy, at(c, {0.5, 1, -1})).components, Eigen::Vector3d::Zero());
}

TEST(Bracket, FirstBasisFieldWithItsImage) {
  // phi1 e1 = -d_y + x^2 d_z, so [d_x, phi1 e1] = 2x d_z.
  const auto& M1 = fixture::M1();
  const ChartPtr& c = M1.chart_ptr();
  const TensorField e1 = TensorField::parse(c, 1, 0, {"1", "0", "0"});
  const Point p = at(c, {1, 0, 0});
  const Eigen::MatrixXd phi = evaluate_tensor(M1.phi(), p);
  EXPECT_EQ(Eigen::Vector3d(phi.col(0)), Eigen::Vector3d(0, -1, 1));
  const TensorField phie1 = TensorField::vector(c, {M1.phi().components()[0 * 3 + 0], M1.phi().components()[1 * 3 + 0],
                                                    M1.phi().components()[2 * 3 + 0]});
  EXPECT_EQ(lie_bracket(e1, phie1, p).components, Eigen::Vector3d(0, 0, 2));
}

TEST(Bracket, AntisymmetricAndJacobi) {
  const ChartPtr c = cube();
  auto field = [&](std::vector<std::string> comps) { return TensorField::parse(c, 1, 0, comps); };
  const TensorField X = field({"x*y", "z^2 - x", "1 + y^3"});
  const TensorField Y = field({"y*z", "x^2*z", "x - y*z"});
  const TensorField Z = field({"x^2 + y", "3*z", "x*y*z"});
  for (const Point& p : sample_points(c, c->domain(), 16, 5)) {
    EXPECT_LT(max_abs(lie_bracket(X, X, p).components), 1e-15);
    const Eigen::VectorXd xy = lie_bracket(X, Y, p).components;
    const Eigen::VectorXd yx = lie_bracket(Y, X, p).components;
    EXPECT_LT(max_abs(xy + yx), 1e-12);

    const JetTensor x = X.jets(p), y = Y.jets(p), z = Z.jets(p);
    const Eigen::VectorXd jac = lie_bracket(lie_bracket_jet(x, y), z) + lie_bracket(lie_bracket_jet(y, z), x) +
                                lie_bracket(lie_bracket_jet(z, x), y);
    EXPECT_LT(max_abs(jac), 1e-8);
  }
}

TEST(ExteriorDerivative, ClosedForms) {
  const ChartPtr c = cube();
  const TensorField dz = TensorField::parse(c, 0, 1, {"0", "0", "1"});
  EXPECT_EQ(exterior_derivative_1form(dz, at(c, {1, 1, 1})).components, Eigen::Matrix3d::Zero());
  // eta = d(x^2 y + z^3 - x y z).
  const TensorField df = TensorField::parse(c, 0, 1, {"2*x*y - y*z", "x^2 - x*z", "3*z^2 - x*y"});
  for (const Point& p : sample_points(c, c->domain(), 16, 3))
    EXPECT_LT(max_abs(exterior_derivative_1form(df, p).components), 1e-10);
}

TEST(ExteriorDerivative, HalfConventionMatchesMetricOnSource) {
  // Oracle: g1(e1, phi1 e2) evaluated straight from the component tables.
  const auto& M1 = fixture::M1();
  const Point p = at(M1.chart_ptr(), {1, 0.3, -0.4});
  const Eigen::MatrixXd g = evaluate_tensor(M1.metric().tensor(), p);
  const Eigen::MatrixXd phi = evaluate_tensor(M1.phi(), p);
  const double oracle = g.row(0).dot(phi.col(1));
  EXPECT_DOUBLE_EQ(oracle, 1.0);
  EXPECT_DOUBLE_EQ(exterior_derivative_1form(M1.eta(), p).components(0, 1), oracle);
}

TEST(ExteriorDerivative, HalfConventionMatchesMetricOnTarget) {
  const auto& M2 = fixture::M2();
  const Point p = at(M2.chart_ptr(), {0.2, 1, 0.7});
  const Eigen::MatrixXd g = evaluate_tensor(M2.metric().tensor(), p);
  const Eigen::MatrixXd phi = evaluate_tensor(M2.phi(), p);
  const double oracle = g.row(0).dot(phi.col(1));
  EXPECT_DOUBLE_EQ(oracle, -1.0);
  EXPECT_DOUBLE_EQ(exterior_derivative_1form(M2.eta(), p).components(0, 1), oracle);
}

TEST(Symmetry, AsymmetricBilinearRejected) {
  const ChartPtr c = cube();
  EXPECT_THROW(validate_symmetric(TensorField::parse(c, 0, 2, {"1", "x", "0", "y", "1", "0", "0", "0", "1"}, true)),
               Error);
  EXPECT_NO_THROW(validate_symmetric(TensorField::parse(c, 0, 2, {"1", "x*y", "0", "y*x", "1", "0", "0", "0", "1"}, true)));
}

TEST(Sampling, DeterministicAndInsideBox) {
  const ChartPtr c = cube();
  const Box box{{-1, 0}, {0, 1}, {0.5, 1.5}};
  const auto a = sample_points(c, box, 64, 42);
  const auto b = sample_points(c, box, 64, 42);
  const auto d = sample_points(c, box, 64, 43);
  ASSERT_EQ(a.size(), 64u);
  bool differs = false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    EXPECT_TRUE(c->contains(a[i].coordinates(), box));
    for (std::size_t k = 0; k < 3; ++k) {
      EXPECT_EQ(a[i][k], b[i][k]);
      differs = differs || a[i][k] != d[i][k];
    }
  }
  EXPECT_TRUE(differs);
}

}  // namespace
}  // namespace parageo
