#include "parageo/chart.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "parageo/errors.hpp"
#include "parageo/sampling.hpp"

namespace parageo {

Chart::Chart(std::string name, std::vector<std::string> coordinate_names, Box domain)
    : name_(std::move(name)), names_(std::move(coordinate_names)), domain_(std::move(domain)) {
  if (names_.empty()) throw DomainError("chart '" + name_ + "' has no coordinates");
  if (names_.size() > kMaxDim) {
    throw DomainError("chart '" + name_ + "' exceeds the supported dimension " +
                      std::to_string(kMaxDim));
  }
  if (domain_.size() != names_.size()) {
    throw DomainError("chart '" + name_ + "': domain box has wrong dimension");
  }
  std::set<std::string> seen;
  for (const auto& n : names_) {
    if (!seen.insert(n).second) throw DomainError("chart '" + name_ + "': duplicate coordinate '" + n + "'");
  }
  for (const auto& iv : domain_) {
    if (!(iv.lo <= iv.hi) || !std::isfinite(iv.lo) || !std::isfinite(iv.hi)) {
      throw DomainError("chart '" + name_ + "': empty or non-finite interval");
    }
  }
}

std::optional<std::size_t> Chart::index_of(std::string_view coordinate) const {
  for (std::size_t i = 0; i < names_.size(); ++i) {
    if (names_[i] == coordinate) return i;
  }
  return std::nullopt;
}

bool Chart::contains(std::span<const double> coords) const { return contains(coords, domain_); }

bool Chart::contains(std::span<const double> coords, const Box& box) const {
  if (coords.size() != names_.size() || box.size() != names_.size()) return false;
  for (std::size_t i = 0; i < coords.size(); ++i) {
    if (!(coords[i] >= box[i].lo && coords[i] <= box[i].hi)) return false;
  }
  return true;
}

ChartPtr make_chart(std::string name, std::vector<std::string> coordinate_names, Box domain) {
  return std::make_shared<const Chart>(std::move(name), std::move(coordinate_names), std::move(domain));
}

Point::Point(ChartPtr chart, std::vector<double> coords) : chart_(std::move(chart)), coords_(std::move(coords)) {
  if (!chart_) throw DomainError("point without chart");
  if (!chart_->contains(coords_)) {
    std::ostringstream os;
    os << "point (";
    for (std::size_t i = 0; i < coords_.size(); ++i) os << (i ? ", " : "") << coords_[i];
    os << ") outside the domain of chart '" << chart_->name() << "'";
    throw DomainError(os.str());
  }
}

Eigen::MatrixXd JetTensor::values() const {
  const auto n = static_cast<Eigen::Index>(dim);
  const int rank = upper + lower;
  if (rank == 0) return Eigen::MatrixXd::Constant(1, 1, c[0].value());
  if (rank == 1) {
    Eigen::MatrixXd v(n, 1);
    for (Eigen::Index k = 0; k < n; ++k) v(k, 0) = c[k].value();
    return v;
  }
  Eigen::MatrixXd m(n, n);
  for (Eigen::Index a = 0; a < n; ++a) {
    for (Eigen::Index b = 0; b < n; ++b) m(a, b) = c[a * n + b].value();
  }
  return m;
}

JetTensor JetTensor::vector(std::vector<Jet2> components) {
  JetTensor t;
  t.upper = 1;
  t.lower = 0;
  t.dim = components.size();
  t.c = std::move(components);
  return t;
}

TensorField::TensorField(ChartPtr chart, int upper, int lower, std::vector<Expression> components,
                         bool symmetric)
    : chart_(std::move(chart)), upper_(upper), lower_(lower), symmetric_(symmetric),
      components_(std::move(components)) {
  if (!chart_) throw DomainError("tensor field without chart");
  if (upper_ < 0 || upper_ > 1 || lower_ < 0 || lower_ > 2 || upper_ + lower_ > 2) {
    throw DomainError("unsupported tensor rank");
  }
  const std::size_t n = chart_->dimension();
  std::size_t expected = 1;
  for (int i = 0; i < upper_ + lower_; ++i) expected *= n;
  if (components_.size() != expected) {
    throw DomainError("tensor field has " + std::to_string(components_.size()) + " components, expected " +
                      std::to_string(expected));
  }
  for (const auto& e : components_) {
    if (e.coordinate_bound() > n) throw DomainError("component references a coordinate outside the chart");
  }
}

TensorField TensorField::scalar(ChartPtr chart, Expression f) {
  return TensorField(std::move(chart), 0, 0, {std::move(f)}, false);
}

TensorField TensorField::vector(ChartPtr chart, std::vector<Expression> components) {
  return TensorField(std::move(chart), 1, 0, std::move(components), false);
}

TensorField TensorField::covector(ChartPtr chart, std::vector<Expression> components) {
  return TensorField(std::move(chart), 0, 1, std::move(components), false);
}

namespace {

std::vector<Expression> flatten(const std::vector<std::vector<Expression>>& rows, std::size_t n) {
  if (rows.size() != n) throw DomainError("expected " + std::to_string(n) + " rows");
  std::vector<Expression> flat;
  flat.reserve(n * n);
  for (const auto& r : rows) {
    if (r.size() != n) throw DomainError("expected " + std::to_string(n) + " columns");
    flat.insert(flat.end(), r.begin(), r.end());
  }
  return flat;
}

}  // namespace

TensorField TensorField::endomorphism(ChartPtr chart, std::vector<std::vector<Expression>> rows) {
  const std::size_t n = chart->dimension();
  return TensorField(std::move(chart), 1, 1, flatten(rows, n), false);
}

TensorField TensorField::bilinear(ChartPtr chart, std::vector<std::vector<Expression>> rows, bool symmetric) {
  const std::size_t n = chart->dimension();
  return TensorField(std::move(chart), 0, 2, flatten(rows, n), symmetric);
}

TensorField TensorField::parse(ChartPtr chart, int upper, int lower,
                               const std::vector<std::string>& flat_components, bool symmetric) {
  std::vector<Expression> comps;
  comps.reserve(flat_components.size());
  for (const auto& text : flat_components) comps.push_back(parse_expression(text, *chart));
  return TensorField(std::move(chart), upper, lower, std::move(comps), symmetric);
}

JetTensor TensorField::jets(const Point& p) const {
  if (&p.chart() != chart_.get() && p.chart().name() != chart_->name()) {
    throw DomainError("point of chart '" + p.chart().name() + "' used with field on chart '" +
                      chart_->name() + "'");
  }
  JetTensor t;
  t.upper = upper_;
  t.lower = lower_;
  t.dim = chart_->dimension();
  t.c.reserve(components_.size());
  for (const auto& e : components_) t.c.push_back(eval_jet2(e, p));
  return t;
}

Eigen::MatrixXd evaluate_tensor(const TensorField& T, const Point& p) { return T.jets(p).values(); }

Eigen::VectorXd lie_bracket(const JetTensor& X, const JetTensor& Y) {
  const std::size_t n = X.dim;
  Eigen::VectorXd r = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(n));
  for (std::size_t k = 0; k < n; ++k) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      s += X(i).value() * Y(k).grad(i) - Y(i).value() * X(k).grad(i);
    }
    r(static_cast<Eigen::Index>(k)) = s;
  }
  return r;
}

JetTensor lie_bracket_jet(const JetTensor& X, const JetTensor& Y) {
  const std::size_t n = X.dim;
  std::vector<Jet2> out(n, Jet2(n));
  for (std::size_t k = 0; k < n; ++k) {
    double v = 0.0;
    for (std::size_t i = 0; i < n; ++i) v += X(i).value() * Y(k).grad(i) - Y(i).value() * X(k).grad(i);
    out[k].set_value(v);
    for (std::size_t m = 0; m < n; ++m) {
      double g = 0.0;
      for (std::size_t i = 0; i < n; ++i) {
        g += X(i).grad(m) * Y(k).grad(i) + X(i).value() * Y(k).hess(m, i) - Y(i).grad(m) * X(k).grad(i) -
             Y(i).value() * X(k).hess(m, i);
      }
      out[k].set_grad(m, g);
    }
  }
  return JetTensor::vector(std::move(out));
}

VectorValue lie_bracket(const TensorField& X, const TensorField& Y, const Point& p) {
  if (X.upper() != 1 || X.lower() != 0 || Y.upper() != 1 || Y.lower() != 0) {
    throw DomainError("lie_bracket expects two vector fields");
  }
  if (X.chart().name() != Y.chart().name()) throw DomainError("lie_bracket of fields on different charts");
  return {p, lie_bracket(X.jets(p), Y.jets(p))};
}

Eigen::MatrixXd exterior_derivative_1form(const JetTensor& eta) {
  const auto n = static_cast<Eigen::Index>(eta.dim);
  Eigen::MatrixXd d(n, n);
  for (Eigen::Index i = 0; i < n; ++i) {
    for (Eigen::Index j = 0; j < n; ++j) d(i, j) = 0.5 * (eta(j).grad(i) - eta(i).grad(j));
  }
  return d;
}

BilinearValue exterior_derivative_1form(const TensorField& eta, const Point& p) {
  if (eta.upper() != 0 || eta.lower() != 1) throw DomainError("exterior derivative expects a 1-form");
  return {p, exterior_derivative_1form(eta.jets(p))};
}

void validate_symmetric(const TensorField& B, double tol) {
  if (B.upper() != 0 || B.lower() != 2) throw DomainError("symmetry check expects a (0,2) field");
  const auto points = sample_points(B.chart_ptr(), B.chart().domain(), 16, 0x5eed);
  for (const auto& p : points) {
    const Eigen::MatrixXd m = evaluate_tensor(B, p);
    const double scale = 1.0 + m.cwiseAbs().maxCoeff();
    if ((m - m.transpose()).cwiseAbs().maxCoeff() > tol * scale) {
      throw DomainError("declared-symmetric field is not symmetric on chart '" + B.chart().name() + "'");
    }
  }
}

}  // namespace parageo
