#include "parageo/report.hpp"

#include <cstdio>
#include <limits>
#include <sstream>

#include <nlohmann/json.hpp>

#include "parageo/errors.hpp"

namespace parageo {

ResidualTracker::ResidualTracker(std::string name, double tolerance) {
  report_.name = std::move(name);
  report_.tolerance = tolerance;
}

void ResidualTracker::record(std::string_view identity, double residual, std::span<const double> point) {
  if (std::isnan(residual)) {
    nan_ = true;
    residual = std::numeric_limits<double>::infinity();
  }
  auto it = std::find_if(report_.sub_residuals.begin(), report_.sub_residuals.end(),
                         [&](const SubResidual& s) { return s.identity == identity; });
  if (it == report_.sub_residuals.end()) {
    report_.sub_residuals.push_back({std::string(identity), residual});
  } else {
    it->residual = std::max(it->residual, residual);
  }
  if (!any_ || residual > report_.max_residual) {
    report_.max_residual = residual;
    report_.worst_point.assign(point.begin(), point.end());
  }
  any_ = true;
}

void ResidualTracker::note(std::string text) { report_.notes.push_back(std::move(text)); }

CheckReport ResidualTracker::report() const {
  CheckReport r = report_;
  r.passed = !nan_ && r.max_residual <= r.tolerance;
  if (nan_) r.notes.push_back("non-finite residual encountered");
  return r;
}

namespace {

using ojson = nlohmann::ordered_json;

ojson number(double v) {
  // JSON has no infinities; they are spelled as strings and parsed back.
  if (std::isinf(v)) return v > 0 ? ojson("inf") : ojson("-inf");
  if (std::isnan(v)) return ojson("nan");
  return ojson(v);
}

double read_number(const nlohmann::json& j) {
  if (j.is_string()) {
    const auto s = j.get<std::string>();
    if (s == "inf") return std::numeric_limits<double>::infinity();
    if (s == "-inf") return -std::numeric_limits<double>::infinity();
    return std::numeric_limits<double>::quiet_NaN();
  }
  return j.get<double>();
}

std::string status(const CheckReport& r) {
  if (r.passed) return r.expected_fail ? "XPASS" : "PASS";
  return r.expected_fail ? "XFAIL" : "FAIL";
}

std::string sci(double v) {
  char buf[48];
  std::snprintf(buf, sizeof buf, "%.6e", v);
  return buf;
}

std::string emit_text(const std::vector<CheckReport>& reports) {
  std::vector<const CheckReport*> order;
  for (int group = 0; group < 3; ++group) {
    for (const auto& r : reports) {
      const int g = (!r.passed && !r.expected_fail) ? 0 : (!r.passed ? 1 : 2);
      if (g == group) order.push_back(&r);
    }
  }
  std::ostringstream os;
  std::size_t failed = 0;
  for (const auto* r : order) {
    if (!r->passed && !r->expected_fail) ++failed;
    os << status(*r) << "  " << r->name << "  residual=" << sci(r->max_residual) << "  tol=" << sci(r->tolerance);
    if (!r->worst_point.empty()) {
      os << "  worst=(";
      for (std::size_t i = 0; i < r->worst_point.size(); ++i) os << (i ? ", " : "") << r->worst_point[i];
      os << ")";
    }
    os << "\n";
    for (const auto& s : r->sub_residuals) os << "      " << s.identity << ": " << sci(s.residual) << "\n";
    for (const auto& n : r->notes) os << "      note: " << n << "\n";
  }
  os << reports.size() << " checks, " << failed << " unexpected failure" << (failed == 1 ? "" : "s") << "\n";
  return os.str();
}

std::string emit_json(const std::vector<CheckReport>& reports) {
  ojson doc;
  doc["passed"] = report_exit_code(reports) == 0;
  ojson list = ojson::array();
  for (const auto& r : reports) {
    ojson j;
    j["name"] = r.name;
    j["passed"] = r.passed;
    j["expected_fail"] = r.expected_fail;
    j["max_residual"] = number(r.max_residual);
    j["tolerance"] = number(r.tolerance);
    ojson wp = ojson::array();
    for (double v : r.worst_point) wp.push_back(number(v));
    j["worst_point"] = wp;
    ojson subs = ojson::array();
    for (const auto& s : r.sub_residuals) {
      ojson sj;
      sj["identity"] = s.identity;
      sj["residual"] = number(s.residual);
      subs.push_back(sj);
    }
    j["sub_residuals"] = subs;
    j["notes"] = r.notes;
    list.push_back(j);
  }
  doc["reports"] = list;
  return doc.dump(2) + "\n";
}

}  // namespace

std::string emit_report(const std::vector<CheckReport>& reports, ReportFormat format) {
  return format == ReportFormat::kJson ? emit_json(reports) : emit_text(reports);
}

int report_exit_code(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports) {
    if (!r.passed && !r.expected_fail) return 1;
  }
  return 0;
}

std::vector<CheckReport> parse_report_json(std::string_view json_text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(json_text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError("", std::string("report is not valid JSON: ") + e.what());
  }
  std::vector<CheckReport> out;
  for (const auto& j : doc.at("reports")) {
    CheckReport r;
    r.name = j.at("name").get<std::string>();
    r.passed = j.at("passed").get<bool>();
    r.expected_fail = j.at("expected_fail").get<bool>();
    r.max_residual = read_number(j.at("max_residual"));
    r.tolerance = read_number(j.at("tolerance"));
    for (const auto& v : j.at("worst_point")) r.worst_point.push_back(read_number(v));
    for (const auto& s : j.at("sub_residuals")) {
      r.sub_residuals.push_back({s.at("identity").get<std::string>(), read_number(s.at("residual"))});
    }
    r.notes = j.at("notes").get<std::vector<std::string>>();
    out.push_back(std::move(r));
  }
  return out;
}

}  // namespace parageo
