// Command-line front end: list built-in scenarios, run check suites, and
// evaluate expressions with their derivatives.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "parageo/errors.hpp"
#include "parageo/expr.hpp"
#include "parageo/report.hpp"
#include "parageo/scenario.hpp"

namespace {

constexpr int kExitUsage = 2;

std::vector<std::string> split(const std::string& text, char sep) {
  std::vector<std::string> out;
  std::string item;
  std::istringstream in(text);
  while (std::getline(in, item, sep)) {
    const auto b = item.find_first_not_of(" \t");
    const auto e = item.find_last_not_of(" \t");
    if (b != std::string::npos) out.push_back(item.substr(b, e - b + 1));
  }
  return out;
}

parageo::Scenario load(const std::string& scenario, const std::string& config) {
  if (!config.empty()) return parageo::load_scenario_file(config);
  return parageo::load_scenario(scenario);
}

std::string g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

int run_list() {
  for (const auto& s : parageo::scenario_registry()) std::cout << s.name << "\t" << s.description << "\n";
  return 0;
}

struct VerifyArgs {
  std::string scenario, config, suite, format = "text", out;
  std::optional<std::size_t> samples;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  bool suite_given = false;
};

int run_verify(const VerifyArgs& a) {
  const parageo::Scenario sc = load(a.scenario, a.config);
  parageo::SuiteOptions opt;
  if (a.suite_given) opt.checks = split(a.suite, ',');
  opt.samples = a.samples;
  opt.seed = a.seed;
  opt.tol = a.tol;
  const auto reports = parageo::run_suite(sc, opt);
  const auto fmt = a.format == "json" ? parageo::ReportFormat::kJson : parageo::ReportFormat::kText;
  const std::string doc = parageo::emit_report(reports, fmt);
  if (a.out.empty()) {
    std::cout << doc;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    if (!f) throw parageo::ConfigError("", "cannot write '" + a.out + "'");
    f << doc;
  }
  return parageo::report_exit_code(reports);
}

struct EvalArgs {
  std::string scenario, config, expr, at;
};

int run_eval(const EvalArgs& a) {
  const parageo::Scenario sc = load(a.scenario, a.config);
  std::vector<std::string> names;
  std::vector<double> values;
  for (const auto& kv : split(a.at, ',')) {
    const auto eq = kv.find('=');
    if (eq == std::string::npos) throw parageo::ConfigError("", "--at expects name=value pairs, got '" + kv + "'");
    names.push_back(split(kv.substr(0, eq), ' ').at(0));
    try {
      values.push_back(std::stod(kv.substr(eq + 1)));
    } catch (const std::exception&) {
      throw parageo::ConfigError("", "bad coordinate value in '" + kv + "'");
    }
  }
  for (const auto& chart : sc.charts) {
    const auto coords = chart->coordinate_names();
    if (coords.size() != names.size()) continue;
    std::vector<double> ordered(coords.size());
    bool match = true;
    for (std::size_t i = 0; i < names.size() && match; ++i) {
      const auto idx = chart->index_of(names[i]);
      if (!idx) match = false;
      else ordered[*idx] = values[i];
    }
    if (!match) continue;
    const parageo::Point p(chart, ordered);
    const auto e = parageo::parse_expression(a.expr, *chart);
    const auto j = parageo::eval_jet2(e, p);
    const std::size_t n = coords.size();
    std::cout << "chart    " << chart->name() << "\n";
    std::cout << "expr     " << parageo::to_string(e, coords) << "\n";
    std::cout << "value    " << g17(j.value()) << "\n";
    std::cout << "gradient";
    for (std::size_t i = 0; i < n; ++i) std::cout << " " << g17(j.grad(i));
    std::cout << "\nhessian\n";
    for (std::size_t i = 0; i < n; ++i) {
      std::cout << " ";
      for (std::size_t k = 0; k < n; ++k) std::cout << " " << g17(j.hess(i, k));
      std::cout << "\n";
    }
    return 0;
  }
  throw parageo::ConfigError("", "no chart of the scenario has exactly the coordinates given in --at");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Numerical verification of paracontact and para-Hermitian geometry"};
  app.require_subcommand(1);

  app.add_subcommand("list", "List built-in scenarios");

  VerifyArgs va;
  auto* verify = app.add_subcommand("verify", "Run a check suite and report residuals");
  auto* vs = verify->add_option("--scenario", va.scenario, "Built-in scenario name");
  auto* vc = verify->add_option("--config", va.config, "Scenario config file (JSON)")->check(CLI::ExistingFile);
  vs->excludes(vc);
  auto* suite = verify->add_option("--suite", va.suite, "Comma-separated check or report names");
  verify->add_option("--samples", va.samples, "Sample points per structure");
  verify->add_option("--seed", va.seed, "Sampling seed");
  verify->add_option("--tol", va.tol, "Residual tolerance")->check(CLI::NonNegativeNumber);
  verify->add_option("--format", va.format, "Output format")->check(CLI::IsMember({"text", "json"}));
  verify->add_option("--out", va.out, "Write the report to a file");

  EvalArgs ea;
  auto* eval = app.add_subcommand("eval", "Evaluate an expression with its gradient and Hessian");
  auto* es = eval->add_option("--scenario", ea.scenario, "Built-in scenario providing the charts");
  auto* ec = eval->add_option("--config", ea.config, "Scenario config file providing the charts")->check(CLI::ExistingFile);
  es->excludes(ec);
  eval->add_option("--expr", ea.expr, "Expression in chart coordinates")->required();
  eval->add_option("--at", ea.at, "Point, e.g. \"x=1,y=2,z=0\"")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (app.got_subcommand("list")) return run_list();
    if (app.got_subcommand("verify")) {
      if (va.scenario.empty() && va.config.empty()) {
        std::cerr << "verify: one of --scenario or --config is required\n";
        return kExitUsage;
      }
      va.suite_given = suite->count() > 0;
      return run_verify(va);
    }
    if (ea.scenario.empty() && ea.config.empty()) {
      std::cerr << "eval: one of --scenario or --config is required\n";
      return kExitUsage;
    }
    return run_eval(ea);
  } catch (const parageo::ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const parageo::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  }
}
