#include "parageo/scenario.hpp"

#include <algorithm>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "parageo/errors.hpp"
#include "parageo/sampling.hpp"
#include "scenario_internal.hpp"

namespace parageo {

using json = nlohmann::json;

const StructureEntry& Scenario::structure(std::string_view label) const {
  for (const auto& s : structures) {
    if (s.label == label) return s;
  }
  throw ConfigError("", "scenario has no structure '" + std::string(label) + "'");
}

bool Scenario::expects_failure(std::string_view report_name) const {
  for (const auto& pattern : expect_fail) {
    if (pattern == report_name) return true;
    if (pattern.size() >= 2 && pattern.ends_with(".*") &&
        report_name.starts_with(std::string_view(pattern).substr(0, pattern.size() - 1))) {
      return true;
    }
  }
  return false;
}

namespace {

std::string escape_pointer(const std::string& key) {
  std::string out;
  for (char c : key) {
    if (c == '~') out += "~0";
    else if (c == '/') out += "~1";
    else out += c;
  }
  return out;
}

std::string child(const std::string& path, const std::string& key) { return path + "/" + escape_pointer(key); }
std::string child(const std::string& path, std::size_t index) { return path + "/" + std::to_string(index); }

void expect_object(const json& j, const std::string& path) {
  if (!j.is_object()) throw ConfigError(path, "expected an object");
}

void expect_keys(const json& j, const std::string& path, std::initializer_list<std::string_view> allowed) {
  expect_object(j, path);
  for (const auto& [key, _] : j.items()) {
    if (std::find(allowed.begin(), allowed.end(), key) == allowed.end()) {
      throw ConfigError(child(path, key), "unknown field");
    }
  }
}

const json& member(const json& j, const std::string& key, const std::string& path) {
  auto it = j.find(key);
  if (it == j.end()) throw ConfigError(child(path, key), "missing required field");
  return *it;
}

std::string as_string(const json& j, const std::string& path) {
  if (!j.is_string()) throw ConfigError(path, "expected a string");
  return j.get<std::string>();
}

double as_number(const json& j, const std::string& path) {
  if (!j.is_number()) throw ConfigError(path, "expected a number");
  return j.get<double>();
}

std::uint64_t as_count(const json& j, const std::string& path) {
  if (!j.is_number_unsigned()) throw ConfigError(path, "expected a non-negative integer");
  return j.get<std::uint64_t>();
}

const json& as_array(const json& j, const std::string& path, std::optional<std::size_t> size = std::nullopt) {
  if (!j.is_array()) throw ConfigError(path, "expected an array");
  if (size && j.size() != *size) {
    throw ConfigError(path, "expected " + std::to_string(*size) + " entries, got " + std::to_string(j.size()));
  }
  return j;
}

Expression as_expression(const json& j, const std::string& path, const Chart& chart) {
  std::string text;
  if (j.is_string()) {
    text = j.get<std::string>();
  } else if (j.is_number()) {
    text = j.dump();
  } else {
    throw ConfigError(path, "expected an expression string");
  }
  try {
    return parse_expression(text, chart);
  } catch (const ParseError& e) {
    throw ConfigError(path, std::string("in expression \"") + text + "\": " + e.what());
  }
}

std::vector<Expression> expression_vector(const json& j, const std::string& path, const Chart& chart) {
  const std::size_t n = chart.dimension();
  as_array(j, path, n);
  std::vector<Expression> out;
  for (std::size_t i = 0; i < n; ++i) out.push_back(as_expression(j[i], child(path, i), chart));
  return out;
}

std::vector<std::vector<Expression>> expression_matrix(const json& j, const std::string& path, const Chart& chart) {
  const std::size_t n = chart.dimension();
  as_array(j, path, n);
  std::vector<std::vector<Expression>> rows;
  for (std::size_t i = 0; i < n; ++i) rows.push_back(expression_vector(j[i], child(path, i), chart));
  return rows;
}

Box as_box(const json& j, const std::string& path, std::size_t n) {
  as_array(j, path, n);
  Box box;
  for (std::size_t i = 0; i < n; ++i) {
    const std::string p = child(path, i);
    as_array(j[i], p, 2);
    const double lo = as_number(j[i][0], child(p, 0));
    const double hi = as_number(j[i][1], child(p, 1));
    if (!(lo <= hi)) throw ConfigError(p, "interval lower bound exceeds upper bound");
    box.push_back({lo, hi});
  }
  return box;
}

std::optional<StructureClass> parse_class(const std::string& s) {
  for (auto c : {StructureClass::kParacosymplectic, StructureClass::kParaSasakian, StructureClass::kOtherNormal,
                 StructureClass::kNotNormal}) {
    if (to_string(c) == s) return c;
  }
  return std::nullopt;
}

MapTag parse_tag(const std::string& s, const std::string& path) {
  if (s == "contact-hermitian") return MapTag::kContactToHermitian;
  if (s == "hermitian-contact") return MapTag::kHermitianToContact;
  if (s == "contact-contact") return MapTag::kContactToContact;
  throw ConfigError(path, "unknown map kind '" + s + "' (expected contact-hermitian, hermitian-contact or contact-contact)");
}

template <class F>
auto wrap(const std::string& path, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const ConfigError&) {
    throw;
  } catch (const Error& e) {
    throw ConfigError(path, e.what());
  }
}

}  // namespace

Scenario load_scenario_config(std::string_view json_text) {
  json doc;
  try {
    doc = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError("", std::string("invalid JSON: ") + e.what());
  }
  const std::string root;
  expect_keys(doc, root,
              {"name", "description", "charts", "metrics", "structures", "map", "domains", "suite", "tol", "samples",
               "seed", "expect_fail", "notes"});
  Scenario sc;
  sc.name = doc.contains("name") ? as_string(doc["name"], "/name") : "config";
  if (doc.contains("description")) sc.description = as_string(doc["description"], "/description");

  std::map<std::string, ChartPtr> charts;
  const json& jcharts = member(doc, "charts", root);
  expect_object(jcharts, "/charts");
  for (const auto& [name, jc] : jcharts.items()) {
    const std::string p = child("/charts", name);
    expect_keys(jc, p, {"coordinates", "domain"});
    const json& coords = as_array(member(jc, "coordinates", p), child(p, "coordinates"));
    std::vector<std::string> names;
    for (std::size_t i = 0; i < coords.size(); ++i) names.push_back(as_string(coords[i], child(child(p, "coordinates"), i)));
    Box box = as_box(member(jc, "domain", p), child(p, "domain"), names.size());
    charts[name] = wrap(p, [&] { return make_chart(name, names, box); });
    sc.charts.push_back(charts[name]);
  }
  auto chart_ref = [&](const json& j, const std::string& path) {
    const std::string name = as_string(j, path);
    auto it = charts.find(name);
    if (it == charts.end()) throw ConfigError(path, "unknown chart '" + name + "'");
    return it->second;
  };

  std::map<std::string, MetricField> metrics;
  if (doc.contains("metrics")) {
    expect_object(doc["metrics"], "/metrics");
    for (const auto& [name, jm] : doc["metrics"].items()) {
      const std::string p = child("/metrics", name);
      expect_keys(jm, p, {"chart", "components", "signature"});
      ChartPtr chart = chart_ref(member(jm, "chart", p), child(p, "chart"));
      auto rows = expression_matrix(member(jm, "components", p), child(p, "components"), *chart);
      const json& sig = as_array(member(jm, "signature", p), child(p, "signature"), 2);
      const Signature s{static_cast<int>(as_count(sig[0], child(child(p, "signature"), 0))),
                        static_cast<int>(as_count(sig[1], child(child(p, "signature"), 1)))};
      metrics.emplace(name, wrap(p, [&] { return MetricField(TensorField::bilinear(chart, rows, true), s); }));
    }
  }
  auto metric_ref = [&](const json& j, const std::string& path, const ChartPtr& chart) {
    const std::string name = as_string(j, path);
    auto it = metrics.find(name);
    if (it == metrics.end()) throw ConfigError(path, "unknown metric '" + name + "'");
    if (it->second.chart().name() != chart->name()) throw ConfigError(path, "metric lives on another chart");
    return it->second;
  };

  const json& jstructs = member(doc, "structures", root);
  expect_object(jstructs, "/structures");
  for (const auto& [label, js] : jstructs.items()) {
    const std::string p = child("/structures", label);
    expect_keys(js, p, {"type", "chart", "phi", "xi", "eta", "J", "metric", "class", "notes"});
    const std::string type = as_string(member(js, "type", p), child(p, "type"));
    ChartPtr chart = chart_ref(member(js, "chart", p), child(p, "chart"));
    MetricField g = metric_ref(member(js, "metric", p), child(p, "metric"), chart);
    auto forbid = [&](std::initializer_list<const char*> keys) {
      for (const char* k : keys)
        if (js.contains(k)) throw ConfigError(child(p, k), "not allowed for structure type '" + type + "'");
    };
    StructureEntry entry{label, g, chart->domain(), std::nullopt, {}};
    if (type == "paracontact") {
      forbid({"J"});
      auto phi = expression_matrix(member(js, "phi", p), child(p, "phi"), *chart);
      auto xi = expression_vector(member(js, "xi", p), child(p, "xi"), *chart);
      auto eta = expression_vector(member(js, "eta", p), child(p, "eta"), *chart);
      entry.structure = wrap(p, [&] {
        return ParacontactStructure(TensorField::endomorphism(chart, phi), TensorField::vector(chart, xi),
                                    TensorField::covector(chart, eta), g);
      });
    } else if (type == "para-hermitian") {
      forbid({"phi", "xi", "eta"});
      auto J = expression_matrix(member(js, "J", p), child(p, "J"), *chart);
      entry.structure = wrap(p, [&] { return ParaHermitianStructure(TensorField::endomorphism(chart, J), g); });
    } else if (type == "metric") {
      forbid({"phi", "xi", "eta", "J"});
    } else {
      throw ConfigError(child(p, "type"), "unknown structure type '" + type + "'");
    }
    if (js.contains("class")) {
      const std::string c = as_string(js["class"], child(p, "class"));
      entry.expected_class = parse_class(c);
      if (!entry.expected_class) throw ConfigError(child(p, "class"), "unknown structure class '" + c + "'");
    }
    if (js.contains("notes")) {
      const json& jn = as_array(js["notes"], child(p, "notes"));
      for (std::size_t i = 0; i < jn.size(); ++i) entry.notes.push_back(as_string(jn[i], child(child(p, "notes"), i)));
    }
    sc.structures.push_back(std::move(entry));
  }
  auto structure_ref = [&](const json& j, const std::string& path) -> StructureEntry& {
    const std::string label = as_string(j, path);
    for (auto& s : sc.structures)
      if (s.label == label) return s;
    throw ConfigError(path, "unknown structure '" + label + "'");
  };

  if (doc.contains("domains")) {
    expect_object(doc["domains"], "/domains");
    for (const auto& [label, jb] : doc["domains"].items()) {
      const std::string p = child("/domains", label);
      StructureEntry& s = structure_ref(json(label), p);
      const Chart& chart = metric_of(s.structure).chart();
      Box box = as_box(jb, p, chart.dimension());
      for (std::size_t i = 0; i < box.size(); ++i) {
        if (box[i].lo < chart.domain()[i].lo || box[i].hi > chart.domain()[i].hi) {
          throw ConfigError(child(p, i), "sample interval leaves the chart domain");
        }
      }
      s.sample_box = std::move(box);
    }
  }

  if (doc.contains("map")) {
    const json& jm = doc["map"];
    const std::string p = "/map";
    expect_keys(jm, p, {"source", "target", "kind", "sign", "components"});
    const StructureEntry& src = structure_ref(member(jm, "source", p), child(p, "source"));
    const StructureEntry& tgt = structure_ref(member(jm, "target", p), child(p, "target"));
    const ChartPtr& sc_chart = metric_of(src.structure).chart_ptr();
    const ChartPtr& tg_chart = metric_of(tgt.structure).chart_ptr();
    const json& comps = as_array(member(jm, "components", p), child(p, "components"), tg_chart->dimension());
    std::vector<Expression> exprs;
    for (std::size_t i = 0; i < comps.size(); ++i) exprs.push_back(as_expression(comps[i], child(child(p, "components"), i), *sc_chart));
    std::optional<MapKind> kind;
    if (jm.contains("kind")) {
      kind = MapKind{parse_tag(as_string(jm["kind"], child(p, "kind")), child(p, "kind")), 1};
    }
    if (jm.contains("sign")) {
      if (!kind) throw ConfigError(child(p, "sign"), "sign given without a map kind");
      const json& js = jm["sign"];
      if (!js.is_number_integer() || (js.get<int>() != 1 && js.get<int>() != -1)) {
        throw ConfigError(child(p, "sign"), "sign must be 1 or -1");
      }
      kind->sign = js.get<int>();
    }
    sc.map = MapEntry{wrap(p, [&] { return SmoothMap(sc_chart, tg_chart, exprs); }), src.label, tgt.label, kind};
  }

  if (doc.contains("suite")) {
    const json& js = as_array(doc["suite"], "/suite");
    for (std::size_t i = 0; i < js.size(); ++i) sc.suite.push_back(as_string(js[i], child("/suite", i)));
  }
  if (doc.contains("tol")) {
    sc.tol = as_number(doc["tol"], "/tol");
    if (!(sc.tol >= 0.0)) throw ConfigError("/tol", "tolerance must be non-negative");
  }
  if (doc.contains("samples")) sc.samples = as_count(doc["samples"], "/samples");
  if (doc.contains("seed")) sc.seed = as_count(doc["seed"], "/seed");
  if (doc.contains("expect_fail")) {
    const json& j = as_array(doc["expect_fail"], "/expect_fail");
    for (std::size_t i = 0; i < j.size(); ++i) sc.expect_fail.push_back(as_string(j[i], child("/expect_fail", i)));
  }
  if (doc.contains("notes")) {
    const json& j = as_array(doc["notes"], "/notes");
    for (std::size_t i = 0; i < j.size(); ++i) sc.notes.push_back(as_string(j[i], child("/notes", i)));
  }
  return sc;
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("", "cannot read config file '" + path.string() + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return load_scenario_config(ss.str());
}

std::vector<ScenarioInfo> scenario_registry() {
  std::vector<ScenarioInfo> out;
  for (const auto& b : detail::builtin_scenarios()) out.push_back({b.name, b.description});
  return out;
}

Scenario load_scenario(std::string_view name) {
  for (const auto& b : detail::builtin_scenarios()) {
    if (b.name == name || std::find(b.aliases.begin(), b.aliases.end(), name) != b.aliases.end()) {
      Scenario sc = load_scenario_config(b.document);
      sc.name = std::string(name);
      return sc;
    }
  }
  throw ConfigError("", "unknown scenario '" + std::string(name) + "'");
}

namespace {

const std::vector<std::string>& structure_checks() {
  static const std::vector<std::string> names{
      "almost-paracontact", "compatible-metric", "paracontact-metric", "normal",           "structure-functions",
      "para-sasakian",      "k-paracontact",     "classification",     "phi-basis",        "para-hermitian",
      "para-kahler",        "codifferential",    "frame-identity",     "j-frame",          "orthonormal-frame",
      "metric-compatibility", "metric-signature", "trace-frame-consistency"};
  return names;
}

const std::vector<std::string>& map_checks() {
  static const std::vector<std::string> names{
      "harmonic",          "second-fundamental-form-symmetry", "tension-trace-consistency", "energy-density",
      "paraholomorphic",   "tension-transfer",                 "pointwise-transfer",        "parapluriharmonic",
      "lambda",            "pluriharmonic-obstruction",        "xi-orthogonality",          "normality-transfer",
      "tension-vertical"};
  return names;
}

CheckReport classification_report(const ParacontactStructure& S, std::span<const Point> points, double tol,
                                   std::optional<StructureClass> expected) {
  const auto c = classify_normal_3(S, points, tol);
  CheckReport r;
  r.name = "classification";
  r.tolerance = tol;
  r.sub_residuals.push_back({"normality", c.normal_residual});
  r.sub_residuals.push_back({"p, q spread", c.spread});
  if (expected == StructureClass::kParaSasakian || expected == StructureClass::kParacosymplectic) {
    const double q0 = expected == StructureClass::kParaSasakian ? -1.0 : 0.0;
    r.sub_residuals.push_back({"|p - p0|", std::abs(c.p)});
    r.sub_residuals.push_back({"|q - q0|", std::abs(c.q - q0)});
  }
  for (const auto& s : r.sub_residuals) r.max_residual = std::max(r.max_residual, s.residual);
  r.passed = expected ? c.tag == *expected : c.tag != StructureClass::kNotNormal;
  r.passed = r.passed && (c.tag == StructureClass::kNotNormal || r.max_residual <= tol);
  char buf[160];
  std::snprintf(buf, sizeof buf, "class %s, p = %.17g, q = %.17g", to_string(c.tag).c_str(), c.p, c.q);
  r.notes.push_back(buf);
  if (expected) r.notes.push_back("expected class " + to_string(*expected));
  return r;
}

struct Job {
  std::string name;
  std::function<CheckReport()> run;
};

}  // namespace

std::vector<std::string> available_checks() {
  std::vector<std::string> out = structure_checks();
  out.insert(out.end(), map_checks().begin(), map_checks().end());
  return out;
}

std::vector<CheckReport> run_suite(const Scenario& sc, const SuiteOptions& options) {
  const std::size_t samples = options.samples.value_or(sc.samples);
  const std::uint64_t seed = options.seed.value_or(sc.seed);
  const double tol = options.tol.value_or(sc.tol);
  std::vector<std::string> selection = options.checks.value_or(sc.suite);
  const bool all = !options.checks && sc.suite.empty();

  std::map<std::string, std::vector<Point>> points;
  for (const auto& s : sc.structures) {
    points.emplace(s.label, sample_points(metric_of(s.structure).chart_ptr(), s.sample_box, samples, seed));
  }

  std::vector<Job> jobs;
  for (const auto& entry : sc.structures) {
    const auto& pts = points.at(entry.label);
    const AnyStructure& st = entry.structure;
    const MetricField& g = metric_of(st);
    auto add = [&](const std::string& check, std::function<CheckReport()> fn) {
      jobs.push_back({entry.label + "." + check, std::move(fn)});
    };
    if (const auto* c = std::get_if<ParacontactStructure>(&st)) {
      add("almost-paracontact", [=, &pts] { return check_almost_paracontact(*c, pts, tol); });
      add("compatible-metric", [=, &pts] { return check_compatible_metric(*c, pts, tol); });
      add("paracontact-metric", [=, &pts] { return check_paracontact_metric(*c, pts, tol); });
      add("normal", [=, &pts] { return check_normal(*c, pts, tol); });
      add("structure-functions", [=, &pts] { return check_structure_functions(*c, pts, tol); });
      add("para-sasakian", [=, &pts] { return check_para_sasakian(*c, pts, tol); });
      add("k-paracontact", [=, &pts] { return check_k_paracontact(*c, pts, tol); });
      add("classification",
          [=, &pts, &entry] { return classification_report(*c, pts, tol, entry.expected_class); });
      add("phi-basis", [=, &pts] { return check_adapted_frame(st, pts, tol); });
    } else if (const auto* h = std::get_if<ParaHermitianStructure>(&st)) {
      add("para-hermitian", [=, &pts] { return check_para_hermitian(*h, pts, tol); });
      add("para-kahler", [=, &pts] { return check_para_kahler(*h, pts, tol); });
      add("codifferential", [=, &pts] { return check_codifferential(*h, pts, tol); });
      add("frame-identity", [=, &pts] { return verify_frame_identity(*h, pts, tol); });
      add("j-frame", [=, &pts] { return check_adapted_frame(st, pts, tol); });
    } else {
      add("orthonormal-frame", [=, &pts] { return check_adapted_frame(st, pts, tol); });
    }
    add("metric-compatibility", [=, &pts, &g] { return check_metric_compatibility(g, pts, tol); });
    add("metric-signature", [=, &pts, &g] { return check_metric_signature(g, pts, tol); });
    add("trace-frame-consistency", [=, &pts, &st] { return check_trace_frame_consistency(st, pts, tol); });
  }

  if (sc.map) {
    const MapEntry& me = *sc.map;
    const AnyStructure& src = sc.structure(me.source).structure;
    const AnyStructure& tgt = sc.structure(me.target).structure;
    const auto& pts = points.at(me.source);
    const MapSetting setting{me.map, src, tgt, me.kind};
    const bool src_contact = std::holds_alternative<ParacontactStructure>(src);
    auto add = [&](const std::string& check, std::function<CheckReport()> fn) {
      jobs.push_back({"map." + check, std::move(fn)});
    };
    add("harmonic", [=, &pts, &src, &tgt, &me] { return is_harmonic(me.map, metric_of(src), metric_of(tgt), pts, tol); });
    add("second-fundamental-form-symmetry", [=, &pts] { return check_second_fundamental_form_symmetry(setting, pts, tol); });
    add("tension-trace-consistency", [=, &pts] { return check_tension_trace_consistency(setting, pts, tol); });
    add("energy-density", [=, &pts] { return check_energy_density(setting, pts, tol); });
    if (src_contact) add("parapluriharmonic", [=, &pts] { return check_parapluriharmonic(setting, pts, tol); });
    if (me.kind) {
      add("paraholomorphic", [=, &pts] { return check_paraholomorphic(setting, pts, tol); });
      add("tension-transfer", [=, &pts] { return verify_tension_transfer(setting, pts, tol); });
      add("pointwise-transfer", [=, &pts] { return verify_pointwise_transfer(setting, pts, tol); });
      switch (me.kind->tag) {
        case MapTag::kContactToContact:
          add("lambda", [=, &pts] { return check_lambda_consistency(setting, pts, tol); });
          add("pluriharmonic-obstruction", [=, &pts] { return verify_pluriharmonic_obstruction(setting, pts, tol); });
          add("xi-orthogonality", [=, &pts] { return check_image_orthogonal(setting, pts, tol); });
          break;
        case MapTag::kContactToHermitian:
          add("normality-transfer", [=, &pts] { return verify_normality_transfer(setting, pts, tol); });
          break;
        case MapTag::kHermitianToContact:
          add("tension-vertical", [=, &pts] { return verify_tension_vertical(setting, pts, tol); });
          break;
      }
    }
  }

  if (!all) {
    const auto known = available_checks();
    for (const auto& s : selection) {
      const bool is_check = std::find(known.begin(), known.end(), s) != known.end();
      const bool is_report = std::any_of(jobs.begin(), jobs.end(), [&](const Job& j) { return j.name == s; });
      if (!is_check && !is_report) throw ConfigError("/suite", "unknown check '" + s + "'");
    }
    std::erase_if(jobs, [&](const Job& j) {
      const std::string check = j.name.substr(j.name.find('.') + 1);
      return std::none_of(selection.begin(), selection.end(),
                          [&](const std::string& s) { return s == check || s == j.name; });
    });
  }

  std::vector<CheckReport> reports;
  for (const auto& job : jobs) {
    CheckReport r;
    try {
      r = job.run();
    } catch (const std::exception& e) {
      r = CheckReport{};
      r.max_residual = std::numeric_limits<double>::infinity();
      r.tolerance = tol;
      r.passed = false;
      r.notes.push_back(std::string("error: ") + e.what());
    }
    r.name = job.name;
    r.expected_fail = sc.expects_failure(job.name);
    reports.push_back(std::move(r));
  }
  std::sort(reports.begin(), reports.end(), [](const CheckReport& a, const CheckReport& b) { return a.name < b.name; });
  // Structure notes (errata and the like) travel with every report that uses the structure.
  for (auto& r : reports) {
    const std::string label = r.name.substr(0, r.name.find('.'));
    std::vector<std::string> owners{label};
    if (label == "map" && sc.map) owners = {sc.map->source, sc.map->target};
    std::vector<std::string> extra;
    for (const auto& s : sc.structures) {
      if (std::find(owners.begin(), owners.end(), s.label) == owners.end()) continue;
      for (const auto& n : s.notes)
        if (std::find(extra.begin(), extra.end(), n) == extra.end()) extra.push_back(n);
    }
    r.notes.insert(r.notes.begin(), extra.begin(), extra.end());
  }
  return reports;
}

}  // namespace parageo
