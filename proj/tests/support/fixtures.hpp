#pragma once

#include <deque>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

#include "parageo/maps.hpp"
#include "parageo/sampling.hpp"
#include "parageo/scenario.hpp"
#include "parageo/structures.hpp"

namespace parageo::fixture {

/// Registry scenarios are loaded once per process.
inline const Scenario& scenario(const std::string& name) {
  static std::deque<std::pair<std::string, Scenario>> cache;
  for (const auto& [n, s] : cache)
    if (n == name) return s;
  cache.emplace_back(name, load_scenario(name));
  return cache.back().second;
}

inline const ParacontactStructure& contact(const std::string& scen, std::string_view label) {
  return std::get<ParacontactStructure>(scenario(scen).structure(label).structure);
}

inline const ParaHermitianStructure& hermitian(const std::string& scen, std::string_view label) {
  return std::get<ParaHermitianStructure>(scenario(scen).structure(label).structure);
}

inline const ParacontactStructure& M1() { return contact("paper-4.1", "M1"); }
inline const ParacontactStructure& M2() { return contact("paper-4.1", "M2"); }
inline const ParacontactStructure& flat_P() { return contact("flat-paracosymplectic", "P"); }
inline const ParaHermitianStructure& flat_N() { return hermitian("flat-para-kahler", "N"); }

inline Point at(const ChartPtr& chart, std::vector<double> coords) { return Point(chart, std::move(coords)); }

/// The scenario's own sample points for one structure.
inline std::vector<Point> samples(const std::string& scen, std::string_view label, std::size_t count = 64,
                                  std::uint64_t seed = 42) {
  const auto& e = scenario(scen).structure(label);
  const auto& g = metric_of(e.structure);
  return sample_points(g.chart_ptr(), e.sample_box, count, seed);
}

/// MapSetting for a registry scenario with a map.
inline MapSetting map_setting(const std::string& scen) {
  const auto& s = scenario(scen);
  return MapSetting{s.map->map, s.structure(s.map->source).structure, s.structure(s.map->target).structure,
                    s.map->kind};
}

inline std::vector<Point> map_samples(const std::string& scen, std::size_t count = 64, std::uint64_t seed = 42) {
  return samples(scen, scenario(scen).map->source, count, seed);
}

inline double sub_residual(const CheckReport& r, std::string_view identity) {
  for (const auto& s : r.sub_residuals)
    if (s.identity == identity) return s.residual;
  return -1.0;
}

}  // namespace parageo::fixture
