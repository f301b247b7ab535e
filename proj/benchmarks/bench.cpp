#include <benchmark/benchmark.h>

#include <string>
#include <vector>

#include "parageo/expr.hpp"
#include "parageo/maps.hpp"
#include "parageo/metric.hpp"
#include "parageo/scenario.hpp"
#include "parageo/structures.hpp"

namespace {

using namespace parageo;

const Scenario& example() {
  static const Scenario s = load_scenario("paper-4.1");
  return s;
}

void BM_JetEval(benchmark::State& state) {
  const std::vector<std::string> names = {"x", "y", "z"};
  const Expression e = parse_expression("(4*x^3 + 1)/(2*x) - x^2*y + z*(1 + y^2)^-1", names);
  const std::vector<double> p = {1.25, -0.5, 0.75};
  for (auto _ : state) benchmark::DoNotOptimize(eval_jet2(e, p));
}
BENCHMARK(BM_JetEval);

void BM_Christoffel(benchmark::State& state) {
  const auto& S = std::get<ParacontactStructure>(example().structure("M1").structure);
  const Point p(S.chart_ptr(), {1.25, -0.5, 0.75});
  for (auto _ : state) benchmark::DoNotOptimize(christoffel(S.metric(), p));
}
BENCHMARK(BM_Christoffel);

void BM_TensionField(benchmark::State& state) {
  const Scenario& s = example();
  const auto& g1 = metric_of(s.structure(s.map->source).structure);
  const auto& g2 = metric_of(s.structure(s.map->target).structure);
  const Point p(metric_of(s.structure(s.map->source).structure).chart_ptr(), {1.25, -0.5, 0.75});
  for (auto _ : state) benchmark::DoNotOptimize(tension_field(s.map->map, g1, g2, p));
}
BENCHMARK(BM_TensionField);

void BM_ExampleSuite(benchmark::State& state) {
  SuiteOptions o;
  o.samples = static_cast<std::size_t>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_suite(example(), o));
}
BENCHMARK(BM_ExampleSuite)->Arg(16)->Arg(64)->Unit(benchmark::kMillisecond);

}  // namespace
BENCHMARK_MAIN();
