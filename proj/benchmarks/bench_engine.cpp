#include <benchmark/benchmark.h>

#include <random>

#include "spinlab/catalog.hpp"
#include "spinlab/compatibility.hpp"
#include "spinlab/induced_spinc.hpp"
#include "spinlab/scenario.hpp"

using namespace spinlab;

namespace {

struct Fixture {
  ProductModel product{1.0, -0.5};
  std::unique_ptr<HypersurfaceChart> chart =
      make_chart("graph", {{"expr", std::string("0.3*sin(x)*cos(y)+0.2*z*z-0.1*x*y*z")}}, product);
  Eigen::Vector3d u{0.1, -0.2, 0.15};
};

const Fixture& fixture() {
  static const Fixture f;
  return f;
}

}  // namespace

static void BM_InducedData(benchmark::State& state) {
  const auto& f = fixture();
  for (auto _ : state) benchmark::DoNotOptimize(induced_data(*f.chart, f.product, f.u));
}
BENCHMARK(BM_InducedData);

static void BM_RestrictStructure(benchmark::State& state) {
  const auto& f = fixture();
  InducedPointData d = induced_data(*f.chart, f.product, f.u);
  for (auto _ : state) benchmark::DoNotOptimize(restrict_structure(f.product, d, Structure::S2));
}
BENCHMARK(BM_RestrictStructure);

static void BM_SystemResiduals(benchmark::State& state) {
  const auto& f = fixture();
  InducedPointData d = induced_data(*f.chart, f.product, f.u);
  for (auto _ : state) {
    benchmark::DoNotOptimize(system_residuals(1, d, f.product));
    benchmark::DoNotOptimize(system_residuals(2, d, f.product));
  }
}
BENCHMARK(BM_SystemResiduals);

static void BM_ConversePoint(benchmark::State& state) {
  const auto& f = fixture();
  HarvestedData data(*f.chart, f.product);
  for (auto _ : state) benchmark::DoNotOptimize(converse_residuals(converse_point(data, f.u), f.product));
}
BENCHMARK(BM_ConversePoint);

static void BM_RunScenario(benchmark::State& state) {
  Scenario s;
  for (const auto& b : builtin_scenarios())
    if (b.name == "graph-h2xs2") s = b;
  s.samples = static_cast<int>(state.range(0));
  for (auto _ : state) benchmark::DoNotOptimize(run_scenario(s, 1));
  state.SetItemsProcessed(state.iterations() * state.range(0));
}
BENCHMARK(BM_RunScenario)->Arg(5)->Arg(25)->Unit(benchmark::kMillisecond);
BENCHMARK_MAIN();
