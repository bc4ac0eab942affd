#include <benchmark/benchmark.h>

#include "wavebench/complexity.hpp"
#include "wavebench/front_end.hpp"
#include "wavebench/sensing.hpp"

namespace {

using namespace wavebench;

struct SensingFixture {
  FrontEnd fe = build_front_end({}, CarrierConfig{});
  SweepCodebook codebook = make_sweep_codebook(fe.aperture, 64, -deg_to_rad(60.0), deg_to_rad(60.0), fe.carrier);
  Direction target{deg_to_rad(20.0), 0.0};
};

void BM_AodEstimate(benchmark::State& state) {
  const SensingFixture f;
  const double res = deg_to_rad(0.05);
  const AodEstimator est(f.fe.aperture, f.codebook.codewords, f.fe.carrier, -deg_to_rad(60.0),
                         deg_to_rad(60.0), res);
  Rng rng = make_rng(1);
  const CVector y = observe({f.target}, f.codebook.codewords, f.fe.aperture, f.fe.carrier, 1e-2, rng);
  for (auto _ : state) benchmark::DoNotOptimize(est.estimate(y));
}
BENCHMARK(BM_AodEstimate);

void BM_AodEstimateBatch(benchmark::State& state) {
  const SensingFixture f;
  const AodEstimator est(f.fe.aperture, f.codebook.codewords, f.fe.carrier, -deg_to_rad(60.0),
                         deg_to_rad(60.0), deg_to_rad(0.05));
  Rng rng = make_rng(2);
  const int batch = static_cast<int>(state.range(0));
  CMatrix ys(static_cast<Eigen::Index>(f.codebook.codewords.size()), batch);
  for (int b = 0; b < batch; ++b) {
    ys.col(b) = observe({f.target}, f.codebook.codewords, f.fe.aperture, f.fe.carrier, 1e-2, rng);
  }
  for (auto _ : state) benchmark::DoNotOptimize(est.estimate_batch(ys));
  state.SetItemsProcessed(state.iterations() * batch);
}
BENCHMARK(BM_AodEstimateBatch)->Arg(100)->Arg(500)->Unit(benchmark::kMillisecond);

void BM_Crb(benchmark::State& state) {
  const SensingFixture f;
  for (auto _ : state) {
    benchmark::DoNotOptimize(crb_aod(f.fe.aperture, f.codebook.codewords, {1.0, 0.0}, 100.0, f.target, f.fe.carrier));
  }
}
BENCHMARK(BM_Crb);

void BM_ComplexitySweep(benchmark::State& state) {
  std::vector<int> ms;
  for (int s = 4; s <= 16; ++s) ms.push_back(s * s);
  for (auto _ : state) benchmark::DoNotOptimize(complexity_sweep({}, ms));
}
BENCHMARK(BM_ComplexitySweep);

}  // namespace

BENCHMARK_MAIN();
