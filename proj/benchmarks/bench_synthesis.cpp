#include <benchmark/benchmark.h>

#include "wavebench/front_end.hpp"
#include "wavebench/random.hpp"
#include "wavebench/sim.hpp"
#include "wavebench/synthesis.hpp"
#include "wavebench/tree_network.hpp"

namespace {

using namespace wavebench;

FrontEnd square_front_end(int side) {
  FrontEndConfig cfg;
  cfg.rows = side;
  cfg.cols = side;
  return build_front_end(cfg, CarrierConfig{});
}

CVector user(const FrontEnd& fe, std::uint64_t seed) {
  return user_channel(fe.aperture, {0.3, 0.0}, fe.carrier, Rician{}, seed).gains;
}

void BM_NearFieldCoupling(benchmark::State& state) {
  const int side = static_cast<int>(state.range(0));
  const auto tx = make_planar_array(side, side, 0.005, Vec3::Zero(), Vec3::UnitX());
  const auto rx = make_planar_array(side, side, 0.005, Vec3(0.05, 0, 0), Vec3::UnitX());
  for (auto _ : state) benchmark::DoNotOptimize(near_field_coupling(tx, rx, CarrierConfig{}));
}
BENCHMARK(BM_NearFieldCoupling)->Arg(5)->Arg(9)->Arg(16);

void BM_BdrisFull(benchmark::State& state) {
  const FrontEnd fe = square_front_end(static_cast<int>(state.range(0)));
  const CVector h = user(fe, 1);
  for (auto _ : state) benchmark::DoNotOptimize(bdris_full_configure(fe.feed_coupling.entries, h));
}
BENCHMARK(BM_BdrisFull)->Arg(5)->Arg(9);

void BM_BdrisTreeSweep(benchmark::State& state) {
  const FrontEnd fe = square_front_end(static_cast<int>(state.range(0)));
  const CVector h = user(fe, 2);
  for (auto _ : state) {
    benchmark::DoNotOptimize(
        bdris_tree_configure(fe.feed_coupling.entries, h, TreeShape::Path, fe.carrier, {1, 1, 0}));
  }
}
BENCHMARK(BM_BdrisTreeSweep)->Arg(5)->Arg(9)->Unit(benchmark::kMillisecond);

void BM_TreeSolve(benchmark::State& state) {
  const int ports = static_cast<int>(state.range(0));
  TreeNetwork net = make_tree(ports / 2, ports - ports / 2, TreeShape::Path);
  Rng rng = make_rng(3);
  for (auto& b : net.edge_susceptances) b = uniform(rng, -0.05, 0.05);
  for (auto& b : net.shunt_susceptances) b = uniform(rng, -0.05, 0.05);
  const TreeSolver solver(net, 50.0);
  const CVector rhs = CVector::Ones(ports);
  for (auto _ : state) benchmark::DoNotOptimize(solver.solve(rhs));
  state.SetComplexityN(ports);
}
BENCHMARK(BM_TreeSolve)->RangeMultiplier(4)->Range(16, 1024)->Complexity(benchmark::oN);

void BM_SimGradient(benchmark::State& state) {
  FrontEndConfig cfg;
  cfg.sim_layers = static_cast<int>(state.range(0));
  const FrontEnd fe = build_front_end(cfg, CarrierConfig{});
  const CVector h = user(fe, 4);
  const LayerPhases phases(cfg.sim_layers, CVector::Ones(cfg.aperture_size()));
  const CVector feed = CVector::Ones(cfg.rf_chains) / 2.0;
  for (auto _ : state) benchmark::DoNotOptimize(sim_gradient(fe.sim, h, phases, feed));
}
BENCHMARK(BM_SimGradient)->DenseRange(1, 4);

void BM_SimConfigure(benchmark::State& state) {
  const FrontEnd fe = square_front_end(9);
  const CVector h = user(fe, 5);
  const OptimizerOptions options{static_cast<int>(state.range(0)), 1, 0};
  for (auto _ : state) benchmark::DoNotOptimize(sim_configure(fe.sim, h, options));
}
BENCHMARK(BM_SimConfigure)->Arg(50)->Arg(500)->Unit(benchmark::kMillisecond);

}  // namespace
