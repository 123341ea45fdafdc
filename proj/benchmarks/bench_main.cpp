#include <benchmark/benchmark.h>

#include "hexpst/chains.hpp"
#include "hexpst/dynamics.hpp"
#include "hexpst/hamiltonian.hpp"
#include "hexpst/lattice.hpp"
#include "hexpst/routing.hpp"

using namespace hexpst;

namespace {

LatticeSpec square_plane(int n) {
  LatticeSpec s;
  s.hex_rows = n;
  s.hex_cols = n;
  return s;
}

void BM_BuildLattice(benchmark::State& state) {
  const LatticeSpec spec = square_plane(static_cast<int>(state.range(0)));
  for (auto _ : state) benchmark::DoNotOptimize(build_lattice(spec));
}
BENCHMARK(BM_BuildLattice)->Arg(2)->Arg(4)->Arg(8);

void BM_VerifyBlocks(benchmark::State& state) {
  const LatticeGraph g = build_lattice(square_plane(static_cast<int>(state.range(0))));
  const Hamiltonian h = assemble(g);
  const XiTransform q = xi_transform(g);
  for (auto _ : state) benchmark::DoNotOptimize(verify_block_structure(h, q));
  state.counters["sites"] = g.site_count();
}
BENCHMARK(BM_VerifyBlocks)->Arg(2)->Arg(4)->Arg(8);

void BM_PropagatorSetup(benchmark::State& state) {
  const Hamiltonian h = assemble(build_lattice(square_plane(static_cast<int>(state.range(0)))));
  for (auto _ : state) benchmark::DoNotOptimize(Propagator(h));
  state.counters["sites"] = h.dim;
}
BENCHMARK(BM_PropagatorSetup)->Arg(2)->Arg(4)->Unit(benchmark::kMillisecond);

void BM_Evolve(benchmark::State& state) {
  const Hamiltonian h = assemble(build_lattice(square_plane(4)));
  PropagatorOptions options;
  if (state.range(0) == 0) options.dense_threshold = 0;
  const Propagator p(h, options);
  Eigen::VectorXcd psi = Eigen::VectorXcd::Zero(h.dim);
  psi[h.dim - 1] = 1.0;
  for (auto _ : state) {
    p.evolve(psi, kT1);
    benchmark::ClobberMemory();
  }
  state.SetLabel(p.is_dense() ? "dense" : "chebyshev");
}
BENCHMARK(BM_Evolve)->Arg(1)->Arg(0);

void BM_SimulateRoute(benchmark::State& state) {
  const RouteSimulator sim(build_lattice(square_plane(4)));
  const auto heads = sim.graph().head_vertices();
  const int a = heads.front(), b = heads.back();
  for (auto _ : state) benchmark::DoNotOptimize(sim.simulate(a, b));
  state.counters["hops"] = sim.simulate(a, b).n_three_chain_hops;
}
BENCHMARK(BM_SimulateRoute)->Unit(benchmark::kMillisecond);

void BM_ChainScan(benchmark::State& state) {
  const chains::ChainHamiltonian c = chains::uniform_chain(4);
  for (auto _ : state) benchmark::DoNotOptimize(chains::max_end_to_end_modulus(c, 50.0, 1e-3));
}
BENCHMARK(BM_ChainScan)->Unit(benchmark::kMillisecond);

}  // namespace

BENCHMARK_MAIN();
