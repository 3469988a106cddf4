#include <benchmark/benchmark.h>

#include <cmath>

#include "sqzres/beam.hpp"
#include "sqzres/hamiltonians.hpp"
#include "sqzres/squeezedbath.hpp"
#include "sqzres/wigner.hpp"

using namespace sqzres;

namespace {

BeamConfig squeezing_beam(int n_atoms, int n_max) {
  BeamConfig cfg;
  cfg.n_atoms = n_atoms;
  cfg.n_max = n_max;
  cfg.eff.lambda2 = 0.1;
  cfg.eff.lambda1 = -0.1 * std::tanh(1.0);
  cfg.tau = 3.08;
  return cfg;
}

}  // namespace

// Single-passage propagator of the static model, size 2 (n_max + 1).
static void BM_Expm(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const Matrix h = cplx(0.0, -3.08) * build_H_eff_static({-0.076, 0.1, 0.0, 0.0, 0.0}, n_max).matrix();
  for (auto _ : state) benchmark::DoNotOptimize(expm(h));
}
BENCHMARK(BM_Expm)->Arg(30)->Arg(60)->Arg(120)->Unit(benchmark::kMillisecond);

static void BM_Beam(benchmark::State& state) {
  const BeamConfig cfg = squeezing_beam(static_cast<int>(state.range(0)), static_cast<int>(state.range(1)));
  for (auto _ : state) benchmark::DoNotOptimize(run_beam(cfg));
}
BENCHMARK(BM_Beam)->Args({200, 30})->Args({400, 50})->Unit(benchmark::kMillisecond);

// Time-dependent passage through the dispersive model (fresh propagator per atom).
static void BM_BeamDispersive(benchmark::State& state) {
  PhysicalParams phys;
  phys.Delta = {200.0, 300.0, 0.0};
  phys.omega[0] = -0.1 * std::tanh(1.0) * 200.0;
  phys.omega[1] = -0.1 * 300.0;
  BeamConfig cfg = squeezing_beam(10, 20);
  cfg.hamiltonian = BeamHamiltonian::dispersive;
  cfg.phys = with_matched_detunings(phys);
  for (auto _ : state) benchmark::DoNotOptimize(run_beam(cfg));
}
BENCHMARK(BM_BeamDispersive)->Unit(benchmark::kMillisecond);

// Vectorized constant-generator path at the squeezed-bath parameters.
static void BM_EvolveMasterBath(benchmark::State& state) {
  const BathParams bp = bath_params(0.04, 40.0, 0.0, 1.5, 0.0);
  ExactOptions opts;
  opts.n_max = 3;
  for (auto _ : state) benchmark::DoNotOptimize(run_exact(bp, sigma_x_eigenstate(), decay_window(bp), opts));
}
BENCHMARK(BM_EvolveMasterBath)->Unit(benchmark::kMillisecond);

// Direct RK4 path on a damped Jaynes-Cummings system.
static void BM_EvolveMasterDirect(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const QuantumState psi =
      tensor(QuantumState::fock(0, 1), QuantumState::pure(displacement(1.0, n_max).matrix().col(0)));
  const std::vector<CollapseChannel> ch = {{on_field(destroy(n_max), 2), 0.2}};
  const HamiltonianSource h = HamiltonianSource::constant(build_H_transformed(0.3, n_max));
  for (auto _ : state) benchmark::DoNotOptimize(evolve_master(h, ch, psi, 10.0));
}
BENCHMARK(BM_EvolveMasterDirect)->Arg(10)->Arg(20)->Unit(benchmark::kMillisecond);

static void BM_WignerGrid(benchmark::State& state) {
  const int n_max = static_cast<int>(state.range(0));
  const QuantumState s = target_state(0.0, 1.0, 0.0, n_max);
  for (auto _ : state) benchmark::DoNotOptimize(wigner_grid(s));
}
BENCHMARK(BM_WignerGrid)->Arg(50)->Arg(80)->Unit(benchmark::kMillisecond);

BENCHMARK_MAIN();
