#include <gtest/gtest.h>

#include <cmath>

#include "sqzres/beam.hpp"
#include "sqzres/errors.hpp"

using namespace sqzres;

namespace {

BeamConfig squeezing_beam(int n_atoms) {
  BeamConfig cfg;
  cfg.n_atoms = n_atoms;
  cfg.eff.lambda2 = 0.1;
  cfg.eff.lambda1 = -0.1 * std::tanh(1.0);
  cfg.tau = 0.2 * std::cosh(1.0) / 0.1;
  return cfg;
}

}  // namespace

TEST(Beam, ZeroCouplingsLeaveFieldAlone) {
  BeamConfig cfg;
  cfg.n_atoms = 5;
  cfg.n_max = 10;
  cfg.field0 = QuantumState::pure(displacement(0.7, 10).matrix().col(0));
  const BeamResult res = run_beam(cfg);
  EXPECT_LT((res.final_field.density() - cfg.field0->density()).cwiseAbs().maxCoeff(), 1e-14);
  EXPECT_FALSE(res.spec.has_value());
}

TEST(Beam, EngineeredRate) {
  EXPECT_NEAR(engineered_rate(1.0 / 3.08, 0.1 / std::cosh(1.0), 3.08), 0.01 / std::pow(std::cosh(1.0), 2) * 3.08,
              1e-12);
  EXPECT_NEAR(engineered_rate(1.0, 0.065, 6.0) / engineered_rate(1.0, 0.065, 3.0), 4.0, 1e-12);
  EXPECT_THROW(engineered_rate(-1.0, 0.1, 1.0), PreconditionError);
}

TEST(Beam, RelaxesTowardSqueezedVacuum) {
  const BeamResult res = run_beam(squeezing_beam(200));
  const double r = 1.0;
  EXPECT_NEAR(res.n_mean.back(), std::pow(std::sinh(r), 2), 0.10);
  EXPECT_NEAR(res.var_x1.back(), std::exp(2 * r) / 4, 0.15);
  EXPECT_NEAR(res.var_x2.back(), std::exp(-2 * r) / 4, 0.01);
  ASSERT_TRUE(res.spec.has_value());
  EXPECT_NEAR(res.spec->r, 1.0, 1e-12);
  for (double p : res.purity) EXPECT_LE(p, 1.0 + 1e-9);
  EXPECT_EQ(res.n_mean.size(), 201u);
}

TEST(Beam, TransformedPictureRelaxesToVacuum) {
  BeamConfig cfg = squeezing_beam(200);
  cfg.n_max = 40;
  const TransformedCheck check = transformed_picture_check(cfg);
  EXPECT_NEAR(check.fidelity_to_vacuum.front(), 1.0 / std::cosh(1.0), 1e-3);
  EXPECT_GT(check.fidelity_to_vacuum.back(), 0.98);
  EXPECT_TRUE(check.monotone_after_burn_in);
}

TEST(Beam, TransformedPictureNeedsZeroBeta) {
  BeamConfig cfg = squeezing_beam(2);
  cfg.eff.beta = 0.01;
  EXPECT_THROW(transformed_picture_check(cfg), PreconditionError);
}

TEST(Beam, SteadyStateForgetsInitialField) {
  BeamConfig a = squeezing_beam(300);
  BeamConfig b = a;
  b.field0 = QuantumState::pure(displacement(0.5, b.n_max).matrix().col(0));
  const BeamResult ra = run_beam(a);
  const BeamResult rb = run_beam(b);
  EXPECT_NEAR(ra.n_mean.back(), rb.n_mean.back(), 0.02);
  EXPECT_NEAR(ra.var_x2.back(), rb.var_x2.back(), 0.02);
}

TEST(Beam, ConvergedInTruncation) {
  BeamConfig a = squeezing_beam(200);
  BeamConfig b = a;
  b.n_max = 2 * a.n_max;
  const BeamResult ra = run_beam(a);
  const BeamResult rb = run_beam(b);
  // Shifts below 10% of the headline tolerances.
  EXPECT_LT(std::abs(ra.n_mean.back() - rb.n_mean.back()), 0.01);
  EXPECT_LT(std::abs(ra.var_x1.back() - rb.var_x1.back()), 0.015);
  EXPECT_LT(std::abs(ra.var_x2.back() - rb.var_x2.back()), 0.001);
}

TEST(Beam, DispersiveTermsBarelyMoveTheField) {
  PhysicalParams phys;
  phys.Delta = {200.0, 300.0, 0.0};
  const cplx l2 = 0.1;
  const cplx l1 = -0.1 * std::tanh(1.0);
  phys.omega[0] = std::conj(l1 * phys.Delta[0] / phys.g);
  phys.omega[1] = -l2 * phys.Delta[1] / std::conj(phys.g);
  phys = with_matched_detunings(phys);

  BeamConfig stat = squeezing_beam(200);
  stat.eff = effective_params(phys);
  BeamConfig disp = stat;
  disp.hamiltonian = BeamHamiltonian::dispersive;
  disp.phys = phys;
  disp.clock = PhaseClock::reset;
  const double ns = run_beam(stat).n_mean.back();
  const double nd = run_beam(disp).n_mean.back();
  EXPECT_LT(std::abs(nd - ns) / ns, 0.05);
}

TEST(Beam, AntiJaynesCummingsAdvisory) {
  BeamConfig cfg = squeezing_beam(3);
  std::swap(cfg.eff.lambda1, cfg.eff.lambda2);
  const BeamResult res = run_beam(cfg);
  bool found = false;
  for (const auto& a : res.advisories) found = found || a.find("anti-Jaynes-Cummings") != std::string::npos;
  EXPECT_TRUE(found);
}

TEST(Beam, LongInteractionAdvisory) {
  BeamConfig cfg = squeezing_beam(1);
  cfg.tau = 10.0;
  const BeamResult res = run_beam(cfg);
  ASSERT_FALSE(res.advisories.empty());
  EXPECT_NE(res.advisories.front().find("tau"), std::string::npos);
}

TEST(Beam, CavityLossDuringPassage) {
  BeamConfig cfg;
  cfg.n_atoms = 3;
  cfg.n_max = 6;
  cfg.tau = 1.0;
  cfg.kappa = 0.5;
  cfg.field0 = QuantumState::fock(2, 6);
  const BeamResult res = run_beam(cfg);
  for (int k = 0; k <= 3; ++k) EXPECT_NEAR(res.n_mean[k], 2.0 * std::exp(-0.5 * k), 1e-6);
}

TEST(Beam, Snapshots) {
  BeamConfig cfg = squeezing_beam(10);
  cfg.snapshot_atoms = {0, 5, 10};
  const BeamResult res = run_beam(cfg);
  ASSERT_EQ(res.snapshots.size(), 3u);
  EXPECT_LT((res.snapshots.at(10).density() - res.final_field.density()).norm(), 1e-14);
}

TEST(Beam, ValidatesConfig) {
  BeamConfig cfg;
  cfg.n_atoms = 0;
  EXPECT_THROW(run_beam(cfg), PreconditionError);
  cfg = BeamConfig{};
  cfg.hamiltonian = BeamHamiltonian::dispersive;
  EXPECT_THROW(run_beam(cfg), PreconditionError);
  cfg = BeamConfig{};
  cfg.field0 = QuantumState::fock(0, 5);
  EXPECT_THROW(run_beam(cfg), DimensionError);
}

TEST(Beam, SmoothedMonotone) {
  EXPECT_TRUE(smoothed_nondecreasing({0, 1, 0.9, 2, 3, 4}, 0, 2, 0.0));
  EXPECT_FALSE(smoothed_nondecreasing({0, 1, 2, 0, 0, 0}, 0, 2, 0.0));
}
