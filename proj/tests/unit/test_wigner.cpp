#include <gtest/gtest.h>

#include <cmath>
#include <filesystem>
#include <numbers>

#include "sqzres/errors.hpp"
#include "sqzres/wigner.hpp"

using namespace sqzres;

constexpr double kPi = std::numbers::pi;

namespace {

// Brute-force W = (2/pi) Tr[rho D(2 alpha) P] with D from expm at large truncation.
double wigner_bruteforce(const QuantumState& field, cplx alpha) {
  const int n = field.dim() - 1;
  const int work = n + 120;
  Matrix rho = Matrix::Zero(work + 1, work + 1);
  rho.topLeftCorner(n + 1, n + 1) = field.density();
  const Matrix d = displacement(2.0 * alpha, work).matrix();
  const Matrix par = parity(work).matrix();
  return (2.0 / kPi) * (rho * d * par).trace().real();
}

}  // namespace

TEST(Wigner, VacuumPeak) {
  EXPECT_NEAR(wigner_at(QuantumState::fock(0, 10), 0.0), 2.0 / kPi, 1e-12);
  EXPECT_NEAR(wigner_at(QuantumState::fock(0, 10), cplx(0.3, -0.2)), 2.0 / kPi * std::exp(-2 * 0.13), 1e-12);
  EXPECT_NEAR(wigner_at(QuantumState::fock(1, 10), 0.0), -2.0 / kPi, 1e-12);
}

TEST(Wigner, MatchesBruteForce) {
  const QuantumState coh = QuantumState::pure(displacement(cplx(0.8, 0.3), 25).matrix().col(0));
  const QuantumState sq = target_state(cplx(0.2, -0.1), 0.5, 0.7, 25);
  for (cplx a : {cplx(0.0, 0.0), cplx(0.5, 0.2), cplx(-0.7, 1.1), cplx(1.3, -0.4)}) {
    EXPECT_NEAR(wigner_at(coh, a), wigner_bruteforce(coh, a), 1e-9);
    EXPECT_NEAR(wigner_at(sq, a), wigner_bruteforce(sq, a), 1e-9);
  }
}

TEST(Wigner, CoherentStateIsShiftedVacuum) {
  const cplx alpha(0.8, -0.5);
  const QuantumState coh = QuantumState::pure(displacement(alpha, 40).matrix().col(0));
  for (cplx b : {cplx(0.0, 0.0), cplx(0.4, 0.1), cplx(1.0, -1.0)}) {
    EXPECT_NEAR(wigner_at(coh, alpha + b), 2.0 / kPi * std::exp(-2 * std::norm(b)), 1e-9);
  }
}

TEST(Wigner, SqueezedAxisRatio) {
  const QuantumState sq = target_state(0.0, 1.0, 0.0, 120);
  // Squeezed along X2: W falls to W(0)/e at x = e^{r}/sqrt(2) and p = e^{-r}/sqrt(2).
  const double w0 = wigner_at(sq, 0.0);
  EXPECT_NEAR(w0, 2.0 / kPi, 1e-8);
  EXPECT_NEAR(wigner_at(sq, cplx(std::exp(1.0) / std::sqrt(2.0), 0.0)), w0 / std::exp(1.0), 1e-7);
  EXPECT_NEAR(wigner_at(sq, cplx(0.0, std::exp(-1.0) / std::sqrt(2.0))), w0 / std::exp(1.0), 1e-7);
}

TEST(Wigner, GaussianStatesArePositive) {
  const WignerGrid grid = wigner_grid(target_state(cplx(0.3, 0.2), 0.8, 1.0, 100));
  EXPECT_GE(grid.values.minCoeff(), -1e-6);
}

TEST(Wigner, MarginalMoments) {
  const QuantumState sq = target_state(cplx(0.5, 0.0), 0.6, 0.0, 50);
  Axis x{-5.0, 5.0, 201};
  Axis p{-5.0, 5.0, 201};
  const WignerGrid grid = wigner_grid(sq, x, p);
  double m1 = 0.0;
  double m2 = 0.0;
  for (int i = 0; i < x.count; ++i) {
    const double marg = grid.values.row(i).sum() * p.step() * x.step();
    m1 += x.at(i) * marg;
    m2 += x.at(i) * x.at(i) * marg;
  }
  const double var = m2 - m1 * m1;
  EXPECT_NEAR(m1, 0.5, 0.01 * 0.5);
  EXPECT_NEAR(var, std::exp(1.2) / 4, 0.01 * std::exp(1.2) / 4);
  EXPECT_NEAR(grid.integral(), 1.0, 1e-3);
}

TEST(Wigner, DisplacementCovariance) {
  const QuantumState f = QuantumState::fock(1, 40);
  const cplx alpha(0.4, 0.6);
  const Matrix d = displacement(alpha, 40).matrix();
  const QuantumState moved = QuantumState::mixed(d * f.density() * d.adjoint());
  for (cplx b : {cplx(0.0, 0.0), cplx(0.5, -0.3), cplx(-0.2, 0.8)}) {
    EXPECT_NEAR(wigner_at(moved, alpha + b), wigner_at(f, b), 1e-8);
  }
}

TEST(Wigner, GridChecks) {
  EXPECT_THROW(wigner_grid(QuantumState::fock(0, 4), Axis{0.0, 1.0, 1}), PreconditionError);
  EXPECT_THROW(wigner_grid(QuantumState::fock(0, 4), Axis{1.0, 0.0, 5}), PreconditionError);
  const QuantumState joint = tensor(QuantumState::fock(0, 1), QuantumState::fock(0, 3));
  EXPECT_THROW(wigner_grid(joint), DimensionError);
  EXPECT_FALSE(wigner_grid(QuantumState::fock(0, 4)).warnings.empty());
  EXPECT_TRUE(wigner_grid(QuantumState::fock(0, 70)).warnings.empty());
}

TEST(Wigner, GridFileRoundTrip) {
  const WignerGrid grid = wigner_grid(QuantumState::fock(1, 10), Axis{-2.0, 2.0, 9}, Axis{-1.0, 1.0, 5});
  const auto path = std::filesystem::temp_directory_path() / "sqzres_wigner_roundtrip.txt";
  write_grid(grid, path);
  const WignerGrid back = read_grid(path);
  std::filesystem::remove(path);
  EXPECT_EQ(back.x.count, 9);
  EXPECT_EQ(back.p.count, 5);
  EXPECT_DOUBLE_EQ(back.p.min, -1.0);
  EXPECT_LT((back.values - grid.values).cwiseAbs().maxCoeff(), 1e-11);
  EXPECT_EQ(format_grid(back), format_grid(grid));
  EXPECT_EQ(format_grid(grid).find('\r'), std::string::npos);
}

TEST(Wigner, ParseRejectsMalformed) {
  EXPECT_THROW(parse_grid(""), std::exception);
  EXPECT_THROW(parse_grid("x 0 1 2\np 0 1 2\n1 2\n"), std::exception);
  EXPECT_THROW(parse_grid("x 0 1 2\np 0 1 2\n1 2\n3\n"), std::exception);
}

TEST(Wigner, BeamSnapshots) {
  BeamConfig cfg;
  cfg.n_atoms = 20;
  cfg.eff.lambda2 = 0.1;
  cfg.eff.lambda1 = -0.1 * std::tanh(1.0);
  cfg.tau = 0.2 * std::cosh(1.0) / 0.1;
  const auto grids = beam_snapshots(cfg, {10, 20}, Axis{-2.0, 2.0, 11}, Axis{-2.0, 2.0, 11});
  ASSERT_EQ(grids.size(), 3u);
  EXPECT_NEAR(grids.at(0).values(5, 5), 2.0 / kPi, 1e-12);
  // Squeezing narrows the p direction and widens x.
  const auto& w = grids.at(20).values;
  EXPECT_GT(w(7, 5), w(5, 7));
}
