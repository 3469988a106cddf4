#include <gtest/gtest.h>

#include <cmath>

#include "sqzres/hamiltonians.hpp"

using namespace sqzres;

namespace {

double max_abs(const Matrix& m) { return m.cwiseAbs().maxCoeff(); }

PhysicalParams sample_params() {
  PhysicalParams p;
  p.g = cplx(1.0, 0.0);
  p.omega = {cplx(10.0, 1.0), cplx(-8.0, 3.0), cplx(2.0, 0.0), cplx(0.5, 1.5)};
  p.Delta = {100.0, 250.0, 600.0};
  p.delta = {0.3, -0.2, 0.1};
  return p;
}

}  // namespace

TEST(Interaction, ZeroCouplingsGiveZero) {
  PhysicalParams p;
  p.g = 0.0;
  p.Delta = {100.0, 200.0, 300.0};
  EXPECT_EQ(build_H_interaction(p, 0.7, 3).norm(), 0.0);
}

TEST(Interaction, HermitianAtRandomTimes) {
  const PhysicalParams p = sample_params();
  for (double t : {0.0, 0.013, 1.7, 42.0}) EXPECT_TRUE(build_H_interaction(p, t, 4).is_hermitian(1e-12));
}

TEST(Interaction, HandAssembledAtTimeZero) {
  PhysicalParams p;
  p.g = 0.7;
  p.omega = {2.0, 3.0, 5.0, 7.0};
  p.Delta = {10.0, 20.0, 30.0};
  const int n_max = 2;
  const int f = n_max + 1;
  Matrix expected = Matrix::Zero(3 * f, 3 * f);
  auto idx = [&](int level, int n) { return level * f + n; };
  for (int n = 0; n <= n_max; ++n) {
    for (int m = 0; m <= n_max; ++m) {
      cplx on_g = 0.0;
      cplx on_e = 0.0;
      if (n == m - 1) {
        on_g += 0.7 * std::sqrt(double(m));
        on_e += 0.7 * std::sqrt(double(m));
      }
      if (n == m) {
        on_g += 2.0 + 5.0;
        on_e += 3.0 + 7.0;
      }
      expected(idx(level::i, n), idx(level::g, m)) = on_g;
      expected(idx(level::i, n), idx(level::e, m)) = on_e;
    }
  }
  expected += Matrix(expected.adjoint());
  EXPECT_LT(max_abs(build_H_interaction(p, 0.0, n_max).matrix() - expected), 1e-14);
}

TEST(Interaction, MatchesLabFrameInInteractionPicture) {
  BareFrequencies b;
  b.omega_g = 0.0;
  b.omega_e = 37.0;
  b.omega_i = 1000.0;
  b.omega_cavity = 1063.5;
  b.omega_drive = {1101.2, 878.4, 402.9, 331.7};
  PhysicalParams p = sample_params();
  const DetuningSet d = detunings_from_bare(b);
  p.Delta = d.Delta;
  p.delta = d.delta;
  const int n_max = 3;
  const Matrix h0 = build_H_bare(b, n_max).matrix();
  for (double t : {0.0, 0.0123, 0.377}) {
    const Matrix u0 = expm(Matrix(cplx(0.0, -t) * h0));
    const Matrix lab = u0.adjoint() * build_V_lab(p, b, t, n_max).matrix() * u0;
    EXPECT_LT(max_abs(lab - build_H_interaction(p, t, n_max).matrix()), 1e-9) << "t = " << t;
  }
}

TEST(Dispersive, Hermitian) {
  const PhysicalParams p = sample_params();
  const OscillatingHamiltonian h = dispersive_hamiltonian(p, 4);
  for (double t : {0.0, 0.5, 13.0}) EXPECT_TRUE(h.at(t).is_hermitian(1e-12));
}

TEST(Dispersive, WithoutShiftsOrPhasesIsStaticPlusLevelShifts) {
  EffectiveParams eff;
  eff.lambda1 = cplx(0.05, 0.01);
  eff.lambda2 = cplx(-0.1, 0.02);
  eff.beta = cplx(0.003, 0.0);
  eff.varpi_g = 0.4;
  eff.varpi_e = -0.7;
  const int n_max = 5;
  const Operator lhs = build_H_eff_dispersive(eff, StarkShifts{}, {0.0, 0.0, 0.0}, 2.3, n_max);
  const Operator levels = on_atom(0.4 * atomic_projector(level::g, level::g, 2) +
                                      cplx(-0.7) * atomic_projector(level::e, level::e, 2),
                                  n_max);
  EXPECT_LT(max_abs(lhs.matrix() - (build_H_eff_static(eff, n_max) + levels).matrix()), 1e-14);
}

TEST(Dispersive, StarkToCouplingRatioIsGOverOmega) {
  PhysicalParams p;
  p.omega = {10.0, 10.0, 0.0, 0.0};
  p.Delta = {100.0, 200.0, 0.0};
  const StarkShifts s = stark_shifts(p);
  const EffectiveParams eff = effective_params(p);
  EXPECT_NEAR(std::abs(s.excited) / std::abs(eff.lambda1), 0.1, 1e-14);
  EXPECT_NEAR(std::abs(s.ground) / std::abs(eff.lambda2), 0.1, 1e-14);
}

TEST(Dispersive, StarkFrameRemovesTimeDependence) {
  PhysicalParams p;
  p.omega = {15.0, cplx(0.0, 30.0), 4.0, cplx(2.0, -1.0)};
  p.Delta = {200.0, 300.0, 500.0};
  p = with_matched_detunings(p);
  const EffectiveParams eff = effective_params(p);
  const StarkShifts s = stark_shifts(p);
  const int n_max = 4;
  const Operator n = on_field(number(n_max), 2);
  const Operator expected = build_H_eff_static(eff, n_max) +
                            s.ground * (n * on_atom(atomic_projector(level::g, level::g, 2), n_max)) +
                            s.excited * (n * on_atom(atomic_projector(level::e, level::e, 2), n_max));
  const Operator k = on_atom(eff.varpi_g * atomic_projector(level::g, level::g, 2) +
                                 cplx(eff.varpi_e) * atomic_projector(level::e, level::e, 2),
                             n_max);
  for (double t : {0.0, 0.9, 17.3}) {
    const Operator r = on_atom(stark_frame(eff, t), n_max);
    const Operator moved = r.adjoint() * build_H_eff_dispersive(eff, s, p.delta, t, n_max) * r - k;
    EXPECT_LT(max_abs(moved.matrix() - expected.matrix()), 1e-12) << "t = " << t;
  }
}

TEST(Static, RotationOnly) {
  EffectiveParams eff;
  eff.beta = 1.0;
  const Operator h = build_H_eff_static(eff, 3);
  EXPECT_LT(max_abs(h.matrix() - on_atom(sigma_x(), 3).matrix()), 1e-15);
}

TEST(Static, FirstCouplingAloneIsAntiJaynesCummings) {
  EffectiveParams eff;
  eff.lambda1 = cplx(0.2, -0.1);
  EXPECT_LT(max_abs(build_H_eff_static(eff, 4).matrix() - build_H_transformed_anti(eff.lambda1, 4).matrix()), 1e-15);
}

TEST(Static, LadderMatrixElement) {
  EffectiveParams eff;
  eff.lambda2 = cplx(0.3, 0.4);
  const int n_max = 6;
  const Matrix h = build_H_eff_static(eff, n_max).matrix();
  const int f = n_max + 1;
  for (int n = 0; n < n_max; ++n) {
    EXPECT_NEAR(std::abs(h(level::g * f + n + 1, level::e * f + n) - eff.lambda2 * std::sqrt(n + 1.0)), 0.0, 1e-15);
  }
}

TEST(Transformed, ConservesExcitations) {
  const int n_max = 6;
  const Operator h = build_H_transformed(cplx(0.1, 0.05), n_max);
  // lambda a^dag sigma_- moves |e, n> to |g, n + 1>: a^dag a + sigma_ee is conserved.
  const Operator n_exc = on_field(number(n_max), 2) + on_atom(atomic_projector(level::e, level::e, 2), n_max);
  EXPECT_LT(commutator(h, n_exc).norm(), 1e-14);
}

TEST(Transformed, SingleExcitationElement) {
  const int n_max = 3;
  const Matrix h = build_H_transformed(cplx(0.25, 0.0), n_max).matrix();
  EXPECT_NEAR(std::abs(h(level::g * (n_max + 1) + 1, level::e * (n_max + 1) + 0) - 0.25), 0.0, 1e-15);
  EXPECT_EQ(build_H_transformed(0.0, n_max).norm(), 0.0);
}

TEST(Bath, NoSqueezingIsJaynesCummings) {
  EXPECT_LT(max_abs(build_H_bath(cplx(0.1, 0.2), 0.0, 1.0, 5).matrix() -
                    build_H_transformed(cplx(0.1, 0.2), 5).matrix()),
            1e-15);
}

TEST(Bath, Hermitian) { EXPECT_TRUE(build_H_bath(cplx(0.1, -0.3), 1.2, 2.0, 5).is_hermitian(1e-14)); }

TEST(Bath, EqualsStaticFormFromSqueezeSpec) {
  EffectiveParams eff;
  eff.lambda2 = 0.1;
  eff.lambda1 = std::polar(0.06, 0.8);
  const SqueezeSpec s = squeeze_spec(eff);
  EXPECT_LT(max_abs(build_H_bath(s.lambda, s.r, s.phi, 6).matrix() - build_H_eff_static(eff, 6).matrix()), 1e-10);
}

TEST(Bath, InverseMapForComplexCoupling) {
  const cplx lambda(0.03, -0.02);
  const EffectiveParams eff = bath_effective_params(lambda, 0.9, -1.1);
  EXPECT_LT(max_abs(build_H_bath(lambda, 0.9, -1.1, 5).matrix() - build_H_eff_static(eff, 5).matrix()), 1e-15);
}
