#include "sqzres/validation.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "sqzres/dynamics.hpp"
#include "sqzres/hamiltonians.hpp"
#include "sqzres/squeezedbath.hpp"
#include "sqzres/wigner.hpp"

namespace sqzres {
namespace {

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(3);
  os << v;
  return os.str();
}

InvariantResult trace_drift() {
  double worst = 0.0;
  // Damped cavity on the vectorized fast path.
  {
    const int n_max = 10;
    const QuantumState psi = QuantumState::pure(displacement(cplx(1.0, 0.5), n_max).matrix().col(0));
    MasterOptions opts;
    opts.num_samples = 50;
    const MasterResult res = evolve_master(HamiltonianSource::constant(Operator::zeros({n_max + 1})),
                                           {{destroy(n_max), 1.0}}, psi, 5.0, opts);
    worst = std::max(worst, res.max_trace_drift);
  }
  // Damped Jaynes-Cummings on the direct RK4 path.
  {
    const int n_max = 10;
    const QuantumState psi =
        tensor(QuantumState::fock(0, 1), QuantumState::pure(displacement(1.0, n_max).matrix().col(0)));
    MasterOptions opts;
    opts.num_samples = 50;
    const MasterResult res =
        evolve_master(HamiltonianSource::constant(build_H_transformed(0.3, n_max)),
                      {{on_field(destroy(n_max), 2), 0.2}, {on_atom(sigma_minus(), n_max), 0.1}}, psi, 5.0,
                      opts);
    worst = std::max(worst, res.max_trace_drift);
  }
  return {"trace_drift", worst < 1e-7, "max |Tr rho - 1| = " + fmt(worst)};
}

InvariantResult bloch_ball() {
  double worst = 0.0;
  auto scan = [&](const TimeSeries& s) {
    const auto& x = s.channel("sx");
    const auto& y = s.channel("sy");
    const auto& z = s.channel("sz");
    for (std::size_t k = 0; k < x.size(); ++k) worst = std::max(worst, x[k] * x[k] + y[k] * y[k] + z[k] * z[k]);
  };
  const QuantumState atom0 = sigma_x_eigenstate();
  for (double phi : {0.0, std::numbers::pi / 2, std::numbers::pi}) {
    const BathParams bp = bath_params(0.04, 40.0, 0.0, 1.5, phi);
    scan(run_adiabatic(bp, atom0, decay_window(bp), 200).series);
  }
  const BathParams fast = bath_params(0.1, 0.4, 0.01, 1.0, 0.7);
  ExactOptions opts;
  opts.n_max = 6;
  opts.num_samples = 100;
  scan(run_exact(fast, atom0, 100.0, opts).series);
  return {"bloch_ball", worst <= 1.0 + 1e-8, "max |r|^2 = " + fmt(worst)};
}

InvariantResult wigner_normalization() {
  const int n_max = 50;
  std::vector<QuantumState> states = {
      QuantumState::fock(0, n_max),
      QuantumState::fock(1, n_max),
      QuantumState::pure(displacement(cplx(0.8, -0.4), n_max).matrix().col(0)),
      target_state(0.0, 1.0, 0.0, n_max),
  };
  double worst = 0.0;
  for (const auto& s : states) worst = std::max(worst, std::abs(wigner_grid(s).integral() - 1.0));
  return {"wigner_normalization", worst < 0.01, "max |integral - 1| = " + fmt(worst)};
}

InvariantResult bath_identity() {
  double worst = 0.0;
  for (double r : {0.0, 0.3, 1.0, 1.5, 2.5}) {
    for (double phi : {0.0, 1.0, std::numbers::pi}) {
      const BathParams bp = bath_params(0.04, 40.0, 0.0, r, phi);
      const double scale = 1.0 + bp.n * (bp.n + 1.0);
      worst = std::max(worst, std::abs(std::norm(bp.m) - bp.n * (bp.n + 1.0)) / scale);
    }
  }
  return {"squeezed_bath_identity", worst < 1e-12, "max relative residual = " + fmt(worst)};
}

InvariantResult design_round_trip() {
  const std::vector<SqueezeTarget> targets = {
      {1.0, 0.0, {0.0, 0.0}},
      {0.5, 1.0, {0.3, 0.2}},
      {0.8, -2.0, {0.0, -0.5}},
      {0.0, 0.0, {0.4, 0.0}},
  };
  double worst = 0.0;
  for (const auto& t : targets) {
    DesignRequest req;
    req.target = t;
    const DesignResult res = design_couplings(req);
    const SqueezeSpec spec = squeeze_spec(effective_params(res.params));
    worst = std::max(worst, std::abs(spec.r - t.r));
    worst = std::max(worst, std::abs(spec.alpha - t.alpha));
    if (t.r > 0.0) worst = std::max(worst, std::abs(std::polar(1.0, spec.phi) - std::polar(1.0, t.phi)));
  }
  return {"design_round_trip", worst < 1e-9, "max parameter error = " + fmt(worst)};
}

InvariantResult frame_identity() {
  double worst = 0.0;
  for (const auto& eff : random_transform_draws(5, 7u)) worst = std::max(worst, transformed_frame_error(eff, 20));
  return {"transformed_frame_identity", worst < 1e-6, "max element error = " + fmt(worst)};
}

InvariantResult block_equations_check() {
  const BathParams bp = bath_params(cplx(0.03, 0.02), 40.0, 0.01, 1.2, 0.9);
  const double err = block_equation_mismatch(bp, sigma_x_eigenstate(), 3);
  return {"cavity_block_equations", err < 1e-10, "max mismatch = " + fmt(err)};
}

}  // namespace

double transformed_frame_error(const EffectiveParams& eff, int n_max) {
  const SqueezeSpec spec = squeeze_spec(eff);
  // At r near 1 the squeeze transform of |n <= n_max/2> still carries weight
  // far above n_max, so the padding grows with n_max.
  const int work = 3 * n_max + 200;
  const Operator lhs = to_target_frame(build_H_eff_static(eff, work), spec, work);
  const Operator rhs = transformed_hamiltonian(spec, work);
  const int keep = n_max / 2 + 1;
  const int f = work + 1;
  double worst = 0.0;
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      const Matrix diff = lhs.matrix().block(a * f, b * f, keep, keep) - rhs.matrix().block(a * f, b * f, keep, keep);
      worst = std::max(worst, diff.cwiseAbs().maxCoeff());
    }
  }
  return worst;
}

std::vector<EffectiveParams> random_transform_draws(int count, unsigned seed, double r_max) {
  std::mt19937 rng(seed);
  std::uniform_real_distribution<double> mag(0.05, 0.2);
  std::uniform_real_distribution<double> ratio(0.0, std::tanh(r_max));
  std::uniform_real_distribution<double> angle(-std::numbers::pi, std::numbers::pi);
  std::vector<EffectiveParams> out;
  for (int k = 0; k < count; ++k) {
    EffectiveParams eff;
    eff.lambda2 = std::polar(mag(rng), angle(rng));
    eff.lambda1 = std::polar(std::abs(eff.lambda2) * ratio(rng), angle(rng));
    out.push_back(eff);
  }
  return out;
}

std::vector<InvariantResult> run_invariant_suite() {
  std::vector<InvariantResult> out;
  auto guarded = [&](const char* name, InvariantResult (*check)()) {
    try {
      out.push_back(check());
    } catch (const std::exception& ex) {
      out.push_back({name, false, std::string("threw: ") + ex.what()});
    }
  };
  guarded("trace_drift", trace_drift);
  guarded("bloch_ball", bloch_ball);
  guarded("wigner_normalization", wigner_normalization);
  guarded("squeezed_bath_identity", bath_identity);
  guarded("design_round_trip", design_round_trip);
  guarded("transformed_frame_identity", frame_identity);
  guarded("cavity_block_equations", block_equations_check);
  return out;
}

}  // namespace sqzres
