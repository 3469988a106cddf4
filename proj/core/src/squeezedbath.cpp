#include "sqzres/squeezedbath.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

#include "sqzres/errors.hpp"
#include "sqzres/hamiltonians.hpp"

namespace sqzres {
namespace {

constexpr double kBadCavityRatio = 10.0;
constexpr double kMaxPhotonNumber = 0.05;
constexpr double kMaxPopulationAboveOne = 1e-3;

double max_of(const std::vector<double>& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, x);
  return m;
}

Operator squeezed_r(const BathParams& bp) {
  return std::cosh(bp.r) * sigma_minus() - (std::sinh(bp.r) * std::polar(1.0, bp.phi)) * sigma_plus();
}

HamiltonianSource exact_source(const BathParams& bp, const ExactOptions& opts) {
  switch (opts.model) {
    case BathModel::squeezed_coupling:
      return HamiltonianSource::constant(build_H_bath(bp.lambda, bp.r, bp.phi, opts.n_max));
    case BathModel::static_effective:
      return HamiltonianSource::constant(
          build_H_eff_static(bath_effective_params(bp.lambda, bp.r, bp.phi), opts.n_max));
    case BathModel::dispersive:
      if (!opts.phys) throw PreconditionError("run_exact: dispersive model needs PhysicalParams");
      return HamiltonianSource::oscillating(dispersive_hamiltonian(*opts.phys, opts.n_max));
  }
  throw PreconditionError("run_exact: unknown model");
}

}  // namespace

BathParams bath_params(cplx lambda, double Gamma, double gamma, double r, double phi) {
  if (!(Gamma > 0.0)) throw PreconditionError("bath_params: Gamma must be > 0");
  if (gamma < 0.0) throw PreconditionError("bath_params: gamma must be >= 0");
  BathParams bp;
  bp.Gamma = Gamma;
  bp.gamma = gamma;
  bp.lambda = lambda;
  bp.r = r;
  bp.phi = phi;
  bp.gamma_eng = 4.0 * std::norm(lambda) / Gamma;
  bp.n = std::sinh(r) * std::sinh(r);
  bp.m = std::polar(std::sinh(r) * std::cosh(r), phi);
  return bp;
}

std::vector<std::string> bath_advisories(const BathParams& bp) {
  std::vector<std::string> out;
  const double mag = std::abs(bp.lambda);
  if (mag > 0.0 && bp.Gamma / mag < kBadCavityRatio) {
    std::ostringstream os;
    os << "Gamma/|lambda| = " << bp.Gamma / mag << " < " << kBadCavityRatio
       << ": the cavity is not strongly damped and the eliminated equation is unreliable";
    out.push_back(os.str());
  }
  return out;
}

QuantumState sigma_x_eigenstate() {
  Vector v(2);
  v << 1.0 / std::numbers::sqrt2, 1.0 / std::numbers::sqrt2;
  return QuantumState::pure(v);
}

double decay_window(const BathParams& bp) {
  if (!(bp.gamma_eng > 0.0)) throw PreconditionError("decay_window: Gamma_eng must be > 0");
  return 5.0 / (bp.gamma_eng * std::exp(-2.0 * bp.r));
}

BathRun run_exact(const BathParams& bp, const QuantumState& atom0, double t_end, const ExactOptions& opts) {
  if (atom0.dim() != 2) throw DimensionError("run_exact: atom0 must be a two-level state");
  if (opts.n_max < 1) throw PreconditionError("run_exact: n_max must be >= 1");
  const int n_max = opts.n_max;
  const HamiltonianSource h = exact_source(bp, opts);
  const QuantumState joint0 = tensor(atom0.to_mixed(), QuantumState::fock(0, n_max).to_mixed());

  std::vector<CollapseChannel> channels = {{on_field(destroy(n_max), 2), bp.Gamma}};
  if (bp.gamma > 0.0) channels.push_back({on_atom(sigma_minus(), n_max), bp.gamma});

  const Operator num = number(n_max);
  Matrix above = Matrix::Zero(n_max + 1, n_max + 1);
  for (int k = 2; k <= n_max; ++k) above(k, k) = 1.0;
  const Operator above_one(above);

  std::optional<EffectiveParams> frame;
  if (opts.model == BathModel::dispersive) frame = effective_params(*opts.phys);

  MasterOptions mopts;
  mopts.dt = opts.dt;
  mopts.num_samples = opts.num_samples;
  mopts.probe.names = {"sx", "sy", "sz", "n_field", "pop_above_1"};
  mopts.probe.measure = [&](double t, const QuantumState& s) {
    QuantumState atom = partial_trace(s, Keep::atom);
    if (frame) {
      const Matrix rt = stark_frame(*frame, t).matrix();
      atom = QuantumState::mixed_unchecked(rt.adjoint() * atom.density() * rt, {2});
    }
    const QuantumState field = partial_trace(s, Keep::field);
    const auto b = bloch_vector(atom);
    return std::vector<double>{b[0], b[1], b[2], expect(num, field).real(), expect(above_one, field).real()};
  };

  const MasterResult res = evolve_master(h, channels, joint0, t_end, mopts);
  BathRun run;
  run.series = res.series;
  run.max_photon_number = max_of(res.series.channel("n_field"));
  run.max_population_above_one = max_of(res.series.channel("pop_above_1"));
  run.advisories = bath_advisories(bp);
  if (run.max_photon_number >= kMaxPhotonNumber) {
    std::ostringstream os;
    os << "cavity photon number reached " << run.max_photon_number;
    run.advisories.push_back(os.str());
  }
  if (run.max_population_above_one >= kMaxPopulationAboveOne) {
    std::ostringstream os;
    os << "population above |1> reached " << run.max_population_above_one;
    run.advisories.push_back(os.str());
  }
  return run;
}

BathRun run_adiabatic(const BathParams& bp, const QuantumState& atom0, double t_end, int num_samples,
                      std::optional<double> dt) {
  MasterOptions mopts;
  mopts.dt = dt;
  mopts.num_samples = num_samples;
  BathRun run;
  run.series = evolve_effective_atom(bp.gamma_eng, bp.n, bp.m, bp.gamma, atom0, t_end, mopts);
  run.advisories = bath_advisories(bp);
  return run;
}

double sigma_x_analytic(double t, double gamma_eng, double r, double phi) {
  if (t < 0.0) throw PreconditionError("sigma_x_analytic: t must be >= 0");
  const double fast = std::exp(-gamma_eng * std::exp(2.0 * r) * t / 2.0);
  const double slow = std::exp(-gamma_eng * std::exp(-2.0 * r) * t / 2.0);
  return 0.5 * fast * (1.0 + std::cos(phi)) + 0.5 * slow * (1.0 - std::cos(phi));
}

PhaseReport phase_sensitivity_report(const BathParams& bp, const std::vector<double>& phis, double t_end,
                                     const ExactOptions& opts) {
  PhaseReport report;
  const QuantumState atom0 = sigma_x_eigenstate();
  for (double phi : phis) {
    const BathParams p = bath_params(bp.lambda, bp.Gamma, bp.gamma, bp.r, phi);
    PhaseCase c;
    c.phi = phi;
    c.exact = run_exact(p, atom0, t_end, opts);
    c.adiabatic = run_adiabatic(p, atom0, t_end, opts.num_samples);

    const auto& times = c.exact.series.times();
    const auto& sx = c.exact.series.channel("sx");
    const auto& sx_ad = c.adiabatic.series.channel("sx");
    if (c.adiabatic.series.size() != times.size()) {
      throw IntegrationError("phase_sensitivity_report: exact and adiabatic sample grids differ");
    }
    for (std::size_t k = 0; k < times.size(); ++k) {
      const double an = sigma_x_analytic(times[k], p.gamma_eng, p.r, phi);
      c.analytic.push_back(an);
      c.max_dev_exact_analytic = std::max(c.max_dev_exact_analytic, std::abs(sx[k] - an));
      c.max_dev_adiabatic_analytic = std::max(c.max_dev_adiabatic_analytic, std::abs(sx_ad[k] - an));
      if (!c.half_time && sx[k] <= 0.5) c.half_time = times[k];
    }
    for (const char* name : {"sx", "sy", "sz"}) {
      const auto& a = c.exact.series.channel(name);
      const auto& b = c.adiabatic.series.channel(name);
      for (std::size_t k = 0; k < a.size(); ++k) {
        c.max_dev_exact_adiabatic = std::max(c.max_dev_exact_adiabatic, std::abs(a[k] - b[k]));
      }
    }
    report.cases.push_back(std::move(c));
  }
  for (std::size_t k = 1; k < report.cases.size(); ++k) {
    const auto& prev = report.cases[k - 1].half_time;
    const auto& cur = report.cases[k].half_time;
    // A curve that never reaches 0.5 is slower than any curve that does.
    if (!prev) {
      report.ordering_ok = false;
    } else if (cur && !(*cur > *prev)) {
      report.ordering_ok = false;
    }
  }
  return report;
}

BlockDerivatives block_equations(const BathParams& bp, const QuantumState& joint) {
  if (joint.dims().size() != 2 || joint.dims()[0] != 2) {
    throw DimensionError("block_equations: expected a two-level atom (x) field state");
  }
  const int f = joint.dims()[1];
  if (f < 2) throw DimensionError("block_equations: field must include |1>");
  const Matrix rho = joint.density();
  // Atomic block <m|rho|n> of the field.
  auto block = [&](int m, int n) {
    Matrix b(2, 2);
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) b(a, c) = rho(a * f + m, c * f + n);
    }
    return b;
  };
  const Matrix r00 = block(0, 0);
  const Matrix r01 = block(0, 1);
  const Matrix r10 = block(1, 0);
  const Matrix r11 = block(1, 1);

  const Matrix R = squeezed_r(bp).matrix();
  const Matrix Rd = R.adjoint();
  const cplx l = bp.lambda;
  const cplx lc = std::conj(l);
  const Matrix sm = sigma_minus().matrix();
  const Matrix sp = sm.adjoint();
  auto atom_decay = [&](const Matrix& x) -> Matrix {
    return bp.gamma * (sm * x * sp - 0.5 * (sp * sm * x + x * sp * sm));
  };

  BlockDerivatives d;
  d.d00 = -kI * (lc * Rd * r10 - l * r01 * R) + bp.Gamma * r11 + atom_decay(r00);
  d.d10 = -kI * (l * R * r00 - l * r11 * R) - 0.5 * bp.Gamma * r10 + atom_decay(r10);
  d.d11 = -kI * (l * R * r01 - lc * r10 * Rd) - bp.Gamma * r11 + atom_decay(r11);
  return d;
}

double block_equation_mismatch(const BathParams& bp, const QuantumState& atom0, int n_max) {
  const QuantumState joint = tensor(atom0.to_mixed(), QuantumState::fock(0, n_max).to_mixed());
  std::vector<CollapseChannel> channels = {{on_field(destroy(n_max), 2), bp.Gamma}};
  if (bp.gamma > 0.0) channels.push_back({on_atom(sigma_minus(), n_max), bp.gamma});
  const Matrix h = build_H_bath(bp.lambda, bp.r, bp.phi, n_max).matrix();
  const Matrix gen = liouvillian(h, channels);
  const Matrix rho = joint.density();
  const Eigen::Index d = rho.rows();
  const Vector dv = gen * Eigen::Map<const Vector>(rho.data(), rho.size());
  const Matrix drho = Eigen::Map<const Matrix>(dv.data(), d, d);

  const BlockDerivatives manual = block_equations(bp, joint);
  const int f = n_max + 1;
  double worst = 0.0;
  auto compare = [&](const Matrix& b, int m, int n) {
    for (int a = 0; a < 2; ++a) {
      for (int c = 0; c < 2; ++c) worst = std::max(worst, std::abs(b(a, c) - drho(a * f + m, c * f + n)));
    }
  };
  compare(manual.d00, 0, 0);
  compare(manual.d10, 1, 0);
  compare(manual.d11, 1, 1);
  return worst;
}

}  // namespace sqzres
