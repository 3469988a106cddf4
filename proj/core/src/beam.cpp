#include "sqzres/beam.hpp"

#include <cmath>
#include <sstream>

#include "sqzres/errors.hpp"
#include "sqzres/hamiltonians.hpp"
#include "sqzres/log.hpp"

namespace sqzres {
namespace {

// Kraus operators K_a = <a| U |g> of one passage.
std::vector<Matrix> kraus_from_propagator(const Matrix& u, int field_dim) {
  std::vector<Matrix> out;
  const int levels = static_cast<int>(u.rows()) / field_dim;
  for (int a = 0; a < levels; ++a) {
    out.push_back(u.block(a * field_dim, level::g * field_dim, field_dim, field_dim));
  }
  return out;
}

Matrix apply_kraus(const std::vector<Matrix>& kraus, const Matrix& rho) {
  Matrix out = Matrix::Zero(rho.rows(), rho.cols());
  for (const auto& k : kraus) out += k * rho * k.adjoint();
  return out;
}

class Passage {
 public:
  explicit Passage(const BeamConfig& cfg) : cfg_(cfg), field_dim_(cfg.n_max + 1) {
    if (cfg.hamiltonian == BeamHamiltonian::static_effective) {
      const Operator h = build_H_eff_static(cfg.eff, cfg.n_max);
      source_ = HamiltonianSource::constant(h);
      if (cfg.kappa == 0.0) {
        const Matrix u = expm(Matrix(cplx(0.0, -cfg.tau) * h.matrix()));
        fixed_kraus_ = kraus_from_propagator(u, field_dim_);
      }
    } else {
      source_ = HamiltonianSource::oscillating(dispersive_hamiltonian(*cfg.phys, cfg.n_max));
      if (cfg.kappa == 0.0 && cfg.clock == PhaseClock::reset) {
        StepOptions opts;
        opts.dt = cfg.dt;
        fixed_kraus_ = kraus_from_propagator(propagator(source_, cfg.tau, opts).matrix(), field_dim_);
      }
    }
  }

  Matrix apply(int atom_index, const Matrix& rho_field) const {
    if (!fixed_kraus_.empty()) return apply_kraus(fixed_kraus_, rho_field);
    const double t0 = cfg_.clock == PhaseClock::global ? atom_index * cfg_.tau : 0.0;
    if (cfg_.kappa == 0.0) {
      StepOptions opts;
      opts.dt = cfg_.dt;
      opts.start_time = t0;
      const Operator u = propagator(source_, cfg_.tau, opts);
      return apply_kraus(kraus_from_propagator(u.matrix(), field_dim_), rho_field);
    }
    const int levels = source_.dims().front();
    Matrix atom = Matrix::Zero(levels, levels);
    atom(level::g, level::g) = 1.0;
    const QuantumState joint =
        tensor(QuantumState::mixed_unchecked(atom, {levels}),
               QuantumState::mixed_unchecked(rho_field, {field_dim_}));
    MasterOptions opts;
    opts.dt = cfg_.dt;
    opts.start_time = t0;
    const std::vector<CollapseChannel> loss = {{on_field(destroy(cfg_.n_max), levels), cfg_.kappa}};
    const MasterResult res = evolve_master(source_, loss, joint, cfg_.tau, opts);
    return partial_trace(res.final_state, Keep::field).density();
  }

 private:
  const BeamConfig& cfg_;
  int field_dim_;
  HamiltonianSource source_;
  std::vector<Matrix> fixed_kraus_;
};

}  // namespace

EffectiveParams BeamConfig::effective() const {
  if (hamiltonian == BeamHamiltonian::dispersive) {
    if (!phys) throw PreconditionError("beam: dispersive model needs PhysicalParams");
    return effective_params(*phys);
  }
  return eff;
}

void BeamConfig::validate() const {
  if (n_atoms < 1) throw PreconditionError("beam: n_atoms must be >= 1");
  if (!(tau > 0.0)) throw PreconditionError("beam: tau must be > 0");
  if (n_max < 1) throw PreconditionError("beam: n_max must be >= 1");
  if (kappa < 0.0) throw PreconditionError("beam: kappa must be >= 0");
  if (r_at < 0.0) throw PreconditionError("beam: r_at must be >= 0");
  if (hamiltonian == BeamHamiltonian::dispersive && !phys) {
    throw PreconditionError("beam: dispersive model needs PhysicalParams");
  }
  if (field0 && field0->dim() != n_max + 1) throw DimensionError("beam: field0 dimension != n_max + 1");
}

double engineered_rate(double r_at, cplx lambda, double tau) {
  if (r_at < 0.0 || tau < 0.0) throw PreconditionError("engineered_rate: arguments must be >= 0");
  return r_at * std::norm(lambda) * tau * tau;
}

BeamResult run_beam(const BeamConfig& cfg) {
  cfg.validate();
  const int n_max = cfg.n_max;
  const EffectiveParams eff = cfg.effective();

  BeamResult result;
  const double lam_dom = std::max(std::abs(eff.lambda1), std::abs(eff.lambda2));
  if (lam_dom * cfg.tau > 0.5) {
    std::ostringstream os;
    os << "|lambda_dom| tau = " << lam_dom * cfg.tau << " is not small (advisory threshold 0.5)";
    result.advisories.push_back(os.str());
  }

  QuantumState target = QuantumState::fock(0, n_max);
  try {
    result.spec = squeeze_spec(eff);
  } catch (const std::exception& ex) {
    result.advisories.push_back(std::string("no squeezing target (") + ex.what() +
                                "); fidelity is measured against |0>");
  }
  if (result.spec) {
    if (result.spec->dominant == Dominant::lambda1) {
      result.advisories.push_back(
          "lambda1 dominates: the transformed interaction is anti-Jaynes-Cummings and ground-state "
          "atoms amplify the field instead of relaxing it");
    }
    double discarded = 0.0;
    target = truncated_target_state(result.spec->alpha, result.spec->r, result.spec->phi, n_max, &discarded);
    if (discarded >= 1e-6) {
      std::ostringstream os;
      os << "target state loses weight " << discarded << " to truncation at n_max = " << n_max
         << "; fidelity uses the renormalized projection";
      result.advisories.push_back(os.str());
    }
    const double r_at = cfg.r_at > 0.0 ? cfg.r_at : 1.0 / cfg.tau;
    result.gamma_eng = engineered_rate(r_at, result.spec->lambda, cfg.tau);
  }

  const Operator num = number(n_max);
  const Operator x1 = quadrature_x1(n_max);
  const Operator x2 = quadrature_x2(n_max);
  const std::vector<int> fdims = {n_max + 1};

  Matrix rho = cfg.field0 ? cfg.field0->density() : QuantumState::fock(0, n_max).density();
  auto record = [&](int k) {
    const QuantumState s = QuantumState::mixed_unchecked(rho, fdims);
    result.n_mean.push_back(expect(num, s).real());
    result.var_x1.push_back(variance(x1, s));
    result.var_x2.push_back(variance(x2, s));
    result.fidelity.push_back(fidelity(s, target));
    result.purity.push_back(purity(s));
    result.max_top_level_population = std::max(result.max_top_level_population, rho(n_max, n_max).real());
    for (int snap : cfg.snapshot_atoms) {
      if (snap == k) result.snapshots.emplace(k, s);
    }
  };

  const Passage passage(cfg);
  record(0);
  for (int k = 0; k < cfg.n_atoms; ++k) {
    rho = passage.apply(k, rho);
    rho = 0.5 * (rho + rho.adjoint());
    record(k + 1);
  }
  if (result.max_top_level_population > 1e-6) {
    std::ostringstream os;
    os << "population " << result.max_top_level_population << " reached the truncation level n_max = "
       << n_max;
    result.advisories.push_back(os.str());
  }
  result.final_field = QuantumState::mixed_unchecked(rho, fdims);
  return result;
}

bool smoothed_nondecreasing(const std::vector<double>& series, int burn_in, int window, double slack) {
  if (window < 1) window = 1;
  const int n = static_cast<int>(series.size());
  double prev = -INFINITY;
  for (int start = burn_in; start + window <= n; ++start) {
    double avg = 0.0;
    for (int k = start; k < start + window; ++k) avg += series[k];
    avg /= window;
    if (avg < prev - slack) return false;
    prev = avg;
  }
  return true;
}

TransformedCheck transformed_picture_check(const BeamConfig& cfg) {
  const EffectiveParams eff = cfg.effective();
  if (std::abs(eff.beta) != 0.0) throw PreconditionError("transformed_picture_check: requires beta = 0");

  SqueezeSpec spec;
  bool have_spec = true;
  try {
    spec = squeeze_spec(eff);
  } catch (const std::exception&) {
    have_spec = false;
  }

  BeamConfig local = cfg;
  local.snapshot_atoms.clear();
  for (int k = 0; k <= cfg.n_atoms; ++k) local.snapshot_atoms.push_back(k);
  const BeamResult res = run_beam(local);

  TransformedCheck check;
  const int n_max = cfg.n_max;
  Matrix u = Matrix::Identity(n_max + 1, n_max + 1);
  if (have_spec) u = (displacement(spec.alpha, n_max) * squeeze(spec.r, spec.phi, n_max)).matrix();
  for (int k = 0; k <= cfg.n_atoms; ++k) {
    const Matrix rho = res.snapshots.at(k).density();
    const Matrix rt = u.adjoint() * rho * u;
    check.fidelity_to_vacuum.push_back(rt(0, 0).real());
  }
  check.monotone_after_burn_in =
      smoothed_nondecreasing(check.fidelity_to_vacuum, check.burn_in, check.window, 1e-9);
  return check;
}

}  // namespace sqzres
