#pragma once

// Repeated-interaction ("micromaser") simulation of an atomic beam used as an
// engineered reservoir. Ground-state atoms cross the cavity one at a time,
// interact with the field for a time tau, and are traced out unobserved.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "sqzres/dynamics.hpp"
#include "sqzres/model.hpp"

namespace sqzres {

enum class BeamHamiltonian {
  static_effective,  // (lambda1 a + lambda2 a^dag + beta) sigma_- + h.c.
  dispersive,        // Stark shifts, dispersive cavity terms and e^{i delta t} phases
};

enum class PhaseClock {
  global,  // atom k sees t in [k tau, (k+1) tau]
  reset,   // every atom starts at t = 0
};

struct BeamConfig {
  int n_atoms = 200;
  double tau = 3.08;
  BeamHamiltonian hamiltonian = BeamHamiltonian::static_effective;
  EffectiveParams eff;                  // static model
  std::optional<PhysicalParams> phys;   // required by the dispersive model
  std::optional<QuantumState> field0;   // defaults to |0>
  int n_max = 30;
  double r_at = 0.0;                    // beam rate; 0 means one atom per tau
  PhaseClock clock = PhaseClock::global;
  double kappa = 0.0;                   // optional cavity loss during each passage
  std::optional<double> dt;             // RK4 step for time-dependent/lossy passages
  std::vector<int> snapshot_atoms;      // field states kept after these atom counts

  // Effective couplings of whichever model is selected.
  EffectiveParams effective() const;
  void validate() const;
};

struct BeamResult {
  // Index k holds the value after k atoms; index 0 is the initial field.
  std::vector<double> n_mean;
  std::vector<double> var_x1;
  std::vector<double> var_x2;
  std::vector<double> fidelity;
  std::vector<double> purity;
  QuantumState final_field;
  std::map<int, QuantumState> snapshots;

  std::optional<SqueezeSpec> spec;
  double gamma_eng = 0.0;
  double max_top_level_population = 0.0;
  std::vector<std::string> advisories;
};

// gamma_eng = r_at |lambda|^2 tau^2.
double engineered_rate(double r_at, cplx lambda, double tau);

BeamResult run_beam(const BeamConfig& cfg);

struct TransformedCheck {
  // Overlap of D^dag S^dag rho S D with |0> after each atom (index 0 = initial).
  std::vector<double> fidelity_to_vacuum;
  bool monotone_after_burn_in = true;
  int burn_in = 20;
  int window = 10;
};

// Diagnostic in the frame where the target is the vacuum. Requires beta = 0.
TransformedCheck transformed_picture_check(const BeamConfig& cfg);

// True when the `window`-atom moving average of `series` never decreases by
// more than `slack` after index `burn_in`.
bool smoothed_nondecreasing(const std::vector<double>& series, int burn_in, int window, double slack);

}  // namespace sqzres
