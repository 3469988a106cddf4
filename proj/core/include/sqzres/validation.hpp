#pragma once

// Self-checks run by `sqzres validate` and the acceptance suite.

#include <string>
#include <vector>

#include "sqzres/model.hpp"

namespace sqzres {

struct InvariantResult {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Largest |(U^dag H U - H_target)_{jk}| over atom (x) {|0>..|n_max/2>} for
// H = build_H_eff_static(eff), U = 1 (x) D(alpha) S(r, phi) and H_target the
// Jaynes-Cummings (or anti-JC) form of squeeze_spec(eff). Operators are built
// in a padded Fock space so truncation does not reach the compared block.
double transformed_frame_error(const EffectiveParams& eff, int n_max);

// Random lambda2-dominant couplings with beta = 0 and tanh r <= tanh(r_max),
// reproducible from `seed`.
std::vector<EffectiveParams> random_transform_draws(int count, unsigned seed, double r_max = 1.0);

// Trace drift, Bloch-ball confinement, Wigner normalization, the |M|^2 = N(N+1)
// identity, the design_couplings round trip, the transformed-frame identity and
// the cavity-block equations of motion.
std::vector<InvariantResult> run_invariant_suite();

}  // namespace sqzres
