#pragma once

// Hamiltonian builders for the Lambda-atom / cavity model at every level of
// approximation, from the three-level interaction picture down to the
// transformed Jaynes-Cummings form. Composite spaces are atom (x) field.

#include <utility>
#include <vector>

#include "sqzres/hilbert.hpp"
#include "sqzres/model.hpp"

namespace sqzres {

// H(t) = constant + sum_k (e^{i w_k t} A_k + h.c.).
struct OscillatingHamiltonian {
  Operator constant;
  std::vector<std::pair<double, Operator>> terms;  // (w_k, A_k)

  Operator at(double t) const;
  // Triangle-inequality bound on sup_t ||H(t)||.
  double norm_bound() const;
  std::vector<int> dims() const { return constant.dims(); }
};

// Dispersive cavity shifts of the effective two-level Hamiltonian:
// -|g|^2/Delta2 a^dag a on |g> and +|g|^2/Delta1 a^dag a on |e>.
struct StarkShifts {
  double ground = 0.0;
  double excited = 0.0;
};
StarkShifts stark_shifts(const PhysicalParams& phys);

// Three-level interaction-picture Hamiltonian (six drive/cavity terms + h.c.).
OscillatingHamiltonian interaction_hamiltonian(const PhysicalParams& phys, int n_max);
Operator build_H_interaction(const PhysicalParams& phys, double t, int n_max);

// Lab-frame pieces, used to check the interaction-picture phases.
Operator build_H_bare(const BareFrequencies& bare, int n_max);
Operator build_V_lab(const PhysicalParams& phys, const BareFrequencies& bare, double t, int n_max);

// Effective two-level Hamiltonian with Stark shifts, dispersive cavity terms and
// the e^{i delta t} phases. Passing zero StarkShifts drops the dispersive terms.
OscillatingHamiltonian dispersive_hamiltonian(const EffectiveParams& eff, const StarkShifts& stark,
                                              const std::array<double, 3>& delta, int n_max);
Operator build_H_eff_dispersive(const EffectiveParams& eff, const StarkShifts& stark,
                                const std::array<double, 3>& delta, double t, int n_max);
// Convenience: effective params, Stark shifts and small detunings from phys.
OscillatingHamiltonian dispersive_hamiltonian(const PhysicalParams& phys, int n_max);

// (lambda1 a + lambda2 a^dag + beta) sigma_- + h.c.
Operator build_H_eff_static(const EffectiveParams& eff, int n_max);

// Jaynes-Cummings form lambda a^dag sigma_- + lambda* a sigma_+.
Operator build_H_transformed(cplx lambda, int n_max);
// Anti-Jaynes-Cummings form lambda a sigma_- + lambda* a^dag sigma_+.
Operator build_H_transformed_anti(cplx lambda, int n_max);
// Form reached by a given spec: JC when lambda2 dominates, anti-JC otherwise.
Operator transformed_hamiltonian(const SqueezeSpec& spec, int n_max);

// lambda R a^dag + lambda* R^dag a with R = cosh r sigma_- - sinh r e^{i phi} sigma_+.
Operator build_H_bath(cplx lambda, double r, double phi, int n_max);
// Couplings with build_H_eff_static(bath_effective_params(l, r, phi)) ==
// build_H_bath(l, r, phi): lambda2 = l cosh r, lambda1 = -l* sinh r e^{-i phi}.
EffectiveParams bath_effective_params(cplx lambda, double r, double phi);

// U^dag H U with U = 1 (x) D(alpha) S(r, phi), taking H to the frame whose
// vacuum is the target state. All operators are built at n_max.
Operator to_target_frame(const Operator& h, const SqueezeSpec& spec, int n_max);

// exp(-i (varpi_g sigma_gg + varpi_e sigma_ee) t) on the atom. Conjugating a
// state of the dispersive model by its adjoint gives the static-model frame.
Operator stark_frame(const EffectiveParams& eff, double t);

}  // namespace sqzres
