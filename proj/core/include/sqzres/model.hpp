#pragma once

// Drive parameters of the Lambda atom, the effective two-level couplings they
// produce after eliminating the auxiliary level, and the squeezing target
// (r, phi, alpha, lambda) those couplings engineer.
//
// Units: hbar = 1 and every rate is a multiple of the cavity coupling g.

#include <array>
#include <optional>
#include <string>
#include <vector>

#include "sqzres/hilbert.hpp"

namespace sqzres {

// Bare level, cavity and drive frequencies. Only used to derive and cross-check
// the detunings; the dynamics never needs them.
struct BareFrequencies {
  double omega_g = 0.0;
  double omega_e = 0.0;
  double omega_i = 0.0;
  double omega_cavity = 0.0;
  std::array<double, 4> omega_drive{};  // omega_1 .. omega_4
};

struct PhysicalParams {
  cplx g{1.0, 0.0};
  std::array<cplx, 4> omega{};    // Omega_1 .. Omega_4 (Rabi amplitudes)
  std::array<double, 3> Delta{};  // Delta_1 .. Delta_3 (large detunings)
  std::array<double, 3> delta{};  // delta_1 .. delta_3 (small detunings)
  std::optional<BareFrequencies> bare;
};

// Delta_k and delta_k implied by a set of bare frequencies.
struct DetuningSet {
  std::array<double, 3> Delta{};
  std::array<double, 3> delta{};
};
DetuningSet detunings_from_bare(const BareFrequencies& bare);

struct EffectiveParams {
  cplx lambda1{};
  cplx lambda2{};
  cplx beta{};
  double varpi_g = 0.0;
  double varpi_e = 0.0;
};

// Closed forms: lambda1 = g Omega1* / Delta1, lambda2 = -g* Omega2 / Delta2,
// beta = -Omega3* Omega4 / Delta3 and the two Stark shifts varpi_g, varpi_e.
// Throws PreconditionError on Delta1 = 0 or Delta2 = 0, and on Delta3 = 0 while
// Omega3 or Omega4 is driven.
EffectiveParams effective_params(const PhysicalParams& phys);

// Small detunings delta1 = -delta2 = -delta3 = varpi_e - varpi_g, the choice
// that removes the time dependence of the effective Hamiltonian.
std::array<double, 3> matched_detunings(const EffectiveParams& eff);

// PhysicalParams with delta filled by matched_detunings.
PhysicalParams with_matched_detunings(PhysicalParams phys);

struct RegimeCheck {
  std::string name;
  double value = 0.0;
  double threshold = 0.0;
  bool ok = true;
};

struct ValidityReport {
  std::vector<RegimeCheck> checks;

  bool ok() const;
  // One human-readable line per failed check.
  std::vector<std::string> advisories() const;
  const RegimeCheck* find(const std::string& name) const;
};

// Ratios behind the adiabatic elimination of |i> (|g| sqrt(n_bar)/|Delta_k|,
// |Omega_i|/|Delta_k|, detuning separation) and behind dropping the dispersive
// cavity terms (|g|/|Omega_i|), plus residuals of the detuning matching
// condition measured against the effective coupling scale.
ValidityReport check_regime(const PhysicalParams& phys, double n_bar, double threshold = 0.1);

enum class Dominant { lambda1, lambda2 };

struct SqueezeSpec {
  double r = 0.0;
  double phi = 0.0;  // in (-pi, pi]
  cplx alpha{};
  cplx lambda{};  // transformed coupling, lambda_dominant / cosh r
  Dominant dominant = Dominant::lambda2;
  cplx lambda1{};
  cplx lambda2{};
  cplx beta{};
};

// Extracts the squeezing target engineered by eff. The larger-magnitude
// coupling takes the Jaynes-Cummings role: tanh r = |lambda_sub/lambda_dom| and
// lambda = lambda_dom / cosh r. With lambda2 dominant the phase obeys
// e^{i phi} tanh r = -(lambda1/lambda2)*; with lambda1 dominant
// e^{i phi} tanh r = -lambda2/lambda1. alpha solves alpha lambda1 +
// alpha* lambda2 = -beta.
// Throws UnreachableError when |lambda1| = |lambda2| and PreconditionError
// when both couplings vanish.
SqueezeSpec squeeze_spec(const EffectiveParams& eff);

// |alpha lambda1 + alpha* lambda2 + beta|.
double displacement_residual(const SqueezeSpec& spec);

struct SqueezeTarget {
  double r = 0.0;
  double phi = 0.0;
  cplx alpha{};
};

struct DesignRequest {
  SqueezeTarget target;
  cplx g{1.0, 0.0};
  std::array<double, 3> Delta{100.0, 400.0, 700.0};
  double scale = 0.1;  // |lambda_dominant| in units of g
  double regime_threshold = 0.15;
  bool strict = false;  // throw UnreachableError instead of attaching advisories
};

struct DesignResult {
  PhysicalParams params;
  EffectiveParams effective;
  SqueezeSpec spec;
  ValidityReport report;
  std::vector<std::string> advisories;
};

// Chooses Omega_1..Omega_4 (and matched small detunings) so that
// squeeze_spec(effective_params(result.params)) reproduces the target with
// lambda2 dominant and |lambda2| = scale.
DesignResult design_couplings(const DesignRequest& request);

// D(alpha) S(r, phi) |0>, computed in a padded Fock space and projected onto
// {0..n_max}; renormalized when the projected-away weight is below 1e-6,
// otherwise throws UnreachableError.
QuantumState target_state(cplx alpha, double r, double phi, int n_max);

// Same state, always projected and renormalized; the projected-away weight is
// stored in *discarded when given.
QuantumState truncated_target_state(cplx alpha, double r, double phi, int n_max,
                                    double* discarded = nullptr);

}  // namespace sqzres
