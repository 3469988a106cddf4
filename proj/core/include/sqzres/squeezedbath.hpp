#pragma once

// A two-level atom coupled to a strongly damped cavity through the squeezed
// combination R = cosh r sigma_- - sinh r e^{i phi} sigma_+. Eliminating the
// cavity leaves the atom in an effective squeezed vacuum with parameters
// (Gamma_eng, N, M). Three descriptions are compared: the full atom-cavity
// master equation, the eliminated atomic master equation and the closed-form
// decay of <sigma_x>.

#include <optional>
#include <string>
#include <vector>

#include "sqzres/dynamics.hpp"
#include "sqzres/model.hpp"

namespace sqzres {

struct BathParams {
  double Gamma = 40.0;   // cavity decay
  double gamma = 0.0;    // atomic decay into ordinary modes
  cplx lambda{0.04, 0.0};
  double r = 1.5;
  double phi = 0.0;

  // Derived: Gamma_eng = 4 |lambda|^2 / Gamma, N = sinh^2 r, M = e^{i phi} sinh r cosh r.
  double gamma_eng = 0.0;
  double n = 0.0;
  cplx m{};
};

// Throws PreconditionError when Gamma <= 0 or gamma < 0.
BathParams bath_params(cplx lambda, double Gamma, double gamma, double r, double phi);

// Advisories for a bath setup (bad-cavity ratio Gamma/|lambda| below 10).
std::vector<std::string> bath_advisories(const BathParams& bp);

// Which atom-cavity Hamiltonian drives the exact run.
enum class BathModel {
  squeezed_coupling,  // lambda R a^dag + h.c.
  static_effective,   // (lambda1 a + lambda2 a^dag) sigma_- + h.c. from bath_effective_params
  dispersive,         // full dispersive form from `phys`, reported in the static frame
};

struct ExactOptions {
  BathModel model = BathModel::squeezed_coupling;
  std::optional<PhysicalParams> phys;  // required for the dispersive model
  int n_max = 3;
  int num_samples = 400;
  std::optional<double> dt;
};

// (|g> + |e>)/sqrt(2), the +1 eigenstate of sigma_x.
QuantumState sigma_x_eigenstate();

// Duration over which the slowest (phi = pi) decay falls by e^{-5/2}:
// 5 / (Gamma_eng e^{-2r}).
double decay_window(const BathParams& bp);

struct BathRun {
  TimeSeries series;  // channels sx, sy, sz (+ n_field, pop_above_1 for exact runs)
  double max_photon_number = 0.0;
  double max_population_above_one = 0.0;
  std::vector<std::string> advisories;
};

// Joint atom (x) cavity master equation with channels (a, Gamma) and
// (sigma_-, gamma), cavity starting in |0>.
BathRun run_exact(const BathParams& bp, const QuantumState& atom0, double t_end,
                  const ExactOptions& opts = {});

// Eliminated atomic master equation with the same (Gamma_eng, N, M, gamma).
BathRun run_adiabatic(const BathParams& bp, const QuantumState& atom0, double t_end, int num_samples = 400,
                      std::optional<double> dt = std::nullopt);

// (1/2) e^{-Gamma_eng e^{2r} t/2}(1 + cos phi) + (1/2) e^{-Gamma_eng e^{-2r} t/2}(1 - cos phi).
double sigma_x_analytic(double t, double gamma_eng, double r, double phi);

struct PhaseCase {
  double phi = 0.0;
  BathRun exact;
  BathRun adiabatic;
  std::vector<double> analytic;  // on exact.series times
  double max_dev_exact_analytic = 0.0;
  double max_dev_adiabatic_analytic = 0.0;
  double max_dev_exact_adiabatic = 0.0;  // max over sx, sy, sz
  std::optional<double> half_time;       // first time exact <sigma_x> <= 0.5
};

struct PhaseReport {
  std::vector<PhaseCase> cases;
  // Times to reach <sigma_x> = 0.5 strictly increase with the order of phis
  // (only meaningful for phis sorted in [0, pi]).
  bool ordering_ok = true;
};

PhaseReport phase_sensitivity_report(const BathParams& bp, const std::vector<double>& phis, double t_end,
                                     const ExactOptions& opts = {});

// Right-hand sides of the field-block equations for rho_00, rho_10 and rho_11
// (atomic operators) under lambda R a^dag + h.c. with cavity and atomic decay,
// keeping only blocks within the {|0>, |1>} field subspace.
struct BlockDerivatives {
  Matrix d00;
  Matrix d10;
  Matrix d11;
};
BlockDerivatives block_equations(const BathParams& bp, const QuantumState& joint);

// Largest entry of |block_equations - generator * rho| on the three blocks for
// rho = atom0 (x) |0><0| at n_max.
double block_equation_mismatch(const BathParams& bp, const QuantumState& atom0, int n_max);

}  // namespace sqzres
