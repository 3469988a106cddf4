#pragma once

// Fixed-step fourth-order Runge-Kutta time evolution: Schrodinger/von Neumann
// propagation for (possibly time-dependent) Hamiltonians and Lindblad master
// equations.
//
// Step selection: unless overridden, dt = 0.05 / s where the stiffness scale
// s = sup_t ||H(t)|| + sum_k rate_k ||L_k^dag L_k||. A user-supplied dt must
// satisfy dt * s <= 0.1. The step is shrunk so an integer number of steps
// lands exactly on t_end.

#include <complex>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "sqzres/hamiltonians.hpp"
#include "sqzres/hilbert.hpp"

namespace sqzres {

struct CollapseChannel {
  Operator op;
  double rate = 0.0;
};

class HamiltonianSource {
 public:
  static HamiltonianSource constant(Operator h);
  static HamiltonianSource oscillating(OscillatingHamiltonian h);
  static HamiltonianSource function(std::function<Operator(double)> fn, std::vector<int> dims,
                                    double norm_bound);

  Matrix at(double t) const;
  bool time_dependent() const { return static_cast<bool>(fn_); }
  double norm_bound() const { return norm_bound_; }
  const std::vector<int>& dims() const { return dims_; }
  int dim() const;

 private:
  Matrix constant_;
  std::function<Operator(double)> fn_;
  std::vector<int> dims_;
  double norm_bound_ = 0.0;
};

// Sampled observables on a strictly increasing time grid (units 1/g).
class TimeSeries {
 public:
  TimeSeries() = default;
  explicit TimeSeries(std::vector<std::string> names);

  void append(double t, std::span<const double> values);

  const std::vector<double>& times() const { return times_; }
  const std::vector<std::string>& names() const { return names_; }
  const std::vector<double>& channel(std::string_view name) const;
  bool has_channel(std::string_view name) const;
  std::size_t size() const { return times_.size(); }

 private:
  std::vector<double> times_;
  std::vector<std::string> names_;
  std::vector<std::vector<double>> values_;
};

// Named real-valued measurements of the running state.
struct Probe {
  std::vector<std::string> names;
  std::function<std::vector<double>(double t, const QuantumState&)> measure;

  bool empty() const { return !measure; }
};

// Real parts of <op> for each (name, op).
Probe expectation_probe(std::vector<std::pair<std::string, Operator>> observables);

struct StepOptions {
  std::optional<double> dt;
  double start_time = 0.0;
  double norm_tolerance = 1e-8;
};

// Fixed step actually used for a run of length `duration` with stiffness scale
// `scale` under the options above. Throws IntegrationError on a dt violation.
double resolve_step(double duration, double scale, const std::optional<double>& requested, long& steps);

QuantumState propagate_unitary(const HamiltonianSource& h, const QuantumState& state0, double t_end,
                               const StepOptions& opts = {});

// Propagator U(t0 + duration, t0) from RK4 on dU/dt = -i H(t) U.
Operator propagator(const HamiltonianSource& h, double duration, const StepOptions& opts = {});

struct MasterOptions {
  std::optional<double> dt;
  double start_time = 0.0;
  // Record every `sample_every` steps, or on `num_samples` uniform intervals
  // when that is set (it takes precedence). The start and end are always recorded.
  int sample_every = 0;
  int num_samples = 0;
  Probe probe;
  bool track_min_eigenvalue = false;
  double trace_tolerance = 1e-7;
  double hermiticity_tolerance = 1e-7;
};

struct MasterResult {
  QuantumState final_state;
  TimeSeries series;
  double dt = 0.0;
  long steps = 0;
  double max_trace_drift = 0.0;
  double max_hermiticity_drift = 0.0;
  double min_eigenvalue = 0.0;  // over samples, when tracked
};

// d rho/dt = -i[H, rho] + sum_k (rate_k/2)(2 L rho L^dag - L^dag L rho - rho L^dag L).
MasterResult evolve_master(const HamiltonianSource& h, const std::vector<CollapseChannel>& channels,
                           const QuantumState& rho0, double t_end, const MasterOptions& opts = {});

// Generator acting on column-major vec(rho).
Matrix liouvillian(const Matrix& h, const std::vector<CollapseChannel>& channels);

// Two-level squeezed-bath generator with parameters (Gamma_eng, N, M) plus
// ordinary vacuum decay at rate gamma.
Matrix squeezed_bath_liouvillian(double gamma_eng, double n, cplx m, double gamma);

// Integrates d vec(rho)/dt = G vec(rho) with RK4; for a constant generator the
// step is exactly the stage polynomial sum_{k<=4} (dt G)^k / k!, applied in
// strides of precomputed powers.
MasterResult evolve_linear(const Matrix& generator, const QuantumState& rho0, double t_end,
                           double scale, const MasterOptions& opts = {});

// Bloch components <sigma_x>, <sigma_y>, <sigma_z> of a two-level state.
std::array<double, 3> bloch_vector(const QuantumState& atom);
Probe bloch_probe();

// Eliminated two-level atom: integrates the squeezed-bath generator and records
// sigma_x, sigma_y, sigma_z. Throws PreconditionError when |M|^2 > N(N+1) or
// when N or Gamma_eng is negative.
TimeSeries evolve_effective_atom(double gamma_eng, double n, cplx m, double gamma,
                                 const QuantumState& atom0, double t_end, const MasterOptions& opts = {});

}  // namespace sqzres
