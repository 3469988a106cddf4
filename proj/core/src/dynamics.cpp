#include "sqzres/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "sqzres/errors.hpp"

namespace sqzres {
namespace {

constexpr double kAutoStep = 0.05;
constexpr double kMaxStep = 0.1;
// Above this Hilbert dimension the vectorized generator is not formed.
constexpr int kMaxLinearDim = 16;

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index i = 0; i < a.rows(); ++i) {
    for (Eigen::Index j = 0; j < a.cols(); ++j) {
      out.block(i * b.rows(), j * b.cols(), b.rows(), b.cols()) = a(i, j) * b;
    }
  }
  return out;
}

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

Matrix unvec(const Vector& v, Eigen::Index d) { return Eigen::Map<const Matrix>(v.data(), d, d); }

double channel_scale(const std::vector<CollapseChannel>& channels) {
  double s = 0.0;
  for (const auto& c : channels) {
    if (c.rate < 0.0) throw PreconditionError("collapse channel rate must be >= 0");
    s += c.rate * (c.op.adjoint() * c.op).norm();
  }
  return s;
}

double hermiticity_drift(const Matrix& rho) { return (rho - rho.adjoint()).cwiseAbs().maxCoeff(); }

struct SampleGrid {
  long steps = 0;
  double dt = 0.0;
  long stride = 0;  // steps between samples
};

SampleGrid plan_samples(double t_end, double scale, const MasterOptions& opts) {
  SampleGrid grid;
  grid.dt = resolve_step(t_end, scale, opts.dt, grid.steps);
  if (opts.num_samples > 0 && grid.steps > 0) {
    const long per = (grid.steps + opts.num_samples - 1) / opts.num_samples;
    grid.steps = per * opts.num_samples;
    grid.dt = t_end / static_cast<double>(grid.steps);
    grid.stride = per;
  } else if (opts.sample_every > 0) {
    grid.stride = opts.sample_every;
  } else {
    grid.stride = std::max<long>(grid.steps, 1);
  }
  return grid;
}

class Recorder {
 public:
  Recorder(const MasterOptions& opts, std::vector<int> dims, double trace0)
      : opts_(opts), dims_(std::move(dims)), trace0_(trace0) {
    result_.series = TimeSeries(opts.probe.names);
    result_.min_eigenvalue = 1.0;
  }

  void record(double t, const Matrix& rho) {
    const double drift = std::abs(rho.trace().real() - trace0_);
    const double herm = hermiticity_drift(rho);
    result_.max_trace_drift = std::max(result_.max_trace_drift, drift);
    result_.max_hermiticity_drift = std::max(result_.max_hermiticity_drift, herm);
    if (drift > opts_.trace_tolerance) {
      std::ostringstream os;
      os << "master equation: trace drift " << drift << " at t = " << t << " exceeds "
         << opts_.trace_tolerance;
      throw IntegrationError(os.str());
    }
    if (herm > opts_.hermiticity_tolerance) {
      std::ostringstream os;
      os << "master equation: Hermiticity drift " << herm << " at t = " << t;
      throw IntegrationError(os.str());
    }
    const QuantumState state = QuantumState::mixed_unchecked(rho, dims_);
    if (opts_.track_min_eigenvalue) {
      result_.min_eigenvalue = std::min(result_.min_eigenvalue, min_eigenvalue(state));
    }
    if (!opts_.probe.empty()) {
      const auto values = opts_.probe.measure(t, state);
      result_.series.append(t, values);
    }
  }

  MasterResult finish(Matrix rho, double dt, long steps) {
    result_.final_state = QuantumState::mixed_unchecked(std::move(rho), dims_);
    result_.dt = dt;
    result_.steps = steps;
    return std::move(result_);
  }

 private:
  const MasterOptions& opts_;
  std::vector<int> dims_;
  double trace0_;
  MasterResult result_;
};

Matrix matrix_power(Matrix base, long exponent) {
  Matrix out = Matrix::Identity(base.rows(), base.cols());
  while (exponent > 0) {
    if (exponent & 1) out = out * base;
    exponent >>= 1;
    if (exponent > 0) base = base * base;
  }
  return out;
}

// The exact step polynomial of a Lindblad generator satisfies
// t^T P = t^T with t = vec(I). Runs reach ~1e9 steps, so the roundoff part of
// t^T P - t^T is removed by a rank-one correction along t.
Matrix trace_preserving(Matrix p, Eigen::Index d) {
  Eigen::RowVectorXcd excess = Eigen::RowVectorXcd::Zero(p.cols());
  for (Eigen::Index k = 0; k < d; ++k) excess += p.row(k * (d + 1));
  for (Eigen::Index k = 0; k < d; ++k) excess(k * (d + 1)) -= 1.0;
  for (Eigen::Index k = 0; k < d; ++k) p.row(k * (d + 1)) -= excess / static_cast<double>(d);
  return p;
}

}  // namespace

// ------------------------------------------------------ HamiltonianSource

HamiltonianSource HamiltonianSource::constant(Operator h) {
  HamiltonianSource s;
  s.norm_bound_ = h.norm();
  s.dims_ = h.dims();
  s.constant_ = h.matrix();
  return s;
}

HamiltonianSource HamiltonianSource::oscillating(OscillatingHamiltonian h) {
  if (h.terms.empty()) return constant(h.constant);
  const double bound = h.norm_bound();
  auto dims = h.dims();
  return function([h = std::move(h)](double t) { return h.at(t); }, std::move(dims), bound);
}

HamiltonianSource HamiltonianSource::function(std::function<Operator(double)> fn,
                                              std::vector<int> dims, double norm_bound) {
  HamiltonianSource s;
  s.fn_ = std::move(fn);
  s.dims_ = std::move(dims);
  s.norm_bound_ = norm_bound;
  return s;
}

Matrix HamiltonianSource::at(double t) const { return fn_ ? fn_(t).matrix() : constant_; }

int HamiltonianSource::dim() const {
  int d = 1;
  for (int f : dims_) d *= f;
  return d;
}

// ------------------------------------------------------------ TimeSeries

TimeSeries::TimeSeries(std::vector<std::string> names)
    : names_(std::move(names)), values_(names_.size()) {}

void TimeSeries::append(double t, std::span<const double> values) {
  if (values.size() != names_.size()) throw DimensionError("TimeSeries: value count mismatch");
  if (!times_.empty() && !(t > times_.back())) {
    throw PreconditionError("TimeSeries: times must be strictly increasing");
  }
  times_.push_back(t);
  for (std::size_t k = 0; k < values.size(); ++k) values_[k].push_back(values[k]);
}

const std::vector<double>& TimeSeries::channel(std::string_view name) const {
  for (std::size_t k = 0; k < names_.size(); ++k) {
    if (names_[k] == name) return values_[k];
  }
  throw PreconditionError("TimeSeries: no channel named " + std::string(name));
}

bool TimeSeries::has_channel(std::string_view name) const {
  return std::find(names_.begin(), names_.end(), name) != names_.end();
}

Probe expectation_probe(std::vector<std::pair<std::string, Operator>> observables) {
  Probe p;
  for (const auto& o : observables) p.names.push_back(o.first);
  p.measure = [obs = std::move(observables)](double, const QuantumState& s) {
    std::vector<double> out;
    out.reserve(obs.size());
    for (const auto& o : obs) out.push_back(expect(o.second, s).real());
    return out;
  };
  return p;
}

// --------------------------------------------------------------- stepping

double resolve_step(double duration, double scale, const std::optional<double>& requested, long& steps) {
  if (!(duration >= 0.0) || !std::isfinite(duration)) throw PreconditionError("duration must be finite and >= 0");
  if (duration == 0.0) {
    steps = 0;
    return 0.0;
  }
  double dt = 0.0;
  if (requested) {
    dt = *requested;
    if (!(dt > 0.0)) throw PreconditionError("dt must be > 0");
    if (dt * scale > kMaxStep) {
      std::ostringstream os;
      os << "step size violation: dt * stiffness = " << dt * scale << " > " << kMaxStep;
      throw IntegrationError(os.str());
    }
  } else {
    dt = scale > 0.0 ? kAutoStep / scale : duration;
  }
  steps = std::max<long>(1, static_cast<long>(std::ceil(duration / dt - 1e-9)));
  return duration / static_cast<double>(steps);
}

QuantumState propagate_unitary(const HamiltonianSource& h, const QuantumState& state0, double t_end,
                               const StepOptions& opts) {
  if (h.dim() != state0.dim()) throw DimensionError("propagate_unitary: dimension mismatch");
  long steps = 0;
  const double dt = resolve_step(t_end, h.norm_bound(), opts.dt, steps);
  const cplx mi(0.0, -1.0);
  double t = opts.start_time;

  if (state0.is_pure()) {
    Vector psi = state0.vector();
    const double norm0 = psi.norm();
    const bool td = h.time_dependent();
    const Matrix h_const = td ? Matrix() : h.at(t);
    for (long k = 0; k < steps; ++k) {
      const Matrix h0 = td ? h.at(t) : h_const;
      const Matrix hm = td ? h.at(t + 0.5 * dt) : h_const;
      const Matrix h1 = td ? h.at(t + dt) : h_const;
      const Vector k1 = mi * (h0 * psi);
      const Vector k2 = mi * (hm * (psi + 0.5 * dt * k1));
      const Vector k3 = mi * (hm * (psi + 0.5 * dt * k2));
      const Vector k4 = mi * (h1 * (psi + dt * k3));
      psi += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
      t = opts.start_time + static_cast<double>(k + 1) * dt;
    }
    const double drift = std::abs(psi.norm() - norm0);
    if (drift > opts.norm_tolerance) {
      std::ostringstream os;
      os << "propagate_unitary: norm drift " << drift << " exceeds " << opts.norm_tolerance;
      throw IntegrationError(os.str());
    }
    return QuantumState::pure_unchecked(std::move(psi), state0.dims());
  }

  const Operator u = propagator(h, t_end, opts);
  const Matrix rho = u.matrix() * state0.density() * u.matrix().adjoint();
  return QuantumState::mixed_unchecked(rho, state0.dims());
}

Operator propagator(const HamiltonianSource& h, double duration, const StepOptions& opts) {
  long steps = 0;
  const double dt = resolve_step(duration, h.norm_bound(), opts.dt, steps);
  const int d = h.dim();
  if (!h.time_dependent()) {
    // Constant H: the RK4 step is the fixed polynomial of -i H dt.
    const Matrix a = cplx(0.0, -dt) * h.at(0.0);
    const Matrix id = Matrix::Identity(d, d);
    const Matrix step = id + a * (id + a * (id / 2.0 + a * (id / 6.0 + a / 24.0)));
    Matrix u = matrix_power(step, steps);
    const double drift = (u.adjoint() * u - id).cwiseAbs().maxCoeff();
    if (drift > opts.norm_tolerance) {
      std::ostringstream os;
      os << "propagator: unitarity drift " << drift << " exceeds " << opts.norm_tolerance;
      throw IntegrationError(os.str());
    }
    return Operator(std::move(u), h.dims());
  }

  const cplx mi(0.0, -1.0);
  Matrix u = Matrix::Identity(d, d);
  for (long k = 0; k < steps; ++k) {
    const double t = opts.start_time + static_cast<double>(k) * dt;
    const Matrix h0 = h.at(t);
    const Matrix hm = h.at(t + 0.5 * dt);
    const Matrix h1 = h.at(t + dt);
    const Matrix k1 = mi * (h0 * u);
    const Matrix k2 = mi * (hm * (u + 0.5 * dt * k1));
    const Matrix k3 = mi * (hm * (u + 0.5 * dt * k2));
    const Matrix k4 = mi * (h1 * (u + dt * k3));
    u += (dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
  }
  const double drift = (u.adjoint() * u - Matrix::Identity(d, d)).cwiseAbs().maxCoeff();
  if (drift > opts.norm_tolerance) {
    std::ostringstream os;
    os << "propagator: unitarity drift " << drift << " exceeds " << opts.norm_tolerance;
    throw IntegrationError(os.str());
  }
  return Operator(std::move(u), h.dims());
}

// ---------------------------------------------------------------- Lindblad

Matrix liouvillian(const Matrix& h, const std::vector<CollapseChannel>& channels) {
  const auto d = h.rows();
  const Matrix id = Matrix::Identity(d, d);
  // vec(A X B) = (B^T kron A) vec(X)
  Matrix g = cplx(0.0, -1.0) * (kron(id, h) - kron(h.transpose(), id));
  for (const auto& c : channels) {
    if (c.rate < 0.0) throw PreconditionError("collapse channel rate must be >= 0");
    const Matrix& l = c.op.matrix();
    const Matrix ldl = l.adjoint() * l;
    g += c.rate * (kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
  }
  return g;
}

Matrix squeezed_bath_liouvillian(double gamma_eng, double n, cplx m, double gamma) {
  const Matrix sm = sigma_minus().matrix();
  const Matrix sp = sigma_plus().matrix();
  const Matrix id = Matrix::Identity(2, 2);
  auto dissipator = [&](const Matrix& l) {
    const Matrix ldl = l.adjoint() * l;
    return Matrix(kron(l.conjugate(), l) - 0.5 * kron(id, ldl) - 0.5 * kron(ldl.transpose(), id));
  };
  // sigma_+ rho sigma_+ -> (sigma_+^T kron sigma_+)
  const Matrix pp = kron(sp.transpose(), sp);
  const Matrix mm = kron(sm.transpose(), sm);
  Matrix g = gamma_eng * ((n + 1.0) * dissipator(sm) + n * dissipator(sp));
  g -= gamma_eng * (m * pp + std::conj(m) * mm);
  g += gamma * dissipator(sm);
  return g;
}

MasterResult evolve_linear(const Matrix& generator, const QuantumState& rho0, double t_end,
                           double scale, const MasterOptions& opts) {
  const Eigen::Index d = rho0.dim();
  if (generator.rows() != d * d || generator.cols() != d * d) {
    throw DimensionError("evolve_linear: generator does not match state dimension");
  }
  const Matrix rho_init = rho0.density();
  const SampleGrid grid = plan_samples(t_end, scale, opts);
  Recorder rec(opts, rho0.dims(), rho_init.trace().real());

  Vector v = vec(rho_init);
  rec.record(opts.start_time, rho_init);
  if (grid.steps == 0) return rec.finish(rho_init, 0.0, 0);

  const Eigen::Index n = d * d;
  const Matrix id = Matrix::Identity(n, n);
  const Matrix a = grid.dt * generator;
  const Matrix step = trace_preserving(id + a * (id + a * (id / 2.0 + a * (id / 6.0 + a / 24.0))), d);
  const Matrix stride = trace_preserving(matrix_power(step, grid.stride), d);

  long done = 0;
  while (done < grid.steps) {
    const long chunk = std::min(grid.stride, grid.steps - done);
    v = (chunk == grid.stride ? stride : trace_preserving(matrix_power(step, chunk), d)) * v;
    done += chunk;
    const double t = done == grid.steps ? opts.start_time + t_end
                                        : opts.start_time + static_cast<double>(done) * grid.dt;
    rec.record(t, unvec(v, d));
  }
  return rec.finish(unvec(v, d), grid.dt, grid.steps);
}

MasterResult evolve_master(const HamiltonianSource& h, const std::vector<CollapseChannel>& channels,
                           const QuantumState& rho0, double t_end, const MasterOptions& opts) {
  if (h.dim() != rho0.dim()) throw DimensionError("evolve_master: H/state dimension mismatch");
  for (const auto& c : channels) {
    if (c.op.dim() != rho0.dim()) throw DimensionError("evolve_master: channel dimension mismatch");
  }
  const double scale = h.norm_bound() + channel_scale(channels);

  if (!h.time_dependent() && rho0.dim() <= kMaxLinearDim) {
    return evolve_linear(liouvillian(h.at(0.0), channels), rho0, t_end, scale, opts);
  }

  const Matrix rho_init = rho0.density();
  const SampleGrid grid = plan_samples(t_end, scale, opts);
  Recorder rec(opts, rho0.dims(), rho_init.trace().real());
  rec.record(opts.start_time, rho_init);
  if (grid.steps == 0) return rec.finish(rho_init, 0.0, 0);

  struct Prepared {
    Matrix l;
    Matrix ldl;
    double rate;
  };
  std::vector<Prepared> prep;
  for (const auto& c : channels) {
    if (c.rate == 0.0) continue;
    prep.push_back({c.op.matrix(), c.op.matrix().adjoint() * c.op.matrix(), c.rate});
  }
  const cplx mi(0.0, -1.0);
  auto rhs = [&](const Matrix& hm, const Matrix& rho) {
    // Written without assuming rho is Hermitian: substituting (H rho)^dag for
    // rho H lets the anti-Hermitian roundoff component grow without bound.
    Matrix out = mi * (hm * rho - rho * hm);
    for (const auto& p : prep) {
      out += p.rate * (p.l * rho * p.l.adjoint() - 0.5 * (p.ldl * rho + rho * p.ldl));
    }
    return out;
  };

  Matrix rho = rho_init;
  const bool td = h.time_dependent();
  const Matrix h_const = td ? Matrix() : h.at(0.0);
  for (long k = 0; k < grid.steps; ++k) {
    const double t = opts.start_time + static_cast<double>(k) * grid.dt;
    const Matrix h0 = td ? h.at(t) : h_const;
    const Matrix hm = td ? h.at(t + 0.5 * grid.dt) : h_const;
    const Matrix h1 = td ? h.at(t + grid.dt) : h_const;
    const Matrix k1 = rhs(h0, rho);
    const Matrix k2 = rhs(hm, rho + 0.5 * grid.dt * k1);
    const Matrix k3 = rhs(hm, rho + 0.5 * grid.dt * k2);
    const Matrix k4 = rhs(h1, rho + grid.dt * k3);
    rho += (grid.dt / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
    const long done = k + 1;
    if (done % grid.stride == 0 || done == grid.steps) {
      const double tr = done == grid.steps ? opts.start_time + t_end
                                           : opts.start_time + static_cast<double>(done) * grid.dt;
      rec.record(tr, rho);
    }
  }
  return rec.finish(std::move(rho), grid.dt, grid.steps);
}

std::array<double, 3> bloch_vector(const QuantumState& atom) {
  if (atom.dim() != 2) throw DimensionError("bloch_vector: expects a two-level state");
  return {expect(sigma_x(), atom).real(), expect(sigma_y(), atom).real(),
          expect(sigma_z(), atom).real()};
}

Probe bloch_probe() {
  Probe p;
  p.names = {"sx", "sy", "sz"};
  p.measure = [](double, const QuantumState& s) {
    const auto b = bloch_vector(s);
    return std::vector<double>(b.begin(), b.end());
  };
  return p;
}

TimeSeries evolve_effective_atom(double gamma_eng, double n, cplx m, double gamma,
                                 const QuantumState& atom0, double t_end, const MasterOptions& opts) {
  if (gamma_eng < 0.0) throw PreconditionError("evolve_effective_atom: Gamma_eng must be >= 0");
  if (n < 0.0) throw PreconditionError("evolve_effective_atom: N must be >= 0");
  if (gamma < 0.0) throw PreconditionError("evolve_effective_atom: gamma must be >= 0");
  const double bound = n * (n + 1.0);
  if (std::norm(m) - bound > 1e-12 * std::max(1.0, bound)) {
    throw PreconditionError("evolve_effective_atom: |M|^2 > N(N+1) is not a physical bath");
  }
  if (atom0.dim() != 2) throw DimensionError("evolve_effective_atom: expects a two-level state");

  MasterOptions local = opts;
  if (local.probe.empty()) local.probe = bloch_probe();
  const double scale = gamma_eng * (2.0 * n + 1.0 + 2.0 * std::abs(m)) + gamma;
  return evolve_linear(squeezed_bath_liouvillian(gamma_eng, n, m, gamma), atom0, t_end, scale, local)
      .series;
}

}  // namespace sqzres
