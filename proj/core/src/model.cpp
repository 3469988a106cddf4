#include "sqzres/model.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "sqzres/errors.hpp"

namespace sqzres {
namespace {

constexpr double kPi = std::numbers::pi;

double wrap_phase(double phi) {
  // map into (-pi, pi]
  double w = std::remainder(phi, 2.0 * kPi);
  if (w <= -kPi) w += 2.0 * kPi;
  return w;
}

bool driven(cplx omega) { return std::abs(omega) > 0.0; }

std::string fmt(double v) {
  std::ostringstream os;
  os.precision(4);
  os << v;
  return os.str();
}

}  // namespace

DetuningSet detunings_from_bare(const BareFrequencies& b) {
  const double ig = b.omega_i - b.omega_g;
  const double ie = b.omega_i - b.omega_e;
  DetuningSet out;
  out.Delta[0] = b.omega_cavity - ie;
  out.delta[0] = b.omega_drive[0] - ig - out.Delta[0];
  out.Delta[1] = ie - b.omega_drive[1];
  out.delta[1] = ig - b.omega_cavity - out.Delta[1];
  out.Delta[2] = ie - b.omega_drive[3];
  out.delta[2] = ig - b.omega_drive[2] - out.Delta[2];
  return out;
}

EffectiveParams effective_params(const PhysicalParams& phys) {
  const auto& om = phys.omega;
  const auto& D = phys.Delta;
  if (D[0] == 0.0) throw PreconditionError("Delta1 must be nonzero");
  if (D[1] == 0.0) throw PreconditionError("Delta2 must be nonzero");
  const bool rotation_driven = driven(om[2]) || driven(om[3]);
  if (rotation_driven && D[2] == 0.0) {
    throw PreconditionError("Delta3 must be nonzero when Omega3 or Omega4 is driven");
  }

  EffectiveParams eff;
  eff.lambda1 = phys.g * std::conj(om[0]) / D[0];
  eff.lambda2 = -std::conj(phys.g) * om[1] / D[1];
  eff.varpi_g = std::norm(om[0]) / D[0];
  eff.varpi_e = -std::norm(om[1]) / D[1];
  if (D[2] != 0.0) {
    eff.beta = -std::conj(om[2]) * om[3] / D[2];
    eff.varpi_g -= std::norm(om[2]) / D[2];
    eff.varpi_e -= std::norm(om[3]) / D[2];
  }
  return eff;
}

std::array<double, 3> matched_detunings(const EffectiveParams& eff) {
  const double d1 = eff.varpi_e - eff.varpi_g;
  return {d1, -d1, -d1};
}

PhysicalParams with_matched_detunings(PhysicalParams phys) {
  phys.delta = matched_detunings(effective_params(phys));
  return phys;
}

// ------------------------------------------------------------ validity

bool ValidityReport::ok() const {
  return std::all_of(checks.begin(), checks.end(), [](const RegimeCheck& c) { return c.ok; });
}

std::vector<std::string> ValidityReport::advisories() const {
  std::vector<std::string> out;
  for (const auto& c : checks) {
    if (!c.ok) out.push_back(c.name + " = " + fmt(c.value) + " exceeds " + fmt(c.threshold));
  }
  return out;
}

const RegimeCheck* ValidityReport::find(const std::string& name) const {
  for (const auto& c : checks) {
    if (c.name == name) return &c;
  }
  return nullptr;
}

ValidityReport check_regime(const PhysicalParams& phys, double n_bar, double threshold) {
  ValidityReport report;
  auto add = [&](std::string name, double value) {
    const bool ok = std::isfinite(value) && value <= threshold;
    report.checks.push_back({std::move(name), value, threshold, ok});
  };

  const auto& om = phys.omega;
  const auto& D = phys.Delta;
  const double g = std::abs(phys.g);
  const double field_scale = g * std::sqrt(std::max(n_bar, 0.0));
  const bool rotation_driven = driven(om[2]) || driven(om[3]);

  // Detunings that take part in the elimination; Delta3 only with Omega3/Omega4 on.
  std::vector<int> active = {0, 1};
  if (rotation_driven) active.push_back(2);

  for (int k : active) {
    const double ad = std::abs(D[k]);
    add("g_sqrt_nbar_over_Delta" + std::to_string(k + 1), ad > 0 ? field_scale / ad : INFINITY);
  }
  // Omega_i / Delta of its own transition.
  const std::array<int, 4> delta_of = {0, 1, 2, 2};
  double max_omega = 0.0;
  for (int i = 0; i < 4; ++i) {
    if (!driven(om[i])) continue;
    const double ad = std::abs(D[delta_of[i]]);
    add("Omega" + std::to_string(i + 1) + "_over_Delta" + std::to_string(delta_of[i] + 1),
        ad > 0 ? std::abs(om[i]) / ad : INFINITY);
    add("g_over_Omega" + std::to_string(i + 1), g / std::abs(om[i]));
    max_omega = std::max(max_omega, std::abs(om[i]));
  }
  // | |Delta_k| - |Delta_l| | must also dominate the couplings.
  const double coupling_scale = std::max(field_scale, max_omega);
  for (std::size_t a = 0; a < active.size(); ++a) {
    for (std::size_t b = a + 1; b < active.size(); ++b) {
      const int k = active[a];
      const int l = active[b];
      const double sep = std::abs(std::abs(D[k]) - std::abs(D[l]));
      add("separation_Delta" + std::to_string(k + 1) + "_Delta" + std::to_string(l + 1),
          sep > 0 ? coupling_scale / sep : INFINITY);
    }
  }

  // Matching residuals against the effective coupling scale.
  const EffectiveParams eff = effective_params(phys);
  double lam_scale = std::max({std::abs(eff.lambda1), std::abs(eff.lambda2), std::abs(eff.beta)});
  const auto& d = phys.delta;
  auto residual = [&](std::string name, double value) {
    const double scaled = lam_scale > 0 ? std::abs(value) / lam_scale : (value == 0 ? 0.0 : INFINITY);
    add(std::move(name), scaled);
  };
  residual("residual_delta1_plus_delta2", d[0] + d[1]);
  if (rotation_driven) residual("residual_delta1_plus_delta3", d[0] + d[2]);
  residual("residual_delta1_minus_stark", d[0] - (eff.varpi_e - eff.varpi_g));
  return report;
}

// --------------------------------------------------------- squeeze spec

SqueezeSpec squeeze_spec(const EffectiveParams& eff) {
  const cplx l1 = eff.lambda1;
  const cplx l2 = eff.lambda2;
  const double m1 = std::abs(l1);
  const double m2 = std::abs(l2);
  if (m1 == 0.0 && m2 == 0.0) throw PreconditionError("squeeze_spec: lambda1 = lambda2 = 0");
  if (std::abs(m1 - m2) <= 1e-12 * std::max(m1, m2)) {
    throw UnreachableError("squeeze_spec: |lambda1| = |lambda2| requires infinite squeezing");
  }

  SqueezeSpec spec;
  spec.lambda1 = l1;
  spec.lambda2 = l2;
  spec.beta = eff.beta;
  spec.dominant = (m2 > m1) ? Dominant::lambda2 : Dominant::lambda1;

  const cplx dom = spec.dominant == Dominant::lambda2 ? l2 : l1;
  const cplx sub = spec.dominant == Dominant::lambda2 ? l1 : l2;
  spec.r = std::atanh(std::abs(sub) / std::abs(dom));
  if (std::abs(sub) > 0.0) {
    const cplx ratio = sub / dom;
    spec.phi = wrap_phase(std::arg(spec.dominant == Dominant::lambda2 ? -std::conj(ratio) : -ratio));
  }
  spec.lambda = dom / std::cosh(spec.r);

  if (std::abs(eff.beta) > 0.0) {
    // (l1 + l2) x + i (l1 - l2) y = -beta as a real 2x2 system in (x, y).
    const cplx s = l1 + l2;
    const cplx dlt = l1 - l2;
    const double a11 = s.real();
    const double a12 = -dlt.imag();
    const double a21 = s.imag();
    const double a22 = dlt.real();
    const double det = a11 * a22 - a12 * a21;
    if (std::abs(det) < 1e-12 * (m1 * m1 + m2 * m2)) {
      throw UnreachableError("squeeze_spec: displacement system is singular");
    }
    const double bx = -eff.beta.real();
    const double by = -eff.beta.imag();
    spec.alpha = cplx((bx * a22 - a12 * by) / det, (a11 * by - a21 * bx) / det);
  }
  return spec;
}

double displacement_residual(const SqueezeSpec& spec) {
  return std::abs(spec.alpha * spec.lambda1 + std::conj(spec.alpha) * spec.lambda2 + spec.beta);
}

// ------------------------------------------------------------ design

DesignResult design_couplings(const DesignRequest& req) {
  const auto& t = req.target;
  if (!(t.r >= 0.0) || !std::isfinite(t.r)) throw PreconditionError("design: r must be finite and >= 0");
  if (!(req.scale > 0.0)) throw PreconditionError("design: scale must be > 0");
  if (std::abs(req.g) == 0.0) throw PreconditionError("design: g must be nonzero");
  if (req.Delta[0] == 0.0 || req.Delta[1] == 0.0) throw PreconditionError("design: Delta1, Delta2 must be nonzero");

  const cplx lambda2 = req.scale;
  const cplx lambda1 = -req.scale * std::tanh(t.r) * std::polar(1.0, -t.phi);
  const cplx beta = -(t.alpha * lambda1 + std::conj(t.alpha) * lambda2);

  PhysicalParams phys;
  phys.g = req.g;
  phys.Delta = req.Delta;
  phys.omega[0] = std::conj(lambda1 * req.Delta[0] / req.g);
  phys.omega[1] = -lambda2 * req.Delta[1] / std::conj(req.g);
  if (std::abs(beta) > 0.0) {
    if (req.Delta[2] == 0.0) throw PreconditionError("design: displacement needs Delta3 != 0");
    const double amp = std::sqrt(std::abs(beta * req.Delta[2]));
    phys.omega[2] = amp;
    phys.omega[3] = -beta * req.Delta[2] / amp;
  }
  phys = with_matched_detunings(phys);

  DesignResult out;
  out.params = phys;
  out.effective = effective_params(phys);
  out.spec = squeeze_spec(out.effective);
  const double n_bar = std::norm(t.alpha) + std::pow(std::sinh(t.r), 2);
  out.report = check_regime(phys, n_bar, req.regime_threshold);
  out.advisories = out.report.advisories();
  if (req.strict && !out.advisories.empty()) {
    std::string msg = "design: target unreachable within the regime constraints:";
    for (const auto& a : out.advisories) msg += "\n  " + a;
    throw UnreachableError(msg);
  }
  return out;
}

// ------------------------------------------------------------ target state

QuantumState truncated_target_state(cplx alpha, double r, double phi, int n_max, double* discarded) {
  if (n_max < 1) throw PreconditionError("target_state: n_max must be >= 1");
  if (r < 0.0) throw PreconditionError("target_state: r must be >= 0");
  const int work = std::max(2 * n_max, n_max + 40);
  Vector vac = Vector::Zero(work + 1);
  vac(0) = 1.0;
  const Vector full =
      (displacement(alpha, work).matrix() * (squeeze(r, phi, work).matrix() * vac)).eval();
  Vector psi = full.head(n_max + 1);
  if (discarded) *discarded = 1.0 - psi.squaredNorm();
  psi /= psi.norm();
  return QuantumState::pure_unchecked(std::move(psi), {n_max + 1});
}

QuantumState target_state(cplx alpha, double r, double phi, int n_max) {
  double loss = 0.0;
  QuantumState out = truncated_target_state(alpha, r, phi, n_max, &loss);
  if (loss >= 1e-6) {
    std::ostringstream os;
    os << "target_state: truncation at n_max = " << n_max << " discards weight " << loss << " >= 1e-6";
    throw UnreachableError(os.str());
  }
  return out;
}

}  // namespace sqzres
