#include "sqzres/hamiltonians.hpp"

#include <cmath>

#include "sqzres/errors.hpp"

namespace sqzres {
namespace {

Operator atom3(int l, int m, int n_max) { return on_atom(atomic_projector(l, m, 3), n_max); }
Operator atom2(int l, int m, int n_max) { return on_atom(atomic_projector(l, m, 2), n_max); }

}  // namespace

Operator OscillatingHamiltonian::at(double t) const {
  Matrix m = constant.matrix();
  for (const auto& [w, op] : terms) {
    const Matrix piece = std::polar(1.0, w * t) * op.matrix();
    m += piece;
    m += piece.adjoint();
  }
  return Operator(std::move(m), constant.dims());
}

double OscillatingHamiltonian::norm_bound() const {
  double b = constant.norm();
  for (const auto& term : terms) b += 2.0 * term.second.norm();
  return b;
}

StarkShifts stark_shifts(const PhysicalParams& phys) {
  if (phys.Delta[0] == 0.0 || phys.Delta[1] == 0.0) {
    throw PreconditionError("stark_shifts: Delta1 and Delta2 must be nonzero");
  }
  const double g2 = std::norm(phys.g);
  return {-g2 / phys.Delta[1], g2 / phys.Delta[0]};
}

OscillatingHamiltonian interaction_hamiltonian(const PhysicalParams& p, int n_max) {
  using namespace level;
  const Operator a = on_field(destroy(n_max), 3);
  const Operator s_ig = atom3(i, g, n_max);
  const Operator s_ie = atom3(i, e, n_max);
  const auto& D = p.Delta;
  const auto& d = p.delta;

  OscillatingHamiltonian h;
  h.constant = Operator::zeros({3, n_max + 1});
  h.terms = {
      {D[1] + d[1], p.g * (a * s_ig)},    // cavity on g <-> i
      {-(D[0] + d[0]), p.omega[0] * s_ig},
      {D[2] + d[2], p.omega[2] * s_ig},
      {-D[0], p.g * (a * s_ie)},          // cavity on e <-> i
      {D[1], p.omega[1] * s_ie},
      {D[2], p.omega[3] * s_ie},
  };
  return h;
}

Operator build_H_interaction(const PhysicalParams& phys, double t, int n_max) {
  return interaction_hamiltonian(phys, n_max).at(t);
}

Operator build_H_bare(const BareFrequencies& b, int n_max) {
  using namespace level;
  return b.omega_g * atom3(g, g, n_max) + b.omega_e * atom3(e, e, n_max) +
         b.omega_i * atom3(i, i, n_max) + b.omega_cavity * on_field(number(n_max), 3);
}

Operator build_V_lab(const PhysicalParams& p, const BareFrequencies& b, double t, int n_max) {
  using namespace level;
  const Operator a = on_field(destroy(n_max), 3);
  const Operator id = Operator::identity({3, n_max + 1});
  const auto& w = b.omega_drive;
  const Operator on_g = p.g * a + (p.omega[0] * std::polar(1.0, -w[0] * t)) * id +
                        (p.omega[2] * std::polar(1.0, -w[2] * t)) * id;
  const Operator on_e = p.g * a + (p.omega[1] * std::polar(1.0, -w[1] * t)) * id +
                        (p.omega[3] * std::polar(1.0, -w[3] * t)) * id;
  const Operator v = on_g * atom3(i, g, n_max) + on_e * atom3(i, e, n_max);
  return v + v.adjoint();
}

OscillatingHamiltonian dispersive_hamiltonian(const EffectiveParams& eff, const StarkShifts& stark,
                                              const std::array<double, 3>& delta, int n_max) {
  using namespace level;
  const Operator a = on_field(destroy(n_max), 2);
  const Operator n = on_field(number(n_max), 2);
  const Operator gg = atom2(g, g, n_max);
  const Operator ee = atom2(e, e, n_max);
  const Operator sm = on_atom(sigma_minus(), n_max);

  OscillatingHamiltonian h;
  h.constant = (stark.ground * n + cplx(eff.varpi_g) * Operator::identity(gg.dims())) * gg +
               (stark.excited * n + cplx(eff.varpi_e) * Operator::identity(ee.dims())) * ee;
  h.terms = {
      {delta[0], eff.lambda1 * (a * sm)},
      {-delta[1], eff.lambda2 * (a.adjoint() * sm)},
      {-delta[2], eff.beta * sm},
  };
  return h;
}

Operator build_H_eff_dispersive(const EffectiveParams& eff, const StarkShifts& stark,
                                const std::array<double, 3>& delta, double t, int n_max) {
  return dispersive_hamiltonian(eff, stark, delta, n_max).at(t);
}

OscillatingHamiltonian dispersive_hamiltonian(const PhysicalParams& phys, int n_max) {
  return dispersive_hamiltonian(effective_params(phys), stark_shifts(phys), phys.delta, n_max);
}

Operator build_H_eff_static(const EffectiveParams& eff, int n_max) {
  const Operator a = destroy(n_max);
  const Operator k = eff.lambda1 * a + eff.lambda2 * a.adjoint() +
                     eff.beta * Operator::identity({n_max + 1});
  const Operator h = tensor(sigma_minus(), k);
  return h + h.adjoint();
}

Operator build_H_transformed(cplx lambda, int n_max) {
  const Operator h = lambda * tensor(sigma_minus(), create(n_max));
  return h + h.adjoint();
}

Operator build_H_transformed_anti(cplx lambda, int n_max) {
  const Operator h = lambda * tensor(sigma_minus(), destroy(n_max));
  return h + h.adjoint();
}

Operator transformed_hamiltonian(const SqueezeSpec& spec, int n_max) {
  return spec.dominant == Dominant::lambda2 ? build_H_transformed(spec.lambda, n_max)
                                            : build_H_transformed_anti(spec.lambda, n_max);
}

Operator build_H_bath(cplx lambda, double r, double phi, int n_max) {
  const Operator rop = std::cosh(r) * sigma_minus() - (std::sinh(r) * std::polar(1.0, phi)) * sigma_plus();
  const Operator h = lambda * tensor(rop, create(n_max));
  return h + h.adjoint();
}

EffectiveParams bath_effective_params(cplx lambda, double r, double phi) {
  EffectiveParams eff;
  eff.lambda2 = lambda * std::cosh(r);
  eff.lambda1 = -std::conj(lambda) * std::sinh(r) * std::polar(1.0, -phi);
  return eff;
}

Operator to_target_frame(const Operator& h, const SqueezeSpec& spec, int n_max) {
  const Operator u_field = displacement(spec.alpha, n_max) * squeeze(spec.r, spec.phi, n_max);
  const int levels = h.dims().front();
  const Operator u = on_field(u_field, levels);
  return u.adjoint() * h * u;
}

Operator stark_frame(const EffectiveParams& eff, double t) {
  Matrix m = Matrix::Zero(2, 2);
  m(level::g, level::g) = std::polar(1.0, -eff.varpi_g * t);
  m(level::e, level::e) = std::polar(1.0, -eff.varpi_e * t);
  return Operator(std::move(m));
}

}  // namespace sqzres
