#include "sqzres/hilbert.hpp"

#include <cmath>
#include <numeric>
#include <sstream>
#include <string>
#include <utility>

#include "sqzres/errors.hpp"
#include "sqzres/log.hpp"

namespace sqzres {
namespace {

int product(const std::vector<int>& dims) {
  return std::accumulate(dims.begin(), dims.end(), 1, std::multiplies<>());
}

void require_same_dims(const Operator& a, const Operator& b, const char* what) {
  if (a.dims() != b.dims()) {
    throw DimensionError(std::string(what) + ": operand factor dimensions differ");
  }
}

std::vector<int> concat(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

void require_n_max(int n_max) {
  if (n_max < 1) throw PreconditionError("n_max must be >= 1, got " + std::to_string(n_max));
}

}  // namespace

void HilbertConfig::validate() const {
  require_n_max(n_max);
  if (atom_levels != 2 && atom_levels != 3) {
    throw PreconditionError("atom_levels must be 2 or 3, got " + std::to_string(atom_levels));
  }
}

// ---------------------------------------------------------------- Operator

Operator::Operator(Matrix m, std::vector<int> dims) : m_(std::move(m)), dims_(std::move(dims)) {
  if (m_.rows() != m_.cols()) throw DimensionError("operator matrix must be square");
  if (dims_.empty() || product(dims_) != m_.rows()) {
    throw DimensionError("factor dimensions do not multiply to the matrix side");
  }
}

Operator::Operator(Matrix m) : Operator(m, {static_cast<int>(m.rows())}) {}

Operator Operator::zeros(const std::vector<int>& dims) {
  const int d = product(dims);
  return Operator(Matrix::Zero(d, d), dims);
}

Operator Operator::identity(const std::vector<int>& dims) {
  const int d = product(dims);
  return Operator(Matrix::Identity(d, d), dims);
}

Operator Operator::adjoint() const { return Operator(m_.adjoint(), dims_); }

bool Operator::is_hermitian(double tol) const {
  return (m_ - m_.adjoint()).cwiseAbs().maxCoeff() <= tol;
}

bool Operator::is_unitary(double tol) const {
  const Matrix id = Matrix::Identity(dim(), dim());
  return (m_.adjoint() * m_ - id).cwiseAbs().maxCoeff() <= tol;
}

double Operator::norm() const {
  if (m_.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m_);
  return svd.singularValues()(0);
}

Operator& Operator::operator+=(const Operator& rhs) {
  require_same_dims(*this, rhs, "operator+");
  m_ += rhs.m_;
  return *this;
}

Operator& Operator::operator-=(const Operator& rhs) {
  require_same_dims(*this, rhs, "operator-");
  m_ -= rhs.m_;
  return *this;
}

Operator& Operator::operator*=(cplx s) {
  m_ *= s;
  return *this;
}

Operator operator+(Operator lhs, const Operator& rhs) { return lhs += rhs; }
Operator operator-(Operator lhs, const Operator& rhs) { return lhs -= rhs; }

Operator operator*(const Operator& lhs, const Operator& rhs) {
  require_same_dims(lhs, rhs, "operator*");
  return Operator(lhs.matrix() * rhs.matrix(), lhs.dims());
}

Operator operator*(cplx s, Operator op) { return op *= s; }
Operator operator*(Operator op, cplx s) { return op *= s; }

Operator commutator(const Operator& a, const Operator& b) { return a * b - b * a; }

// ------------------------------------------------------------ QuantumState

QuantumState::QuantumState(Kind kind, Vector psi, Matrix rho, std::vector<int> dims)
    : kind_(kind), psi_(std::move(psi)), rho_(std::move(rho)), dims_(std::move(dims)) {
  if (dims_.empty()) dims_ = {static_cast<int>(kind_ == Kind::pure ? psi_.size() : rho_.rows())};
  const int d = product(dims_);
  if (kind_ == Kind::pure && psi_.size() != d) throw DimensionError("state vector length mismatch");
  if (kind_ == Kind::mixed && (rho_.rows() != d || rho_.cols() != d)) {
    throw DimensionError("density matrix side mismatch");
  }
}

QuantumState QuantumState::pure_unchecked(Vector psi, std::vector<int> dims) {
  return QuantumState(Kind::pure, std::move(psi), Matrix(), std::move(dims));
}

QuantumState QuantumState::mixed_unchecked(Matrix rho, std::vector<int> dims) {
  return QuantumState(Kind::mixed, Vector(), std::move(rho), std::move(dims));
}

QuantumState QuantumState::pure(Vector psi, std::vector<int> dims) {
  const double n = psi.norm();
  if (std::abs(n - 1.0) > 1e-10) {
    std::ostringstream os;
    os << "pure state norm " << n << " differs from 1 by more than 1e-10";
    throw PreconditionError(os.str());
  }
  return pure_unchecked(std::move(psi), std::move(dims));
}

QuantumState QuantumState::mixed(Matrix rho, std::vector<int> dims) {
  if (rho.rows() != rho.cols()) throw DimensionError("density matrix must be square");
  if ((rho - rho.adjoint()).cwiseAbs().maxCoeff() > 1e-10) {
    throw PreconditionError("density matrix is not Hermitian within 1e-10");
  }
  const cplx tr = rho.trace();
  if (std::abs(tr - 1.0) > 1e-8) throw PreconditionError("density matrix trace differs from 1 by more than 1e-8");
  if (rho.diagonal().real().minCoeff() < -1e-10) {
    throw PreconditionError("density matrix has a negative diagonal entry");
  }
  return mixed_unchecked(std::move(rho), std::move(dims));
}

QuantumState QuantumState::fock(int n, int n_max) {
  require_n_max(n_max);
  if (n < 0 || n > n_max) throw PreconditionError("Fock index out of range");
  Vector v = Vector::Zero(n_max + 1);
  v(n) = 1.0;
  return pure_unchecked(std::move(v), {n_max + 1});
}

int QuantumState::dim() const { return product(dims_); }

const Vector& QuantumState::vector() const {
  if (kind_ != Kind::pure) throw PreconditionError("state is mixed; no state vector");
  return psi_;
}

Matrix QuantumState::density() const {
  if (kind_ == Kind::mixed) return rho_;
  return psi_ * psi_.adjoint();
}

QuantumState QuantumState::to_mixed() const {
  if (kind_ == Kind::mixed) return *this;
  return mixed_unchecked(density(), dims_);
}

// ---------------------------------------------------------------- builders

Operator destroy(int n_max) {
  require_n_max(n_max);
  Matrix m = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 1; n <= n_max; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
  return Operator(std::move(m));
}

Operator create(int n_max) { return destroy(n_max).adjoint(); }

Operator number(int n_max) {
  require_n_max(n_max);
  Matrix m = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) m(n, n) = static_cast<double>(n);
  return Operator(std::move(m));
}

Operator quadrature_x1(int n_max) {
  const Operator a = destroy(n_max);
  return 0.5 * (a + a.adjoint());
}

Operator quadrature_x2(int n_max) {
  const Operator a = destroy(n_max);
  return cplx(0.0, -0.5) * (a - a.adjoint());
}

Operator parity(int n_max) {
  require_n_max(n_max);
  Matrix m = Matrix::Zero(n_max + 1, n_max + 1);
  for (int n = 0; n <= n_max; ++n) m(n, n) = (n % 2 == 0) ? 1.0 : -1.0;
  return Operator(std::move(m));
}

Operator atomic_projector(int l, int m, int levels) {
  if (levels < 2 || levels > 3) throw PreconditionError("atom must have 2 or 3 levels");
  if (l < 0 || l >= levels || m < 0 || m >= levels) {
    throw PreconditionError("atomic level index out of range");
  }
  Matrix out = Matrix::Zero(levels, levels);
  out(l, m) = 1.0;
  return Operator(std::move(out));
}

Operator sigma_minus() { return atomic_projector(level::g, level::e, 2); }
Operator sigma_plus() { return atomic_projector(level::e, level::g, 2); }
Operator sigma_x() { return sigma_minus() + sigma_plus(); }
Operator sigma_y() { return cplx(0.0, -1.0) * (sigma_minus() - sigma_plus()); }
Operator sigma_z() {
  return atomic_projector(level::e, level::e, 2) - atomic_projector(level::g, level::g, 2);
}

Operator tensor(const Operator& a, const Operator& b) {
  const Matrix& x = a.matrix();
  const Matrix& y = b.matrix();
  Matrix out(x.rows() * y.rows(), x.cols() * y.cols());
  for (Eigen::Index i = 0; i < x.rows(); ++i) {
    for (Eigen::Index j = 0; j < x.cols(); ++j) {
      out.block(i * y.rows(), j * y.cols(), y.rows(), y.cols()) = x(i, j) * y;
    }
  }
  return Operator(std::move(out), concat(a.dims(), b.dims()));
}

Vector tensor(const Vector& a, const Vector& b) {
  Vector out(a.size() * b.size());
  for (Eigen::Index i = 0; i < a.size(); ++i) out.segment(i * b.size(), b.size()) = a(i) * b;
  return out;
}

QuantumState tensor(const QuantumState& a, const QuantumState& b) {
  auto dims = concat(a.dims(), b.dims());
  if (a.is_pure() && b.is_pure()) {
    return QuantumState::pure_unchecked(tensor(a.vector(), b.vector()), std::move(dims));
  }
  const Operator ra(a.density(), a.dims());
  const Operator rb(b.density(), b.dims());
  return QuantumState::mixed_unchecked(tensor(ra, rb).matrix(), std::move(dims));
}

Operator on_atom(const Operator& atom_op, int n_max) {
  return tensor(atom_op, Operator::identity({n_max + 1}));
}

Operator on_field(const Operator& field_op, int atom_levels) {
  return tensor(Operator::identity({atom_levels}), field_op);
}

Operator expm(const Operator& a) { return Operator(expm(a.matrix()), a.dims()); }

QuantumState partial_trace(const QuantumState& state, Keep keep) {
  if (state.dims().size() != 2) {
    throw DimensionError("partial_trace needs a two-factor space, got " +
                         std::to_string(state.dims().size()) + " factors");
  }
  const int da = state.dims()[0];
  const int df = state.dims()[1];
  const Matrix rho = state.density();
  if (keep == Keep::field) {
    Matrix out = Matrix::Zero(df, df);
    for (int k = 0; k < da; ++k) out += rho.block(k * df, k * df, df, df);
    return QuantumState::mixed_unchecked(std::move(out), {df});
  }
  Matrix out(da, da);
  for (int k = 0; k < da; ++k) {
    for (int l = 0; l < da; ++l) out(k, l) = rho.block(k * df, l * df, df, df).trace();
  }
  return QuantumState::mixed_unchecked(std::move(out), {da});
}

Operator displacement(cplx alpha, int n_max) {
  require_n_max(n_max);
  if (std::norm(alpha) > n_max / 4.0) {
    std::ostringstream os;
    os << "displacement |alpha|^2 = " << std::norm(alpha) << " exceeds n_max/4 = " << n_max / 4.0
       << "; truncation effects likely";
    log::warn(os.str());
  }
  const Operator a = destroy(n_max);
  return expm(alpha * a.adjoint() - std::conj(alpha) * a);
}

Operator squeeze(double r, double phi, int n_max) {
  require_n_max(n_max);
  if (r > 2.0 && n_max <= 30) {
    log::warn("squeeze r = " + std::to_string(r) + " > 2 at n_max = " + std::to_string(n_max) +
              "; truncation effects likely");
  }
  const Operator a = destroy(n_max);
  const Operator a2 = a * a;
  const cplx xi = std::polar(r, phi);
  return expm(0.5 * (xi * a2.adjoint() - std::conj(xi) * a2));
}

// -------------------------------------------------------------- moments

cplx expect(const Operator& op, const QuantumState& state) {
  if (op.dim() != state.dim()) throw DimensionError("expect: operator/state dimension mismatch");
  if (state.is_pure()) {
    const Vector& v = state.vector();
    return v.dot(op.matrix() * v);
  }
  return (state.density() * op.matrix()).trace();
}

double variance(const Operator& op, const QuantumState& state) {
  const cplx m1 = expect(op, state);
  const cplx m2 = expect(op * op, state);
  return (m2 - m1 * m1).real();
}

double fidelity(const QuantumState& rho, const QuantumState& target) {
  if (!target.is_pure()) throw PreconditionError("fidelity: target state must be pure");
  if (rho.dim() != target.dim()) throw DimensionError("fidelity: dimension mismatch");
  const Vector& psi = target.vector();
  if (rho.is_pure()) return std::norm(psi.dot(rho.vector()));
  return psi.dot(rho.density() * psi).real();
}

double purity(const QuantumState& rho) {
  if (rho.is_pure()) return std::pow(rho.vector().squaredNorm(), 2);
  const Matrix& m = rho.density();
  // Tr(rho^2) = sum |rho_ij|^2 for Hermitian rho.
  return m.cwiseAbs2().sum();
}

double trace_real(const QuantumState& rho) {
  if (rho.is_pure()) return rho.vector().squaredNorm();
  return rho.density().trace().real();
}

double min_eigenvalue(const QuantumState& rho) {
  const Matrix m = rho.density();
  const Matrix h = 0.5 * (m + m.adjoint());
  Eigen::SelfAdjointEigenSolver<Matrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

}  // namespace sqzres
