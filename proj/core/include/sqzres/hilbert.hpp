#pragma once

// Dense operators and states on truncated atom (x) field Hilbert spaces.
//
// Ordering convention, used everywhere in the library: composite spaces are
// atom (x) field, so the composite index is atom_level * (n_max + 1) + n.
// Atomic levels are numbered g = 0, e = 1, i = 2.

#include <complex>
#include <vector>

#include <Eigen/Dense>

namespace sqzres {

using cplx = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;

inline constexpr cplx kI{0.0, 1.0};

namespace level {
inline constexpr int g = 0;
inline constexpr int e = 1;
inline constexpr int i = 2;
}  // namespace level

struct HilbertConfig {
  int n_max = 30;
  int atom_levels = 2;

  int field_dim() const { return n_max + 1; }
  int dimension() const { return field_dim() * atom_levels; }
  std::vector<int> dims() const { return {atom_levels, field_dim()}; }
  // Throws PreconditionError when n_max < 1 or atom_levels is not 2 or 3.
  void validate() const;
};

class Operator {
 public:
  Operator() = default;
  // `dims` lists factor dimensions; their product must equal the side of `m`.
  Operator(Matrix m, std::vector<int> dims);
  // Single-factor operator of the matrix's own dimension.
  explicit Operator(Matrix m);

  static Operator zeros(const std::vector<int>& dims);
  static Operator identity(const std::vector<int>& dims);

  const Matrix& matrix() const { return m_; }
  Matrix& matrix() { return m_; }
  int dim() const { return static_cast<int>(m_.rows()); }
  const std::vector<int>& dims() const { return dims_; }

  cplx operator()(int row, int col) const { return m_(row, col); }

  Operator adjoint() const;
  bool is_hermitian(double tol = 1e-10) const;
  bool is_unitary(double tol = 1e-10) const;
  // Largest singular value.
  double norm() const;

  Operator& operator+=(const Operator& rhs);
  Operator& operator-=(const Operator& rhs);
  Operator& operator*=(cplx s);

 private:
  Matrix m_;
  std::vector<int> dims_;
};

Operator operator+(Operator lhs, const Operator& rhs);
Operator operator-(Operator lhs, const Operator& rhs);
Operator operator*(const Operator& lhs, const Operator& rhs);
Operator operator*(cplx s, Operator op);
Operator operator*(Operator op, cplx s);
Operator commutator(const Operator& a, const Operator& b);

// Pure state vector or density matrix over a factored space.
class QuantumState {
 public:
  enum class Kind { pure, mixed };

  // Empty placeholder of dimension 0.
  QuantumState() = default;

  // Checked factories: pure requires unit norm within 1e-10; mixed requires
  // Hermitian within 1e-10, unit trace within 1e-8 and diagonal >= -1e-10.
  // Empty dims mean a single factor of the full dimension.
  static QuantumState pure(Vector psi, std::vector<int> dims = {});
  static QuantumState mixed(Matrix rho, std::vector<int> dims = {});
  // Unchecked variants for integrator output whose drift is policed elsewhere.
  static QuantumState pure_unchecked(Vector psi, std::vector<int> dims = {});
  static QuantumState mixed_unchecked(Matrix rho, std::vector<int> dims = {});

  // Fock state |n> on a single field factor of dimension n_max + 1.
  static QuantumState fock(int n, int n_max);

  Kind kind() const { return kind_; }
  bool is_pure() const { return kind_ == Kind::pure; }
  int dim() const;
  const std::vector<int>& dims() const { return dims_; }

  // Throws when the state is mixed.
  const Vector& vector() const;
  // Density matrix, |psi><psi| for pure states.
  Matrix density() const;
  QuantumState to_mixed() const;

 private:
  QuantumState(Kind kind, Vector psi, Matrix rho, std::vector<int> dims);

  Kind kind_ = Kind::pure;
  Vector psi_;
  Matrix rho_;
  std::vector<int> dims_{0};
};

// Field annihilation operator on Fock space {0..n_max}.
Operator destroy(int n_max);
Operator create(int n_max);
Operator number(int n_max);
// Quadratures X1 = (a + a^dag)/2 and X2 = -i(a - a^dag)/2.
Operator quadrature_x1(int n_max);
Operator quadrature_x2(int n_max);
// Photon-number parity (-1)^n.
Operator parity(int n_max);

// |l><m| on an atom with `levels` levels.
Operator atomic_projector(int l, int m, int levels);
// sigma_- = |g><e| and sigma_+ = |e><g| on a two-level atom.
Operator sigma_minus();
Operator sigma_plus();
Operator sigma_x();
Operator sigma_y();
// sigma_z = |e><e| - |g><g|.
Operator sigma_z();

// Kronecker product, factor lists concatenated.
Operator tensor(const Operator& a, const Operator& b);
Vector tensor(const Vector& a, const Vector& b);
QuantumState tensor(const QuantumState& a, const QuantumState& b);

// Lift single-factor operators into atom (x) field.
Operator on_atom(const Operator& atom_op, int n_max);
Operator on_field(const Operator& field_op, int atom_levels);

// Matrix exponential by Pade scaling and squaring.
Matrix expm(const Matrix& a);
Operator expm(const Operator& a);

enum class Keep { atom, field };

// Reduced density matrix of a two-factor state.
QuantumState partial_trace(const QuantumState& state, Keep keep);

// D(alpha) = exp(alpha a^dag - alpha* a), computed in the truncated space.
// Advises when |alpha|^2 > n_max / 4.
Operator displacement(cplx alpha, int n_max);

// S(r, phi) = exp[(r/2)(e^{i phi} a^dag^2 - e^{-i phi} a^2)] in the truncated
// space, with S^dag a S = a cosh r + a^dag e^{i phi} sinh r. At phi = 0 the
// vacuum is squeezed along X2: (dX2)^2 = e^{-2r}/4. Advises when r > 2 at the
// default truncation.
Operator squeeze(double r, double phi, int n_max);

cplx expect(const Operator& op, const QuantumState& state);
double variance(const Operator& op, const QuantumState& state);
// <psi|rho|psi>; `target` must be pure.
double fidelity(const QuantumState& rho, const QuantumState& target);
double purity(const QuantumState& rho);
double trace_real(const QuantumState& rho);
// Smallest eigenvalue of the (Hermitian part of the) density matrix.
double min_eigenvalue(const QuantumState& rho);

}  // namespace sqzres
