#ifndef QICT_OPSPACE_HPP
#define QICT_OPSPACE_HPP

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace qict {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RVector = Eigen::VectorXd;

// Numerical tolerances shared across the library.
namespace tol {
inline constexpr double herm = 1e-10;        // Hermiticity of ingested operators
inline constexpr double pos = 1e-10;         // positivity slack for eigenvalues
inline constexpr double pinv_cutoff = 1e-10; // relative singular-value cutoff
inline constexpr double cond_ceiling = 1e8;  // beyond this, inverses are meaningless
inline constexpr double verdict = 1e-8;      // classifier residual threshold
inline constexpr double prob = 1e-12;        // smallest usable Born probability
}  // namespace tol

/// Hermitian operator on a d-dimensional Hilbert space.
///
/// Inputs are symmetrized (A + A^dag)/2 on ingestion; a correction larger
/// than tol::herm is reported on stderr (JSON round trips introduce
/// last-digit asymmetry, anything bigger is a caller bug).
class Operator {
 public:
  Operator() = default;
  explicit Operator(const Matrix& m);

  static Operator identity(int d);
  static Operator zero(int d);

  int dim() const { return static_cast<int>(mat_.rows()); }
  const Matrix& matrix() const { return mat_; }

  /// tr(A), real by Hermiticity.
  double trace() const { return mat_.trace().real(); }
  /// tr(A^2) = squared HS norm.
  double hs_norm_sq() const;
  /// Smallest eigenvalue.
  double min_eigenvalue() const;

  Operator& operator+=(const Operator& o);
  Operator& operator-=(const Operator& o);
  Operator& operator*=(double s);

  friend Operator operator+(Operator a, const Operator& b) { return a += b; }
  friend Operator operator-(Operator a, const Operator& b) { return a -= b; }
  friend Operator operator*(double s, Operator a) { return a *= s; }
  friend Operator operator*(Operator a, double s) { return a *= s; }

 private:
  Matrix mat_;
};

/// Coordinates of an operator in the fixed vectorization convention
/// (column stacking of the complex matrix).
class OperatorKet {
 public:
  OperatorKet() = default;
  OperatorKet(int dim, CVector coords);

  int dim() const { return dim_; }
  const CVector& coords() const { return coords_; }

 private:
  int dim_ = 0;
  CVector coords_;
};

/// Linear map on the operator space, stored as a dense d^2 x d^2 matrix
/// acting on OperatorKet coordinates.
class Superoperator {
 public:
  Superoperator() = default;
  Superoperator(int dim, Matrix m);

  static Superoperator identity(int d);
  static Superoperator zero(int d);

  int dim() const { return dim_; }
  const Matrix& matrix() const { return mat_; }

  /// Apply to an operator; the result is symmetrized like any ingested
  /// operator (all superoperators in this library preserve Hermiticity).
  Operator apply(const Operator& x) const;

  Superoperator& operator+=(const Superoperator& o);
  Superoperator& operator-=(const Superoperator& o);
  Superoperator& operator*=(double s);

  friend Superoperator operator+(Superoperator a, const Superoperator& b) { return a += b; }
  friend Superoperator operator-(Superoperator a, const Superoperator& b) { return a -= b; }
  friend Superoperator operator*(double s, Superoperator a) { return a *= s; }
  /// Composition.
  friend Superoperator operator*(const Superoperator& a, const Superoperator& b);

 private:
  int dim_ = 0;
  Matrix mat_;
};

/// Density operator: unit trace, positive semidefinite within tol::pos.
class DensityState {
 public:
  explicit DensityState(const Operator& op);
  explicit DensityState(const Matrix& m) : DensityState(Operator(m)) {}

  static DensityState completely_mixed(int d);

  int dim() const { return op_.dim(); }
  const Operator& op() const { return op_; }
  const Matrix& matrix() const { return op_.matrix(); }
  double purity() const { return op_.hs_norm_sq(); }

 private:
  Operator op_;
};

/// Hilbert-Schmidt inner product tr(a^dag b) of general complex matrices.
Complex hs_inner(const Matrix& a, const Matrix& b);

/// HS inner product of Hermitian operators; real up to roundoff
/// (asserted against tol::herm).
Complex hs_inner(const Operator& a, const Operator& b);

OperatorKet vectorize(const Operator& a);
Operator devectorize(const OperatorKet& v);

/// |a>><<b| : maps X to a * hs_inner(b, X).
Superoperator dyad(const Operator& a, const Operator& b);

/// Moore-Penrose pseudoinverse; singular values below
/// rel_cutoff * sigma_max are treated as zero.
Superoperator pseudoinverse(const Superoperator& s, double rel_cutoff = tol::pinv_cutoff);

/// Inverse; throws std::runtime_error if the condition number exceeds
/// tol::cond_ceiling.
Superoperator inverse(const Superoperator& s);

/// Pbar s Pbar with Pbar = I - |1>><<1|/d.
Superoperator traceless_projection(const Superoperator& s);

/// Trace of the d^2 x d^2 matrix; real up to roundoff for maps that
/// preserve Hermiticity.
double superop_trace(const Superoperator& s);

/// sigma_max / sigma_min of the d^2 x d^2 matrix (inf if singular).
double condition_number(const Superoperator& s);

}  // namespace qict

#endif
