#ifndef QICT_TEST_UTIL_HPP
#define QICT_TEST_UTIL_HPP

#include <random>
#include <vector>

#include "qict/measurements.hpp"
#include "qict/opspace.hpp"

namespace qict::test {

inline std::mt19937_64 rng(std::uint64_t seed) { return std::mt19937_64(seed); }

inline Matrix random_hermitian_matrix(int d, std::mt19937_64& gen) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Matrix m(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) m(r, c) = Complex(gauss(gen), gauss(gen));
  }
  return (m + m.adjoint()) / 2.0;
}

inline Operator random_hermitian(int d, std::mt19937_64& gen) {
  return Operator(random_hermitian_matrix(d, gen));
}

inline DensityState random_density(int d, std::mt19937_64& gen, bool pure) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  if (pure) {
    CVector v(d);
    for (int i = 0; i < d; ++i) v(i) = Complex(gauss(gen), gauss(gen));
    v /= v.norm();
    return DensityState(Matrix(v * v.adjoint()));
  }
  Matrix g(d, d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) g(r, c) = Complex(gauss(gen), gauss(gen));
  }
  Matrix w = g * g.adjoint();
  return DensityState(Matrix(w / w.trace().real()));
}

/// Entrywise-summation oracle for the HS inner product:
/// sum_{mn} conj(A_mn) B_mn, no trace or product involved.
inline Complex hs_inner_entrywise(const Matrix& a, const Matrix& b) {
  Complex acc(0, 0);
  for (Eigen::Index c = 0; c < a.cols(); ++c) {
    for (Eigen::Index r = 0; r < a.rows(); ++r) acc += std::conj(a(r, c)) * b(r, c);
  }
  return acc;
}

/// Independent d^2 x d^2 assembly of |a>><<b| from the vectorization
/// convention spelled out entry by entry: column stacking, coords[c*d+r].
inline Matrix dyad_matrix_oracle(const Matrix& a, const Matrix& b) {
  int d = static_cast<int>(a.rows());
  CVector va(d * d), vb(d * d);
  for (int c = 0; c < d; ++c) {
    for (int r = 0; r < d; ++r) {
      va(c * d + r) = a(r, c);
      vb(c * d + r) = b(r, c);
    }
  }
  return va * vb.adjoint();
}

/// POVM with one outcome replaced by a perturbed positive operator, the
/// whole list renormalized to restore completeness. eps ~ 1e-2 is enough
/// to leave the generalized-SIC set decisively.
Povm perturb_povm(const Povm& base, double eps, std::uint64_t seed);

/// Minimal IC measurement zoo used by the theorem-equivalence suites:
/// simplex generalized SICs (d = 2,3,4), depolarized rank-one SICs
/// (d = 2,3), perturbed generalized SICs, and random minimal ICs.
std::vector<Povm> minimal_ic_zoo();

}  // namespace qict::test

#endif
