#ifndef QICT_LIE_HPP
#define QICT_LIE_HPP

#include <vector>

#include "qict/measurements.hpp"
#include "qict/opspace.hpp"

namespace qict {

/// Structure constants C_jkl of an operator basis {L_j}:
/// [L_j, L_k] = sum_l C_jkl L_l. Antisymmetric in (j,k) by construction
/// and pure imaginary for Hermitian bases.
struct StructureTensor {
  int n = 0;
  std::vector<Complex> entries;  // row-major, entries[(j*n + k)*n + l]

  Complex at(int j, int k, int l) const { return entries[(static_cast<size_t>(j) * n + k) * n + l]; }
  Complex& at(int j, int k, int l) { return entries[(static_cast<size_t>(j) * n + k) * n + l]; }
};

/// Expand every commutator in the basis by solving the Gram system
/// C_jkl = sum_m (G^{-1})_lm <<L_m|[L_j, L_k]>>. Throws on a rank-deficient
/// basis (Gram condition number above tol::cond_ceiling) or when an
/// expansion residual exceeds 1e-9.
StructureTensor structure_constants(const std::vector<Operator>& basis);

struct AntisymmetryReport {
  /// max over index transpositions of |C_sigma(jkl) - sign(sigma) C_jkl|.
  double max_violation = 0;
  /// max_j ||C_j - C_j^dag||_max over structure matrices (C_j)_kl = C_jkl.
  double hermiticity_defect = 0;
  bool antisymmetric = false;  // max_violation below tol::verdict
};

/// Complete-antisymmetry check; the Hermiticity-defect verdict must agree
/// with the violation verdict (they are the same criterion in disguise),
/// and disagreement throws.
AntisymmetryReport antisymmetry_violation(const StructureTensor& t);

struct Theorem4Audit {
  double antisymmetry_violation = 0;
  double gen_sic_residual = 0;
  bool antisymmetric = false;
  bool generalized_sic = false;
  bool consistent = false;  // the two verdicts agree
};

/// Theorem-4 equivalence on a minimal IC POVM: structure constants of the
/// outcomes are completely antisymmetric iff the POVM is a generalized SIC.
Theorem4Audit theorem4_audit(const Povm& p);

}  // namespace qict

#endif
