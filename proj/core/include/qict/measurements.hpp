#ifndef QICT_MEASUREMENTS_HPP
#define QICT_MEASUREMENTS_HPP

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "qict/opspace.hpp"

namespace qict {

/// Ordered list of measurement outcomes. Construction only checks
/// structural consistency (equal dims, at least one outcome); POVM
/// validity is reported by validate().
struct Povm {
  Povm(std::vector<Operator> outcomes_, std::string label_ = {});

  int dim() const { return outcomes.front().dim(); }
  int size() const { return static_cast<int>(outcomes.size()); }

  std::vector<Operator> outcomes;
  std::string label;
};

struct ValidationReport {
  double completeness_deviation = 0;  // max-abs entry of (sum - 1)
  double min_eigenvalue = 0;          // over all outcomes
  int worst_outcome = -1;             // index attaining min_eigenvalue
  bool passed = false;

  std::string describe() const;
};

/// Report-style check of the POVM invariants: positivity within tolerance
/// and completeness within tolerance (Hermiticity is enforced by the
/// Operator type itself).
ValidationReport validate(const Povm& p, double tolerance = tol::verdict);

/// Weyl-Heisenberg orbit SIC: d^2 projectors |psi_ab><psi_ab|/d with
/// |<psi_j|psi_k>|^2 = (d delta_jk + 1)/(d+1). Built-in fiducials for
/// d = 2 (Bloch tetrahedron) and d = 3 (Hesse configuration); other
/// dimensions require an explicit fiducial. A fiducial whose orbit is not
/// equiangular within 1e-6 is rejected.
Povm sic_rank_one(int d, const std::optional<CVector>& fiducial = std::nullopt);

/// Pi_j = x * base_j + (1-x)/d^2, x in (0, 1].
Povm generalized_sic_depolarized(const Povm& base, double x);

/// Random generalized SIC from a Haar-rotated regular simplex of traceless
/// Hermitian operators B_j, scaled so the smallest eigenvalue over all B_j
/// is exactly -1 (the maximal-purity scaling); Pi_j = (1 + B_j)/d^2.
Povm generalized_sic_simplex(int d, std::uint64_t seed);

/// Complete set of d+1 mutually unbiased bases, d prime; d(d+1) rank-one
/// outcomes, each divided by d+1.
Povm mub_complete(int d);

/// Qubit cube measurement: two antipodal Bloch tetrahedra, 8 rank-one
/// outcomes divided by 4.
Povm cube_qubit();

/// Random minimal IC POVM: Pi_j = S^{-1/2} G_j G_j^dag S^{-1/2} from seeded
/// complex Gaussians, retried until the outcome Gram matrix has condition
/// number below 1e6.
Povm random_minimal_ic(int d, std::uint64_t seed);

struct PurityReport {
  std::vector<double> per_outcome;   // purity_j = tr(Pi_j^2)/tr(Pi_j)^2
  double average = 0;                // sum_j tr(Pi_j) purity_j / d
  std::optional<double> weighted;    // sum_j p_j purity_j when a state is given
};

/// Per-outcome and average purities; rejects zero-trace outcomes.
PurityReport purity_report(const Povm& p, const DensityState* rho = nullptr);

/// Born probabilities p_j = tr(Pi_j rho).
RVector born_probabilities(const Povm& p, const DensityState& rho);

/// Orthonormal basis of traceless Hermitian d x d operators
/// (generalized Gell-Mann matrices), d^2 - 1 elements.
std::vector<Operator> traceless_hermitian_basis(int d);

}  // namespace qict

#endif
