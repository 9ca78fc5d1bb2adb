#include "qict/lie.hpp"

#include <cmath>

#include "qict/tomo.hpp"

namespace qict {

StructureTensor structure_constants(const std::vector<Operator>& basis) {
  const int n = static_cast<int>(basis.size());
  if (n == 0) throw std::invalid_argument("structure_constants: empty basis");
  const int d = basis.front().dim();
  if (n != d * d) {
    throw std::invalid_argument("structure_constants: basis must have d^2 operators");
  }

  Eigen::MatrixXd gram(n, n);
  for (int a = 0; a < n; ++a) {
    for (int b = a; b < n; ++b) {
      gram(a, b) = gram(b, a) = hs_inner(basis[a], basis[b]).real();
    }
  }

  StructureTensor t;
  t.n = n;
  t.entries.assign(static_cast<size_t>(n) * n * n, Complex(0, 0));

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  double smin = svd.singularValues()(n - 1);
  if (!(smin > 0) || svd.singularValues()(0) / smin >= tol::cond_ceiling) {
    // A commuting family has zero structure constants no matter its span;
    // anything else genuinely needs the full operator space.
    for (int j = 0; j < n; ++j) {
      for (int k = j + 1; k < n; ++k) {
        Matrix comm =
            basis[j].matrix() * basis[k].matrix() - basis[k].matrix() * basis[j].matrix();
        if (comm.cwiseAbs().maxCoeff() > 1e-12) {
          throw std::invalid_argument("structure_constants: basis is rank deficient");
        }
      }
    }
    return t;
  }
  Eigen::LDLT<Eigen::MatrixXd> solver(gram);

  for (int j = 0; j < n; ++j) {
    for (int k = j + 1; k < n; ++k) {
      Matrix comm = basis[j].matrix() * basis[k].matrix() - basis[k].matrix() * basis[j].matrix();
      // <<L_m|comm>> is pure imaginary for Hermitian L_m; solve the real
      // Gram system on the imaginary parts.
      RVector rhs(n);
      for (int m = 0; m < n; ++m) rhs(m) = hs_inner(basis[m].matrix(), comm).imag();
      RVector coeffs = solver.solve(rhs);

      Matrix recon = Matrix::Zero(d, d);
      for (int l = 0; l < n; ++l) {
        Complex c(0, coeffs(l));
        t.at(j, k, l) = c;
        t.at(k, j, l) = -c;
        recon += c * basis[l].matrix();
      }
      double resid = std::sqrt(std::abs(hs_inner(Matrix(comm - recon), Matrix(comm - recon))));
      if (resid > 1e-9) {
        throw std::runtime_error("structure_constants: expansion residual " +
                                 std::to_string(resid) + " for pair (" + std::to_string(j) +
                                 "," + std::to_string(k) + ")");
      }
    }
  }
  return t;
}

AntisymmetryReport antisymmetry_violation(const StructureTensor& t) {
  AntisymmetryReport rep;
  const int n = t.n;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      for (int l = 0; l < n; ++l) {
        Complex c = t.at(j, k, l);
        double v = std::abs(t.at(k, j, l) + c);          // swap (j,k)
        v = std::max(v, std::abs(t.at(j, l, k) + c));    // swap (k,l)
        v = std::max(v, std::abs(t.at(l, k, j) + c));    // swap (j,l)
        rep.max_violation = std::max(rep.max_violation, v);
        // Structure-matrix Hermiticity defect: (C_j)_kl vs conj((C_j)_lk).
        double h = std::abs(c - std::conj(t.at(j, l, k)));
        rep.hermiticity_defect = std::max(rep.hermiticity_defect, h);
      }
    }
  }
  rep.antisymmetric = rep.max_violation < tol::verdict;
  bool hermitian = rep.hermiticity_defect < tol::verdict;
  if (rep.antisymmetric != hermitian) {
    throw std::logic_error("antisymmetry_violation: violation and Hermiticity verdicts disagree");
  }
  return rep;
}

Theorem4Audit theorem4_audit(const Povm& p) {
  if (p.size() != p.dim() * p.dim()) {
    throw std::invalid_argument("theorem4_audit: POVM must be minimal (d^2 outcomes)");
  }
  TomoDiagnostics diag = classify(p);
  if (!diag.is_ic) throw std::invalid_argument("theorem4_audit: POVM is not IC");

  Theorem4Audit audit;
  AntisymmetryReport rep = antisymmetry_violation(structure_constants(p.outcomes));
  audit.antisymmetry_violation = rep.max_violation;
  audit.antisymmetric = rep.antisymmetric;
  audit.gen_sic_residual = diag.residuals.at("generalized_sic");
  audit.generalized_sic = diag.is_generalized_sic;
  audit.consistent = (audit.antisymmetric == audit.generalized_sic);
  return audit;
}

}  // namespace qict
