#include "qict/tomo.hpp"

#include <algorithm>
#include <cmath>

#include "qict/rng.hpp"

namespace qict {

namespace {

// Gram matrix of the outcomes under the HS inner product (real symmetric).
Eigen::MatrixXd outcome_gram(const std::vector<Operator>& ops) {
  int n = static_cast<int>(ops.size());
  Eigen::MatrixXd g(n, n);
  for (int j = 0; j < n; ++j) {
    for (int k = j; k < n; ++k) {
      g(j, k) = g(k, j) = hs_inner(ops[j], ops[k]).real();
    }
  }
  return g;
}

double spread(const std::vector<double>& v) {
  auto [lo, hi] = std::minmax_element(v.begin(), v.end());
  return *hi - *lo;
}

}  // namespace

Superoperator frame_superoperator(const Povm& p) {
  int d = p.dim();
  Superoperator f = Superoperator::zero(d);
  for (const auto& pi : p.outcomes) {
    double tr = pi.trace();
    if (tr < tol::prob) {
      throw std::invalid_argument("frame_superoperator: zero-trace outcome");
    }
    f += (static_cast<double>(d) / tr) * dyad(pi, pi);
  }
  return f;
}

Superoperator frame_superoperator_at(const Povm& p, const DensityState& rho) {
  RVector probs = born_probabilities(p, rho);
  for (int j = 0; j < p.size(); ++j) {
    if (probs(j) <= tol::prob) {
      throw std::invalid_argument("frame_superoperator_at: outcome " + std::to_string(j) +
                                  " has probability " + std::to_string(probs(j)) +
                                  " at this state");
    }
  }
  Superoperator f = Superoperator::zero(p.dim());
  for (int j = 0; j < p.size(); ++j) {
    f += (1.0 / probs(j)) * dyad(p.outcomes[j], p.outcomes[j]);
  }
  return f;
}

ReconstructionSet canonical_reconstruction(const Povm& p) {
  int d = p.dim();
  Superoperator f_inv;
  try {
    f_inv = inverse(frame_superoperator(p));
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string("canonical_reconstruction: POVM is not IC: ") +
                             e.what());
  }
  ReconstructionSet theta;
  theta.operators.reserve(p.size());
  for (const auto& pi : p.outcomes) {
    theta.operators.push_back((static_cast<double>(d) / pi.trace()) * f_inv.apply(pi));
  }
  return theta;
}

double scaled_mse(const Povm& p, const ReconstructionSet& theta, const DensityState& rho) {
  if (theta.size() != p.size()) {
    throw std::invalid_argument("scaled_mse: reconstruction set not aligned with POVM");
  }
  RVector probs = born_probabilities(p, rho);
  double acc = 0.0;
  for (int j = 0; j < p.size(); ++j) {
    acc += probs(j) * theta.operators[j].hs_norm_sq();
  }
  return acc - rho.purity();
}

Superoperator scaled_mse_matrix(const Povm& p, const ReconstructionSet& theta,
                                const DensityState& rho) {
  if (theta.size() != p.size()) {
    throw std::invalid_argument("scaled_mse_matrix: reconstruction set not aligned with POVM");
  }
  RVector probs = born_probabilities(p, rho);
  Superoperator c = Superoperator::zero(p.dim());
  for (int j = 0; j < p.size(); ++j) {
    c += probs(j) * dyad(theta.operators[j], theta.operators[j]);
  }
  c -= dyad(rho.op(), rho.op());
  return c;
}

double average_scaled_mse(const Povm& p, const ReconstructionSet& theta, double purity_of_rho) {
  int d = p.dim();
  if (purity_of_rho < 1.0 / d - 1e-12 || purity_of_rho > 1.0 + 1e-12) {
    throw std::invalid_argument("average_scaled_mse: purity must lie in [1/d, 1]");
  }
  if (theta.size() != p.size()) {
    throw std::invalid_argument("average_scaled_mse: reconstruction set not aligned with POVM");
  }
  double acc = 0.0;
  for (int j = 0; j < p.size(); ++j) {
    acc += p.outcomes[j].trace() * theta.operators[j].hs_norm_sq();
  }
  return acc / d - purity_of_rho;
}

double optimal_mse(const Povm& p, const DensityState& rho) {
  Superoperator f_rho = frame_superoperator_at(p, rho);
  double via_pinv = superop_trace(pseudoinverse(traceless_projection(f_rho)));
  double via_inv = superop_trace(inverse(f_rho)) - rho.purity();
  if (std::abs(via_pinv - via_inv) > 1e-6 * std::max(1.0, std::abs(via_pinv))) {
    throw std::logic_error("optimal_mse: Tr(Fbar^+) and Tr(F^-1) - tr(rho^2) disagree: " +
                           std::to_string(via_pinv) + " vs " + std::to_string(via_inv));
  }
  return via_pinv;
}

Superoperator optimal_mse_matrix(const Povm& p, const DensityState& rho) {
  return pseudoinverse(traceless_projection(frame_superoperator_at(p, rho)));
}

double sampled_optimal_mse_spread(const Povm& p, int samples, std::uint64_t seed) {
  int d = p.dim();
  auto rng = seeded_rng(seed);
  // One fixed pure state, conjugated by Haar unitaries.
  CVector psi = complex_ginibre(d, 1, rng).col(0);
  psi /= psi.norm();
  Matrix base = psi * psi.adjoint();
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (int s = 0; s < samples; ++s) {
    Matrix u = haar_unitary(d, rng);
    DensityState rho{Matrix(u * base * u.adjoint())};
    double v = optimal_mse(p, rho);
    lo = std::min(lo, v);
    hi = std::max(hi, v);
  }
  return hi - lo;
}

TomoDiagnostics classify(const Povm& p, std::uint64_t sample_seed) {
  TomoDiagnostics diag;
  int d = p.dim();
  int n = p.size();
  diag.dim = d;
  diag.n_outcomes = n;
  diag.is_minimal = (n == d * d);

  ValidationReport val = validate(p);
  diag.residuals["completeness"] = val.completeness_deviation;
  diag.residuals["min_eigenvalue"] = val.min_eigenvalue;

  // IC: the outcome Gram matrix has full numerical rank d^2.
  Eigen::MatrixXd gram = outcome_gram(p.outcomes);
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
  double sigma_max = svd.singularValues()(0);
  double sigma_d2 = n >= d * d ? svd.singularValues()(d * d - 1) : 0.0;
  double rank_margin = sigma_max > 0 ? sigma_d2 / sigma_max : 0.0;
  diag.residuals["gram_rank_margin"] = rank_margin;
  diag.is_ic = rank_margin > 1.0 / tol::cond_ceiling;

  PurityReport purity = purity_report(p);
  diag.average_purity = purity.average;

  // Tight IC: F = alpha I + beta |1>><<1| with alpha, beta pinned by the
  // average purity rather than fitted to the spectrum.
  double alpha = (d * d * purity.average - d) / (d * d - 1.0);
  double beta = (d * d - d * purity.average) / (d * d - 1.0);
  diag.tight_alpha = alpha;
  diag.tight_beta = beta;
  Superoperator f = frame_superoperator(p);
  Superoperator model = alpha * Superoperator::identity(d) +
                        beta * dyad(Operator::identity(d), Operator::identity(d));
  double tight_resid = (f.matrix() - model.matrix()).cwiseAbs().maxCoeff() / d;
  diag.residuals["tight_ic"] = tight_resid;
  diag.is_tight_ic = diag.is_ic && tight_resid < tol::verdict;

  // Generalized SIC: Gram of P_j = d Pi_j fits alpha delta_jk + zeta.
  if (diag.is_minimal) {
    Eigen::MatrixXd pgram = (d * d) * gram;  // tr(P_j P_k)
    double zeta = (pgram.sum() - pgram.trace()) / (n * (n - 1.0));
    double galpha = pgram.trace() / n - zeta;
    diag.gen_alpha = galpha;
    diag.gen_zeta = zeta;
    double worst = 0.0;
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) {
        double expected = (j == k) ? galpha + zeta : zeta;
        worst = std::max(worst, std::abs(pgram(j, k) - expected));
      }
    }
    double gen_resid = worst / d;
    diag.residuals["generalized_sic"] = gen_resid;
    diag.is_generalized_sic = diag.is_ic && gen_resid < tol::verdict && galpha > 0;
  }

  // Quasi-balance. Minimal: reconstruction operators are unique, so the
  // criterion is a constant HS norm of the Theta_j. Non-minimal: sampled
  // spread of the optimal-reconstruction MSE over a unitary orbit,
  // reported as an empirical verdict.
  if (diag.is_ic) {
    if (diag.is_minimal) {
      ReconstructionSet theta = canonical_reconstruction(p);
      std::vector<double> norms;
      norms.reserve(n);
      for (const auto& t : theta.operators) norms.push_back(t.hs_norm_sq());
      double qb_resid = spread(norms) / d;
      diag.residuals["quasi_balance"] = qb_resid;
      diag.is_quasi_balanced = qb_resid < tol::verdict;
      diag.quasi_balance_sampled = false;
    } else {
      double sampled = sampled_optimal_mse_spread(p, 20, sample_seed);
      diag.residuals["quasi_balance_sampled_spread"] = sampled;
      diag.is_quasi_balanced = sampled < 1e-7;
      diag.quasi_balance_sampled = true;
    }
    diag.is_balanced = diag.is_tight_ic && diag.is_quasi_balanced;
  }

  // Theorem consistency: for minimal IC measurements, balanced and
  // generalized SIC are the same thing.
  if (diag.is_minimal && diag.is_ic) {
    diag.theorem2_consistent = (diag.is_balanced == diag.is_generalized_sic);
  }

  // Lemma consistency: for a tight IC measurement the four conditions
  // (equal traces, equal tr Pi^2, equal purity, equiangular) are
  // equivalent; each spread is recorded.
  std::vector<double> traces, norms_sq;
  traces.reserve(n);
  norms_sq.reserve(n);
  for (const auto& pi : p.outcomes) {
    traces.push_back(pi.trace());
    norms_sq.push_back(pi.hs_norm_sq());
  }
  double off_lo = std::numeric_limits<double>::infinity(), off_hi = -off_lo;
  for (int j = 0; j < n; ++j) {
    for (int k = 0; k < n; ++k) {
      if (j == k) continue;
      off_lo = std::min(off_lo, gram(j, k));
      off_hi = std::max(off_hi, gram(j, k));
    }
  }
  diag.residuals["trace_spread"] = spread(traces);
  diag.residuals["outcome_norm_spread"] = spread(norms_sq);
  diag.residuals["purity_spread"] = spread(purity.per_outcome);
  diag.residuals["equiangularity"] = off_hi - off_lo;
  if (diag.is_tight_ic) {
    bool c1 = diag.residuals["trace_spread"] < tol::verdict;
    bool c2 = diag.residuals["outcome_norm_spread"] < tol::verdict;
    bool c3 = diag.residuals["purity_spread"] < tol::verdict;
    bool c4 = diag.residuals["equiangularity"] < tol::verdict;
    diag.lemma4_consistent = (c1 == c2) && (c2 == c3) && (c3 == c4);
  }

  return diag;
}

Theorem1Audit theorem1_audit(const Povm& p, double purity_of_rho) {
  int d = p.dim();
  if (purity_of_rho < 1.0 / d - 1e-12 || purity_of_rho > 1.0 + 1e-12) {
    throw std::invalid_argument("theorem1_audit: purity must lie in [1/d, 1]");
  }
  Theorem1Audit audit;
  Superoperator f = frame_superoperator(p);
  Superoperator f_inv;
  try {
    f_inv = inverse(f);
  } catch (const std::runtime_error& e) {
    throw std::runtime_error(std::string("theorem1_audit: POVM is not IC: ") + e.what());
  }
  PurityReport purity = purity_report(p);
  audit.outcome_purity = purity.average;
  audit.average_mse = superop_trace(f_inv) - purity_of_rho;
  audit.bound = (d * d - 1.0) * (d * d - 1.0) / (d * d * purity.average - d) -
                (purity_of_rho - 1.0 / d);
  audit.gap = audit.average_mse - audit.bound;
  if (audit.gap < -1e-10) {
    throw std::logic_error("theorem1_audit: bound violated by " + std::to_string(-audit.gap));
  }
  audit.tight_ic = classify(p).is_tight_ic;
  audit.saturated = audit.gap < 1e-9;
  audit.consistent = (audit.saturated == audit.tight_ic);
  return audit;
}

}  // namespace qict
