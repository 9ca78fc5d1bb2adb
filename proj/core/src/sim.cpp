#include "qict/sim.hpp"

#include <algorithm>
#include <cmath>

#include "qict/rng.hpp"

namespace qict {

namespace {

RVector one_frequency_vector(const RVector& probs, std::int64_t shots, std::mt19937_64& rng) {
  const int n = static_cast<int>(probs.size());
  RVector cumulative(n);
  double acc = 0.0;
  for (int j = 0; j < n; ++j) {
    acc += std::max(probs(j), 0.0);
    cumulative(j) = acc;
  }
  std::uniform_real_distribution<double> unif(0.0, acc);
  RVector counts = RVector::Zero(n);
  for (std::int64_t s = 0; s < shots; ++s) {
    double u = unif(rng);
    const double* begin = cumulative.data();
    int j = static_cast<int>(std::lower_bound(begin, begin + n, u) - begin);
    if (j >= n) j = n - 1;
    counts(j) += 1.0;
  }
  return counts / static_cast<double>(shots);
}

ReconstructionSet reconstruction_for(const Povm& p, const DensityState& rho,
                                     Reconstruction mode) {
  if (mode == Reconstruction::canonical) return canonical_reconstruction(p);
  // Optimal reconstruction at the true state:
  // Theta_j = p_j^{-1} F(rho)^{-1} Pi_j.
  Superoperator f_inv = inverse(frame_superoperator_at(p, rho));
  RVector probs = born_probabilities(p, rho);
  ReconstructionSet theta;
  theta.operators.reserve(p.size());
  for (int j = 0; j < p.size(); ++j) {
    theta.operators.push_back((1.0 / probs(j)) * f_inv.apply(p.outcomes[j]));
  }
  return theta;
}

}  // namespace

Experiment::Experiment(Povm povm_, DensityState rho_, std::int64_t shots_, int repetitions_,
                       std::uint64_t seed_)
    : povm(std::move(povm_)), rho(std::move(rho_)), shots(shots_), repetitions(repetitions_),
      seed(seed_) {
  if (shots < 1) throw std::invalid_argument("Experiment: shots must be at least 1");
  if (repetitions < 1) throw std::invalid_argument("Experiment: repetitions must be at least 1");
  if (povm.dim() != rho.dim()) throw std::invalid_argument("Experiment: dimension mismatch");
}

std::vector<RVector> sample_frequencies(const Experiment& e) {
  RVector probs = born_probabilities(e.povm, e.rho);
  std::vector<RVector> out;
  out.reserve(e.repetitions);
  for (int r = 0; r < e.repetitions; ++r) {
    auto rng = seeded_rng(e.seed, static_cast<std::uint64_t>(r));
    out.push_back(one_frequency_vector(probs, e.shots, rng));
  }
  return out;
}

Operator linear_estimate(const RVector& f, const ReconstructionSet& theta) {
  if (f.size() != theta.size()) {
    throw std::invalid_argument("linear_estimate: frequency vector not aligned with thetas");
  }
  int d = theta.operators.front().dim();
  Matrix est = Matrix::Zero(d, d);
  for (int j = 0; j < theta.size(); ++j) est += f(j) * theta.operators[j].matrix();
  Operator rho_hat{est};
  if (std::abs(rho_hat.trace() - 1.0) > 1e-10) {
    throw std::logic_error("linear_estimate: estimator trace is " +
                           std::to_string(rho_hat.trace()) + ", expected 1");
  }
  return rho_hat;
}

SimResult run(const Experiment& e, Reconstruction mode) {
  ReconstructionSet theta = reconstruction_for(e.povm, e.rho, mode);
  SimResult result;
  result.analytic = mode == Reconstruction::canonical
                        ? scaled_mse(e.povm, theta, e.rho)
                        : optimal_mse(e.povm, e.rho);
  result.per_repetition.reserve(e.repetitions);
  RVector probs = born_probabilities(e.povm, e.rho);
  const double n = static_cast<double>(e.shots);
  for (int r = 0; r < e.repetitions; ++r) {
    auto rng = seeded_rng(e.seed, static_cast<std::uint64_t>(r));
    RVector f = one_frequency_vector(probs, e.shots, rng);
    Operator rho_hat = linear_estimate(f, theta);
    Operator err = rho_hat - e.rho.op();
    result.per_repetition.push_back(n * err.hs_norm_sq());
  }
  double sum = 0.0;
  for (double v : result.per_repetition) sum += v;
  result.empirical = sum / e.repetitions;
  if (e.repetitions >= 2) {
    double ss = 0.0;
    for (double v : result.per_repetition) ss += (v - result.empirical) * (v - result.empirical);
    result.std_error = std::sqrt(ss / (e.repetitions - 1.0) / e.repetitions);
  }
  return result;
}

DensityState haar_state_pure(int d, std::uint64_t seed) {
  auto rng = seeded_rng(seed);
  CVector psi = complex_ginibre(d, 1, rng).col(0);
  psi /= psi.norm();
  return DensityState(Matrix(psi * psi.adjoint()));
}

DensityState haar_state_with_spectrum(int d, const std::vector<double>& spectrum,
                                      std::uint64_t seed) {
  if (static_cast<int>(spectrum.size()) != d) {
    throw std::invalid_argument("haar_state_with_spectrum: spectrum must have d entries");
  }
  double sum = 0.0;
  for (double v : spectrum) {
    if (v < -tol::pos) throw std::invalid_argument("haar_state_with_spectrum: negative weight");
    sum += v;
  }
  if (std::abs(sum - 1.0) > 1e-10) {
    throw std::invalid_argument("haar_state_with_spectrum: spectrum must sum to 1");
  }
  auto rng = seeded_rng(seed);
  Matrix u = haar_unitary(d, rng);
  Matrix lambda = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) lambda(i, i) = spectrum[i];
  return DensityState(Matrix(u * lambda * u.adjoint()));
}

OrbitAverage orbit_average_mse(const Povm& p, const std::vector<double>& spectrum, int samples,
                               std::uint64_t seed, Reconstruction mode) {
  if (samples < 1) throw std::invalid_argument("orbit_average_mse: samples must be at least 1");
  int d = p.dim();
  double purity = 0.0;
  for (double v : spectrum) purity += v * v;

  ReconstructionSet theta;
  if (mode == Reconstruction::canonical) theta = canonical_reconstruction(p);

  OrbitAverage out;
  out.samples = samples;
  if (mode == Reconstruction::canonical) {
    out.closed_form = average_scaled_mse(p, theta, purity);
  }

  auto rng = seeded_rng(seed);
  Matrix lambda = Matrix::Zero(d, d);
  for (int i = 0; i < d; ++i) lambda(i, i) = spectrum[i];
  std::vector<double> values;
  values.reserve(samples);
  for (int s = 0; s < samples; ++s) {
    Matrix u = haar_unitary(d, rng);
    DensityState rho{Matrix(u * lambda * u.adjoint())};
    values.push_back(mode == Reconstruction::canonical ? scaled_mse(p, theta, rho)
                                                       : optimal_mse(p, rho));
  }
  double sum = 0.0;
  for (double v : values) sum += v;
  out.mean = sum / samples;
  if (samples >= 2) {
    double ss = 0.0;
    for (double v : values) ss += (v - out.mean) * (v - out.mean);
    out.std_error = std::sqrt(ss / (samples - 1.0) / samples);
  }
  auto [lo, hi] = std::minmax_element(values.begin(), values.end());
  out.spread = *hi - *lo;
  return out;
}

Povm depolarize_to_purity(const Povm& p, double target) {
  int d = p.dim();
  auto purity_at = [&](double y) {
    std::vector<Operator> outcomes;
    outcomes.reserve(p.size());
    for (const auto& pi : p.outcomes) {
      outcomes.push_back(y * pi + (pi.trace() * (1.0 - y) / d) * Operator::identity(d));
    }
    return Povm(std::move(outcomes), p.label + "-depol");
  };
  double current = purity_report(p).average;
  if (!(target > 1.0 / d && target <= current + 1e-12)) {
    throw std::invalid_argument("depolarize_to_purity: target must lie in (1/d, current purity]");
  }
  double lo = 0.0, hi = 1.0;
  for (int iter = 0; iter < 200; ++iter) {
    double mid = (lo + hi) / 2;
    if (purity_report(purity_at(mid)).average < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return purity_at(hi);
}

}  // namespace qict
