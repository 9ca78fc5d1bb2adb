#ifndef QICT_SIM_HPP
#define QICT_SIM_HPP

#include <cstdint>
#include <vector>

#include "qict/measurements.hpp"
#include "qict/tomo.hpp"

namespace qict {

enum class Reconstruction { canonical, optimal };

struct Experiment {
  Experiment(Povm povm_, DensityState rho_, std::int64_t shots_, int repetitions_,
             std::uint64_t seed_);

  Povm povm;
  DensityState rho;
  std::int64_t shots;  // N
  int repetitions;     // R
  std::uint64_t seed;
};

/// R independent multinomial frequency vectors f (counts/N) of size N drawn
/// from the Born probabilities. Repetition r uses an RNG stream derived
/// from (seed, r), so results do not depend on evaluation order.
std::vector<RVector> sample_frequencies(const Experiment& e);

/// rho_hat = sum_j f_j Theta_j. Hermitian by construction and unit trace
/// (asserted within 1e-10); positivity is not guaranteed and not checked.
Operator linear_estimate(const RVector& f, const ReconstructionSet& theta);

/// Empirical vs analytic scaled MSE. The empirical value is
/// N * mean_r ||rho_hat_r - rho||_HS^2 and carries an O(1/N)
/// finite-sample term on top of the analytic (asymptotic) value; it is
/// reported as-is, never corrected.
struct SimResult {
  double empirical = 0;
  double std_error = 0;  // standard error of the mean across repetitions
  double analytic = 0;
  std::vector<double> per_repetition;

  bool within(double n_sigma) const {
    return std::abs(empirical - analytic) <= n_sigma * std_error;
  }
};

/// Run the experiment with canonical reconstruction (default) or the
/// optimal reconstruction evaluated at the true state.
SimResult run(const Experiment& e, Reconstruction mode = Reconstruction::canonical);

/// Projector onto a normalized complex Gaussian vector.
DensityState haar_state_pure(int d, std::uint64_t seed);

/// U diag(spectrum) U^dag with U Haar-distributed.
DensityState haar_state_with_spectrum(int d, const std::vector<double>& spectrum,
                                      std::uint64_t seed);

struct OrbitAverage {
  double mean = 0;
  double std_error = 0;
  double spread = 0;       // max - min over the sampled states
  double closed_form = 0;  // canonical mode: (1/d) sum_j tr(Pi_j) tr(Theta_j^2) - purity
  int samples = 0;
};

/// Monte Carlo average of the scaled MSE over Haar conjugations of a state
/// with the given spectrum.
OrbitAverage orbit_average_mse(const Povm& p, const std::vector<double>& spectrum, int samples,
                               std::uint64_t seed,
                               Reconstruction mode = Reconstruction::canonical);

/// Pi_j -> y Pi_j + (1-y) tr(Pi_j)/d, with y solved by bisection so the
/// average outcome purity hits `target`; used to build purity-matched
/// comparison measurements. target must lie in (1/d, current purity].
Povm depolarize_to_purity(const Povm& p, double target);

}  // namespace qict

#endif
