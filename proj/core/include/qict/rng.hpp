#ifndef QICT_RNG_HPP
#define QICT_RNG_HPP

#include <cstdint>
#include <random>

#include "qict/opspace.hpp"

namespace qict {

/// All randomness in the library flows through 64-bit-seeded mt19937_64
/// generators created locally per call; results are reproducible within
/// this implementation (not across languages).
std::mt19937_64 seeded_rng(std::uint64_t seed);

/// Independent stream for repetition `index` of a seeded experiment;
/// identical regardless of evaluation order.
std::mt19937_64 seeded_rng(std::uint64_t seed, std::uint64_t index);

/// Matrix with i.i.d. standard complex Gaussian entries.
Matrix complex_ginibre(int rows, int cols, std::mt19937_64& rng);

/// Haar-distributed unitary: QR of a Ginibre matrix with the phases of R's
/// diagonal folded into Q.
Matrix haar_unitary(int d, std::mt19937_64& rng);

/// Haar-distributed real orthogonal matrix (QR with sign-fixed diagonal).
Eigen::MatrixXd random_orthogonal(int n, std::mt19937_64& rng);

}  // namespace qict

#endif
