#include "doctest.h"

#include "qict/measurements.hpp"
#include "qict/opspace.hpp"
#include "qict/tomo.hpp"
#include "test_util.hpp"

using namespace qict;

TEST_CASE("hs_inner of identities equals the dimension") {
  CHECK(hs_inner(Operator::identity(3), Operator::identity(3)).real() == doctest::Approx(3.0));
}

TEST_CASE("hs_inner matches the entrywise-summation oracle on random Hermitian pairs") {
  auto gen = test::rng(42);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 4;
    Operator a = test::random_hermitian(d, gen);
    Operator b = test::random_hermitian(d, gen);
    Complex got = hs_inner(a, b);
    Complex expected = test::hs_inner_entrywise(a.matrix(), b.matrix());
    CHECK(std::abs(got - expected) < 1e-12);
  }
}

TEST_CASE("hs_inner is conjugate-symmetric and real on Hermitian inputs") {
  auto gen = test::rng(7);
  for (int trial = 0; trial < 20; ++trial) {
    Operator a = test::random_hermitian(3, gen);
    Operator b = test::random_hermitian(3, gen);
    CHECK(std::abs(hs_inner(a, b) - std::conj(hs_inner(b, a))) < 1e-12);
    CHECK(std::abs(hs_inner(a, b).imag()) < 1e-12);
  }
}

TEST_CASE("hs_inner of distinct d=2 SIC outcomes is 1/12") {
  Povm sic = sic_rank_one(2);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      if (j == k) continue;
      CHECK(hs_inner(sic.outcomes[j], sic.outcomes[k]).real() ==
            doctest::Approx(1.0 / 12).epsilon(1e-10));
    }
  }
}

TEST_CASE("hs_inner rejects mismatched dimensions") {
  CHECK_THROWS_AS(hs_inner(Operator::identity(2), Operator::identity(3)),
                  std::invalid_argument);
}

TEST_CASE("vectorize maps zero to zero and round-trips random operators") {
  CHECK(vectorize(Operator::zero(3)).coords().norm() == 0.0);
  auto gen = test::rng(9);
  for (int trial = 0; trial < 10; ++trial) {
    Operator a = test::random_hermitian(4, gen);
    Operator back = devectorize(vectorize(a));
    CHECK((back.matrix() - a.matrix()).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("vectorize is an isometry for the HS inner product") {
  auto gen = test::rng(10);
  for (int trial = 0; trial < 20; ++trial) {
    int d = 2 + trial % 3;
    Operator a = test::random_hermitian(d, gen);
    Operator b = test::random_hermitian(d, gen);
    Complex vec_side = vectorize(a).coords().dot(vectorize(b).coords());
    Complex op_side = test::hs_inner_entrywise(a.matrix(), b.matrix());
    CHECK(std::abs(vec_side - op_side) < 1e-12);
    CHECK(std::abs(vectorize(a).coords().norm() -
                   std::sqrt(test::hs_inner_entrywise(a.matrix(), a.matrix()).real())) < 1e-12);
  }
}

TEST_CASE("dyad(1,1) applied to a unit-trace state gives the identity") {
  auto gen = test::rng(11);
  DensityState rho = test::random_density(3, gen, false);
  Operator out = dyad(Operator::identity(3), Operator::identity(3)).apply(rho.op());
  CHECK((out.matrix() - Matrix::Identity(3, 3)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("dyad(a,b) applied to b scales a by tr(b^dag b)") {
  auto gen = test::rng(12);
  Operator a = test::random_hermitian(3, gen);
  Operator b = test::random_hermitian(3, gen);
  Operator out = dyad(a, b).apply(b);
  Matrix expected = a.matrix() * test::hs_inner_entrywise(b.matrix(), b.matrix()).real();
  CHECK((out.matrix() - expected).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("dyad matches the independently assembled d^2 x d^2 matrix") {
  auto gen = test::rng(13);
  Operator a = test::random_hermitian(2, gen);
  Operator b = test::random_hermitian(2, gen);
  Matrix oracle = test::dyad_matrix_oracle(a.matrix(), b.matrix());
  CHECK((dyad(a, b).matrix() - oracle).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("canonical reconstruction dyads sum to the identity superoperator") {
  Povm sic = sic_rank_one(2);
  ReconstructionSet theta = canonical_reconstruction(sic);
  Superoperator sum = Superoperator::zero(2);
  for (int j = 0; j < sic.size(); ++j) sum += dyad(theta.operators[j], sic.outcomes[j]);
  CHECK((sum.matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pseudoinverse of the identity is the identity") {
  Superoperator inv = pseudoinverse(Superoperator::identity(3));
  CHECK((inv.matrix() - Matrix::Identity(9, 9)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("normalized rank-one projector dyad(1,1)/d is its own pseudoinverse") {
  Superoperator proj = 0.5 * dyad(Operator::identity(2), Operator::identity(2));
  Superoperator pinv = pseudoinverse(proj);
  Matrix s = proj.matrix(), sp = pinv.matrix();
  CHECK((s * sp * s - s).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((sp * s * sp - sp).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((sp - s).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("pseudoinverse of the projected d=2 SIC frame has traceless eigenvalue 3/2") {
  Superoperator fbar = traceless_projection(frame_superoperator(sic_rank_one(2)));
  Superoperator pinv = pseudoinverse(fbar);
  // On the traceless subspace the SIC frame acts as d/(d+1) = 2/3.
  auto gen = test::rng(14);
  Operator a = test::random_hermitian(2, gen);
  Operator traceless = a - (a.trace() / 2.0) * Operator::identity(2);
  Operator image = pinv.apply(traceless);
  CHECK((image.matrix() - 1.5 * traceless.matrix()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("pseudoinverse of the zero superoperator is zero") {
  CHECK(pseudoinverse(Superoperator::zero(2)).matrix().cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("pseudoinverse satisfies the Moore-Penrose identities on deficient-rank inputs") {
  auto gen = test::rng(15);
  for (int trial = 0; trial < 10; ++trial) {
    int d = 2 + trial % 2;
    int n = d * d;
    // Rank-deficient PSD superoperator from a few Hermitian dyads.
    Superoperator s = Superoperator::zero(d);
    for (int k = 0; k < n - 2; ++k) {
      Operator a = test::random_hermitian(d, gen);
      s += dyad(a, a);
    }
    Matrix m = s.matrix();
    Matrix mp = pseudoinverse(s).matrix();
    CHECK((m * mp * m - m).cwiseAbs().maxCoeff() < 1e-9);
    CHECK((mp * m * mp - mp).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(((m * mp).adjoint() - m * mp).cwiseAbs().maxCoeff() < 1e-9);
    CHECK(((mp * m).adjoint() - mp * m).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("traceless projection annihilates the identity and fixes traceless operators") {
  Superoperator p = traceless_projection(Superoperator::identity(3));
  CHECK(p.apply(Operator::identity(3)).matrix().cwiseAbs().maxCoeff() < 1e-12);
  auto gen = test::rng(16);
  Operator a = test::random_hermitian(3, gen);
  Operator traceless = a - (a.trace() / 3.0) * Operator::identity(3);
  CHECK((p.apply(traceless).matrix() - traceless.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("traceless projection of the d=2 SIC frame is (2/3)(I - dyad(1,1)/2)") {
  Superoperator fbar = traceless_projection(frame_superoperator(sic_rank_one(2)));
  Superoperator expected =
      (2.0 / 3.0) * (Superoperator::identity(2) -
                     0.5 * dyad(Operator::identity(2), Operator::identity(2)));
  CHECK((fbar.matrix() - expected.matrix()).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("traceless projection is an idempotent sandwich with |1>> in its kernel") {
  auto gen = test::rng(17);
  Superoperator s = Superoperator::zero(3);
  for (int k = 0; k < 4; ++k) {
    Operator a = test::random_hermitian(3, gen);
    s += dyad(a, a);
  }
  Superoperator once = traceless_projection(s);
  Superoperator twice = traceless_projection(once);
  CHECK((once.matrix() - twice.matrix()).cwiseAbs().maxCoeff() < 1e-10);

  Superoperator fbar = traceless_projection(frame_superoperator(random_minimal_ic(3, 4)));
  CVector id_ket = vectorize(Operator::identity(3)).coords();
  CHECK((fbar.matrix() * id_ket).norm() < 1e-10);
}

TEST_CASE("superop_trace of identities and dyads") {
  CHECK(superop_trace(Superoperator::identity(2)) == doctest::Approx(4.0));
  // Matrix-assembly oracle: Tr |1>><<1| = ||vec(1)||^2 = tr(1) = 3.
  Matrix oracle = test::dyad_matrix_oracle(Matrix::Identity(3, 3), Matrix::Identity(3, 3));
  CHECK(oracle.trace().real() == doctest::Approx(3.0));
  CHECK(superop_trace(dyad(Operator::identity(3), Operator::identity(3))) ==
        doctest::Approx(oracle.trace().real()));
}

TEST_CASE("superop_trace of a frame superoperator is d^2 times the average purity") {
  for (const Povm& p : {sic_rank_one(2), mub_complete(3), random_minimal_ic(3, 8), cube_qubit()}) {
    double lhs = superop_trace(frame_superoperator(p));
    double rhs = p.dim() * p.dim() * purity_report(p).average;
    CHECK(std::abs(lhs - rhs) < 1e-10);
  }
}

TEST_CASE("superoperators built from Hermitian dyads preserve Hermiticity") {
  auto gen = test::rng(18);
  Superoperator s = Superoperator::zero(3);
  for (int k = 0; k < 5; ++k) {
    s += dyad(test::random_hermitian(3, gen), test::random_hermitian(3, gen));
  }
  Operator probe = test::random_hermitian(3, gen);
  Matrix out = s.matrix() * vectorize(probe).coords();
  Matrix as_matrix = Eigen::Map<const Matrix>(out.data(), 3, 3);
  CHECK((as_matrix - as_matrix.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
}

TEST_CASE("operator ingestion symmetrizes tiny asymmetry exactly") {
  Matrix m(2, 2);
  m << Complex(1, 0), Complex(0.5, 1e-13), Complex(0.5, -2e-13), Complex(2, 0);
  Operator a(m);
  CHECK((a.matrix() - a.matrix().adjoint()).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("density states enforce unit trace and positivity") {
  CHECK_THROWS_AS(DensityState(Matrix(2 * Matrix::Identity(2, 2))), std::invalid_argument);
  Matrix not_psd(2, 2);
  not_psd << 1.5, 0, 0, -0.5;
  CHECK_THROWS_AS(DensityState(not_psd), std::invalid_argument);
  CHECK(DensityState::completely_mixed(4).purity() == doctest::Approx(0.25));
}

TEST_CASE("inverse refuses ill-conditioned superoperators") {
  Superoperator singular = dyad(Operator::identity(2), Operator::identity(2));
  CHECK_THROWS_AS(inverse(singular), std::runtime_error);
  Superoperator fine = Superoperator::identity(2);
  CHECK((inverse(fine).matrix() - Matrix::Identity(4, 4)).cwiseAbs().maxCoeff() < 1e-12);
}
