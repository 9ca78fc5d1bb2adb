#include "doctest.h"

#include "qict/measurements.hpp"
#include "test_util.hpp"

using namespace qict;

namespace {

// Pairwise |<psi_j|psi_k>|^2 recovered from the outcomes: for rank-one
// SIC outcomes Pi = |psi><psi|/d this equals d^2 tr(Pi_j Pi_k).
double overlap_sq(const Povm& p, int j, int k) {
  int d = p.dim();
  return d * d * hs_inner(p.outcomes[j], p.outcomes[k]).real();
}

}  // namespace

TEST_CASE("validate passes the d=2 SIC with tiny completeness deviation") {
  ValidationReport rep = validate(sic_rank_one(2));
  CHECK(rep.passed);
  CHECK(rep.completeness_deviation < 1e-12);
}

TEST_CASE("validate reports the gap left by a missing outcome") {
  Povm sic = sic_rank_one(2);
  Operator dropped = sic.outcomes.back();
  std::vector<Operator> partial(sic.outcomes.begin(), sic.outcomes.end() - 1);
  ValidationReport rep = validate(Povm(std::move(partial)));
  CHECK_FALSE(rep.passed);
  // The deviation is exactly the norm of the missing piece.
  CHECK(rep.completeness_deviation ==
        doctest::Approx(dropped.matrix().cwiseAbs().maxCoeff()).epsilon(1e-10));
}

TEST_CASE("validate passes every random minimal IC") {
  for (std::uint64_t seed : {1u, 7u, 19u}) {
    CHECK(validate(random_minimal_ic(3, seed)).passed);
  }
}

TEST_CASE("d=2 SIC: four outcomes with the Eq.-(1) Gram structure") {
  Povm sic = sic_rank_one(2);
  REQUIRE(sic.size() == 4);
  for (int j = 0; j < 4; ++j) {
    CHECK(sic.outcomes[j].trace() == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(sic.outcomes[j].hs_norm_sq() == doctest::Approx(0.25).epsilon(1e-12));
    for (int k = 0; k < 4; ++k) {
      double expected = j == k ? 1.0 : 1.0 / 3.0;
      CHECK(std::abs(overlap_sq(sic, j, k) - expected) < 1e-9);
    }
  }
}

TEST_CASE("d=3 SIC from the Hesse fiducial: nine outcomes, overlaps 1/4") {
  Povm sic = sic_rank_one(3);
  REQUIRE(sic.size() == 9);
  for (int j = 0; j < 9; ++j) {
    for (int k = 0; k < 9; ++k) {
      double expected = j == k ? 1.0 : 0.25;
      CHECK(std::abs(overlap_sq(sic, j, k) - expected) < 1e-9);
    }
  }
  CHECK(validate(sic).passed);
}

TEST_CASE("a basis-state fiducial is rejected: its orbit degenerates") {
  CVector fid(2);
  fid << 1.0, 0.0;
  CHECK_THROWS_WITH_AS(sic_rank_one(2, fid), doctest::Contains("not equiangular"),
                       std::runtime_error);
}

TEST_CASE("dimensions without a built-in fiducial require one") {
  CHECK_THROWS_AS(sic_rank_one(4), std::invalid_argument);
}

TEST_CASE("depolarized SIC with x=1 returns the base unchanged") {
  Povm base = sic_rank_one(2);
  Povm depol = generalized_sic_depolarized(base, 1.0);
  for (int j = 0; j < 4; ++j) {
    CHECK((depol.outcomes[j].matrix() - base.outcomes[j].matrix()).cwiseAbs().maxCoeff() < 1e-15);
  }
}

TEST_CASE("depolarized SIC x=0.5 in d=2 has outcome purity 5/8") {
  Povm depol = generalized_sic_depolarized(sic_rank_one(2), 0.5);
  // Direct-arithmetic oracle: tr(P_j^2) for P_j = 2 Pi_j, entrywise sums.
  for (const Operator& pi : depol.outcomes) {
    Matrix p = 2.0 * pi.matrix();
    double tr_p2 = test::hs_inner_entrywise(p, p).real();
    CHECK(tr_p2 == doctest::Approx(0.625).epsilon(1e-12));
  }
  PurityReport rep = purity_report(depol);
  CHECK(rep.average == doctest::Approx(0.625).epsilon(1e-12));
}

TEST_CASE("depolarized SIC keeps tr(P_j P_k) constant off the diagonal") {
  for (double x : {0.25, 0.5, 0.9}) {
    Povm depol = generalized_sic_depolarized(sic_rank_one(2), x);
    double lo = 1e300, hi = -1e300;
    for (int j = 0; j < 4; ++j) {
      for (int k = 0; k < 4; ++k) {
        if (j == k) continue;
        double v = 4.0 * hs_inner(depol.outcomes[j], depol.outcomes[k]).real();
        lo = std::min(lo, v);
        hi = std::max(hi, v);
      }
    }
    CHECK(hi - lo < 1e-12);
  }
}

TEST_CASE("depolarization weight outside (0,1] is rejected") {
  Povm base = sic_rank_one(2);
  CHECK_THROWS_AS(generalized_sic_depolarized(base, 0.0), std::invalid_argument);
  CHECK_THROWS_AS(generalized_sic_depolarized(base, 1.2), std::invalid_argument);
  CHECK_THROWS_AS(generalized_sic_depolarized(base, -0.5), std::invalid_argument);
}

TEST_CASE("simplex generalized SICs: completeness, Gram pattern, positivity") {
  for (int d : {2, 3, 4}) {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      Povm p = generalized_sic_simplex(d, seed);
      REQUIRE(p.size() == d * d);
      ValidationReport rep = validate(p);
      CHECK(rep.completeness_deviation < 1e-10);
      CHECK(rep.min_eigenvalue > -1e-10);

      double lo = 1e300, hi = -1e300;
      double diag_lo = 1e300, diag_hi = -1e300;
      for (int j = 0; j < p.size(); ++j) {
        CHECK(std::abs(p.outcomes[j].trace() - 1.0 / d) < 1e-12);
        for (int k = 0; k < p.size(); ++k) {
          double v = d * d * hs_inner(p.outcomes[j], p.outcomes[k]).real();
          if (j == k) {
            diag_lo = std::min(diag_lo, v);
            diag_hi = std::max(diag_hi, v);
          } else {
            lo = std::min(lo, v);
            hi = std::max(hi, v);
          }
        }
      }
      CHECK(hi - lo < 1e-9);        // constant off-diagonal tr(P_j P_k)
      CHECK(diag_hi - diag_lo < 1e-9);

      // alpha + d^2 zeta = d, with alpha from the Gram diagonal.
      double zeta = lo;
      double alpha = diag_lo - zeta;
      CHECK(std::abs(alpha + d * d * zeta - d) < 1e-10);
    }
  }
}

TEST_CASE("generalized SICs tie alpha to the average purity and the rank-one ceiling") {
  std::vector<Povm> gens;
  for (int d : {2, 3, 4}) gens.push_back(generalized_sic_simplex(d, 3));
  for (double x : {0.4, 0.7, 1.0}) {
    gens.push_back(generalized_sic_depolarized(sic_rank_one(2), x));
  }
  for (const Povm& p : gens) {
    int d = p.dim();
    double purity = purity_report(p).average;
    double alpha_from_purity = (d * d * purity - d) / (d * d - 1.0);
    // alpha from the Gram diagonal: tr(P_j^2) - zeta.
    double diag = d * d * hs_inner(p.outcomes[0], p.outcomes[0]).real();
    double off = d * d * hs_inner(p.outcomes[0], p.outcomes[1]).real();
    double alpha_from_gram = diag - off;
    CHECK(std::abs(alpha_from_gram - alpha_from_purity) < 1e-10);
    CHECK(alpha_from_gram <= d / (d + 1.0) + 1e-12);
    bool rank_one = purity > 1.0 - 1e-9;
    bool saturated = std::abs(alpha_from_gram - d / (d + 1.0)) < 1e-9;
    CHECK(rank_one == saturated);
  }
}

TEST_CASE("complete MUB for d=2: six outcomes of trace 1/3") {
  Povm mub = mub_complete(2);
  REQUIRE(mub.size() == 6);
  for (const Operator& pi : mub.outcomes) {
    CHECK(pi.trace() == doctest::Approx(1.0 / 3).epsilon(1e-12));
  }
  CHECK(validate(mub).passed);
}

TEST_CASE("complete MUB for d=3: cross-basis overlaps all 1/3") {
  Povm mub = mub_complete(3);
  REQUIRE(mub.size() == 12);
  CHECK(validate(mub).passed);
  // Direct overlap computation: |<e|f>|^2 = (d+1)^2 tr(Pi_e Pi_f).
  for (int j = 0; j < 12; ++j) {
    for (int k = 0; k < 12; ++k) {
      if (j == k) continue;
      double ov = 16.0 * hs_inner(mub.outcomes[j], mub.outcomes[k]).real();
      bool same_basis = (j / 3) == (k / 3);
      double expected = same_basis ? 0.0 : 1.0 / 3.0;
      CHECK(std::abs(ov - expected) < 1e-10);
    }
  }
}

TEST_CASE("complete MUB for d=5 and d=7 are valid POVMs with unbiased bases") {
  for (int d : {5, 7}) {
    Povm mub = mub_complete(d);
    REQUIRE(mub.size() == d * (d + 1));
    CHECK(validate(mub).passed);
    double worst = 0.0;
    for (int j = 0; j < mub.size(); ++j) {
      for (int k = j + 1; k < mub.size(); ++k) {
        if ((j / d) == (k / d)) continue;
        double ov = (d + 1.0) * (d + 1.0) * hs_inner(mub.outcomes[j], mub.outcomes[k]).real();
        worst = std::max(worst, std::abs(ov - 1.0 / d));
      }
    }
    CHECK(worst < 1e-10);
  }
}

TEST_CASE("MUB construction rejects non-prime dimensions") {
  CHECK_THROWS_WITH_AS(mub_complete(4), doctest::Contains("prime"), std::invalid_argument);
  CHECK_THROWS_AS(mub_complete(6), std::invalid_argument);
  CHECK_THROWS_AS(mub_complete(1), std::invalid_argument);
}

TEST_CASE("cube measurement: eight outcomes of trace 1/4 summing to the identity") {
  Povm cube = cube_qubit();
  REQUIRE(cube.size() == 8);
  Matrix sum = Matrix::Zero(2, 2);
  for (const Operator& pi : cube.outcomes) {
    CHECK(pi.trace() == doctest::Approx(0.25).epsilon(1e-12));
    sum += pi.matrix();
  }
  CHECK((sum - Matrix::Identity(2, 2)).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("the first cube tetrahedron, rescaled by 2, is a SIC") {
  Povm cube = cube_qubit();
  std::vector<Operator> half;
  for (int j = 0; j < 4; ++j) half.push_back(2.0 * cube.outcomes[j]);
  Povm tetra(std::move(half));
  CHECK(validate(tetra).passed);
  for (int j = 0; j < 4; ++j) {
    for (int k = 0; k < 4; ++k) {
      double expected = j == k ? 1.0 : 1.0 / 3.0;
      CHECK(std::abs(overlap_sq(tetra, j, k) - expected) < 1e-12);
    }
  }
}

TEST_CASE("random minimal IC: completeness, full Gram rank, determinism") {
  for (int d : {2, 3}) {
    Povm p = random_minimal_ic(d, 123);
    CHECK(validate(p).completeness_deviation < 1e-10);

    // SVD-of-Gram oracle for informational completeness.
    int n = p.size();
    Eigen::MatrixXd gram(n, n);
    for (int j = 0; j < n; ++j) {
      for (int k = 0; k < n; ++k) gram(j, k) = hs_inner(p.outcomes[j], p.outcomes[k]).real();
    }
    Eigen::JacobiSVD<Eigen::MatrixXd> svd(gram);
    CHECK(svd.singularValues()(n - 1) > 1e-6 * svd.singularValues()(0));

    Povm again = random_minimal_ic(d, 123);
    for (int j = 0; j < n; ++j) {
      CHECK((p.outcomes[j].matrix() - again.outcomes[j].matrix()).cwiseAbs().maxCoeff() == 0.0);
    }
  }
}

TEST_CASE("purity report: SIC is rank one, weighted purity at 1/d is the average") {
  PurityReport sic_rep = purity_report(sic_rank_one(2));
  CHECK(sic_rep.average == doctest::Approx(1.0).epsilon(1e-12));

  Povm depol = generalized_sic_depolarized(sic_rank_one(2), 0.5);
  DensityState mixed = DensityState::completely_mixed(2);
  PurityReport rep = purity_report(depol, &mixed);
  REQUIRE(rep.weighted.has_value());
  CHECK(*rep.weighted == doctest::Approx(rep.average).epsilon(1e-12));

  auto gen = test::rng(31);
  Povm rnd = random_minimal_ic(3, 77);
  DensityState mixed3 = DensityState::completely_mixed(3);
  PurityReport rep3 = purity_report(rnd, &mixed3);
  CHECK(*rep3.weighted == doctest::Approx(rep3.average).epsilon(1e-10));
}

TEST_CASE("purity report rejects zero-trace outcomes") {
  std::vector<Operator> outcomes = {Operator::identity(2), Operator::zero(2)};
  Povm p(std::move(outcomes));
  CHECK_THROWS_AS(purity_report(p), std::invalid_argument);
}

TEST_CASE("every constructor in the zoo yields a valid POVM") {
  for (const Povm& p : test::minimal_ic_zoo()) {
    ValidationReport rep = validate(p);
    INFO(p.label, ": ", rep.describe());
    CHECK(rep.passed);
  }
  CHECK(validate(mub_complete(5)).passed);
  CHECK(validate(cube_qubit()).passed);
}
