#include "doctest.h"

#include <cmath>

#include "ibcrb/bounds.hpp"
#include "ibcrb/experiments.hpp"
#include "test_util.hpp"

using namespace ibcrb;
using namespace ibcrb::testutil;

TEST_CASE("information matrix invariants") {
    RMatrix lopsided = RMatrix::Identity(4, 4);
    lopsided(0, 1) = 1.0; // asymmetric beyond tolerance
    CHECK_THROWS_AS(FisherMatrix(2, std::move(lopsided)), NotHermitian);

    RMatrix wrong = RMatrix::Identity(3, 3);
    CHECK_THROWS_AS(FisherMatrix(2, std::move(wrong)), DimMismatch);

    const FisherMatrix id(2, RMatrix::Identity(4, 4));
    CHECK(trace_inverse(id) == doctest::Approx(4.0));

    RMatrix indefinite = -RMatrix::Identity(4, 4);
    CHECK_THROWS_AS(trace_inverse(FisherMatrix(2, std::move(indefinite))),
                    NotPositiveDefinite);
}

TEST_CASE("Gaussian information in the canonical basis") {
    // scalar: F = n / sigma^4
    const double s2 = 1.7;
    const FisherMatrix f1 =
        fim_gaussian_euclidean(HpdMatrix(CMatrix(s2 * CMatrix::Identity(1, 1))), 6);
    CHECK(f1.mat()(0, 0) == doctest::Approx(6.0 / (s2 * s2)));

    // identity covariance: F = n I
    const FisherMatrix fi = fim_gaussian_euclidean(HpdMatrix::identity(3), 4);
    CHECK((fi.mat() - 4.0 * RMatrix::Identity(9, 9)).norm() < 1e-12);

    // tr(F^-1) = (tr sigma)^2 / n, a completeness identity of the basis
    RngStream rng(70, 0);
    for (int rep = 0; rep < 5; ++rep) {
        const int p = 2 + rep;
        const HpdMatrix sigma = random_hpd(p, rng);
        const double trace = sigma.mat().trace().real();
        CHECK(rel_err(trace_inverse(fim_gaussian_euclidean(sigma, 7)), trace * trace / 7.0) <
              1e-10);
    }
}

TEST_CASE("deterministic bounds on the benchmark grid") {
    const HpdMatrix sigma0 = toeplitz_center(5, 0.5);
    CHECK(rel_err(crb_euclidean_deterministic(sigma0, 10).value, 2.5) < 1e-12);
    CHECK(rel_err(crb_euclidean_deterministic(sigma0, 3162).value, 25.0 / 3162.0) < 1e-12);
    CHECK(rel_err(crb_euclidean_deterministic(sigma0, 3162).value, 0.00790638836179632) <
          1e-12);

    const double s2 = 0.8;
    CHECK(rel_err(crb_euclidean_deterministic(
                      HpdMatrix(CMatrix(s2 * CMatrix::Identity(1, 1))), 9)
                      .value,
                  s2 * s2 / 9.0) < 1e-12);

    CHECK(icrb_ai_asymptotic(5, 10).value == doctest::Approx(2.5));
    CHECK(rel_err(icrb_ai_asymptotic(5, 925).value, 0.027027027027027) < 1e-12);
    CHECK(icrb_ai_asymptotic(1, 1).value == doctest::Approx(1.0));
}

TEST_CASE("expected information under the prior") {
    const HpdMatrix sigma0 = toeplitz_center(5, 0.5);
    CHECK(rel_err(trace_inverse(expected_fim_euclidean_iw(sigma0, 40.0, 10)),
                  1.90139512803819) < 1e-9);
    CHECK(rel_err(trace_inverse(expected_fim_euclidean_iw(sigma0, 100.0, 10)),
                  2.2498505766369) < 1e-9);

    // scalar collapse: F = (n nu^2 + n nu) / ((nu-1)^2 sigma0^4)
    const double nu = 9.0;
    const double s2 = 1.3;
    const FisherMatrix f =
        expected_fim_euclidean_iw(HpdMatrix(CMatrix(s2 * CMatrix::Identity(1, 1))), nu, 4);
    CHECK(f.mat()(0, 0) ==
          doctest::Approx(4.0 * (nu * nu + nu) / ((nu - 1.0) * (nu - 1.0) * s2 * s2)));

    CHECK_THROWS_AS(expected_fim_euclidean_iw(sigma0, 5.0, 10), InvalidDegreesOfFreedom);
}

TEST_CASE("prior information coefficients, Euclidean metric") {
    // with sigma0 = I the pure-coefficient entries are exposed directly:
    // a symmetric-pair diagonal entry carries alpha, the (1,2) entry beta
    const int p = 5;
    const double nu = 40.0;
    const FisherMatrix f = fprior_euclidean_iw(HpdMatrix::identity(p), nu);
    CHECK(rel_err(f.mat()(p, p), 72080.0 / 1225.0) < 1e-12);
    CHECK(rel_err(f.mat()(0, 1), 5000.0 / 1225.0) < 1e-12);
    // scalar collapse: single entry alpha + beta
    const FisherMatrix f1 = fprior_euclidean_iw(HpdMatrix::identity(1), 8.0);
    const double alpha1 = (512.0 + 64.0 + 16.0) / 49.0;
    const double beta1 = (3.0 * 64.0 + 8.0) / 49.0;
    CHECK(rel_err(f1.mat()(0, 0), alpha1 + beta1) < 1e-12);
}

TEST_CASE("Bayesian bounds, Euclidean metric") {
    const HpdMatrix sigma0 = toeplitz_center(5, 0.5);
    CHECK(rel_err(bcrb_euclidean(sigma0, 40.0, 10).value, 0.342836403208648) < 1e-9);
    CHECK(rel_err(bcrb_euclidean(sigma0, 100.0, 10).value, 0.194754326165918) < 1e-9);
    CHECK(rel_err(bcrb_euclidean_asymptotic(sigma0, 40.0, 10).value, 1.90139512803819) < 1e-9);

    // prior information tightens the bound
    for (double nu : {40.0, 100.0}) {
        for (int n : {10, 100, 1000}) {
            CHECK(bcrb_euclidean(sigma0, nu, n).value <
                  bcrb_euclidean_asymptotic(sigma0, nu, n).value);
        }
    }

    // assembling the two terms reproduces the bound
    const FisherMatrix assembled = assemble_bayesian_fisher(
        expected_fim_euclidean_iw(sigma0, 40.0, 10), fprior_euclidean_iw(sigma0, 40.0));
    CHECK(trace_inverse(assembled) == doctest::Approx(bcrb_euclidean(sigma0, 40.0, 10).value));
}

TEST_CASE("prior information term, affine-invariant metric") {
    const FisherMatrix f = fprior_affine_invariant(40.0, 5);
    CHECK(f.mat()(0, 0) == doctest::Approx(41.0));
    CHECK(f.mat()(0, 1) == doctest::Approx(3.0));
    CHECK(f.mat()(5, 5) == doctest::Approx(42.0)); // pair (1,2)
    // the pair blocks are diagonal and repeated
    CHECK(f.mat()(5, 6) == doctest::Approx(0.0));
    const int pair_count = 5 * 4 / 2;
    CHECK(f.mat()(5 + pair_count, 5 + pair_count) == doctest::Approx(42.0));
}

TEST_CASE("Bayesian bound, affine-invariant metric") {
    CHECK(rel_err(bicrb_affine_invariant(40.0, 5, 10).value, 0.504966154875219) < 1e-9);
    CHECK(rel_err(bicrb_affine_invariant(100.0, 5, 10).value, 0.225866225689131) < 1e-9);
    CHECK(rel_err(bicrb_affine_invariant(40.0, 5, 3162).value, 0.00779716823188569) < 1e-9);

    // n * bound approaches p^2
    const double tail = bicrb_affine_invariant(40.0, 5, 1000000).value;
    CHECK(std::abs(1000000.0 * tail - 25.0) / 25.0 < 1e-2);
}

TEST_CASE("all bounds decrease in n") {
    const HpdMatrix sigma0 = toeplitz_center(4, 0.5);
    int prev_n = 0;
    double prev[4] = {0, 0, 0, 0};
    for (int n : {5, 17, 60, 200, 900}) {
        const double cur[4] = {
            crb_euclidean_deterministic(sigma0, n).value,
            icrb_ai_asymptotic(4, n).value,
            bcrb_euclidean(sigma0, 20.0, n).value,
            bicrb_affine_invariant(20.0, 4, n).value,
        };
        if (prev_n != 0) {
            for (int k = 0; k < 4; ++k) {
                CHECK(cur[k] < prev[k]);
            }
        }
        for (int k = 0; k < 4; ++k) {
            prev[k] = cur[k];
        }
        prev_n = n;
    }
}

TEST_CASE("assembly is the entrywise sum") {
    const FisherMatrix a(2, RMatrix::Identity(4, 4));
    const FisherMatrix zero(2, RMatrix::Zero(4, 4));
    CHECK((assemble_bayesian_fisher(a, zero).mat() - a.mat()).norm() == doctest::Approx(0.0));

    RngStream rng(71, 0);
    RMatrix sym = RMatrix::Random(4, 4);
    sym = RMatrix(0.5 * (sym + sym.transpose()) + 4.0 * RMatrix::Identity(4, 4));
    const FisherMatrix b(2, std::move(sym));
    CHECK(trace_inverse(assemble_bayesian_fisher(a, b)) < trace_inverse(a));
}
