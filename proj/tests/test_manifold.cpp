#include "doctest.h"

#include <cmath>

#include "ibcrb/manifold.hpp"
#include "test_util.hpp"

using namespace ibcrb;
using namespace ibcrb::testutil;

TEST_CASE("basis index layout") {
    // p = 3: 1..3 diagonal, 4..6 symmetric pairs, 7..9 anti-symmetric pairs
    const auto all = BasisIndex::all(3);
    REQUIRE(all.size() == 9);
    CHECK(all[0].kind == BasisIndex::Kind::Diagonal);
    CHECK(all[2].kind == BasisIndex::Kind::Diagonal);
    CHECK(all[3].kind == BasisIndex::Kind::SymPair);
    CHECK(all[3].m == 1);
    CHECK(all[3].n == 2);
    CHECK(all[4].m == 1);
    CHECK(all[4].n == 3);
    CHECK(all[5].m == 2);
    CHECK(all[5].n == 3);
    CHECK(all[6].kind == BasisIndex::Kind::HermPair);
    CHECK(all[6].m == 1);
    CHECK(all[6].n == 2);
    CHECK(all[8].m == 2);
    CHECK(all[8].n == 3);

    CHECK_THROWS_AS(BasisIndex::from_flat(3, 0), IndexOutOfRange);
    CHECK_THROWS_AS(BasisIndex::from_flat(3, 10), IndexOutOfRange);

    // pair enumeration for larger p stays row-major over (m, n)
    const BasisIndex idx = BasisIndex::from_flat(5, 5 + 5); // 5th pair of p=5
    CHECK(idx.kind == BasisIndex::Kind::SymPair);
    CHECK(idx.m == 2);
    CHECK(idx.n == 3);
}

TEST_CASE("canonical basis elements at p = 2") {
    const double s = 1.0 / std::sqrt(2.0);
    const CMatrix e1 = canonical_basis(2, BasisIndex::from_flat(2, 1)).mat();
    CHECK(e1(0, 0).real() == doctest::Approx(1.0));
    CHECK(e1.norm() == doctest::Approx(1.0));

    const CMatrix e3 = canonical_basis(2, BasisIndex::from_flat(2, 3)).mat();
    CHECK(e3(0, 1).real() == doctest::Approx(s));
    CHECK(e3(1, 0).real() == doctest::Approx(s));

    const CMatrix e4 = canonical_basis(2, BasisIndex::from_flat(2, 4)).mat();
    CHECK(e4(0, 1).imag() == doctest::Approx(s));
    CHECK(e4(1, 0).imag() == doctest::Approx(-s));
}

TEST_CASE("Euclidean metric on basis elements") {
    const HpdMatrix base = HpdMatrix::identity(2);
    const auto basis = euclidean_basis(base);
    CHECK(metric_euclidean(basis[0], basis[0]) == doctest::Approx(1.0));
    CHECK(metric_euclidean(basis[0], basis[1]) == doctest::Approx(0.0));
    CHECK(metric_euclidean(basis[3], basis[3]) == doctest::Approx(1.0));
}

TEST_CASE("affine-invariant metric") {
    RngStream rng(3, 0);
    // at the identity it coincides with the Euclidean one
    const HpdMatrix id = HpdMatrix::identity(3);
    for (int rep = 0; rep < 100; ++rep) {
        const TangentVector x{id, random_hermitian(3, rng)};
        const TangentVector y{id, random_hermitian(3, rng)};
        CHECK(metric_affine_invariant(x, y) ==
              doctest::Approx(metric_euclidean(x, y)).epsilon(1e-10));
    }

    CMatrix two = 2.0 * CMatrix::Identity(2, 2);
    CMatrix diag(2, 2);
    diag << 1.0, 0.0, 0.0, 0.0;
    const TangentVector v{HpdMatrix(CMatrix(two)), HermitianMatrix(CMatrix(diag))};
    CHECK(metric_affine_invariant(v, v) == doctest::Approx(0.25));

    // invariance under congruence by any invertible matrix
    for (int rep = 0; rep < 20; ++rep) {
        const int p = 2 + rep % 4;
        const HpdMatrix sigma = random_hpd(p, rng);
        const TangentVector x{sigma, random_hermitian(p, rng)};
        const TangentVector y{sigma, random_hermitian(p, rng)};
        const double before = metric_affine_invariant(x, y);
        const CMatrix a = random_complex(p, p, rng) + 2.0 * CMatrix::Identity(p, p);
        const HpdMatrix sigma_a(CMatrix(a * sigma.mat() * a.adjoint()));
        const TangentVector xa{sigma_a, HermitianMatrix(CMatrix(a * x.value.mat() * a.adjoint()))};
        const TangentVector ya{sigma_a, HermitianMatrix(CMatrix(a * y.value.mat() * a.adjoint()))};
        CHECK(rel_err(metric_affine_invariant(xa, ya), before) < 1e-9);
    }
}

TEST_CASE("base point mismatch is rejected") {
    RngStream rng(5, 0);
    const TangentVector x{HpdMatrix::identity(2), random_hermitian(2, rng)};
    const TangentVector y{HpdMatrix(CMatrix(2.0 * CMatrix::Identity(2, 2))),
                          random_hermitian(2, rng)};
    CHECK_THROWS_AS(metric_euclidean(x, y), BasePointMismatch);
}

TEST_CASE("logarithm maps") {
    RngStream rng(6, 0);
    const HpdMatrix sigma = random_hpd(3, rng);
    CHECK(log_euclidean(sigma, sigma).value.mat().norm() == doctest::Approx(0.0));

    const HpdMatrix id = HpdMatrix::identity(3);
    const HpdMatrix two(CMatrix(2.0 * CMatrix::Identity(3, 3)));
    CHECK((log_euclidean(id, two).value.mat() - CMatrix::Identity(3, 3)).norm() ==
          doctest::Approx(0.0));

    // antisymmetry of the Euclidean logarithm
    const HpdMatrix other = random_hpd(3, rng);
    const CMatrix forward = log_euclidean(sigma, other).value.mat();
    const CMatrix backward = log_euclidean(other, sigma).value.mat();
    CHECK((forward + backward).norm() < 1e-12 * forward.norm());

    // at the identity the affine-invariant logarithm is the matrix logarithm
    const CMatrix direct = matrix_log_hpd(other).mat();
    CHECK((log_affine_invariant(id, other).value.mat() - direct).norm() <
          1e-10 * direct.norm());
    CHECK(log_affine_invariant(sigma, sigma).value.mat().norm() < 1e-12);
}

TEST_CASE("exponential map inverts the logarithm") {
    RngStream rng(8, 0);
    const HpdMatrix id = HpdMatrix::identity(2);
    CHECK((exp_affine_invariant(id, {id, HermitianMatrix::zero(2)}).mat() -
           CMatrix::Identity(2, 2))
              .norm() == doctest::Approx(0.0));

    CMatrix h(2, 2);
    h << 1.0, 0.0, 0.0, 0.0;
    const HpdMatrix ex = exp_affine_invariant(id, {id, HermitianMatrix(CMatrix(h))});
    CHECK(ex.mat()(0, 0).real() == doctest::Approx(std::exp(1.0)));
    CHECK(ex.mat()(1, 1).real() == doctest::Approx(1.0));

    for (int rep = 0; rep < 100; ++rep) {
        const int p = 1 + rep % 6;
        const HpdMatrix sigma = random_hpd(p, rng);
        const HpdMatrix target = random_hpd(p, rng);
        const HpdMatrix back = exp_affine_invariant(sigma, log_affine_invariant(sigma, target));
        CHECK(rel_frobenius(back.mat(), target.mat()) < 1e-8);
    }
}

TEST_CASE("distances") {
    RngStream rng(9, 0);
    const HpdMatrix id5 = HpdMatrix::identity(5);
    const HpdMatrix two5(CMatrix(2.0 * CMatrix::Identity(5, 5)));
    CHECK(dist_euclidean(id5, id5) == doctest::Approx(0.0));
    CHECK(dist_euclidean(id5, two5) == doctest::Approx(std::sqrt(5.0)));

    // triangle inequality on random triples
    for (int rep = 0; rep < 50; ++rep) {
        const int p = 2 + rep % 4;
        const HpdMatrix a = random_hpd(p, rng);
        const HpdMatrix b = random_hpd(p, rng);
        const HpdMatrix c = random_hpd(p, rng);
        CHECK(dist_euclidean(a, c) <=
              dist_euclidean(a, b) + dist_euclidean(b, c) + 1e-12);
        CHECK(dist_affine_invariant(a, c) <=
              dist_affine_invariant(a, b) + dist_affine_invariant(b, c) + 1e-12);
    }

    // scaling a matrix moves it sqrt(p) |log alpha| away in the
    // affine-invariant geometry
    const HpdMatrix sigma = random_hpd(4, rng);
    const double alpha = 2.7;
    const HpdMatrix scaled(CMatrix(alpha * sigma.mat()));
    CHECK(rel_err(dist_affine_invariant(sigma, scaled), 2.0 * std::log(alpha)) < 1e-10);

    CMatrix stretched = CMatrix::Identity(4, 4);
    stretched(0, 0) = std::exp(1.0);
    CHECK(dist_affine_invariant(HpdMatrix::identity(4), HpdMatrix(std::move(stretched))) ==
          doctest::Approx(1.0));

    // symmetry, inversion invariance and congruence invariance
    for (int rep = 0; rep < 30; ++rep) {
        const int p = 2 + rep % 4;
        const HpdMatrix a = random_hpd(p, rng);
        const HpdMatrix b = random_hpd(p, rng);
        const double d = dist_affine_invariant(a, b);
        CHECK(rel_err(dist_affine_invariant(b, a), d) < 1e-9);
        CHECK(rel_err(dist_affine_invariant(inverse_hpd(a), inverse_hpd(b)), d) < 1e-9);
        const CMatrix t = random_complex(p, p, rng) + 2.0 * CMatrix::Identity(p, p);
        const HpdMatrix at(CMatrix(t * a.mat() * t.adjoint()));
        const HpdMatrix bt(CMatrix(t * b.mat() * t.adjoint()));
        CHECK(rel_err(dist_affine_invariant(at, bt), d) < 1e-9);
    }
}

TEST_CASE("orthonormal bases and the Gram check") {
    RngStream rng(10, 0);
    const HpdMatrix id = HpdMatrix::identity(3);
    CHECK(gram_check(Metric::Euclidean, id, euclidean_basis(id)) < 1e-12);

    // at the identity the adapted basis is the canonical one
    const auto at_id = ai_orthonormal_basis(id);
    const auto canonical = euclidean_basis(id);
    for (std::size_t k = 0; k < at_id.size(); ++k) {
        CHECK((at_id[k].value.mat() - canonical[k].value.mat()).norm() < 1e-14);
    }

    CMatrix d(2, 2);
    d << 4.0, 0.0, 0.0, 1.0;
    const HpdMatrix diag42(std::move(d));
    const auto adapted = ai_orthonormal_basis(diag42);
    CHECK(adapted[0].value.mat()(0, 0).real() == doctest::Approx(4.0));
    CHECK(gram_check(Metric::AffineInvariant, diag42, adapted) < 1e-9);

    for (int rep = 0; rep < 10; ++rep) {
        const HpdMatrix sigma = random_hpd(3, rng);
        CHECK(gram_check(Metric::AffineInvariant, sigma, ai_orthonormal_basis(sigma)) < 1e-9);
    }

    // a scaled basis deviates by |scale^2 - 1|
    const double scale = 1.3;
    auto scaled = euclidean_basis(id);
    for (auto& v : scaled) {
        v.value = HermitianMatrix(CMatrix(scale * v.value.mat()));
    }
    CHECK(gram_check(Metric::Euclidean, id, scaled) ==
          doctest::Approx(scale * scale - 1.0).epsilon(1e-12));
    CHECK_THROWS_AS(error_coordinates(Metric::Euclidean, id, id, scaled),
                    NonOrthonormalBasis);
}

TEST_CASE("error coordinates decompose the logarithm") {
    RngStream rng(12, 0);
    const HpdMatrix id = HpdMatrix::identity(3);
    const auto basis = euclidean_basis(id);

    CHECK(error_coordinates(Metric::Euclidean, id, id, basis).norm() ==
          doctest::Approx(0.0));

    // perturbation along one basis direction lands on that coordinate
    const double t = 0.37;
    const HpdMatrix shifted(CMatrix(id.mat() + t * basis[4].value.mat()));
    const RVector coords = error_coordinates(Metric::Euclidean, id, shifted, basis);
    CHECK(coords(4) == doctest::Approx(t));
    CHECK(coords.norm() == doctest::Approx(t));
    // on unit-scale inputs the identity is exact to absolute precision
    const double d = dist_euclidean(id, shifted);
    CHECK(std::abs(coords.squaredNorm() - d * d) < 1e-12);

    for (int rep = 0; rep < 100; ++rep) {
        const int p = 1 + rep % 6;
        const HpdMatrix sigma = random_hpd(p, rng);
        const HpdMatrix target = random_hpd(p, rng);

        const auto e_basis = euclidean_basis(sigma);
        const RVector e_coords = error_coordinates(Metric::Euclidean, sigma, target, e_basis);
        const double d_e = dist_euclidean(sigma, target);
        CHECK(rel_err(e_coords.squaredNorm(), d_e * d_e) < 1e-9);
        // the coordinates reconstruct the logarithm
        CMatrix rebuilt = CMatrix::Zero(p, p);
        for (std::size_t k = 0; k < e_basis.size(); ++k) {
            rebuilt += e_coords(static_cast<int>(k)) * e_basis[k].value.mat();
        }
        CHECK((rebuilt - log_euclidean(sigma, target).value.mat()).norm() <
              1e-9 * std::max(1.0, d_e));

        const auto ai_basis = ai_orthonormal_basis(sigma);
        const RVector ai_coords =
            error_coordinates(Metric::AffineInvariant, sigma, target, ai_basis);
        const double d_ai = dist_affine_invariant(sigma, target);
        CHECK(rel_err(ai_coords.squaredNorm(), d_ai * d_ai) < 1e-9);
    }
}
