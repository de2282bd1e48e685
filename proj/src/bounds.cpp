#include "ibcrb/bounds.hpp"

#include <cmath>
#include <string>
#include <vector>

namespace ibcrb {

FisherMatrix::FisherMatrix(int p, RMatrix entries) : p_(p), m_(std::move(entries)) {
    const int d = p * p;
    if (m_.rows() != d || m_.cols() != d) {
        throw DimMismatch("information matrix must be p^2 x p^2");
    }
    const double scale = m_.cwiseAbs().maxCoeff();
    const double asym = (m_ - m_.transpose()).cwiseAbs().maxCoeff();
    if (asym > 1e-10 * scale) {
        throw NotHermitian("information matrix asymmetry " + std::to_string(asym));
    }
    m_ = 0.5 * (m_ + m_.transpose());
}

const char* bound_kind_name(BoundKind k) {
    switch (k) {
        case BoundKind::Deterministic: return "deterministic";
        case BoundKind::BayesAsymptotic: return "bayes-asymptotic";
        case BoundKind::Bayes: return "bayes";
    }
    return "?";
}

double trace_inverse(const FisherMatrix& f) {
    Eigen::LLT<RMatrix> llt(f.mat());
    if (llt.info() != Eigen::Success) {
        throw NotPositiveDefinite("information matrix is not positive definite");
    }
    const RMatrix l_inv = llt.matrixL().solve(RMatrix::Identity(f.mat().rows(), f.mat().cols()));
    return l_inv.squaredNorm();
}

FisherMatrix assemble_bayesian_fisher(const FisherMatrix& expected_fim,
                                      const FisherMatrix& fprior) {
    if (expected_fim.dim() != fprior.dim()) {
        throw DimMismatch("information terms of different dimension");
    }
    return FisherMatrix(expected_fim.dim(), expected_fim.mat() + fprior.mat());
}

namespace {

double re_trace_product(const CMatrix& a, const CMatrix& b) {
    return a.transpose().cwiseProduct(b).sum().real();
}

// Weights of the two canonical-basis trace patterns:
// F_ij = c_pair * Re tr(W O_i W O_j) + c_sep * tr(W O_i) tr(W O_j)
// for a fixed Hermitian W. Both patterns are evaluated from the cached
// products W O_i.
RMatrix weighted_basis_fisher(const CMatrix& w, double c_pair, double c_sep) {
    const int p = static_cast<int>(w.rows());
    const int d = p * p;
    std::vector<CMatrix> products;
    products.reserve(static_cast<std::size_t>(d));
    RVector traces(d);
    int k = 0;
    for (const BasisIndex& idx : BasisIndex::all(p)) {
        products.push_back(w * canonical_basis(p, idx).mat());
        traces(k) = products.back().trace().real();
        ++k;
    }
    RMatrix f(d, d);
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            const double pair = re_trace_product(products[i], products[j]);
            const double value = c_pair * pair + c_sep * traces(i) * traces(j);
            f(i, j) = value;
            f(j, i) = value;
        }
    }
    return f;
}

void check_counts(double nu, int p, int n) {
    if (p < 1) {
        throw ConfigError("dimension p must be >= 1");
    }
    if (n < 1) {
        throw ConfigError("sample count n must be >= 1");
    }
    if (!(nu > p)) {
        throw InvalidDegreesOfFreedom("nu = " + std::to_string(nu) +
                                      " must exceed p = " + std::to_string(p));
    }
}

} // namespace

FisherMatrix fim_gaussian_euclidean(const HpdMatrix& sigma, int n) {
    if (n < 1) {
        throw ConfigError("sample count n must be >= 1");
    }
    const CMatrix w = solve_hpd(sigma, CMatrix::Identity(sigma.dim(), sigma.dim()));
    return FisherMatrix(sigma.dim(), weighted_basis_fisher(w, static_cast<double>(n), 0.0));
}

BoundReport crb_euclidean_deterministic(const HpdMatrix& sigma, int n) {
    const double value = trace_inverse(fim_gaussian_euclidean(sigma, n));
    return {Metric::Euclidean, BoundKind::Deterministic, sigma.dim(), n, 0.0, value};
}

BoundReport icrb_ai_asymptotic(int p, int n) {
    if (p < 1 || n < 1) {
        throw ConfigError("p and n must be >= 1");
    }
    const double value = static_cast<double>(p) * static_cast<double>(p) / n;
    return {Metric::AffineInvariant, BoundKind::Deterministic, p, n, 0.0, value};
}

FisherMatrix expected_fim_euclidean_iw(const HpdMatrix& sigma0, double nu, int n) {
    const int p = sigma0.dim();
    check_counts(nu, p, n);
    const CMatrix w = solve_hpd(sigma0, CMatrix::Identity(p, p));
    const double denom = (nu - p) * (nu - p);
    return FisherMatrix(p, weighted_basis_fisher(w, n * nu * nu / denom, n * nu / denom));
}

FisherMatrix fprior_euclidean_iw(const HpdMatrix& sigma0, double nu) {
    const int p = sigma0.dim();
    check_counts(nu, p, 1);
    const CMatrix w = solve_hpd(sigma0, CMatrix::Identity(p, p));
    const double denom = (nu - p) * (nu - p);
    const double alpha = (nu * nu * nu + p * nu * nu + 2.0 * nu) / denom;
    const double beta = (3.0 * nu * nu + p * nu) / denom;
    return FisherMatrix(p, weighted_basis_fisher(w, alpha, beta));
}

BoundReport bcrb_euclidean(const HpdMatrix& sigma0, double nu, int n) {
    const FisherMatrix f = assemble_bayesian_fisher(expected_fim_euclidean_iw(sigma0, nu, n),
                                                    fprior_euclidean_iw(sigma0, nu));
    return {Metric::Euclidean, BoundKind::Bayes, sigma0.dim(), n, nu, trace_inverse(f)};
}

BoundReport bcrb_euclidean_asymptotic(const HpdMatrix& sigma0, double nu, int n) {
    const double value = trace_inverse(expected_fim_euclidean_iw(sigma0, nu, n));
    return {Metric::Euclidean, BoundKind::BayesAsymptotic, sigma0.dim(), n, nu, value};
}

FisherMatrix fprior_affine_invariant(double nu, int p) {
    check_counts(nu, p, 1);
    const int d = p * p;
    RMatrix f = RMatrix::Zero(d, d);
    for (int i = 1; i <= p; ++i) {
        for (int j = 1; j <= p; ++j) {
            f(i - 1, j - 1) = static_cast<double>(2 * i - 1) * (2 * j - 1);
        }
        f(i - 1, i - 1) += nu - i + 1;
    }
    for (const BasisIndex& idx : BasisIndex::all(p)) {
        if (idx.kind == BasisIndex::Kind::Diagonal) {
            continue;
        }
        const int larger = std::max(idx.m, idx.n);
        f(idx.i - 1, idx.i - 1) = nu + p - 2.0 * larger + 1.0;
    }
    return FisherMatrix(p, std::move(f));
}

BoundReport bicrb_affine_invariant(double nu, int p, int n) {
    check_counts(nu, p, n);
    const FisherMatrix fprior = fprior_affine_invariant(nu, p);
    const FisherMatrix f(p, RMatrix(static_cast<double>(n) *
                                        RMatrix::Identity(p * p, p * p) +
                                    fprior.mat()));
    return {Metric::AffineInvariant, BoundKind::Bayes, p, n, nu, trace_inverse(f)};
}

} // namespace ibcrb
