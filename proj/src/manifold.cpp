#include "ibcrb/manifold.hpp"

#include <cmath>
#include <string>

namespace ibcrb {

const char* metric_name(Metric m) {
    return m == Metric::Euclidean ? "euclidean" : "ai";
}

BasisIndex BasisIndex::from_flat(int p, int i) {
    if (p < 1) {
        throw IndexOutOfRange("basis dimension must be >= 1");
    }
    if (i < 1 || i > p * p) {
        throw IndexOutOfRange("basis index " + std::to_string(i) + " out of [1, " +
                              std::to_string(p * p) + "]");
    }
    BasisIndex idx;
    idx.p = p;
    idx.i = i;
    if (i <= p) {
        idx.kind = Kind::Diagonal;
        idx.m = idx.n = i;
        return idx;
    }
    const int n_pairs = p * (p - 1) / 2;
    int k = i - p - 1; // 0-based pair rank
    if (k < n_pairs) {
        idx.kind = Kind::SymPair;
    } else {
        idx.kind = Kind::HermPair;
        k -= n_pairs;
    }
    // walk the (1,2),(1,3),...,(p-1,p) enumeration
    int m = 1;
    int row_len = p - 1;
    while (k >= row_len) {
        k -= row_len;
        ++m;
        --row_len;
    }
    idx.m = m;
    idx.n = m + 1 + k;
    return idx;
}

std::vector<BasisIndex> BasisIndex::all(int p) {
    std::vector<BasisIndex> out;
    out.reserve(static_cast<std::size_t>(p) * p);
    for (int i = 1; i <= p * p; ++i) {
        out.push_back(from_flat(p, i));
    }
    return out;
}

HermitianMatrix canonical_basis(int p, const BasisIndex& idx) {
    if (idx.p != p) {
        throw IndexOutOfRange("basis index built for p=" + std::to_string(idx.p) +
                              ", requested p=" + std::to_string(p));
    }
    CMatrix e = CMatrix::Zero(p, p);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    switch (idx.kind) {
        case BasisIndex::Kind::Diagonal:
            e(idx.m - 1, idx.m - 1) = 1.0;
            break;
        case BasisIndex::Kind::SymPair:
            e(idx.m - 1, idx.n - 1) = inv_sqrt2;
            e(idx.n - 1, idx.m - 1) = inv_sqrt2;
            break;
        case BasisIndex::Kind::HermPair:
            e(idx.m - 1, idx.n - 1) = Complex(0.0, inv_sqrt2);
            e(idx.n - 1, idx.m - 1) = Complex(0.0, -inv_sqrt2);
            break;
    }
    return HermitianMatrix(std::move(e));
}

namespace {

void check_same_base(const TangentVector& x, const TangentVector& y) {
    if (x.base.dim() != y.base.dim()) {
        throw BasePointMismatch("tangent vectors live at different dimensions");
    }
    const double scale = x.base.mat().cwiseAbs().maxCoeff();
    const double diff = (x.base.mat() - y.base.mat()).cwiseAbs().maxCoeff();
    if (diff > 1e-12 * scale) {
        throw BasePointMismatch("tangent vectors attached to different base points");
    }
}

void check_same_dim(const HpdMatrix& a, const HpdMatrix& b) {
    if (a.dim() != b.dim()) {
        throw DimMismatch("operands of size " + std::to_string(a.dim()) + " and " +
                          std::to_string(b.dim()));
    }
}

double re_trace_product(const CMatrix& a, const CMatrix& b) {
    // tr(ab) = sum_{ij} a(j,i) b(i,j)
    return a.transpose().cwiseProduct(b).sum().real();
}

// Whitened congruence L^-1 m L^-H for L = chol(sigma), m Hermitian.
CMatrix whiten(const LowerTriangularFactor& l, const CMatrix& m) {
    const CMatrix half = l.forward_solve(m);
    return l.forward_solve(half.adjoint());
}

} // namespace

double metric_euclidean(const TangentVector& x, const TangentVector& y) {
    check_same_base(x, y);
    return re_trace_product(x.value.mat(), y.value.mat());
}

double metric_affine_invariant(const TangentVector& x, const TangentVector& y) {
    check_same_base(x, y);
    const LowerTriangularFactor l = cholesky(x.base);
    const CMatrix wx = whiten(l, x.value.mat());
    const CMatrix wy = whiten(l, y.value.mat());
    return re_trace_product(wx, wy);
}

double metric_inner(Metric metric, const TangentVector& x, const TangentVector& y) {
    return metric == Metric::Euclidean ? metric_euclidean(x, y)
                                       : metric_affine_invariant(x, y);
}

TangentVector log_euclidean(const HpdMatrix& sigma, const HpdMatrix& sigma_hat) {
    check_same_dim(sigma, sigma_hat);
    return {sigma, HermitianMatrix(sigma_hat.mat() - sigma.mat())};
}

TangentVector log_affine_invariant(const HpdMatrix& sigma, const HpdMatrix& sigma_hat) {
    check_same_dim(sigma, sigma_hat);
    const LowerTriangularFactor l = cholesky(sigma);
    const HpdMatrix w(whiten(l, sigma_hat.mat()));
    const CMatrix log_w = matrix_log_hpd(w).mat();
    return {sigma, HermitianMatrix(l.lower() * log_w * l.lower().adjoint())};
}

HpdMatrix exp_affine_invariant(const HpdMatrix& sigma, const TangentVector& x) {
    check_same_base({sigma, x.value}, x);
    const LowerTriangularFactor l = cholesky(sigma);
    const HermitianMatrix w(whiten(l, x.value.mat()));
    const CMatrix exp_w = matrix_exp_hermitian(w).mat();
    return HpdMatrix(CMatrix(l.lower() * exp_w * l.lower().adjoint()));
}

double dist_euclidean(const HpdMatrix& sigma, const HpdMatrix& sigma_hat) {
    check_same_dim(sigma, sigma_hat);
    return (sigma_hat.mat() - sigma.mat()).norm();
}

double dist_affine_invariant(const HpdMatrix& sigma, const HpdMatrix& sigma_hat) {
    check_same_dim(sigma, sigma_hat);
    const LowerTriangularFactor l = cholesky(sigma);
    const HpdMatrix w(whiten(l, sigma_hat.mat()));
    const EighResult eg = eigh(w.hermitian());
    double acc = 0.0;
    for (int k = 0; k < sigma.dim(); ++k) {
        const double lg = std::log(eg.eigenvalues(k));
        acc += lg * lg;
    }
    return std::sqrt(acc);
}

RVector error_coordinates(Metric metric,
                          const HpdMatrix& sigma,
                          const HpdMatrix& sigma_hat,
                          const std::vector<TangentVector>& basis) {
    const double deviation = gram_check(metric, sigma, basis);
    if (deviation > 1e-8) {
        throw NonOrthonormalBasis("Gram deviation " + std::to_string(deviation));
    }
    const TangentVector log_vec = metric == Metric::Euclidean
                                      ? log_euclidean(sigma, sigma_hat)
                                      : log_affine_invariant(sigma, sigma_hat);
    RVector coords(static_cast<int>(basis.size()));
    for (std::size_t k = 0; k < basis.size(); ++k) {
        coords(static_cast<int>(k)) = metric_inner(metric, log_vec, basis[k]);
    }
    return coords;
}

std::vector<TangentVector> euclidean_basis(const HpdMatrix& sigma) {
    const int p = sigma.dim();
    std::vector<TangentVector> out;
    out.reserve(static_cast<std::size_t>(p) * p);
    for (const BasisIndex& idx : BasisIndex::all(p)) {
        out.push_back({sigma, canonical_basis(p, idx)});
    }
    return out;
}

std::vector<TangentVector> ai_orthonormal_basis(const HpdMatrix& sigma) {
    const int p = sigma.dim();
    const LowerTriangularFactor h = cholesky(sigma);
    std::vector<TangentVector> out;
    out.reserve(static_cast<std::size_t>(p) * p);
    for (const BasisIndex& idx : BasisIndex::all(p)) {
        const CMatrix omega = canonical_basis(p, idx).mat();
        out.push_back({sigma, HermitianMatrix(h.lower() * omega * h.lower().adjoint())});
    }
    return out;
}

double gram_check(Metric metric,
                  const HpdMatrix& sigma,
                  const std::vector<TangentVector>& basis) {
    // One factorization for the whole Gram matrix; the generic pairwise inner
    // product would re-factor sigma for every entry.
    const int d = static_cast<int>(basis.size());
    std::vector<CMatrix> prepared;
    prepared.reserve(basis.size());
    if (metric == Metric::AffineInvariant) {
        const LowerTriangularFactor l = cholesky(sigma);
        for (const TangentVector& v : basis) {
            check_same_base({sigma, v.value}, v);
            prepared.push_back(whiten(l, v.value.mat()));
        }
    } else {
        for (const TangentVector& v : basis) {
            check_same_base({sigma, v.value}, v);
            prepared.push_back(v.value.mat());
        }
    }
    double worst = 0.0;
    for (int i = 0; i < d; ++i) {
        for (int j = i; j < d; ++j) {
            const double g = re_trace_product(prepared[i], prepared[j]);
            const double target = i == j ? 1.0 : 0.0;
            worst = std::max(worst, std::abs(g - target));
        }
    }
    return worst;
}

} // namespace ibcrb
