#ifndef IBCRB_MANIFOLD_HPP
#define IBCRB_MANIFOLD_HPP

#include <vector>

#include "ibcrb/hermitian.hpp"

namespace ibcrb {

enum class Metric { Euclidean, AffineInvariant };

const char* metric_name(Metric m);

// Flat index i in [1, p^2] over the canonical Hermitian basis, split into the
// p diagonal elements, the p(p-1)/2 symmetric pairs and the p(p-1)/2
// anti-symmetric (purely imaginary) pairs. Pairs are enumerated
// (1,2),(1,3),...,(1,p),(2,3),...,(p-1,p) in both blocks.
struct BasisIndex {
    enum class Kind { Diagonal, SymPair, HermPair };

    int p = 0;
    int i = 0;    // 1-based flat index
    Kind kind = Kind::Diagonal;
    int m = 0;    // 1-based, m < n for pair kinds, m = n = i for Diagonal
    int n = 0;

    static BasisIndex from_flat(int p, int i);
    static std::vector<BasisIndex> all(int p);
};

// Canonical basis element for the given index: E_ii, (E_mn + E_nm)/sqrt(2),
// or i(E_mn - E_nm)/sqrt(2). Orthonormal for the Frobenius inner product.
HermitianMatrix canonical_basis(int p, const BasisIndex& idx);

// Tangent vector at a base point: a Hermitian matrix attached to an HPD
// foot point.
struct TangentVector {
    HpdMatrix base;
    HermitianMatrix value;
};

// Re tr(X Y)
double metric_euclidean(const TangentVector& x, const TangentVector& y);

// Re tr(Sigma^-1 X Sigma^-1 Y), evaluated in whitened form so the operands
// stay Hermitian.
double metric_affine_invariant(const TangentVector& x, const TangentVector& y);

double metric_inner(Metric metric, const TangentVector& x, const TangentVector& y);

// sigma_hat - sigma, attached at sigma.
TangentVector log_euclidean(const HpdMatrix& sigma, const HpdMatrix& sigma_hat);

// L logm(L^-1 sigma_hat L^-H) L^H with L = chol(sigma); equals
// sigma * logm(sigma^-1 sigma_hat) but is Hermitian by construction.
TangentVector log_affine_invariant(const HpdMatrix& sigma, const HpdMatrix& sigma_hat);

// Inverse of log_affine_invariant: L expm(L^-1 X L^-H) L^H.
HpdMatrix exp_affine_invariant(const HpdMatrix& sigma, const TangentVector& x);

// Frobenius distance.
double dist_euclidean(const HpdMatrix& sigma, const HpdMatrix& sigma_hat);

// Geodesic distance of the affine-invariant metric:
// sqrt(sum_k log^2 lambda_k), lambda_k eigenvalues of the whitened estimate.
double dist_affine_invariant(const HpdMatrix& sigma, const HpdMatrix& sigma_hat);

// Coordinates of log_sigma(sigma_hat) in an orthonormal basis; the squared
// norm of the result equals the squared distance for the chosen metric.
RVector error_coordinates(Metric metric,
                          const HpdMatrix& sigma,
                          const HpdMatrix& sigma_hat,
                          const std::vector<TangentVector>& basis);

// Canonical basis attached at sigma (orthonormal for the Euclidean metric).
std::vector<TangentVector> euclidean_basis(const HpdMatrix& sigma);

// H Omega_i H^H with H = chol(sigma); orthonormal for the affine-invariant
// metric at sigma. Any square root of sigma works; the Cholesky factor is
// cheap and deterministic.
std::vector<TangentVector> ai_orthonormal_basis(const HpdMatrix& sigma);

// Max absolute deviation of the basis Gram matrix from the identity.
double gram_check(Metric metric,
                  const HpdMatrix& sigma,
                  const std::vector<TangentVector>& basis);

} // namespace ibcrb

#endif
