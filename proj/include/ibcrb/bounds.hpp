#ifndef IBCRB_BOUNDS_HPP
#define IBCRB_BOUNDS_HPP

#include "ibcrb/manifold.hpp"

namespace ibcrb {

// Real symmetric positive definite p^2 x p^2 information matrix in the
// coordinates of the fixed canonical basis ordering (BasisIndex).
class FisherMatrix {
public:
    FisherMatrix(int p, RMatrix entries);

    int dim() const { return p_; }
    const RMatrix& mat() const { return m_; }

private:
    int p_;
    RMatrix m_;
};

enum class BoundKind { Deterministic, BayesAsymptotic, Bayes };

const char* bound_kind_name(BoundKind k);

// Lower bound on the expected squared distance for the given metric.
struct BoundReport {
    Metric metric;
    BoundKind kind;
    int p;
    int n;
    double nu;   // 0 for deterministic bounds
    double value;
};

// tr(F^-1) through the Cholesky factor of F (no explicit inverse).
double trace_inverse(const FisherMatrix& f);

// Entrywise sum of an expected-information term and a prior term.
FisherMatrix assemble_bayesian_fisher(const FisherMatrix& expected_fim,
                                      const FisherMatrix& fprior);

// Gaussian information for a fixed covariance in the canonical basis:
// F_ij = n Re tr(Sigma^-1 Omega_i Sigma^-1 Omega_j).
FisherMatrix fim_gaussian_euclidean(const HpdMatrix& sigma, int n);

// tr(F^-1) of the above; equals (tr Sigma)^2 / n.
BoundReport crb_euclidean_deterministic(const HpdMatrix& sigma, int n);

// Affine-invariant bound with the prior term dropped: p^2 / n. Serves both
// as the deterministic intrinsic bound and the asymptotic Bayesian one.
BoundReport icrb_ai_asymptotic(int p, int n);

// Expectation of the Gaussian information over the inverse-Wishart prior
// (Euclidean metric, canonical basis):
// n nu^2/(nu-p)^2 tr(S0^-1 O_i S0^-1 O_j) + n nu/(nu-p)^2 tr(S0^-1 O_i) tr(S0^-1 O_j).
FisherMatrix expected_fim_euclidean_iw(const HpdMatrix& sigma0, double nu, int n);

// Prior information term for the Euclidean metric:
// alpha tr(S0^-1 O_i S0^-1 O_j) + beta tr(S0^-1 O_i) tr(S0^-1 O_j),
// alpha = (nu^3 + p nu^2 + 2 nu)/(nu-p)^2, beta = (3 nu^2 + p nu)/(nu-p)^2.
FisherMatrix fprior_euclidean_iw(const HpdMatrix& sigma0, double nu);

// tr((E[F] + F_prior)^-1) for the Euclidean metric.
BoundReport bcrb_euclidean(const HpdMatrix& sigma0, double nu, int n);

// tr(E[F]^-1): the Euclidean Bayesian bound without the prior term.
BoundReport bcrb_euclidean_asymptotic(const HpdMatrix& sigma0, double nu, int n);

// Prior information term for the affine-invariant metric. Depends only on
// (nu, p): the top-left p x p block is v v^T + diag(nu - i + 1) with
// v_i = 2i - 1, and each pair-kind basis element contributes the diagonal
// entry nu + p - 2 max(m, n) + 1.
FisherMatrix fprior_affine_invariant(double nu, int p);

// tr((n I + F_prior^AI)^-1); independent of the prior center.
BoundReport bicrb_affine_invariant(double nu, int p, int n);

} // namespace ibcrb

#endif
