#ifndef IBCRB_DISTRIBUTIONS_HPP
#define IBCRB_DISTRIBUTIONS_HPP

#include <vector>

#include "ibcrb/hermitian.hpp"
#include "ibcrb/rng.hpp"

namespace ibcrb {

// Centered circular complex Gaussian, y ~ CN(0, sigma).
struct GaussianModel {
    HpdMatrix sigma;

    int dim() const { return sigma.dim(); }
};

// Inverse Wishart prior over the covariance, scaled so that the mean of a
// draw equals the center: Sigma ~ IW((nu - p) sigma0, nu), nu > p.
class InverseWishartPrior {
public:
    InverseWishartPrior(HpdMatrix sigma0, double nu);

    const HpdMatrix& sigma0() const { return sigma0_; }
    double nu() const { return nu_; }
    int dim() const { return sigma0_.dim(); }

private:
    HpdMatrix sigma0_;
    double nu_;
};

// Lower-triangular Bartlett factor A: off-diagonal entries CN(0,1), diagonal
// a_ii = sqrt(G) with G ~ Gamma(dof - i + 1, 1) (1-based i). Rows are filled
// top to bottom, off-diagonals left to right before the diagonal entry;
// this order is part of the reproducibility contract.
CMatrix sample_bartlett_lower(int p, double dof, RngStream& rng);

// n i.i.d. draws y_k = L z_k, L = chol(sigma), z entries CN(0,1).
std::vector<CVector> sample_complex_gaussian(const GaussianModel& model,
                                             int n,
                                             RngStream& rng);

// Draw from the prior: Sigma^-1 = (1/(nu-p)) L A A^H L^H with
// L = chol(sigma0^-1) and A a Bartlett factor of dof nu.
HpdMatrix sample_inverse_wishart(const InverseWishartPrior& prior, RngStream& rng);

// Unnormalized: -n log|Sigma| - sum_k y_k^H Sigma^-1 y_k.
double log_likelihood_gaussian(const HpdMatrix& sigma,
                               const std::vector<CVector>& samples);

// Unnormalized: -(nu+p) log|Sigma| - (nu-p) tr(Sigma^-1 sigma0).
double log_pdf_inverse_wishart(const HpdMatrix& sigma,
                               const InverseWishartPrior& prior);

// Conjugate update: scale (nu-p) sigma0 + sum_k y_k y_k^H, dof nu + n.
struct PosteriorParams {
    HpdMatrix scale;
    double dof;
};

PosteriorParams posterior_params(const InverseWishartPrior& prior,
                                 const std::vector<CVector>& samples);

} // namespace ibcrb

#endif
