#include "ibcrb/distributions.hpp"

#include <cmath>
#include <string>

namespace ibcrb {

InverseWishartPrior::InverseWishartPrior(HpdMatrix sigma0, double nu)
    : sigma0_(std::move(sigma0)), nu_(nu) {
    if (!(nu_ > sigma0_.dim())) {
        throw InvalidDegreesOfFreedom("nu = " + std::to_string(nu_) +
                                      " must exceed the dimension p = " +
                                      std::to_string(sigma0_.dim()));
    }
}

CMatrix sample_bartlett_lower(int p, double dof, RngStream& rng) {
    if (!(dof > p - 1)) {
        throw InvalidDegreesOfFreedom("Bartlett factor needs dof > p - 1, got dof = " +
                                      std::to_string(dof) + ", p = " + std::to_string(p));
    }
    CMatrix a = CMatrix::Zero(p, p);
    for (int i = 0; i < p; ++i) {
        for (int j = 0; j < i; ++j) {
            a(i, j) = rng.complex_normal();
        }
        a(i, i) = std::sqrt(rng.gamma(dof - i)); // shape dof - (i+1) + 1
    }
    return a;
}

std::vector<CVector> sample_complex_gaussian(const GaussianModel& model,
                                             int n,
                                             RngStream& rng) {
    if (n < 1) {
        throw ConfigError("sample count must be >= 1, got " + std::to_string(n));
    }
    const int p = model.dim();
    const LowerTriangularFactor l = cholesky(model.sigma);
    std::vector<CVector> out;
    out.reserve(static_cast<std::size_t>(n));
    CVector z(p);
    for (int k = 0; k < n; ++k) {
        for (int c = 0; c < p; ++c) {
            z(c) = rng.complex_normal();
        }
        out.emplace_back(l.lower().triangularView<Eigen::Lower>() * z);
    }
    return out;
}

HpdMatrix sample_inverse_wishart(const InverseWishartPrior& prior, RngStream& rng) {
    const int p = prior.dim();
    const double nu = prior.nu();
    const LowerTriangularFactor l = cholesky(inverse_hpd(prior.sigma0()));
    const CMatrix a = sample_bartlett_lower(p, nu, rng);
    // Sigma = (nu - p) (T T^H)^-1 = (nu - p) T^-H T^-1 with T = L A lower triangular.
    const CMatrix t = l.lower().triangularView<Eigen::Lower>() * a;
    const CMatrix t_inv =
        t.triangularView<Eigen::Lower>().solve(CMatrix::Identity(p, p));
    CMatrix sigma = (nu - p) * (t_inv.adjoint() * t_inv);
    return HpdMatrix(std::move(sigma));
}

double log_likelihood_gaussian(const HpdMatrix& sigma,
                               const std::vector<CVector>& samples) {
    const LowerTriangularFactor l = cholesky(sigma);
    double log_det = 0.0;
    for (int i = 0; i < sigma.dim(); ++i) {
        log_det += 2.0 * std::log(l.lower()(i, i).real());
    }
    double quad = 0.0;
    for (const CVector& y : samples) {
        if (y.size() != sigma.dim()) {
            throw DimMismatch("sample dimension does not match the covariance");
        }
        const CVector w = l.lower().triangularView<Eigen::Lower>().solve(y);
        quad += w.squaredNorm();
    }
    return -static_cast<double>(samples.size()) * log_det - quad;
}

double log_pdf_inverse_wishart(const HpdMatrix& sigma,
                               const InverseWishartPrior& prior) {
    if (sigma.dim() != prior.dim()) {
        throw DimMismatch("density argument dimension does not match the prior");
    }
    const double p = prior.dim();
    const double nu = prior.nu();
    const double trace_term = solve_hpd(sigma, prior.sigma0().mat()).trace().real();
    return -(nu + p) * log_det_hpd(sigma) - (nu - p) * trace_term;
}

PosteriorParams posterior_params(const InverseWishartPrior& prior,
                                 const std::vector<CVector>& samples) {
    const int p = prior.dim();
    CMatrix scale = (prior.nu() - p) * prior.sigma0().mat();
    for (const CVector& y : samples) {
        if (y.size() != p) {
            throw DimMismatch("sample dimension does not match the prior");
        }
        scale.selfadjointView<Eigen::Lower>().rankUpdate(y, 1.0);
    }
    scale = CMatrix(scale.selfadjointView<Eigen::Lower>());
    return {HpdMatrix(std::move(scale)), prior.nu() + static_cast<double>(samples.size())};
}

} // namespace ibcrb
