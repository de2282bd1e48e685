#include "ibcrb/moments.hpp"

#include <cmath>
#include <string>

namespace ibcrb {

namespace {

double trace_re(const CMatrix& m) { return m.trace().real(); }

// Streaming mean/variance accumulator (Welford); single pass, fixed order.
class RunningStats {
public:
    void add(double x) {
        ++count_;
        const double delta = x - mean_;
        mean_ += delta / static_cast<double>(count_);
        m2_ += delta * (x - mean_);
    }

    MomentEstimate estimate() const {
        MomentEstimate e;
        e.mean = mean_;
        e.n_samples = count_;
        if (count_ > 1) {
            const double var = m2_ / static_cast<double>(count_ - 1);
            e.std_error = std::sqrt(var / static_cast<double>(count_));
        }
        return e;
    }

private:
    std::int64_t count_ = 0;
    double mean_ = 0.0;
    double m2_ = 0.0;
};

void check_mc_size(std::int64_t n_samples) {
    if (n_samples < 100) {
        throw ConfigError("Monte Carlo estimates need at least 100 samples");
    }
}

} // namespace

CMatrix sample_complex_wishart(const HpdMatrix& sigma, int dof, RngStream& rng) {
    const int p = sigma.dim();
    if (dof < p) {
        throw InvalidDegreesOfFreedom("Wishart draw needs dof >= p, got dof = " +
                                      std::to_string(dof));
    }
    const HpdMatrix scale(CMatrix(sigma.mat() / static_cast<double>(dof)));
    const LowerTriangularFactor c = cholesky(scale);
    const CMatrix a = sample_bartlett_lower(p, static_cast<double>(dof), rng);
    const CMatrix t = c.lower().triangularView<Eigen::Lower>() * a;
    return t * t.adjoint();
}

MomentEstimate lemma_trace_moment_mc(const HermitianMatrix& a,
                                     const HermitianMatrix& b,
                                     const HermitianMatrix& c,
                                     const HpdMatrix& sigma,
                                     int dof,
                                     std::int64_t n_samples,
                                     RngStream& rng) {
    check_mc_size(n_samples);
    RunningStats stats;
    for (std::int64_t k = 0; k < n_samples; ++k) {
        const CMatrix s = sample_complex_wishart(sigma, dof, rng);
        stats.add((trace_re(a.mat() * s * b.mat() * s)) * trace_re(c.mat() * s));
    }
    return stats.estimate();
}

double lemma_trace_moment_rhs(const HermitianMatrix& a,
                              const HermitianMatrix& b,
                              const HermitianMatrix& c,
                              const HpdMatrix& sigma,
                              int dof) {
    const double k = static_cast<double>(dof);
    const CMatrix as = a.mat() * sigma.mat();
    const CMatrix bs = b.mat() * sigma.mat();
    const CMatrix cs = c.mat() * sigma.mat();
    const double t_a = trace_re(as);
    const double t_b = trace_re(bs);
    const double t_c = trace_re(cs);

    const double leading = trace_re(as * bs) * t_c;
    const double order1 =
        trace_re(as * bs * cs) + trace_re(as * cs * bs) + t_a * t_b * t_c;
    const double order2 = trace_re(as * cs) * t_b + trace_re(bs * cs) * t_a;
    return leading + order1 / k + order2 / (k * k);
}

MomentEstimate lemma_trace_moment_second_mc(const HermitianMatrix& a,
                                            const HermitianMatrix& b,
                                            const HermitianMatrix& c,
                                            const HermitianMatrix& d,
                                            const HpdMatrix& sigma,
                                            int dof,
                                            std::int64_t n_samples,
                                            RngStream& rng) {
    check_mc_size(n_samples);
    RunningStats stats;
    for (std::int64_t k = 0; k < n_samples; ++k) {
        const CMatrix s = sample_complex_wishart(sigma, dof, rng);
        stats.add(trace_re(a.mat() * s * b.mat() * s) *
                  trace_re(c.mat() * s * d.mat() * s));
    }
    return stats.estimate();
}

double lemma_trace_moment_second_rhs(const HermitianMatrix& a,
                                     const HermitianMatrix& b,
                                     const HermitianMatrix& c,
                                     const HermitianMatrix& d,
                                     const HpdMatrix& sigma,
                                     int dof) {
    const double k = static_cast<double>(dof);
    const CMatrix as = a.mat() * sigma.mat();
    const CMatrix bs = b.mat() * sigma.mat();
    const CMatrix cs = c.mat() * sigma.mat();
    const CMatrix ds = d.mat() * sigma.mat();
    const double t_a = trace_re(as);
    const double t_b = trace_re(bs);
    const double t_c = trace_re(cs);
    const double t_d = trace_re(ds);

    const double leading = trace_re(as * bs) * trace_re(cs * ds);
    const double order1 = trace_re(as * bs * cs * ds) + trace_re(as * cs * ds * bs) +
                          trace_re(as * bs * ds * cs) + trace_re(as * ds * cs * bs) +
                          trace_re(as * bs) * t_c * t_d + trace_re(cs * ds) * t_a * t_b;
    const double order2 =
        trace_re(as * ds * bs) * t_c + trace_re(as * cs * bs) * t_d +
        trace_re(as * ds) * trace_re(bs * cs) + trace_re(as * bs * ds) * t_c +
        trace_re(as * bs * cs) * t_d + trace_re(as * cs) * trace_re(bs * ds) +
        t_a * t_b * t_c * t_d + trace_re(bs * cs * ds) * t_a +
        trace_re(as * cs * ds) * t_b + trace_re(as * ds * cs) * t_b +
        trace_re(bs * ds * cs) * t_a;
    const double order3 = trace_re(as * ds * bs * cs) + trace_re(as * cs) * t_b * t_d +
                          trace_re(as * ds) * t_b * t_c + trace_re(bs * cs) * t_a * t_d +
                          trace_re(bs * ds) * t_a * t_c + trace_re(as * cs * bs * ds);
    return leading + order1 / k + order2 / (k * k) + order3 / (k * k * k);
}

namespace {

// One precision-matrix draw W = Sigma^-1 under the prior, reusing the
// Bartlett machinery of the sampler without the final inversion.
CMatrix sample_precision_iw(const LowerTriangularFactor& chol_sigma0_inv,
                            double nu, int p, RngStream& rng) {
    const CMatrix a = sample_bartlett_lower(p, nu, rng);
    const CMatrix t = chol_sigma0_inv.lower().triangularView<Eigen::Lower>() * a;
    return (t * t.adjoint()) / (nu - p);
}

} // namespace

MomentEstimate t_term_mc(const InverseWishartPrior& prior,
                         const BasisIndex& i,
                         const BasisIndex& j,
                         TraceTerm which,
                         std::int64_t n_samples,
                         RngStream& rng) {
    check_mc_size(n_samples);
    const int p = prior.dim();
    const CMatrix oi = canonical_basis(p, i).mat();
    const CMatrix oj = canonical_basis(p, j).mat();
    const CMatrix& s0 = prior.sigma0().mat();
    const LowerTriangularFactor l = cholesky(inverse_hpd(prior.sigma0()));
    RunningStats stats;
    for (std::int64_t k = 0; k < n_samples; ++k) {
        const CMatrix w = sample_precision_iw(l, prior.nu(), p, rng);
        double x = 0.0;
        switch (which) {
            case TraceTerm::T1:
                x = trace_re(w * oi) * trace_re(w * oj);
                break;
            case TraceTerm::T2:
                x = trace_re(w * oi * w * s0) * trace_re(w * oj * w * s0);
                break;
            case TraceTerm::T3:
                x = trace_re(w * oj) * trace_re(w * oi * w * s0);
                break;
            case TraceTerm::T4:
                x = trace_re(w * oi * w * oj);
                break;
        }
        stats.add(x);
    }
    return stats.estimate();
}

double t_term_closed_form(const HpdMatrix& sigma0,
                          double nu,
                          const BasisIndex& i,
                          const BasisIndex& j,
                          TraceTerm which) {
    const int p = sigma0.dim();
    if (!(nu > p)) {
        throw InvalidDegreesOfFreedom("closed-form trace expectations need nu > p");
    }
    const CMatrix s0_inv = solve_hpd(sigma0, CMatrix::Identity(p, p));
    const CMatrix oi = canonical_basis(p, i).mat();
    const CMatrix oj = canonical_basis(p, j).mat();
    const double a = trace_re(s0_inv * oi) * trace_re(s0_inv * oj);
    const double b = trace_re(s0_inv * oi * s0_inv * oj);
    const double q = nu - p;
    switch (which) {
        case TraceTerm::T1:
            return (nu * nu * a + nu * b) / (q * q);
        case TraceTerm::T2:
            return (std::pow(nu, 4) * a + std::pow(nu, 3) * (4.0 * b + 2.0 * p * a) +
                    nu * nu * (5.0 * a + 5.0 * p * b + p * p * a) +
                    nu * (3.0 * p * a + 2.0 * b + p * p * b)) /
                   std::pow(q, 4);
        case TraceTerm::T3:
            return (std::pow(nu, 3) * a + nu * nu * (2.0 * b + p * a) +
                    nu * (p * b + a)) /
                   std::pow(q, 3);
        case TraceTerm::T4:
            return (nu * nu * b + nu * a) / (q * q);
    }
    throw Error("unreachable trace term");
}

MomentEstimate ai_prior_f_mc(double nu, int p, const BasisIndex& i,
                             std::int64_t n_samples, RngStream& rng) {
    check_mc_size(n_samples);
    const CMatrix oi = canonical_basis(p, i).mat();
    RunningStats stats;
    for (std::int64_t k = 0; k < n_samples; ++k) {
        const CMatrix a = sample_bartlett_lower(p, nu, rng);
        stats.add(trace_re(a * oi * a.adjoint()));
    }
    return stats.estimate();
}

MomentEstimate ai_prior_fbar_mc(double nu, int p, const BasisIndex& i,
                                const BasisIndex& j, std::int64_t n_samples,
                                RngStream& rng) {
    check_mc_size(n_samples);
    const CMatrix oi = canonical_basis(p, i).mat();
    const CMatrix oj = canonical_basis(p, j).mat();
    RunningStats stats;
    for (std::int64_t k = 0; k < n_samples; ++k) {
        const CMatrix a = sample_bartlett_lower(p, nu, rng);
        stats.add(trace_re(a * oi * a.adjoint()) * trace_re(a * oj * a.adjoint()));
    }
    return stats.estimate();
}

double ai_prior_f(double nu, int p, const BasisIndex& i) {
    if (!(nu > p)) {
        throw InvalidDegreesOfFreedom("prior moments need nu > p");
    }
    if (i.kind != BasisIndex::Kind::Diagonal) {
        return 0.0;
    }
    return nu + p - 2.0 * i.i + 1.0;
}

double ai_prior_fbar(double nu, int p, const BasisIndex& i, const BasisIndex& j) {
    if (!(nu > p)) {
        throw InvalidDegreesOfFreedom("prior moments need nu > p");
    }
    const bool di = i.kind == BasisIndex::Kind::Diagonal;
    const bool dj = j.kind == BasisIndex::Kind::Diagonal;
    if (di && dj) {
        if (i.i == j.i) {
            // second moment of one column's squared norm: the Gamma diagonal
            // entry contributes variance nu - i + 1, the p - i unit-variance
            // off-diagonal moduli contribute the rest
            const double f = nu + p - 2.0 * i.i + 1.0;
            return f + f * f;
        }
        return (nu + p - 2.0 * i.i + 1.0) * (nu + p - 2.0 * j.i + 1.0);
    }
    if (di != dj) {
        return 0.0;
    }
    // Same pair kind with the same (m, n) is the only surviving combination.
    if (i.kind == j.kind && i.m == j.m && i.n == j.n) {
        return nu + p - 2.0 * std::max(i.m, i.n) + 1.0;
    }
    return 0.0;
}

FisherMatrix ai_prior_fisher_from_moments(double nu, int p) {
    if (!(nu > p)) {
        throw InvalidDegreesOfFreedom("prior moments need nu > p");
    }
    const auto indices = BasisIndex::all(p);
    const int d = p * p;
    RMatrix f(d, d);
    for (int a = 0; a < d; ++a) {
        const double tr_a = indices[a].kind == BasisIndex::Kind::Diagonal ? 1.0 : 0.0;
        const double f_a = ai_prior_f(nu, p, indices[a]);
        for (int b = a; b < d; ++b) {
            const double tr_b = indices[b].kind == BasisIndex::Kind::Diagonal ? 1.0 : 0.0;
            const double f_b = ai_prior_f(nu, p, indices[b]);
            const double value = (nu + p) * (nu + p) * tr_a * tr_b +
                                 ai_prior_fbar(nu, p, indices[a], indices[b]) -
                                 (nu + p) * (tr_a * f_b + tr_b * f_a);
            f(a, b) = value;
            f(b, a) = value;
        }
    }
    return FisherMatrix(p, std::move(f));
}

namespace {

MatrixEstimate matrix_estimate_from_sums(RMatrix sum, RMatrix sum_sq, std::int64_t n) {
    MatrixEstimate est;
    est.n_samples = n;
    const double dn = static_cast<double>(n);
    est.mean = sum / dn;
    RMatrix var = (sum_sq - dn * est.mean.cwiseProduct(est.mean)) / (dn - 1.0);
    est.std_error = (var.cwiseMax(0.0) / dn).cwiseSqrt();
    return est;
}

} // namespace

MatrixEstimate mc_fprior_euclidean(const HpdMatrix& sigma0, double nu,
                                   std::int64_t n_samples, RngStream& rng) {
    check_mc_size(n_samples);
    const int p = sigma0.dim();
    const int d = p * p;
    InverseWishartPrior prior(sigma0, nu);
    const LowerTriangularFactor l = cholesky(inverse_hpd(sigma0));
    std::vector<CMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d));
    for (const BasisIndex& idx : BasisIndex::all(p)) {
        basis.push_back(canonical_basis(p, idx).mat());
    }
    RMatrix sum = RMatrix::Zero(d, d);
    RMatrix sum_sq = RMatrix::Zero(d, d);
    RVector score(d);
    for (std::int64_t k = 0; k < n_samples; ++k) {
        const CMatrix w = sample_precision_iw(l, nu, p, rng);
        const CMatrix ws0w = w * sigma0.mat() * w;
        for (int i = 0; i < d; ++i) {
            // directional derivative of the log prior density along basis[i]
            score(i) = -(nu + p) * trace_re(w * basis[i]) +
                       (nu - p) * trace_re(ws0w * basis[i]);
        }
        const RMatrix outer = score * score.transpose();
        sum += outer;
        sum_sq += outer.cwiseProduct(outer);
    }
    return matrix_estimate_from_sums(std::move(sum), std::move(sum_sq), n_samples);
}

MatrixEstimate mc_fprior_affine_invariant(double nu, int p,
                                          std::int64_t n_samples, RngStream& rng) {
    check_mc_size(n_samples);
    if (!(nu > p)) {
        throw InvalidDegreesOfFreedom("prior moments need nu > p");
    }
    const int d = p * p;
    std::vector<CMatrix> basis;
    basis.reserve(static_cast<std::size_t>(d));
    RVector basis_trace(d);
    int k = 0;
    for (const BasisIndex& idx : BasisIndex::all(p)) {
        basis.push_back(canonical_basis(p, idx).mat());
        basis_trace(k) = basis.back().trace().real();
        ++k;
    }
    RMatrix sum = RMatrix::Zero(d, d);
    RMatrix sum_sq = RMatrix::Zero(d, d);
    RVector w(d);
    for (std::int64_t s = 0; s < n_samples; ++s) {
        const CMatrix a = sample_bartlett_lower(p, nu, rng);
        const CMatrix gram = a.adjoint() * a;
        for (int i = 0; i < d; ++i) {
            w(i) = trace_re(basis[i] * gram);
        }
        // score products in the prior-adapted basis: the single-trace factor
        // is tr(O_i), the quadratic one is tr(A O_i A^H)
        const RMatrix outer =
            (nu + p) * (nu + p) * basis_trace * basis_trace.transpose() +
            w * w.transpose() -
            (nu + p) * (basis_trace * w.transpose() + w * basis_trace.transpose());
        sum += outer;
        sum_sq += outer.cwiseProduct(outer);
    }
    return matrix_estimate_from_sums(std::move(sum), std::move(sum_sq), n_samples);
}

} // namespace ibcrb
