#include "ibcrb/estimators.hpp"

namespace ibcrb {

namespace {

CMatrix sum_outer(const std::vector<CVector>& samples, int p) {
    CMatrix acc = CMatrix::Zero(p, p);
    for (const CVector& y : samples) {
        if (y.size() != p) {
            throw DimMismatch("sample dimension varies within the set");
        }
        acc.selfadjointView<Eigen::Lower>().rankUpdate(y, 1.0);
    }
    return CMatrix(acc.selfadjointView<Eigen::Lower>());
}

} // namespace

HermitianMatrix scm(const std::vector<CVector>& samples) {
    if (samples.empty()) {
        throw EmptySampleSet("sample covariance of an empty sample set");
    }
    const int p = static_cast<int>(samples.front().size());
    return HermitianMatrix(sum_outer(samples, p) / static_cast<double>(samples.size()));
}

HpdMatrix map_iw(const InverseWishartPrior& prior, const std::vector<CVector>& samples) {
    const int p = prior.dim();
    const double n = static_cast<double>(samples.size());
    const CMatrix numerator =
        (prior.nu() - p) * prior.sigma0().mat() + sum_outer(samples, p);
    return HpdMatrix(CMatrix(numerator / (prior.nu() + n + p)));
}

HpdMatrix mmse_iw(const InverseWishartPrior& prior, const std::vector<CVector>& samples) {
    const int p = prior.dim();
    const double n = static_cast<double>(samples.size());
    if (!(prior.nu() + n > p)) {
        throw InvalidDegreesOfFreedom("posterior mean needs nu + n > p");
    }
    const CMatrix numerator =
        (prior.nu() - p) * prior.sigma0().mat() + sum_outer(samples, p);
    return HpdMatrix(CMatrix(numerator / (prior.nu() + n - p)));
}

} // namespace ibcrb
