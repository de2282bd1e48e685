#ifndef IBCRB_ESTIMATORS_HPP
#define IBCRB_ESTIMATORS_HPP

#include <vector>

#include "ibcrb/distributions.hpp"

namespace ibcrb {

// Sample covariance (1/n) sum_k y_k y_k^H; Hermitian PSD, positive definite
// only when n >= p with samples in general position.
HermitianMatrix scm(const std::vector<CVector>& samples);

// ((nu-p) sigma0 + sum_k y_k y_k^H) / (nu + n + p); posterior mode.
HpdMatrix map_iw(const InverseWishartPrior& prior, const std::vector<CVector>& samples);

// ((nu-p) sigma0 + sum_k y_k y_k^H) / (nu + n - p); posterior mean.
HpdMatrix mmse_iw(const InverseWishartPrior& prior, const std::vector<CVector>& samples);

} // namespace ibcrb

#endif
