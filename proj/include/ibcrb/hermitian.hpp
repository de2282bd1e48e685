#ifndef IBCRB_HERMITIAN_HPP
#define IBCRB_HERMITIAN_HPP

#include <Eigen/Dense>
#include <complex>

#include "ibcrb/errors.hpp"

namespace ibcrb {

using Complex = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using RMatrix = Eigen::MatrixXd;
using RVector = Eigen::VectorXd;

namespace tol {
// Relative asymmetry accepted (and absorbed) at construction.
inline constexpr double hermitian_asymmetry = 1e-12;
// Relative positive-definiteness threshold: lambda_min > pd * lambda_max.
inline constexpr double positive_definite = 1e-12;
} // namespace tol

// Dense complex Hermitian matrix. Construction enforces the symmetry
// invariant: inputs within the asymmetry tolerance are hermitized (absorbing
// float drift from accumulated outer products), anything worse is rejected.
class HermitianMatrix {
public:
    explicit HermitianMatrix(CMatrix m);

    static HermitianMatrix zero(int p) { return HermitianMatrix(CMatrix::Zero(p, p)); }
    static HermitianMatrix identity(int p) { return HermitianMatrix(CMatrix::Identity(p, p)); }

    int dim() const { return static_cast<int>(m_.rows()); }
    const CMatrix& mat() const { return m_; }

private:
    CMatrix m_;
};

// Hermitian positive definite matrix; all eigenvalues strictly positive
// relative to the largest one.
class HpdMatrix {
public:
    explicit HpdMatrix(HermitianMatrix base);
    explicit HpdMatrix(CMatrix m) : HpdMatrix(HermitianMatrix(std::move(m))) {}

    static HpdMatrix identity(int p) { return HpdMatrix(HermitianMatrix::identity(p)); }

    int dim() const { return base_.dim(); }
    const CMatrix& mat() const { return base_.mat(); }
    const HermitianMatrix& hermitian() const { return base_; }

private:
    HermitianMatrix base_;
};

// Lower triangular Cholesky factor with real positive diagonal.
class LowerTriangularFactor {
public:
    explicit LowerTriangularFactor(CMatrix lower);

    int dim() const { return static_cast<int>(l_.rows()); }
    const CMatrix& lower() const { return l_; }

    CMatrix reconstruct() const { return l_ * l_.adjoint(); }

    // Solve L x = b.
    CMatrix forward_solve(const CMatrix& b) const;
    // Solve L^H x = b.
    CMatrix adjoint_solve(const CMatrix& b) const;

private:
    CMatrix l_;
};

// L L^H = m, pivot failure reported as NotPositiveDefinite.
LowerTriangularFactor cholesky(const HpdMatrix& m);

struct EighResult {
    RVector eigenvalues; // ascending
    CMatrix eigenvectors; // unitary, columns matching eigenvalues
};

// Hermitian eigendecomposition, m = U diag(lambda) U^H.
EighResult eigh(const HermitianMatrix& m);

// Principal matrix logarithm of an HPD matrix (Hermitian result).
HermitianMatrix matrix_log_hpd(const HpdMatrix& m);

// Matrix exponential of a Hermitian matrix (HPD result).
HpdMatrix matrix_exp_hermitian(const HermitianMatrix& m);

// Solve m x = rhs through the Cholesky factorization.
CMatrix solve_hpd(const HpdMatrix& m, const CMatrix& rhs);

// Inverse of an HPD matrix, itself HPD.
HpdMatrix inverse_hpd(const HpdMatrix& m);

// log det of an HPD matrix via the Cholesky diagonal.
double log_det_hpd(const HpdMatrix& m);

} // namespace ibcrb

#endif
