#include "ibcrb/hermitian.hpp"

#include <cmath>
#include <utility>

namespace ibcrb {

HermitianMatrix::HermitianMatrix(CMatrix m) {
    if (m.rows() != m.cols() || m.rows() == 0) {
        throw DimMismatch("Hermitian matrix must be square and non-empty, got " +
                          std::to_string(m.rows()) + "x" + std::to_string(m.cols()));
    }
    const double scale = m.cwiseAbs().maxCoeff();
    const double asym = (m - m.adjoint()).cwiseAbs().maxCoeff();
    if (asym > tol::hermitian_asymmetry * scale) {
        throw NotHermitian("asymmetry " + std::to_string(asym) +
                           " exceeds tolerance at scale " + std::to_string(scale));
    }
    m_ = 0.5 * (m + m.adjoint());
}

HpdMatrix::HpdMatrix(HermitianMatrix base) : base_(std::move(base)) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(base_.mat(), Eigen::EigenvaluesOnly);
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("eigenvalue check failed to converge");
    }
    const double lambda_min = solver.eigenvalues().minCoeff();
    const double lambda_max = solver.eigenvalues().maxCoeff();
    if (!(lambda_min > tol::positive_definite * lambda_max) || !(lambda_max > 0.0)) {
        throw NotPositiveDefinite("lambda_min " + std::to_string(lambda_min) +
                                  " vs lambda_max " + std::to_string(lambda_max));
    }
}

LowerTriangularFactor::LowerTriangularFactor(CMatrix lower) : l_(std::move(lower)) {
    if (l_.rows() != l_.cols()) {
        throw DimMismatch("triangular factor must be square");
    }
}

CMatrix LowerTriangularFactor::forward_solve(const CMatrix& b) const {
    if (b.rows() != l_.rows()) {
        throw DimMismatch("forward_solve dimension mismatch");
    }
    return l_.triangularView<Eigen::Lower>().solve(b);
}

CMatrix LowerTriangularFactor::adjoint_solve(const CMatrix& b) const {
    if (b.rows() != l_.rows()) {
        throw DimMismatch("adjoint_solve dimension mismatch");
    }
    return l_.adjoint().triangularView<Eigen::Upper>().solve(b);
}

LowerTriangularFactor cholesky(const HpdMatrix& m) {
    const CMatrix& a = m.mat();
    const int p = m.dim();
    CMatrix l = CMatrix::Zero(p, p);
    for (int j = 0; j < p; ++j) {
        double diag = a(j, j).real();
        for (int k = 0; k < j; ++k) {
            diag -= std::norm(l(j, k));
        }
        if (!(diag > 0.0)) {
            throw NotPositiveDefinite("non-positive pivot at column " + std::to_string(j));
        }
        l(j, j) = std::sqrt(diag);
        for (int i = j + 1; i < p; ++i) {
            Complex s = a(i, j);
            for (int k = 0; k < j; ++k) {
                s -= l(i, k) * std::conj(l(j, k));
            }
            l(i, j) = s / l(j, j).real();
        }
    }
    return LowerTriangularFactor(std::move(l));
}

EighResult eigh(const HermitianMatrix& m) {
    Eigen::SelfAdjointEigenSolver<CMatrix> solver(m.mat());
    if (solver.info() != Eigen::Success) {
        throw ConvergenceFailure("Hermitian eigensolver did not converge");
    }
    return {solver.eigenvalues(), solver.eigenvectors()};
}

namespace {

CMatrix apply_spectral(const EighResult& eg, double (*f)(double)) {
    RVector mapped = eg.eigenvalues.unaryExpr([f](double x) { return f(x); });
    return eg.eigenvectors * mapped.asDiagonal() * eg.eigenvectors.adjoint();
}

} // namespace

HermitianMatrix matrix_log_hpd(const HpdMatrix& m) {
    const EighResult eg = eigh(m.hermitian());
    return HermitianMatrix(apply_spectral(eg, +[](double x) { return std::log(x); }));
}

HpdMatrix matrix_exp_hermitian(const HermitianMatrix& m) {
    const EighResult eg = eigh(m);
    return HpdMatrix(apply_spectral(eg, +[](double x) { return std::exp(x); }));
}

CMatrix solve_hpd(const HpdMatrix& m, const CMatrix& rhs) {
    if (rhs.rows() != m.dim()) {
        throw DimMismatch("solve_hpd right-hand side has " + std::to_string(rhs.rows()) +
                          " rows, expected " + std::to_string(m.dim()));
    }
    const LowerTriangularFactor l = cholesky(m);
    return l.adjoint_solve(l.forward_solve(rhs));
}

HpdMatrix inverse_hpd(const HpdMatrix& m) {
    return HpdMatrix(solve_hpd(m, CMatrix::Identity(m.dim(), m.dim())));
}

double log_det_hpd(const HpdMatrix& m) {
    const LowerTriangularFactor l = cholesky(m);
    double acc = 0.0;
    for (int i = 0; i < m.dim(); ++i) {
        acc += std::log(l.lower()(i, i).real());
    }
    return 2.0 * acc;
}

} // namespace ibcrb
