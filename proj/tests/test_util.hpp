#ifndef IBCRB_TEST_UTIL_HPP
#define IBCRB_TEST_UTIL_HPP

#include "ibcrb/hermitian.hpp"
#include "ibcrb/rng.hpp"

namespace ibcrb::testutil {

inline CMatrix random_complex(int rows, int cols, RngStream& rng) {
    CMatrix m(rows, cols);
    for (int i = 0; i < rows; ++i) {
        for (int j = 0; j < cols; ++j) {
            m(i, j) = rng.complex_normal();
        }
    }
    return m;
}

inline HermitianMatrix random_hermitian(int p, RngStream& rng) {
    const CMatrix m = random_complex(p, p, rng);
    return HermitianMatrix(CMatrix(m + m.adjoint()));
}

inline HpdMatrix random_hpd(int p, RngStream& rng) {
    const CMatrix m = random_complex(p, p, rng);
    return HpdMatrix(CMatrix(m * m.adjoint() +
                             static_cast<double>(p) * CMatrix::Identity(p, p)));
}

inline double rel_err(double got, double want) {
    return std::abs(got - want) / std::abs(want);
}

inline double rel_frobenius(const CMatrix& got, const CMatrix& want) {
    return (got - want).norm() / want.norm();
}

} // namespace ibcrb::testutil

#endif
