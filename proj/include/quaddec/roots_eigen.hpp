#ifndef QUADDEC_ROOTS_EIGEN_HPP
#define QUADDEC_ROOTS_EIGEN_HPP

// Companion-matrix eigensolve, the fallback for stalled Aberth iterations
// and the independent oracle used by the tests. Separated so that Eigen is
// only a dependency of translation units that include this header (every
// binary in this project does, via quaddec.hpp).

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "quaddec/poly.hpp"

namespace quaddec::detail {

inline std::vector<cplx> companion_eigenvalues(const ComplexPoly& monic) {
    const int n = monic.degree();
    Eigen::MatrixXcd C = Eigen::MatrixXcd::Zero(n, n);
    for (int i = 1; i < n; ++i) C(i, i - 1) = 1.0;
    for (int i = 0; i < n; ++i) C(i, n - 1) = -monic.coeff(i) / monic.leading();
    Eigen::ComplexEigenSolver<Eigen::MatrixXcd> es(C, /*computeEigenvectors=*/false);
    std::vector<cplx> out(static_cast<size_t>(n));
    for (int i = 0; i < n; ++i) out[static_cast<size_t>(i)] = es.eigenvalues()(i);
    return out;
}

}  // namespace quaddec::detail

#endif
