#ifndef QUADDEC_TESTS_HELPERS_HPP
#define QUADDEC_TESTS_HELPERS_HPP

#include <random>

#include "quaddec/quaddec.hpp"

namespace qdtest {

using namespace quaddec;

inline cplx rand_cplx(std::mt19937_64& rng, double scale = 1.0) {
    std::uniform_real_distribution<double> u(-scale, scale);
    return {u(rng), u(rng)};
}

inline ComplexPoly random_poly(std::mt19937_64& rng, int degree, double scale = 1.0) {
    std::vector<cplx> c(static_cast<size_t>(degree) + 1);
    for (cplx& v : c) v = rand_cplx(rng, scale);
    if (std::abs(c.back()) < 0.1) c.back() += cplx(0.5, 0.0);
    return ComplexPoly(std::move(c));
}

// Independent root oracle: companion-matrix eigensolve (Eigen), no Aberth.
inline std::vector<cplx> companion_roots(const ComplexPoly& p) {
    return quaddec::detail::companion_eigenvalues(p / p.leading());
}

// Greedy nearest matching distance between two root multisets.
inline double root_match_distance(std::vector<cplx> a, std::vector<cplx> b) {
    double worst = 0.0;
    for (cplx x : a) {
        double best = 1e300;
        size_t bi = 0;
        for (size_t i = 0; i < b.size(); ++i)
            if (std::abs(b[i] - x) < best) {
                best = std::abs(b[i] - x);
                bi = i;
            }
        worst = std::max(worst, best);
        b.erase(b.begin() + static_cast<std::ptrdiff_t>(bi));
    }
    return worst;
}

inline std::vector<cplx> boundary_samples(int n, double offset = 0.5) {
    std::vector<cplx> out;
    for (int k = 0; k < n; ++k) out.push_back(std::polar(1.0, 2.0 * pi * (k + offset) / n));
    return out;
}

inline BivariateRational bivariate_zbar() {
    return {BivariatePoly::zbar(), BivariatePoly(cplx(1.0))};
}
inline BivariateRational bivariate_x() {
    // (z + zbar)/2
    return {(BivariatePoly::z() + BivariatePoly::zbar()) * cplx(0.5), BivariatePoly(cplx(1.0))};
}

}  // namespace qdtest

#endif
