#ifndef QUADDEC_CORPUS_HPP
#define QUADDEC_CORPUS_HPP

#include <random>

#include "quaddec/bivariate.hpp"

namespace quaddec::corpus {

inline cplx random_unit(std::mt19937_64& rng) {
    std::uniform_real_distribution<double> u(-1.0, 1.0);
    return {u(rng), u(rng)};
}

// Random rational boundary data with the denominator bounded away from zero
// on the annulus 0.9 < |z| < 1.1. Denominators are built as products of
// univariate factors with roots kept off the annulus, then certified by
// sampling; the construction retries until the certificate holds.
inline BivariateRational random_boundary_data(std::mt19937_64& rng, int max_deg = 3) {
    std::uniform_int_distribution<int> deg(0, max_deg);
    std::uniform_real_distribution<double> u01(0.0, 1.0);
    for (int attempt = 0; attempt < 64; ++attempt) {
        // numerator: dense random coefficients
        int dn_z = deg(rng), dn_b = deg(rng);
        std::vector<std::vector<cplx>> nc(static_cast<size_t>(dn_z) + 1,
                                          std::vector<cplx>(static_cast<size_t>(dn_b) + 1));
        for (auto& row : nc)
            for (cplx& v : row) v = random_unit(rng);
        BivariatePoly num(std::move(nc));

        // denominator: product of (z - a) and (zbar - b) factors with roots
        // off the annulus, either well inside or well outside
        BivariatePoly den(cplx(1.0));
        int nf = deg(rng);
        for (int i = 0; i < nf; ++i) {
            double r = (u01(rng) < 0.5) ? 0.65 * u01(rng) : 1.35 + u01(rng);
            cplx root = std::polar(r, 2.0 * pi * u01(rng));
            BivariatePoly var = (u01(rng) < 0.5) ? BivariatePoly::z() : BivariatePoly::zbar();
            den = den * (var + BivariatePoly(-root));
        }

        BivariateRational R(num, den);
        // certify: numerator nontrivial and denominator bounded below on the
        // annulus
        double dmin = std::numeric_limits<double>::infinity();
        for (double rad : {0.9, 1.0, 1.1})
            for (int k = 0; k < 96; ++k) {
                cplx z = std::polar(rad, 2.0 * pi * k / 96);
                dmin = std::min(dmin, std::abs(R.den.eval2(z, std::conj(z))));
            }
        if (dmin > 0.05 * std::max(R.den.coeff_scale(), 1e-30) &&
            num.coeff_scale() > 1e-3)
            return R;
    }
    throw qd_error("random_boundary_data: could not build certified data");
}

// Data whose boundary values on |z| = 1 are real: R + conj_swap(R) is real
// on the circle since zbar = conj z there.
inline BivariateRational random_real_boundary_data(std::mt19937_64& rng, int max_deg = 2) {
    BivariateRational r = random_boundary_data(rng, max_deg);
    BivariatePoly n = r.num * r.den.conj_swap() + r.num.conj_swap() * r.den;
    BivariatePoly d = r.den * r.den.conj_swap();
    return {n, d};
}

}  // namespace quaddec::corpus

#endif
