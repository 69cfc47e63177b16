#ifndef QUADDEC_CIRCLE_HPP
#define QUADDEC_CIRCLE_HPP

#include "quaddec/bivariate.hpp"

namespace quaddec::circle {

// Half-width of the band around |z| = 1 inside which a pole of the
// holomorphic restriction is treated as sitting on the circle.
inline constexpr double boundary_band = 1e-8;

enum class Form { poles_outside, poles_inside, holo_restriction, antiholo_restriction };

inline const char* form_name(Form f) {
    switch (f) {
        case Form::poles_outside: return "poles_outside";
        case Form::poles_inside: return "poles_inside";
        case Form::holo_restriction: return "holo_restriction";
        case Form::antiholo_restriction: return "antiholo_restriction";
    }
    return "?";
}

// One of the four representations of R(z, zbar) on |z| = 1:
// boundary values are r1(z) + conj(r2(z)). The additive constant always
// lives in the list flagged by constant_in_r1 (r1 except for the pure
// antiholomorphic restriction). has_boundary_poles marks data that lies in
// the full restriction field but not in its singularity-free subspace;
// such pole terms are kept in r1 by convention.
struct CircleDecomposition {
    Form form = Form::poles_outside;
    RationalFunction r1, r2;
    bool constant_in_r1 = true;
    bool has_boundary_poles = false;

    cplx operator()(cplx z) const { return r1(z) + std::conj(r2(z)); }
};

// Substitute zbar -> 1/z: the restriction of R to the unit circle as a
// holomorphic rational function (the Schwarz function of the circle).
inline RationalFunction holo_restriction(const BivariateRational& R, double tol = 1e-9) {
    if (R.degenerate_on_circle())
        throw degenerate_data_error(
            "holo_restriction: denominator vanishes identically on |z| = 1");
    auto substitute = [](const BivariatePoly& p) {
        if (p.is_zero()) return ComplexPoly::zero();
        const int J = p.deg_zbar();
        std::vector<cplx> c(static_cast<size_t>(p.deg_z() + J) + 1, cplx(0.0));
        for (int i = 0; i <= p.deg_z(); ++i)
            for (int j = 0; j <= p.deg_zbar(); ++j)
                c[static_cast<size_t>(i - j + J)] += p.coeff(i, j);
        return ComplexPoly(std::move(c));
    };
    const int Jn = std::max(R.num.deg_zbar(), 0);
    const int Jd = std::max(R.den.deg_zbar(), 0);
    ComplexPoly nz = substitute(R.num);
    ComplexPoly dz = substitute(R.den);
    if (dz.is_zero())
        throw degenerate_data_error("holo_restriction: denominator restricts to zero");
    if (nz.is_zero()) return RationalFunction();
    RationalFunction q(nz * ComplexPoly::monomial(Jd), dz * ComplexPoly::monomial(Jn));
    return q.normalized(tol);
}

namespace detail {

// A/(z-a)^k with |a| < 1 rewritten through z -> 1/zbar as the conjugate of
// a rational function with pole at 1/conj(a) (a = 0 gives a polynomial).
inline RationalFunction reflect_pole_term(cplx A, cplx a, int k) {
    const cplx Ab = std::conj(A), ab = std::conj(a);
    if (a == cplx(0.0)) return RationalFunction(ComplexPoly::monomial(k, Ab), ComplexPoly::one());
    ComplexPoly den = ComplexPoly::one();
    for (int i = 0; i < k; ++i) den = den * ComplexPoly({cplx(1.0), -ab});
    return RationalFunction(ComplexPoly::monomial(k, Ab), den);
}

}  // namespace detail

// The paper's decompositions of rational functions of z and zbar restricted
// to the unit circle. Pole terms of the holomorphic restriction within
// boundary_band of |z| = 1 are left unreflected in r1 and flagged.
inline CircleDecomposition decompose(const BivariateRational& R, Form form, double tol = 1e-9) {
    CircleDecomposition out;
    out.form = form;
    if (form == Form::holo_restriction) {
        out.r1 = holo_restriction(R, tol);
        out.r2 = RationalFunction();
        return out;
    }
    if (form == Form::antiholo_restriction) {
        out.r1 = RationalFunction();
        out.r2 = holo_restriction(R.conj_swap(), tol);
        out.constant_in_r1 = false;
        return out;
    }

    const RationalFunction q = holo_restriction(R, tol);
    if (q.is_zero()) return out;
    const PartialFractions pf = partial_fractions(q, tol);

    RationalFunction r1, r2;
    cplx r1_const(0.0);

    auto classify = [&](cplx a) {
        double m = std::abs(a);
        if (std::abs(m - 1.0) < boundary_band) return 0;  // on the circle
        return m < 1.0 ? -1 : +1;
    };

    if (form == Form::poles_outside) {
        // keep polynomial part and outside poles holomorphic; reflect the
        // inside poles into the antiholomorphic half
        r1_const += pf.poly_part.coeff(0);
        ComplexPoly pp = pf.poly_part - ComplexPoly(pf.poly_part.coeff(0));
        r1 = r1 + RationalFunction(pp, ComplexPoly::one());
        for (const PFTerm& t : pf.terms) {
            int side = classify(t.pole);
            if (side >= 0) {
                if (side == 0) out.has_boundary_poles = true;
                ComplexPoly den = ComplexPoly::one();
                for (int i = 0; i < t.order; ++i) den = den * ComplexPoly({-t.pole, cplx(1.0)});
                r1 = r1 + RationalFunction(ComplexPoly(t.coeff), den);
            } else {
                RationalFunction piece = detail::reflect_pole_term(t.coeff, t.pole, t.order);
                // keep r2 free of a constant: its value at infinity moves,
                // conjugated, into the r1 constant
                if (t.pole != cplx(0.0)) {
                    cplx at_inf = piece.value_at_infinity();
                    piece = piece - at_inf;
                    r1_const += std::conj(at_inf);
                }
                r2 = r2 + piece;
            }
        }
    } else {  // poles_inside
        r1_const += pf.poly_part.coeff(0);
        // z^k for k >= 1 restricts to conj(zbar^-k): pure poles at 0 in r2
        for (int k = 1; k <= pf.poly_part.degree(); ++k)
            if (pf.poly_part.coeff(k) != cplx(0.0))
                r2 = r2 + RationalFunction(ComplexPoly(std::conj(pf.poly_part.coeff(k))),
                                           ComplexPoly::monomial(k));
        for (const PFTerm& t : pf.terms) {
            int side = classify(t.pole);
            if (side <= 0) {
                if (side == 0) out.has_boundary_poles = true;
                ComplexPoly den = ComplexPoly::one();
                for (int i = 0; i < t.order; ++i) den = den * ComplexPoly({-t.pole, cplx(1.0)});
                r1 = r1 + RationalFunction(ComplexPoly(t.coeff), den);
            } else {
                // outside pole reflects to 1/conj(pole), strictly inside;
                // these pieces vanish at 0, so no constant leaks into r2
                r2 = r2 + detail::reflect_pole_term(t.coeff, t.pole, t.order);
            }
        }
    }

    out.r1 = (r1 + r1_const).normalized(tol);
    out.r2 = r2.normalized(tol);
    return out;
}

struct UniquenessReport {
    // deviation of r1 - r1' (resp. r2 - r2') from its mean over the samples
    double r1_constancy = 0.0, r2_constancy = 0.0;
    cplx r1_shift, r2_shift;  // the means
    // max pointwise difference; zero iff both decompositions place the
    // constant per the convention
    double convention_residual = 0.0;
};

// Compares two decompositions of the same data in the same form: the parts
// must differ by at most an additive constant, and by nothing at all once
// the constant-location convention is enforced.
inline UniquenessReport uniqueness_check(const CircleDecomposition& d1,
                                         const CircleDecomposition& d2, int samples = 64) {
    UniquenessReport rep;
    std::vector<cplx> diff1(static_cast<size_t>(samples)), diff2(static_cast<size_t>(samples));
    cplx m1(0.0), m2(0.0);
    for (int k = 0; k < samples; ++k) {
        cplx z = std::polar(1.0, 2.0 * pi * (k + 0.5) / samples);
        diff1[static_cast<size_t>(k)] = d1.r1(z) - d2.r1(z);
        diff2[static_cast<size_t>(k)] = d1.r2(z) - d2.r2(z);
        m1 += diff1[static_cast<size_t>(k)];
        m2 += diff2[static_cast<size_t>(k)];
    }
    m1 /= double(samples);
    m2 /= double(samples);
    rep.r1_shift = m1;
    rep.r2_shift = m2;
    for (int k = 0; k < samples; ++k) {
        rep.r1_constancy = std::max(rep.r1_constancy, std::abs(diff1[static_cast<size_t>(k)] - m1));
        rep.r2_constancy = std::max(rep.r2_constancy, std::abs(diff2[static_cast<size_t>(k)] - m2));
        rep.convention_residual = std::max(
            {rep.convention_residual, std::abs(diff1[static_cast<size_t>(k)]),
             std::abs(diff2[static_cast<size_t>(k)])});
    }
    return rep;
}

}  // namespace quaddec::circle

#endif
