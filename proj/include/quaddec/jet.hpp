#ifndef QUADDEC_JET_HPP
#define QUADDEC_JET_HPP

#include "quaddec/rational.hpp"

namespace quaddec {

// Truncated Taylor series sum c[k] t^k with complex coefficients.
// Taylor-mode differentiation of the kernel closed forms runs on these;
// finite differences appear only in test oracles.
class Jet {
public:
    explicit Jet(int order) : c(static_cast<size_t>(order) + 1, cplx(0.0)) {}
    Jet(int order, cplx constant) : Jet(order) { c[0] = constant; }

    // c0 + t
    static Jet variable(int order, cplx c0) {
        Jet j(order, c0);
        if (order >= 1) j.c[1] = cplx(1.0);
        return j;
    }

    int order() const { return static_cast<int>(c.size()) - 1; }

    std::vector<cplx> c;

    friend Jet operator+(const Jet& a, const Jet& b) {
        Jet out(a.order());
        for (size_t k = 0; k < out.c.size(); ++k) out.c[k] = a.c[k] + b.c[k];
        return out;
    }
    friend Jet operator-(const Jet& a, const Jet& b) {
        Jet out(a.order());
        for (size_t k = 0; k < out.c.size(); ++k) out.c[k] = a.c[k] - b.c[k];
        return out;
    }
    friend Jet operator*(const Jet& a, const Jet& b) {
        Jet out(a.order());
        for (size_t i = 0; i < a.c.size(); ++i) {
            if (a.c[i] == cplx(0.0)) continue;
            for (size_t j = 0; i + j < out.c.size() && j < b.c.size(); ++j)
                out.c[i + j] += a.c[i] * b.c[j];
        }
        return out;
    }
    friend Jet operator*(const Jet& a, cplx s) {
        Jet out(a.order());
        for (size_t k = 0; k < out.c.size(); ++k) out.c[k] = a.c[k] * s;
        return out;
    }
    friend Jet operator*(cplx s, const Jet& a) { return a * s; }
};

// Power-series reciprocal; requires nonzero constant term.
inline Jet recip(const Jet& b) {
    if (b.c[0] == cplx(0.0)) throw domain_error("Jet recip: zero constant term");
    Jet r(b.order());
    const cplx inv0 = cplx(1.0) / b.c[0];
    r.c[0] = inv0;
    for (size_t k = 1; k < r.c.size(); ++k) {
        cplx acc(0.0);
        for (size_t j = 1; j <= k && j < b.c.size(); ++j) acc += b.c[j] * r.c[k - j];
        r.c[k] = -acc * inv0;
    }
    return r;
}

inline Jet operator/(const Jet& a, const Jet& b) { return a * recip(b); }

// p(x0 + ...) by Horner on the jet.
inline Jet eval_poly(const ComplexPoly& p, const Jet& x) {
    Jet acc(x.order());
    for (size_t i = p.coeffs().size(); i-- > 0;) {
        acc = acc * x;
        acc.c[0] += p.coeffs()[i];
    }
    return acc;
}

inline Jet eval_rational(const RationalFunction& r, const Jet& x) {
    return eval_poly(r.num(), x) / eval_poly(r.den(), x);
}

// f(g) for jets; g must have zero constant term (coefficients of f are read
// as Taylor coefficients about the expansion point already).
inline Jet compose(const Jet& f, const Jet& g) {
    Jet acc(g.order());
    for (size_t i = f.c.size(); i-- > 0;) {
        acc = acc * g;
        acc.c[0] += f.c[i];
    }
    return acc;
}

// Compositional inverse. Input: jet F of an analytic map at a point with
// F.c[1] != 0. Output: jet G with zero constant term such that
// F(x0 + G(t)) = F.c[0] + t through the truncation order. Newton in the
// power-series ring.
inline Jet inverse_jet(const Jet& F) {
    const int n = F.order();
    if (n < 1) return Jet(0);
    if (F.c[1] == cplx(0.0)) throw domain_error("inverse_jet: vanishing first derivative");
    Jet shifted = F;
    shifted.c[0] = cplx(0.0);
    Jet dF(n);  // series of F' about the expansion point
    for (int k = 0; k + 1 <= n; ++k)
        dF.c[static_cast<size_t>(k)] = F.c[static_cast<size_t>(k) + 1] * double(k + 1);

    Jet t = Jet::variable(n, cplx(0.0));
    Jet G(n);
    G.c[1] = cplx(1.0) / F.c[1];
    int steps = 1;
    while ((1 << steps) <= n + 1) ++steps;
    for (int it = 0; it < steps; ++it) {
        Jet val = compose(shifted, G) - t;
        Jet dval = compose(dF, G);
        G = G - val / dval;
        G.c[0] = cplx(0.0);
    }
    return G;
}

// Laurent principal part of r at a pole of known order: returns pp with
// pp[j-1] the coefficient of (w - w0)^(-j), j = 1..order. The pole's factor
// is removed from the denominator by synthetic division (w0 comes from the
// root finder, so the discarded remainders are at roundoff level) and the
// remaining Taylor quotient is computed in jet arithmetic.
inline std::vector<cplx> principal_part(const RationalFunction& r, cplx w0, int order) {
    ComplexPoly rest = r.den();
    for (int k = 0; k < order; ++k) rest = deflate(rest, w0);
    Jet x = Jet::variable(order - 1, w0);
    Jet t = eval_poly(r.num(), x) / eval_poly(rest, x);
    std::vector<cplx> pp(static_cast<size_t>(order));
    for (int j = 1; j <= order; ++j) pp[static_cast<size_t>(j - 1)] = t.c[static_cast<size_t>(order - j)];
    return pp;
}

}  // namespace quaddec

#endif
