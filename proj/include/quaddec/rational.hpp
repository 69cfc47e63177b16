#ifndef QUADDEC_RATIONAL_HPP
#define QUADDEC_RATIONAL_HPP

#include "quaddec/poly.hpp"

namespace quaddec {

// Quotient of two complex polynomials. Arithmetic is exact cross
// multiplication; common factors are only cancelled by normalized(), which
// is root-based and therefore explicit, never implicit.
class RationalFunction {
public:
    RationalFunction() : num_(ComplexPoly::zero()), den_(ComplexPoly::one()) {}
    RationalFunction(ComplexPoly num, ComplexPoly den)
        : num_(std::move(num)), den_(std::move(den)) {
        if (den_.is_zero()) throw domain_error("RationalFunction: zero denominator");
        strip_common_origin_roots();
    }
    explicit RationalFunction(cplx constant)
        : num_(ComplexPoly(constant)), den_(ComplexPoly::one()) {}
    static RationalFunction variable() {
        return RationalFunction(ComplexPoly({cplx(0.0), cplx(1.0)}), ComplexPoly::one());
    }

    const ComplexPoly& num() const { return num_; }
    const ComplexPoly& den() const { return den_; }
    bool is_zero() const { return num_.is_zero(); }
    bool is_polynomial() const { return den_.degree() == 0; }

    cplx operator()(cplx z) const { return num_(z) / den_(z); }

    // Limit at infinity: 0 if deg num < deg den, leading-coefficient ratio
    // if equal; throws on an actual pole at infinity.
    cplx value_at_infinity() const {
        if (num_.degree() < den_.degree() || num_.is_zero()) return cplx(0.0);
        if (num_.degree() == den_.degree()) return num_.leading() / den_.leading();
        throw pole_error("value_at_infinity: pole at infinity", cplx(0.0), {});
    }

    RationalFunction derivative() const {
        return RationalFunction(num_.derivative() * den_ - num_ * den_.derivative(), den_ * den_);
    }

    // s(w) = conj(r(1/conj(w))): equals conj(r(w)) on |w| = 1; poles move to
    // inverted conjugates.
    RationalFunction conj_reflect() const {
        if (num_.is_zero()) return RationalFunction();
        const int L = std::max(num_.degree(), den_.degree());
        return RationalFunction(num_.conj_coeffs().reversed(L), den_.conj_coeffs().reversed(L));
    }

    // Coefficient-wise conjugation: the function z -> conj(r(conj z)).
    RationalFunction conj_coeffs() const {
        return RationalFunction(num_.conj_coeffs(), den_.conj_coeffs());
    }

    // r(1/w) as a rational function of w.
    RationalFunction compose_reciprocal() const {
        if (num_.is_zero()) return RationalFunction();
        const int L = std::max(num_.degree(), den_.degree());
        return RationalFunction(num_.reversed(L), den_.reversed(L));
    }

    // Cancel common factors and make the denominator monic. A denominator
    // root is cancelled to multiplicity k iff the numerator and its first
    // k-1 derivatives vanish there at backward-error level (scaled Horner
    // residual); a small-but-honest numerator value keeps the pole. Leading
    // coefficients at roundoff level relative to the coefficient scale are
    // cancellation artifacts and are trimmed first; otherwise they spawn
    // spurious far roots.
    RationalFunction normalized(double tol = 1e-9) const {
        if (num_.is_zero()) return RationalFunction();
        ComplexPoly n = num_.trimmed(1e-13), d = den_.trimmed(1e-13);
        if (n.is_zero()) return RationalFunction();
        if (d.is_zero()) throw domain_error("normalized: denominator is numerically zero");
        if (n.degree() >= 1 && d.degree() >= 1) {
            for (const auto& dc : roots(d, tol)) {
                int cancelled = 0;
                while (cancelled < dc.multiplicity && n.degree() >= 1) {
                    if (std::abs(n(dc.root)) > 1e-10 * n.eval_scale(dc.root)) break;
                    n = deflate(n, dc.root);
                    d = deflate(d, dc.root);
                    ++cancelled;
                }
            }
        }
        cplx lead = d.leading();
        return RationalFunction(n / lead, d / lead);
    }

    friend RationalFunction operator+(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ + b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.den_ - b.num_ * a.den_, a.den_ * b.den_);
    }
    friend RationalFunction operator-(const RationalFunction& a) {
        return RationalFunction(-a.num_, a.den_);
    }
    friend RationalFunction operator*(const RationalFunction& a, const RationalFunction& b) {
        return RationalFunction(a.num_ * b.num_, a.den_ * b.den_);
    }
    friend RationalFunction operator/(const RationalFunction& a, const RationalFunction& b) {
        if (b.is_zero()) throw domain_error("RationalFunction: division by zero function");
        return RationalFunction(a.num_ * b.den_, a.den_ * b.num_);
    }
    friend RationalFunction operator*(const RationalFunction& a, cplx s) {
        return RationalFunction(a.num_ * s, a.den_);
    }
    friend RationalFunction operator*(cplx s, const RationalFunction& a) { return a * s; }
    friend RationalFunction operator+(const RationalFunction& a, cplx s) {
        return a + RationalFunction(s);
    }
    friend RationalFunction operator-(const RationalFunction& a, cplx s) {
        return a - RationalFunction(s);
    }

private:
    // w^k | num and w^k | den cancel exactly (compositions produce these).
    void strip_common_origin_roots() {
        if (num_.is_zero()) {
            den_ = ComplexPoly::one();
            return;
        }
        int k = std::min(num_.trailing_zero_count(), den_.trailing_zero_count());
        if (k > 0) {
            num_ = num_.shifted_down(k);
            den_ = den_.shifted_down(k);
        }
    }

    ComplexPoly num_, den_;
};

// ---------------------------------------------------------------------------
// Partial fractions
// ---------------------------------------------------------------------------

struct PFTerm {
    cplx pole;
    int order = 1;  // exponent of (z - pole)^(-order)
    cplx coeff;
};

struct PartialFractions {
    ComplexPoly poly_part;
    std::vector<PFTerm> terms;
};

namespace detail {

// Taylor coefficients t_0..t_{count-1} of g about a, from an M-point circle
// stencil of radius rho, Richardson-combined with radius rho/2 to cancel the
// leading aliasing term.
template <class F>
std::vector<cplx> taylor_stencil(F&& g, cplx a, int count, double rho, int points = 32) {
    while (points < 4 * count) points *= 2;
    auto pass = [&](double r) {
        std::vector<cplx> vals(static_cast<size_t>(points));
        for (int j = 0; j < points; ++j)
            vals[static_cast<size_t>(j)] = g(a + r * std::polar(1.0, 2.0 * pi * j / points));
        std::vector<cplx> c(static_cast<size_t>(count));
        for (int k = 0; k < count; ++k) {
            cplx acc(0.0);
            for (int j = 0; j < points; ++j)
                acc += vals[static_cast<size_t>(j)] * std::polar(1.0, -2.0 * pi * j * k / points);
            c[static_cast<size_t>(k)] = acc / (double(points) * std::pow(r, k));
        }
        return c;
    };
    std::vector<cplx> full = pass(rho), half = pass(rho / 2.0);
    const double w = std::pow(2.0, points);
    std::vector<cplx> out(static_cast<size_t>(count));
    for (int k = 0; k < count; ++k) {
        // (2^M h - f) / (2^M - 1); for large M this is numerically h itself.
        out[static_cast<size_t>(k)] =
            std::isfinite(w) ? (w * half[static_cast<size_t>(k)] - full[static_cast<size_t>(k)]) /
                                   (w - 1.0)
                             : half[static_cast<size_t>(k)];
    }
    return out;
}

}  // namespace detail

// Classical partial fractions: r = poly_part + sum coeff/(z-pole)^order.
// Principal-part coefficients come from Taylor coefficients of
// num/(den with the pole's factor removed), where the removed factor is
// reconstructed from the root clusters, so no evaluation ever cancels
// catastrophically near the pole.
inline PartialFractions partial_fractions(const RationalFunction& r, double tol = 1e-9) {
    PartialFractions pf;
    if (r.is_zero()) {
        pf.poly_part = ComplexPoly::zero();
        return pf;
    }
    auto [q, rem] = divmod(r.num(), r.den());
    pf.poly_part = q;
    if (rem.is_zero() || r.den().degree() == 0) {
        if (r.den().degree() == 0 && !rem.is_zero())
            pf.poly_part = pf.poly_part + rem / r.den().coeff(0);
        return pf;
    }
    auto clusters = roots(r.den(), tol);
    const cplx lead = r.den().leading();
    for (size_t i = 0; i < clusters.size(); ++i) {
        const cplx a = clusters[i].root;
        const int order = clusters[i].multiplicity;
        double sep = std::numeric_limits<double>::infinity();
        for (size_t j = 0; j < clusters.size(); ++j)
            if (j != i) sep = std::min(sep, std::abs(clusters[j].root - a));
        // Stencil radius tracks the pole separation: aliasing needs
        // rho << sep while roundoff in the k-th coefficient grows like
        // (sep/rho)^k, so a fixed tiny radius would lose all accuracy at
        // higher orders.
        double rho = std::min(0.25, (std::isfinite(sep) ? sep / 4.0 : 0.25));
        rho = std::max(rho, 1e-6);
        auto g = [&](cplx z) {
            cplx d = lead;
            for (size_t j = 0; j < clusters.size(); ++j) {
                if (j == i) continue;
                for (int k = 0; k < clusters[j].multiplicity; ++k) d *= (z - clusters[j].root);
            }
            return rem(z) / d;
        };
        auto taylor = detail::taylor_stencil(g, a, order, rho);
        for (int k = 1; k <= order; ++k) {
            cplx coeff = taylor[static_cast<size_t>(order - k)];
            pf.terms.push_back({a, k, coeff});
        }
    }
    return pf;
}

inline cplx eval(const PartialFractions& pf, cplx z) {
    cplx acc = pf.poly_part(z);
    for (const PFTerm& t : pf.terms) acc += t.coeff / std::pow(z - t.pole, t.order);
    return acc;
}

inline RationalFunction recombine(const PartialFractions& pf) {
    RationalFunction acc(pf.poly_part, ComplexPoly::one());
    for (const PFTerm& t : pf.terms) {
        ComplexPoly d = ComplexPoly::one();
        for (int k = 0; k < t.order; ++k) d = d * ComplexPoly({-t.pole, cplx(1.0)});
        acc = acc + RationalFunction(ComplexPoly(t.coeff), d);
    }
    return acc;
}

enum class ArithOp { add, sub, mul, div };

inline RationalFunction arith(const RationalFunction& a, const RationalFunction& b, ArithOp op) {
    switch (op) {
        case ArithOp::add: return a + b;
        case ArithOp::sub: return a - b;
        case ArithOp::mul: return a * b;
        case ArithOp::div: return a / b;
    }
    throw domain_error("arith: bad op");
}

}  // namespace quaddec

#endif
