#ifndef QUADDEC_KERNELS_HPP
#define QUADDEC_KERNELS_HPP

#include "quaddec/qdomain.hpp"

namespace quaddec::kernels {

inline constexpr int max_derivative_order = 16;

inline void check_order(int m) {
    if (m < 0 || m > max_derivative_order)
        throw domain_error("kernel derivative order out of configured range");
}

// ---------------------------------------------------------------------------
// Point kernels via the Riemann map transformation formula. The disc
// kernels are K_D(u,v) = 1/(pi (1 - u conj v)^2) and
// L_D(u,v) = 1/(pi (u - v)^2); the sign of L_D is pinned by requiring the
// boundary identity K T = -conj(L) conj(T) to hold.
// ---------------------------------------------------------------------------

inline cplx bergman_K(const QuadratureDomain& q, cplx z, cplx w) {
    cplx u = q.inverse_map(z), v = q.inverse_map(w);
    cplx denom = cplx(1.0) - u * std::conj(v);
    if (std::abs(denom) < 1e-12)
        throw pole_error("bergman_K: boundary-diagonal singularity", z, {});
    cplx fz = cplx(1.0) / q.dmap()(u);
    cplx fw = cplx(1.0) / q.dmap()(v);
    return fz * std::conj(fw) / (pi * denom * denom);
}

inline cplx lambda_L(const QuadratureDomain& q, cplx z, cplx w) {
    cplx u = q.inverse_map(z), v = q.inverse_map(w);
    cplx denom = u - v;
    if (std::abs(denom) < 1e-12)
        throw pole_error("lambda_L: diagonal singularity", z, {});
    cplx fz = cplx(1.0) / q.dmap()(u);
    cplx fw = cplx(1.0) / q.dmap()(v);
    return fz * fw / (pi * denom * denom);
}

// ---------------------------------------------------------------------------
// Derivative families K_a^m (in conj of the second variable) and
// Lambda_a^m (in the second variable), by truncated-jet differentiation of
// the closed forms through the inverse map.
// ---------------------------------------------------------------------------

namespace detail {

// Jet of the disc coordinate conj(f(.)) as a function of t = conj(w) - conj(a),
// expanded at alphabar = conj(f(a)); zero constant term.
inline Jet conj_coordinate_jet(const QuadratureDomain& q, cplx alphabar, int order) {
    RationalFunction pbar = q.map().conj_coeffs();
    return inverse_jet(eval_rational(pbar, Jet::variable(order, alphabar)));
}

// Jet of the disc coordinate f(.) as a function of t = w - a at alpha = f(a).
inline Jet coordinate_jet(const QuadratureDomain& q, cplx alpha, int order) {
    return inverse_jet(eval_rational(q.map(), Jet::variable(order, alpha)));
}

inline Jet with_constant(const Jet& delta, cplx c0) {
    Jet j = delta;
    j.c[0] = c0;
    return j;
}

}  // namespace detail

// m-th derivative of K(z, .) with respect to the conjugated second variable,
// evaluated at a; u may be anywhere in the closed disc coordinate.
inline cplx K_deriv_w(const QuadratureDomain& q, cplx alpha, int m, cplx u) {
    check_order(m);
    const cplx alphabar = std::conj(alpha);
    Jet delta = detail::conj_coordinate_jet(q, alphabar, m);
    Jet omegabar = detail::with_constant(delta, alphabar);
    Jet dpbar = eval_rational(q.dmap().conj_coeffs(), omegabar);
    Jet A(m, cplx(1.0) - u * alphabar);
    for (int k = 1; k <= m; ++k) A.c[static_cast<size_t>(k)] = -u * delta.c[static_cast<size_t>(k)];
    Jet val = recip(dpbar) * recip(A * A);
    cplx fz = cplx(1.0) / q.dmap()(u);
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    return fz * val.c[static_cast<size_t>(m)] * fact / pi;
}

inline cplx K_deriv(const QuadratureDomain& q, cplx a, int m, cplx z) {
    return K_deriv_w(q, q.inverse_map(a), m, q.inverse_map(z));
}

inline cplx Lambda_deriv_w(const QuadratureDomain& q, cplx alpha, int m, cplx u) {
    check_order(m);
    Jet delta = detail::coordinate_jet(q, alpha, m);
    Jet omega = detail::with_constant(delta, alpha);
    Jet dp = eval_rational(q.dmap(), omega);
    Jet B = detail::with_constant(delta, alpha - u);
    if (std::abs(B.c[0]) < 1e-12)
        throw pole_error("Lambda_deriv: diagonal singularity", u, {});
    Jet val = recip(dp) * recip(B * B);
    cplx fz = cplx(1.0) / q.dmap()(u);
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    return fz * val.c[static_cast<size_t>(m)] * fact / pi;
}

inline cplx Lambda_deriv(const QuadratureDomain& q, cplx a, int m, cplx z) {
    return Lambda_deriv_w(q, q.inverse_map(a), m, q.inverse_map(z));
}

// ---------------------------------------------------------------------------
// Antiderivative families in the disc coordinate. Both come out of the jet
// expansion as finite pole fans with complex coefficients:
//   k_a^m(P(w))      = sum_j nu[j] w^{j+1} / (1 - conj(alpha) w)^{j+1}
//   lambda_a^m(P(w)) = sum_j mu[j] / (w - alpha)^{j+1}
// k vanishes at w = 0 (the base point) termwise; lambda vanishes at w =
// infinity (the reflected base point) termwise. For alpha = 0 the k family
// is a polynomial, matching the pole of order m+1 at the reflected point
// (here w = infinity).
// ---------------------------------------------------------------------------

struct KFamily {
    cplx a;         // base point in the domain
    int m = 0;      // derivative order
    cplx alphabar;  // conj(f(a))
    std::vector<cplx> nu;

    bool is_polynomial() const { return alphabar == cplx(0.0); }
    cplx pole_w() const { return cplx(1.0) / alphabar; }  // order m+1

    cplx eval(cplx w) const {
        cplx acc(0.0), p = w, q = cplx(1.0) - alphabar * w;
        cplx qpow = q;
        for (size_t j = 0; j < nu.size(); ++j) {
            acc += nu[j] * p / qpow;
            p *= w;
            qpow *= q;
        }
        return acc;
    }
    // d/dw; each term differentiates to (j+1) nu_j w^j / (1-ab w)^{j+2}
    cplx deriv(cplx w) const {
        cplx acc(0.0), p = cplx(1.0), q = cplx(1.0) - alphabar * w;
        cplx qpow = q * q;
        for (size_t j = 0; j < nu.size(); ++j) {
            acc += double(j + 1) * nu[j] * p / qpow;
            p *= w;
            qpow *= q;
        }
        return acc;
    }

    // Laurent principal part at the reflected pole w0 = 1/alphabar:
    // pp[q-1] = coefficient of (w - w0)^(-q). Exact binomial bookkeeping.
    std::vector<cplx> principal_at_pole() const {
        if (is_polynomial())
            throw domain_error("KFamily: pole is at infinity for the base point family");
        const cplx w0 = pole_w();
        std::vector<cplx> pp(nu.size(), cplx(0.0));
        for (size_t j = 0; j < nu.size(); ++j) {
            // nu_j w^{j+1}/(1-ab w)^{j+1} = nu_j (-1/ab)^{j+1} w^{j+1} (w-w0)^{-(j+1)}
            cplx pref = nu[j] * std::pow(-cplx(1.0) / alphabar, static_cast<int>(j) + 1);
            double binom = 1.0;
            cplx w0pow(1.0);
            // contribution to order q: C(j+1, q) w0^q, q = 1..j+1
            for (size_t qq = 1; qq <= j + 1; ++qq) {
                binom = binom * double(j + 2 - qq) / double(qq);
                w0pow *= w0;
                pp[qq - 1] += pref * binom * w0pow;
            }
        }
        return pp;
    }

    // Coefficients of w^1..w^{m+1} when the family is polynomial (a = base).
    std::vector<cplx> polynomial_coeffs() const {
        if (!is_polynomial()) throw domain_error("KFamily: not a polynomial family");
        return nu;  // nu[j] multiplies w^{j+1}
    }

    // Assembled over the common denominator (1 - ab w)^{J+1}; no
    // cancellation ever needs to happen afterwards.
    RationalFunction to_rational() const {
        const ComplexPoly base({cplx(1.0), -alphabar});
        const size_t J = nu.size() - 1;
        ComplexPoly num = ComplexPoly::zero();
        for (size_t j = 0; j < nu.size(); ++j) {
            ComplexPoly term = ComplexPoly::monomial(static_cast<int>(j) + 1, nu[j]);
            for (size_t k = 0; k < J - j; ++k) term = term * base;
            num = num + term;
        }
        ComplexPoly den = ComplexPoly::one();
        for (size_t k = 0; k <= J; ++k) den = den * base;
        return RationalFunction(std::move(num), std::move(den));
    }
};

struct LambdaFamily {
    cplx a;      // base point in the domain (pole of the function)
    int m = 0;
    cplx alpha;  // f(a)
    std::vector<cplx> mu;

    cplx eval(cplx w) const {
        cplx acc(0.0), d = w - alpha, dpow = d;
        for (size_t j = 0; j < mu.size(); ++j) {
            acc += mu[j] / dpow;
            dpow *= d;
        }
        return acc;
    }
    cplx deriv(cplx w) const {
        cplx acc(0.0), d = w - alpha, dpow = d * d;
        for (size_t j = 0; j < mu.size(); ++j) {
            acc -= double(j + 1) * mu[j] / dpow;
            dpow *= d;
        }
        return acc;
    }

    // The function is exactly its own principal part at alpha.
    std::vector<cplx> principal_at_pole() const { return mu; }

    // Assembled over the common denominator (w - alpha)^{J+1}.
    RationalFunction to_rational() const {
        const ComplexPoly base({-alpha, cplx(1.0)});
        const size_t J = mu.size() - 1;
        ComplexPoly num = ComplexPoly::zero();
        for (size_t j = 0; j < mu.size(); ++j) {
            ComplexPoly term(mu[j]);
            for (size_t k = 0; k < J - j; ++k) term = term * base;
            num = num + term;
        }
        ComplexPoly den = ComplexPoly::one();
        for (size_t k = 0; k <= J; ++k) den = den * base;
        return RationalFunction(std::move(num), std::move(den));
    }
};

// k_a^m in the disc coordinate, from the jet expansion of
// w / (pi conj-P'(omega-bar(t)) (1 - w omega-bar(t))) in t = conj(a-move).
inline KFamily k_family_w(const QuadratureDomain& q, cplx alpha, int m) {
    check_order(m);
    const cplx alphabar = std::conj(alpha);
    Jet delta = detail::conj_coordinate_jet(q, alphabar, m);
    Jet omegabar = detail::with_constant(delta, alphabar);
    Jet S = recip(eval_rational(q.dmap().conj_coeffs(), omegabar));
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    KFamily fam;
    fam.a = q.map()(alpha);
    fam.m = m;
    fam.alphabar = alphabar;
    fam.nu.assign(static_cast<size_t>(m) + 1, cplx(0.0));
    Jet power(m, cplx(1.0));  // delta^j
    for (int j = 0; j <= m; ++j) {
        if (j > 0) power = power * delta;
        Jet prod = S * power;
        fam.nu[static_cast<size_t>(j)] = fact / pi * prod.c[static_cast<size_t>(m)];
    }
    // drop the trailing exact zeros (delta^j = O(t^j) kills j > m anyway)
    while (fam.nu.size() > 1 && std::abs(fam.nu.back()) == 0.0) fam.nu.pop_back();
    return fam;
}

inline KFamily k_family(const QuadratureDomain& q, cplx a, int m) {
    return k_family_w(q, q.inverse_map(a), m);
}

inline LambdaFamily lambda_family_w(const QuadratureDomain& q, cplx alpha, int m) {
    check_order(m);
    Jet delta = detail::coordinate_jet(q, alpha, m);
    Jet omega = detail::with_constant(delta, alpha);
    Jet S = recip(eval_rational(q.dmap(), omega));
    double fact = 1.0;
    for (int k = 2; k <= m; ++k) fact *= k;
    LambdaFamily fam;
    fam.a = q.map()(alpha);
    fam.m = m;
    fam.alpha = alpha;
    fam.mu.assign(static_cast<size_t>(m) + 1, cplx(0.0));
    Jet power(m, cplx(1.0));
    for (int j = 0; j <= m; ++j) {
        if (j > 0) power = power * delta;
        Jet prod = S * power;
        fam.mu[static_cast<size_t>(j)] = -fact / pi * prod.c[static_cast<size_t>(m)];
    }
    while (fam.mu.size() > 1 && std::abs(fam.mu.back()) == 0.0) fam.mu.pop_back();
    return fam;
}

inline LambdaFamily lambda_family(const QuadratureDomain& q, cplx a, int m) {
    return lambda_family_w(q, q.inverse_map(a), m);
}

// Pointwise values of the antiderivative families at domain points.
inline cplx k_lower(const QuadratureDomain& q, cplx a, int m, cplx z) {
    return k_family(q, a, m).eval(q.inverse_map(z));
}

inline cplx lambda_lower(const QuadratureDomain& q, cplx a, int m, cplx z) {
    LambdaFamily fam = lambda_family(q, a, m);
    cplx w = q.inverse_map(z);
    if (std::abs(w - fam.alpha) < 1e-12)
        throw pole_error("lambda_lower: evaluation at the pole", a, fam.principal_at_pole());
    return fam.eval(w);
}

// ---------------------------------------------------------------------------
// Identity residual reports
// ---------------------------------------------------------------------------

struct IdentityReport {
    double kl = 0.0;             // K(z,w) T(z) = -conj(Lambda(z,w)) conj(T(z))
    double kl_m = 0.0;           // same for the m-derivative families, m <= 2
    double both_boundary = 0.0;  // T(z) K(z,w) conj(T(w)) = -conj(T(z) Lambda(z,w) T(w))
    double antideriv = 0.0;      // k_a^m = -conj(lambda_a^m) on the boundary, m <= 2

    double worst() const {
        return std::max(std::max(kl, kl_m), std::max(both_boundary, antideriv));
    }
};

inline IdentityReport boundary_identities(const QuadratureDomain& q, int boundary_samples = 64) {
    IdentityReport rep;
    // nine interior base coordinates spread over the disc
    std::vector<cplx> ws;
    for (double r : {0.2, 0.45, 0.7})
        for (double phi : {0.3, 2.4, 4.5}) ws.push_back(std::polar(r, phi));

    auto rel = [](cplx lhs, cplx rhs) {
        double s = std::max(std::abs(lhs), std::abs(rhs));
        return s == 0.0 ? 0.0 : std::abs(lhs + rhs) / s;  // identities are lhs = -rhs
    };

    for (int i = 0; i < boundary_samples; ++i) {
        double theta = 2.0 * pi * (i + 0.37) / boundary_samples;
        cplx u = std::polar(1.0, theta);
        cplx T = q.tangent(theta);
        cplx fz = cplx(1.0) / q.dmap()(u);
        for (cplx v : ws) {
            // point kernels straight from the disc formulas
            cplx fw = cplx(1.0) / q.dmap()(v);
            cplx K = fz * std::conj(fw) / (pi * std::pow(cplx(1.0) - u * std::conj(v), 2));
            cplx L = fz * fw / (pi * std::pow(u - v, 2));
            rep.kl = std::max(rep.kl, rel(K * T, std::conj(L) * std::conj(T)));
            for (int m = 0; m <= 2; ++m) {
                cplx Km = K_deriv_w(q, v, m, u);
                cplx Lm = Lambda_deriv_w(q, v, m, u);
                rep.kl_m = std::max(rep.kl_m, rel(Km * T, std::conj(Lm) * std::conj(T)));
                cplx kv = k_family_w(q, v, m).eval(u);
                cplx lv = lambda_family_w(q, v, m).eval(u);
                rep.antideriv = std::max(rep.antideriv, rel(kv, std::conj(lv)));
            }
        }
        // both points on the boundary
        for (int j = 1; j <= 9; ++j) {
            double theta2 = theta + 2.0 * pi * j / 10.5;
            cplx u2 = std::polar(1.0, theta2);
            cplx T2 = q.tangent(theta2);
            cplx fw = cplx(1.0) / q.dmap()(u2);
            cplx K = fz * std::conj(fw) / (pi * std::pow(cplx(1.0) - u * std::conj(u2), 2));
            cplx L = fz * fw / (pi * std::pow(u - u2, 2));
            rep.both_boundary =
                std::max(rep.both_boundary, rel(T * K * std::conj(T2), std::conj(T * L * T2)));
        }
    }
    return rep;
}

struct RatioReport {
    cplx unimodular_constant;    // k_b^0 / lambda_b^0 / f^2
    double constancy_dev = 0.0;  // max deviation of the ratio over the samples
    double modulus_dev = 0.0;    // | |constant| - 1 |
    int k_zero_count = -1;       // zeros of k_a^0 in the closed domain (expect 1)
    int lambda_zero_count = -1;  // zeros of lambda_a^0 (expect 0)
    double winding_gate = 0.0;   // distance of the raw winding integrals to integers
};

// Argument-principle winding number of g around |w| = 1 by trapezoid
// integration of g'/g; 1024 nodes, integer-rounded with a certification gate.
template <class Eval, class Deriv>
inline double winding_number(Eval&& g, Deriv&& dg, int nodes = 1024) {
    cplx acc(0.0);
    for (int k = 0; k < nodes; ++k) {
        cplx w = std::polar(1.0, 2.0 * pi * (k + 0.13) / nodes);
        cplx dw = cplx(0.0, 2.0 * pi / nodes) * w;
        acc += dg(w) / g(w) * dw;
    }
    return (acc / cplx(0.0, 2.0 * pi)).real();
}

inline RatioReport ratio_checks(const QuadratureDomain& q, cplx a_w = cplx(0.31, 0.24)) {
    RatioReport rep;
    KFamily kb = k_family_w(q, cplx(0.0), 0);
    LambdaFamily lb = lambda_family_w(q, cplx(0.0), 0);
    std::vector<cplx> ratios;
    for (int i = 0; i < 16; ++i) {
        cplx w = std::polar(0.15 + 0.05 * i, 0.7 * i);
        ratios.push_back(kb.eval(w) / lb.eval(w) / (w * w));
    }
    cplx mean(0.0);
    for (cplx r : ratios) mean += r;
    mean /= double(ratios.size());
    rep.unimodular_constant = mean;
    for (cplx r : ratios) rep.constancy_dev = std::max(rep.constancy_dev, std::abs(r - mean));
    rep.modulus_dev = std::abs(std::abs(mean) - 1.0);

    KFamily ka = k_family_w(q, a_w, 0);
    LambdaFamily la = lambda_family_w(q, a_w, 0);
    double wk = winding_number([&](cplx w) { return ka.eval(w); },
                               [&](cplx w) { return ka.deriv(w); });
    double wl = winding_number([&](cplx w) { return la.eval(w); },
                               [&](cplx w) { return la.deriv(w); });
    rep.winding_gate = std::max(std::abs(wk - std::round(wk)), std::abs(wl - std::round(wl)));
    rep.k_zero_count = static_cast<int>(std::round(wk));          // no poles in the disc
    rep.lambda_zero_count = static_cast<int>(std::round(wl)) + 1;  // one pole at alpha
    return rep;
}

}  // namespace quaddec::kernels

#endif
