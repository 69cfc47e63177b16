#ifndef QUADDEC_APPROX_HPP
#define QUADDEC_APPROX_HPP

#include "quaddec/fft.hpp"
#include "quaddec/qdomain.hpp"

namespace quaddec::approx {

// Univalence failed at the requested truncation degree; retry with a
// larger N. Carries the diagnostic from the domain validity check.
class raise_degree_error : public qd_error {
public:
    std::string diagnostic;
    raise_degree_error(const std::string& what, std::string diag)
        : qd_error(what), diagnostic(std::move(diag)) {}
};

// The inverse Riemann map g = F^{-1} of the target domain, restricted to
// the closed unit disc. Canonical representation is the power series;
// boundary samples are converted through the FFT with a gate on
// negative-frequency energy (non-holomorphic or under-resolved data).
class AnalyticMapInput {
public:
    static AnalyticMapInput from_series(std::vector<cplx> series) {
        AnalyticMapInput g;
        g.series_ = ComplexPoly(std::move(series));
        g.check_derivative();
        return g;
    }

    static AnalyticMapInput from_samples(const std::vector<cplx>& samples, double gate = 1e-8) {
        const size_t n = samples.size();
        if (n < 256 || (n & (n - 1)) != 0)
            throw domain_error("AnalyticMapInput: need 2^k samples with k >= 8");
        std::vector<cplx> c = fourier_coefficients(samples);
        double scale = 0.0;
        for (const cplx& v : c) scale = std::max(scale, std::abs(v));
        double neg = 0.0;
        for (size_t k = n / 2; k < n; ++k) neg = std::max(neg, std::abs(c[k]));
        if (neg > gate * scale)
            throw degenerate_data_error(
                "AnalyticMapInput: negative-frequency energy above gate; samples are not "
                "boundary values of a disc-holomorphic function");
        c.resize(n / 2);
        AnalyticMapInput g;
        g.series_ = ComplexPoly(std::move(c));
        g.check_derivative();
        return g;
    }

    const ComplexPoly& series() const { return series_; }
    cplx operator()(cplx w) const { return series_(w); }

private:
    void check_derivative() const {
        if (series_.degree() < 1)
            throw domain_error("AnalyticMapInput: map must be nonconstant");
        ComplexPoly d = series_.derivative();
        double lo = std::numeric_limits<double>::infinity(), hi = 0.0;
        for (int k = 0; k < 1024; ++k) {
            double v = std::abs(d(std::polar(1.0, 2.0 * pi * k / 1024)));
            lo = std::min(lo, v);
            hi = std::max(hi, v);
        }
        if (lo <= 1e-8 * hi)
            throw degenerate_data_error("AnalyticMapInput: derivative vanishes on the boundary "
                                        "within representation resolution");
    }

    ComplexPoly series_;
};

enum class Kind { area, area_and_arclength };

struct ApproximationReport {
    QuadratureDomain domain;
    double sup_error = 0.0;         // sup |g - P| on |w| = 1
    double derivative_error = 0.0;  // sup |g' - P'| on |w| = 1
    Kind kind = Kind::area;
};

namespace detail {

inline ApproximationReport finish(const AnalyticMapInput& g, ComplexPoly P, Kind kind,
                                  DomainOptions opt, int samples = 2048) {
    try {
        ApproximationReport rep{
            QuadratureDomain(RationalFunction(std::move(P), ComplexPoly::one()), opt), 0.0, 0.0,
            kind};
        const ComplexPoly dg = g.series().derivative();
        const RationalFunction& Pm = rep.domain.map();
        const RationalFunction& dPm = rep.domain.dmap();
        for (int k = 0; k < samples; ++k) {
            cplx w = std::polar(1.0, 2.0 * pi * k / samples);
            rep.sup_error = std::max(rep.sup_error, std::abs(g(w) - Pm(w)));
            rep.derivative_error = std::max(rep.derivative_error, std::abs(dg(w) - dPm(w)));
        }
        return rep;
    } catch (const univalence_error& e) {
        throw raise_degree_error(
            "approximation not univalent at this degree; raise N", e.diagnostic);
    }
}

// Power-series square root anchored at the principal branch: g'(0) is
// rotated onto the positive real axis, the rotation undone afterwards.
inline ComplexPoly series_sqrt(const ComplexPoly& c, int order) {
    cplx c0 = c.coeff(0);
    if (c0 == cplx(0.0)) throw domain_error("series_sqrt: vanishing constant term");
    double phase = std::arg(c0);
    cplx rot = std::polar(1.0, -phase);
    std::vector<cplx> s(static_cast<size_t>(order) + 1, cplx(0.0));
    s[0] = std::sqrt(std::abs(c0));
    for (int n = 1; n <= order; ++n) {
        cplx acc = c.coeff(n) * rot;
        for (int j = 1; j < n; ++j) acc -= s[static_cast<size_t>(j)] * s[static_cast<size_t>(n - j)];
        s[static_cast<size_t>(n)] = acc / (2.0 * s[0]);
    }
    ComplexPoly out(std::move(s));
    return out * std::polar(1.0, phase / 2.0);
}

}  // namespace detail

// Degree-N truncation of the series: the image of the disc is an area
// quadrature domain near the target domain.
inline ApproximationReport approximate_area_qd(const AnalyticMapInput& g, int N,
                                               DomainOptions opt = {}) {
    if (N < 1) throw domain_error("approximate_area_qd: N >= 1 required");
    return detail::finish(g, g.series().truncated(N), Kind::area, opt);
}

// Square-of-a-polynomial construction: p approximates sqrt(g'), and
// P is the antiderivative of p^2 with P(0) = g(0). P' = p^2 exactly, so the
// image is a quadrature domain for both area and arclength.
inline ApproximationReport approximate_arclength_qd(const AnalyticMapInput& g, int N,
                                                    DomainOptions opt = {}) {
    if (N < 0) throw domain_error("approximate_arclength_qd: N >= 0 required");
    ComplexPoly p = detail::series_sqrt(g.series().derivative(), N);
    ComplexPoly P = (p * p).antiderivative() + ComplexPoly(g(cplx(0.0)));
    ApproximationReport rep = detail::finish(g, P, Kind::area_and_arclength, opt);

    // T(theta) must itself be rational in w: i w p(w) / conj-p(1/w) on the
    // circle. Spot-verified here; a failure means the square root lost its
    // branch, which the anchoring rules out.
    const ComplexPoly pbar = p.conj_coeffs();
    double worst = 0.0;
    for (int k = 0; k < 512; ++k) {
        double theta = 2.0 * pi * (k + 0.21) / 512;
        cplx w = std::polar(1.0, theta);
        cplx expected = cplx(0.0, 1.0) * w * p(w) / pbar(cplx(1.0) / w);
        worst = std::max(worst, std::abs(rep.domain.tangent(theta) - expected));
    }
    if (worst > 1e-9)
        throw conditioning_error("approximate_arclength_qd: tangent is not rational-consistent",
                                 worst);
    return rep;
}

}  // namespace quaddec::approx

#endif
