#ifndef QUADDEC_POLY_HPP
#define QUADDEC_POLY_HPP

#include <algorithm>
#include <cmath>
#include <utility>

#include "quaddec/types.hpp"

namespace quaddec {

// Univariate polynomial with complex coefficients, ascending degree.
// Trailing (highest-index) coefficients that are exactly zero are trimmed,
// so coeffs().back() != 0 unless the polynomial is zero.
class ComplexPoly {
public:
    ComplexPoly() = default;
    explicit ComplexPoly(std::vector<cplx> coeffs) : c_(std::move(coeffs)) { trim(); }
    explicit ComplexPoly(cplx constant) : c_{constant} { trim(); }

    static ComplexPoly zero() { return ComplexPoly(); }
    static ComplexPoly one() { return ComplexPoly(cplx(1.0)); }
    // t^k
    static ComplexPoly monomial(int k, cplx coeff = cplx(1.0)) {
        std::vector<cplx> c(static_cast<size_t>(k) + 1, cplx(0.0));
        c.back() = coeff;
        return ComplexPoly(std::move(c));
    }
    static ComplexPoly from_roots(const std::vector<cplx>& roots, cplx leading = cplx(1.0)) {
        ComplexPoly p(leading);
        for (cplx r : roots) p = p * ComplexPoly({-r, cplx(1.0)});
        return p;
    }

    const std::vector<cplx>& coeffs() const { return c_; }
    bool is_zero() const { return c_.empty(); }
    int degree() const { return c_.empty() ? deg_neg_inf : static_cast<int>(c_.size()) - 1; }
    cplx coeff(int k) const {
        return (k >= 0 && k < static_cast<int>(c_.size())) ? c_[static_cast<size_t>(k)] : cplx(0.0);
    }
    cplx leading() const { return c_.empty() ? cplx(0.0) : c_.back(); }

    double coeff_scale() const {
        double s = 0.0;
        for (const cplx& v : c_) s = std::max(s, std::abs(v));
        return s;
    }

    // Horner evaluation.
    cplx operator()(cplx z) const {
        cplx acc(0.0);
        for (size_t i = c_.size(); i-- > 0;) acc = acc * z + c_[i];
        return acc;
    }

    // Sum of |c_k| |z|^k; the natural scale for backward-error tests of
    // Horner evaluation near a root.
    double eval_scale(cplx z) const {
        double az = std::abs(z), acc = 0.0, p = 1.0;
        for (const cplx& v : c_) {
            acc += std::abs(v) * p;
            p *= az;
        }
        return acc;
    }

    ComplexPoly derivative() const {
        if (c_.size() <= 1) return zero();
        std::vector<cplx> d(c_.size() - 1);
        for (size_t k = 1; k < c_.size(); ++k) d[k - 1] = c_[k] * double(k);
        return ComplexPoly(std::move(d));
    }

    // Antiderivative with constant term 0; derivative() of the result is
    // exactly *this.
    ComplexPoly antiderivative() const {
        if (is_zero()) return zero();
        std::vector<cplx> a(c_.size() + 1, cplx(0.0));
        for (size_t k = 0; k < c_.size(); ++k) a[k + 1] = c_[k] / double(k + 1);
        return ComplexPoly(std::move(a));
    }

    // Coefficient-wise conjugation: conj(p(conj z)).
    ComplexPoly conj_coeffs() const {
        std::vector<cplx> c(c_);
        for (cplx& v : c) v = std::conj(v);
        return ComplexPoly(std::move(c));
    }

    // w^k p(1/w) as a polynomial; requires k >= degree.
    ComplexPoly reversed(int k) const {
        if (is_zero()) return zero();
        if (k < degree()) throw domain_error("ComplexPoly::reversed: k below degree");
        std::vector<cplx> c(static_cast<size_t>(k) + 1, cplx(0.0));
        for (size_t i = 0; i < c_.size(); ++i) c[static_cast<size_t>(k) - i] = c_[i];
        return ComplexPoly(std::move(c));
    }

    // Number of exactly-zero low-order coefficients (order of the root at 0).
    int trailing_zero_count() const {
        int n = 0;
        while (n < static_cast<int>(c_.size()) && c_[static_cast<size_t>(n)] == cplx(0.0)) ++n;
        return is_zero() ? 0 : n;
    }

    // Divide by t^k (requires the low k coefficients to be exactly zero).
    ComplexPoly shifted_down(int k) const {
        if (k == 0) return *this;
        if (trailing_zero_count() < k) throw domain_error("shifted_down: nonzero low coefficients");
        return ComplexPoly(std::vector<cplx>(c_.begin() + k, c_.end()));
    }

    // Drop coefficients of magnitude below rel * coeff_scale (used after
    // arithmetic known to cancel; never applied implicitly).
    ComplexPoly trimmed(double rel) const {
        double thr = rel * coeff_scale();
        std::vector<cplx> c(c_);
        while (!c.empty() && std::abs(c.back()) <= thr) c.pop_back();
        for (cplx& v : c)
            if (std::abs(v) <= thr) v = cplx(0.0);
        return ComplexPoly(std::move(c));
    }

    ComplexPoly truncated(int max_degree) const {
        if (degree() <= max_degree) return *this;
        return ComplexPoly(std::vector<cplx>(c_.begin(), c_.begin() + max_degree + 1));
    }

    friend ComplexPoly operator+(const ComplexPoly& a, const ComplexPoly& b) {
        std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), cplx(0.0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] += b.c_[i];
        return ComplexPoly(std::move(c));
    }
    friend ComplexPoly operator-(const ComplexPoly& a, const ComplexPoly& b) {
        std::vector<cplx> c(std::max(a.c_.size(), b.c_.size()), cplx(0.0));
        for (size_t i = 0; i < a.c_.size(); ++i) c[i] += a.c_[i];
        for (size_t i = 0; i < b.c_.size(); ++i) c[i] -= b.c_[i];
        return ComplexPoly(std::move(c));
    }
    friend ComplexPoly operator-(const ComplexPoly& a) { return a * cplx(-1.0); }
    friend ComplexPoly operator*(const ComplexPoly& a, const ComplexPoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<cplx> c(a.c_.size() + b.c_.size() - 1, cplx(0.0));
        for (size_t i = 0; i < a.c_.size(); ++i)
            for (size_t j = 0; j < b.c_.size(); ++j) c[i + j] += a.c_[i] * b.c_[j];
        return ComplexPoly(std::move(c));
    }
    friend ComplexPoly operator*(const ComplexPoly& a, cplx s) {
        std::vector<cplx> c(a.c_);
        for (cplx& v : c) v *= s;
        return ComplexPoly(std::move(c));
    }
    friend ComplexPoly operator*(cplx s, const ComplexPoly& a) { return a * s; }
    friend ComplexPoly operator/(const ComplexPoly& a, cplx s) { return a * (cplx(1.0) / s); }

    bool operator==(const ComplexPoly& o) const { return c_ == o.c_; }

private:
    void trim() {
        while (!c_.empty() && c_.back() == cplx(0.0)) c_.pop_back();
    }

    std::vector<cplx> c_;
};

// Long division: a = q * b + r with deg r < deg b.
inline std::pair<ComplexPoly, ComplexPoly> divmod(const ComplexPoly& a, const ComplexPoly& b) {
    if (b.is_zero()) throw domain_error("divmod: division by zero polynomial");
    if (a.degree() < b.degree()) return {ComplexPoly::zero(), a};
    std::vector<cplx> r(a.coeffs());
    const int db = b.degree();
    std::vector<cplx> q(static_cast<size_t>(a.degree() - db) + 1, cplx(0.0));
    const cplx lead = b.leading();
    for (int k = a.degree() - db; k >= 0; --k) {
        cplx f = r[static_cast<size_t>(k + db)] / lead;
        q[static_cast<size_t>(k)] = f;
        for (int j = 0; j <= db; ++j) r[static_cast<size_t>(k + j)] -= f * b.coeff(j);
    }
    r.resize(static_cast<size_t>(std::max(db, 1)));
    return {ComplexPoly(std::move(q)), ComplexPoly(std::move(r))};
}

// Synthetic division by (z - a): returns quotient, discards the remainder
// p(a) (callers only deflate at numerically verified roots).
inline ComplexPoly deflate(const ComplexPoly& p, cplx a) {
    if (p.degree() < 1) throw domain_error("deflate: degree < 1");
    std::vector<cplx> q(static_cast<size_t>(p.degree()), cplx(0.0));
    cplx acc = p.leading();
    for (int k = p.degree() - 1; k >= 0; --k) {
        q[static_cast<size_t>(k)] = acc;
        acc = acc * a + p.coeff(k);
    }
    return ComplexPoly(std::move(q));
}

struct RootCluster {
    cplx root;
    int multiplicity = 1;
};

namespace detail {

// Aberth-Ehrlich simultaneous iteration. Returns false on stall.
inline bool aberth(const ComplexPoly& p, std::vector<cplx>& z) {
    const ComplexPoly dp = p.derivative();
    const int n = p.degree();
    const int max_iter = 400;
    for (int iter = 0; iter < max_iter; ++iter) {
        bool all_done = true;
        for (int i = 0; i < n; ++i) {
            cplx zi = z[static_cast<size_t>(i)];
            cplx pv = p(zi);
            if (std::abs(pv) <= 8.0 * std::numeric_limits<double>::epsilon() * p.eval_scale(zi))
                continue;
            cplx dv = dp(zi);
            if (dv == cplx(0.0)) {
                z[static_cast<size_t>(i)] += cplx(1e-8, 1e-8) * (1.0 + std::abs(zi));
                all_done = false;
                continue;
            }
            cplx newton = pv / dv;
            cplx sum(0.0);
            for (int j = 0; j < n; ++j) {
                if (j == i) continue;
                cplx d = zi - z[static_cast<size_t>(j)];
                if (d == cplx(0.0)) d = cplx(1e-30);
                sum += cplx(1.0) / d;
            }
            cplx denom = cplx(1.0) - newton * sum;
            cplx corr = (denom == cplx(0.0)) ? newton : newton / denom;
            z[static_cast<size_t>(i)] = zi - corr;
            if (std::abs(corr) > 1e-14 * (1.0 + std::abs(zi))) all_done = false;
        }
        if (all_done) return true;
    }
    // Accept anyway if every iterate already sits at a backward-stable root.
    for (cplx zi : z)
        if (std::abs(p(zi)) > 1e4 * std::numeric_limits<double>::epsilon() * p.eval_scale(zi))
            return false;
    return true;
}

// Companion-matrix eigenvalues; implemented in roots_eigen.hpp (kept out of
// this header so only translation units needing the fallback pay for Eigen).
std::vector<cplx> companion_eigenvalues(const ComplexPoly& monic);

}  // namespace detail

// All roots with multiplicities. Roots are merged when their error discs
// overlap: each root carries the radius eps * eval_scale / |p'|, the
// backward-error bound for a simple root, which inflates automatically
// where p' degenerates, i.e. exactly at numerically split multiple roots.
// The floor max(1e-8, tol * coefficient scale) is caller-tunable. The
// reported root is the cluster centroid, accurate well beyond the
// individual splits because the splits of a multiple root are symmetric to
// leading order.
inline std::vector<RootCluster> roots(const ComplexPoly& p, double tol = 1e-9) {
    if (p.is_zero() || p.degree() < 1)
        throw domain_error("roots: polynomial must have degree >= 1");

    // Exact roots at the origin first.
    const int zeros_at_origin = p.trailing_zero_count();
    ComplexPoly q = p.shifted_down(zeros_at_origin);

    std::vector<cplx> raw;
    std::vector<double> rad;
    double rc_floor = 1e-8;
    if (q.degree() >= 1) {
        // Monic normalization for scale decisions.
        ComplexPoly monic = q / q.leading();
        const int n = monic.degree();
        double radius = 0.0;
        for (int k = 0; k < n; ++k) radius = std::max(radius, std::abs(monic.coeff(k)));
        radius = 1.0 + radius;  // Cauchy bound
        raw.resize(static_cast<size_t>(n));
        for (int i = 0; i < n; ++i) {
            double ang = 2.0 * pi * (i + 0.25) / n + 0.7;
            raw[static_cast<size_t>(i)] = 0.7 * radius * std::polar(1.0, ang) + cplx(1e-4, 2e-4);
        }
        if (!detail::aberth(monic, raw)) raw = detail::companion_eigenvalues(monic);
        // Newton polishing (helps simple roots; harmless on clusters).
        const ComplexPoly dq = monic.derivative();
        for (cplx& z : raw)
            for (int it = 0; it < 3; ++it) {
                cplx dv = dq(z);
                if (std::abs(dv) < 1e-300) break;
                z -= monic(z) / dv;
            }
        rc_floor = std::max(1e-8, tol * monic.coeff_scale());
        rad.resize(raw.size());
        for (size_t i = 0; i < raw.size(); ++i) {
            double dv = std::abs(dq(raw[i]));
            double bound = 16.0 * std::numeric_limits<double>::epsilon() *
                           monic.eval_scale(raw[i]) / std::max(dv, 1e-300);
            rad[i] = std::clamp(bound, rc_floor, 1e-2 * (1.0 + std::abs(raw[i])));
        }
    }

    std::vector<bool> used(raw.size(), false);
    std::vector<RootCluster> out;
    if (zeros_at_origin > 0) out.push_back({cplx(0.0), zeros_at_origin});
    for (size_t i = 0; i < raw.size(); ++i) {
        if (used[i]) continue;
        std::vector<size_t> members{i};
        used[i] = true;
        // transitive gathering on overlapping error discs
        for (size_t m = 0; m < members.size(); ++m)
            for (size_t j = 0; j < raw.size(); ++j)
                if (!used[j] &&
                    std::abs(raw[j] - raw[members[m]]) <= rad[j] + rad[members[m]]) {
                    used[j] = true;
                    members.push_back(j);
                }
        cplx centroid(0.0);
        double cluster_rad = 0.0;
        for (size_t j : members) {
            centroid += raw[j];
            cluster_rad = std::max(cluster_rad, rad[j]);
        }
        centroid /= double(members.size());
        // merge with the exact origin cluster when applicable
        if (zeros_at_origin > 0 && std::abs(centroid) <= cluster_rad) {
            RootCluster& o = out.front();
            o.multiplicity += static_cast<int>(members.size());
        } else {
            out.push_back({centroid, static_cast<int>(members.size())});
        }
    }
    std::sort(out.begin(), out.end(), [](const RootCluster& a, const RootCluster& b) {
        if (a.root.real() != b.root.real()) return a.root.real() < b.root.real();
        return a.root.imag() < b.root.imag();
    });
    return out;
}

inline ComplexPoly recombine(const std::vector<RootCluster>& clusters, cplx leading) {
    ComplexPoly p(leading);
    for (const RootCluster& c : clusters)
        for (int k = 0; k < c.multiplicity; ++k) p = p * ComplexPoly({-c.root, cplx(1.0)});
    return p;
}

}  // namespace quaddec

#include "quaddec/roots_eigen.hpp"

#endif
