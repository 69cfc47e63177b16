#ifndef QUADDEC_BIVARIATE_HPP
#define QUADDEC_BIVARIATE_HPP

#include "quaddec/rational.hpp"

namespace quaddec {

// Polynomial in z and zbar; coeff(i, j) multiplies z^i zbar^j. On a curve,
// zbar is bound to conj(z); off the curve the two arguments are independent
// (complexification).
class BivariatePoly {
public:
    BivariatePoly() = default;
    explicit BivariatePoly(std::vector<std::vector<cplx>> c) : c_(std::move(c)) { trim(); }
    explicit BivariatePoly(cplx constant) : c_{{constant}} { trim(); }

    static BivariatePoly zero() { return BivariatePoly(); }
    static BivariatePoly z() { return BivariatePoly({{cplx(0.0)}, {cplx(1.0)}}); }
    static BivariatePoly zbar() { return BivariatePoly({{cplx(0.0), cplx(1.0)}}); }

    bool is_zero() const { return c_.empty(); }
    int deg_z() const { return c_.empty() ? deg_neg_inf : static_cast<int>(c_.size()) - 1; }
    int deg_zbar() const {
        int d = deg_neg_inf;
        for (const auto& row : c_)
            if (!row.empty()) d = std::max(d, static_cast<int>(row.size()) - 1);
        return d;
    }
    cplx coeff(int i, int j) const {
        if (i < 0 || i >= static_cast<int>(c_.size())) return cplx(0.0);
        const auto& row = c_[static_cast<size_t>(i)];
        if (j < 0 || j >= static_cast<int>(row.size())) return cplx(0.0);
        return row[static_cast<size_t>(j)];
    }
    const std::vector<std::vector<cplx>>& rows() const { return c_; }

    double coeff_scale() const {
        double s = 0.0;
        for (const auto& row : c_)
            for (const cplx& v : row) s = std::max(s, std::abs(v));
        return s;
    }

    // Independent-argument evaluation.
    cplx eval2(cplx z, cplx zbar) const {
        cplx acc(0.0);
        for (size_t i = c_.size(); i-- > 0;) {
            cplx row(0.0);
            for (size_t j = c_[i].size(); j-- > 0;) row = row * zbar + c_[i][j];
            acc = acc * z + row;
        }
        return acc;
    }
    // On-curve evaluation: zbar = conj(z).
    cplx operator()(cplx z) const { return eval2(z, std::conj(z)); }

    // Sum of |c_ij| |z|^i |zbar|^j, the evaluation scale for residual gates.
    double eval_scale(cplx z, cplx zbar) const {
        double az = std::abs(z), ab = std::abs(zbar), acc = 0.0, pi_ = 1.0;
        for (const auto& row : c_) {
            double pj = 1.0;
            for (const cplx& v : row) {
                acc += std::abs(v) * pi_ * pj;
                pj *= ab;
            }
            pi_ *= az;
        }
        return acc;
    }

    // conj(P(conj zbar', conj z')): conjugate coefficients and swap the two
    // variables; eval2(z, zbar) of the result equals conj(eval2(zbar*, z*)).
    BivariatePoly conj_swap() const {
        if (is_zero()) return zero();
        std::vector<std::vector<cplx>> out(static_cast<size_t>(deg_zbar()) + 1);
        for (auto& row : out) row.assign(static_cast<size_t>(deg_z()) + 1, cplx(0.0));
        for (int i = 0; i <= deg_z(); ++i)
            for (int j = 0; j <= deg_zbar(); ++j)
                out[static_cast<size_t>(j)][static_cast<size_t>(i)] = std::conj(coeff(i, j));
        return BivariatePoly(std::move(out));
    }

    // Substitute z -> A(w), zbar -> B(w).
    RationalFunction compose(const RationalFunction& A, const RationalFunction& B) const {
        RationalFunction acc;
        for (size_t i = c_.size(); i-- > 0;) {
            RationalFunction row;
            for (size_t j = c_[i].size(); j-- > 0;) row = row * B + c_[i][j];
            acc = acc * A + row;
        }
        return acc;
    }

    friend BivariatePoly operator+(const BivariatePoly& a, const BivariatePoly& b) {
        std::vector<std::vector<cplx>> c(
            static_cast<size_t>(std::max(a.deg_z(), std::max(b.deg_z(), 0))) + 1);
        int dj = std::max(a.deg_zbar(), std::max(b.deg_zbar(), 0));
        for (auto& row : c) row.assign(static_cast<size_t>(dj) + 1, cplx(0.0));
        for (int i = 0; i < static_cast<int>(c.size()); ++i)
            for (int j = 0; j <= dj; ++j)
                c[static_cast<size_t>(i)][static_cast<size_t>(j)] = a.coeff(i, j) + b.coeff(i, j);
        return BivariatePoly(std::move(c));
    }
    friend BivariatePoly operator*(const BivariatePoly& a, const BivariatePoly& b) {
        if (a.is_zero() || b.is_zero()) return zero();
        std::vector<std::vector<cplx>> c(static_cast<size_t>(a.deg_z() + b.deg_z()) + 1);
        for (auto& row : c)
            row.assign(static_cast<size_t>(a.deg_zbar() + b.deg_zbar()) + 1, cplx(0.0));
        for (int i = 0; i <= a.deg_z(); ++i)
            for (int j = 0; j <= a.deg_zbar(); ++j) {
                if (a.coeff(i, j) == cplx(0.0)) continue;
                for (int k = 0; k <= b.deg_z(); ++k)
                    for (int l = 0; l <= b.deg_zbar(); ++l)
                        c[static_cast<size_t>(i + k)][static_cast<size_t>(j + l)] +=
                            a.coeff(i, j) * b.coeff(k, l);
            }
        return BivariatePoly(std::move(c));
    }
    friend BivariatePoly operator*(const BivariatePoly& a, cplx s) {
        auto c = a.c_;
        for (auto& row : c)
            for (cplx& v : row) v *= s;
        return BivariatePoly(std::move(c));
    }

private:
    void trim() {
        for (auto& row : c_)
            while (!row.empty() && row.back() == cplx(0.0)) row.pop_back();
        while (!c_.empty() && c_.back().empty()) c_.pop_back();
        // reject ragged all-zero representation of zero
        bool any = false;
        for (auto& row : c_) any = any || !row.empty();
        if (!any) c_.clear();
    }

    std::vector<std::vector<cplx>> c_;  // c_[i][j] multiplies z^i zbar^j
};

// R(z, zbar) = num/den with bivariate polynomial numerator and denominator.
struct BivariateRational {
    BivariatePoly num, den;

    BivariateRational() : num(BivariatePoly::zero()), den(BivariatePoly(cplx(1.0))) {}
    BivariateRational(BivariatePoly n, BivariatePoly d) : num(std::move(n)), den(std::move(d)) {
        if (den.is_zero()) throw domain_error("BivariateRational: zero denominator");
    }

    cplx eval2(cplx z, cplx zbar) const { return num.eval2(z, zbar) / den.eval2(z, zbar); }
    cplx operator()(cplx z) const { return eval2(z, std::conj(z)); }

    BivariateRational conj_swap() const { return {num.conj_swap(), den.conj_swap()}; }

    // Max |den| over `samples` points of |z| = 1 must exceed
    // 1e-10 * coefficient scale, else the restriction to the circle is
    // meaningless (the 1 - z zbar hazard).
    bool degenerate_on_circle(int samples = 128, double rel = 1e-10) const {
        double m = 0.0;
        for (int k = 0; k < samples; ++k)
            m = std::max(m, std::abs(den(std::polar(1.0, 2.0 * pi * k / samples))));
        return m <= rel * std::max(den.coeff_scale(), 1e-300);
    }

    RationalFunction compose(const RationalFunction& A, const RationalFunction& B) const {
        return num.compose(A, B) / den.compose(A, B);
    }
};

// Real rational data p(x,y)/q(x,y) entered as written: substitute
// x = (z + zbar)/2, y = (z - zbar)/(2i) with exact binomial expansion.
inline BivariatePoly xy_to_zzbar(const std::vector<std::vector<double>>& xy_coeffs) {
    const BivariatePoly x = (BivariatePoly::z() + BivariatePoly::zbar()) * cplx(0.5);
    const BivariatePoly y = (BivariatePoly::z() + BivariatePoly::zbar() * cplx(-1.0)) *
                            (cplx(1.0) / cplx(0.0, 2.0));
    BivariatePoly acc = BivariatePoly::zero();
    BivariatePoly xi(cplx(1.0));
    for (size_t i = 0; i < xy_coeffs.size(); ++i) {
        BivariatePoly yj(cplx(1.0));
        for (size_t j = 0; j < xy_coeffs[i].size(); ++j) {
            if (xy_coeffs[i][j] != 0.0) acc = acc + xi * yj * cplx(xy_coeffs[i][j]);
            yj = yj * y;
        }
        xi = xi * x;
    }
    return acc;
}

}  // namespace quaddec

#endif
