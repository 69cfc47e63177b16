#ifndef QUADDEC_DECOMP_HPP
#define QUADDEC_DECOMP_HPP

#include "quaddec/kernels.hpp"

namespace quaddec::decomp {

enum class Form { k_lambda, k_kbar, lambda_lambdabar };
enum class TermKind { K, Lambda, k_lower, lambda_lower };

inline const char* form_name(Form f) {
    switch (f) {
        case Form::k_lambda: return "k_lambda";
        case Form::k_kbar: return "k_kbar";
        case Form::lambda_lambdabar: return "lambda_lambdabar";
    }
    return "?";
}
inline const char* kind_name(TermKind k) {
    switch (k) {
        case TermKind::K: return "K";
        case TermKind::Lambda: return "Lambda";
        case TermKind::k_lower: return "k_lower";
        case TermKind::lambda_lower: return "lambda_lower";
    }
    return "?";
}

struct KernelTerm {
    TermKind kind = TermKind::k_lower;
    cplx a;         // base point in the domain
    int m = 0;      // derivative order
    cplx coeff;
};

// A constant plus two term lists. In the k_lambda form both lists enter
// as-is (this is the partial-fractions analogue on the double: poles on the
// reflected side sit in the k list, poles inside in the lambda list). In
// the k_kbar and lambda_lambdabar forms the second list enters conjugated
// and both lists are k- resp. lambda-kind.
struct Decomposition {
    Form form = Form::k_lambda;
    cplx constant;
    std::vector<KernelTerm> terms1;
    std::vector<KernelTerm> terms2;
};

// Closed-form evaluators bound to a domain.
class CompiledTerms {
public:
    CompiledTerms() = default;
    CompiledTerms(const QuadratureDomain& q, const std::vector<KernelTerm>& terms) {
        for (const KernelTerm& t : terms) {
            if (t.kind == TermKind::k_lower || t.kind == TermKind::K)
                k_.push_back({kernels::k_family(q, t.a, t.m), t.coeff, t.kind == TermKind::K});
            else
                l_.push_back({kernels::lambda_family(q, t.a, t.m), t.coeff,
                              t.kind == TermKind::Lambda});
        }
        dmap_ = q.dmap();
    }

    // Sum of the terms at disc coordinate w; K/Lambda kinds evaluate the
    // derivative family via d/dz = (1/P'(w)) d/dw.
    cplx eval_w(cplx w) const {
        cplx acc(0.0);
        cplx dp(0.0);
        bool need_dp = false;
        for (const auto& e : k_) need_dp = need_dp || e.derived;
        for (const auto& e : l_) need_dp = need_dp || e.derived;
        if (need_dp) dp = dmap_(w);
        for (const auto& e : k_) acc += e.coeff * (e.derived ? e.fam.deriv(w) / dp : e.fam.eval(w));
        for (const auto& e : l_) acc += e.coeff * (e.derived ? e.fam.deriv(w) / dp : e.fam.eval(w));
        return acc;
    }

private:
    struct KEntry {
        kernels::KFamily fam;
        cplx coeff;
        bool derived;
    };
    struct LEntry {
        kernels::LambdaFamily fam;
        cplx coeff;
        bool derived;
    };
    std::vector<KEntry> k_;
    std::vector<LEntry> l_;
    RationalFunction dmap_;
};

// ---------------------------------------------------------------------------
// Extension to the double and membership
// ---------------------------------------------------------------------------

// M(w) = R(P(w), S(P(w))): the meromorphic extension of the boundary values
// of R to the double, in the disc coordinate. Poles within band of |w| = 1
// mean the data has boundary singularities and is rejected.
inline RationalFunction extend_to_double(const QuadratureDomain& q, const BivariateRational& R,
                                         double band = 1e-8, double tol = 1e-9) {
    {
        double m = 0.0, scale = std::max(R.den.coeff_scale(), 1e-300);
        for (int k = 0; k < 128; ++k) {
            cplx z = q.boundary_point(2.0 * pi * k / 128);
            m = std::max(m, std::abs(R.den.eval2(z, std::conj(z))));
        }
        if (m <= 1e-10 * scale)
            throw degenerate_data_error("extend_to_double: denominator vanishes on the boundary");
    }
    RationalFunction M = R.compose(q.map(), q.schwarz_w()).normalized(tol);
    if (M.den().degree() >= 1)
        for (const RootCluster& rc : roots(M.den(), tol))
            if (std::abs(std::abs(rc.root) - 1.0) < band)
                throw membership_error(
                    "extend_to_double: pole on the boundary; data has boundary singularities",
                    rc.root);
    return M;
}

namespace detail {

// Solve the per-pole triangular principal-part matching system.
// columns[m][j-1] = coefficient of (w-w0)^(-j) of the order-m family;
// columns[m][j-1] = 0 for j > m+1. target[j-1] likewise for M.
inline std::vector<cplx> match_principal_parts(const std::vector<std::vector<cplx>>& columns,
                                               const std::vector<cplx>& target) {
    const int q = static_cast<int>(target.size());
    std::vector<cplx> x(static_cast<size_t>(q), cplx(0.0));
    double scale = 0.0;
    for (const cplx& t : target) scale = std::max(scale, std::abs(t));
    for (int j = q; j >= 1; --j) {
        cplx rhs = target[static_cast<size_t>(j - 1)];
        for (int m = j; m < q; ++m)
            rhs -= x[static_cast<size_t>(m)] * columns[static_cast<size_t>(m)][static_cast<size_t>(j - 1)];
        cplx diag = columns[static_cast<size_t>(j - 1)][static_cast<size_t>(j - 1)];
        if (std::abs(diag) < 1e-13 * (1.0 + scale))
            throw conditioning_error("decompose: principal-part matching system is singular",
                                     std::abs(diag));
        x[static_cast<size_t>(j - 1)] = rhs / diag;
    }
    return x;
}

}  // namespace detail

struct DecomposeOptions {
    double tol = 1e-9;
    double boundary_band = 1e-8;
    double constant_gate = 1e-9;  // residual-constancy gate, relative
    double prune = 1e-13;         // drop terms with |coeff| below prune * scale
};

// Decompose a meromorphic function on the double (given in the disc
// coordinate) into constant + k-span + lambda-span by principal-part
// matching. Poles inside the disc produce lambda terms at their images;
// poles on the reflected side (including infinity, i.e. the polynomial
// part) produce k terms at the reflected images. The leftover is pole-free
// on the double, hence constant; its constancy is verified on three
// circles.
inline Decomposition decompose_w(const QuadratureDomain& q, const RationalFunction& M,
                                 DecomposeOptions opt = {}) {
    Decomposition out;
    out.form = Form::k_lambda;

    std::vector<kernels::KFamily> kfams;
    std::vector<kernels::LambdaFamily> lfams;
    std::vector<cplx> kcoeffs, lcoeffs;

    // polynomial part (pole at infinity) -> k terms at the base point
    auto [quot, rem] = divmod(M.num(), M.den());
    if (quot.degree() >= 1) {
        const int p = quot.degree();
        std::vector<std::vector<cplx>> cols;
        for (int m = 0; m < p; ++m) {
            kernels::KFamily f = kernels::k_family_w(q, cplx(0.0), m);
            std::vector<cplx> col(static_cast<size_t>(p), cplx(0.0));
            const std::vector<cplx> pc = f.polynomial_coeffs();  // pc[j] on w^{j+1}
            for (size_t j = 0; j < pc.size(); ++j) col[j] = pc[j];
            cols.push_back(std::move(col));
            kfams.push_back(std::move(f));
        }
        std::vector<cplx> target(static_cast<size_t>(p));
        for (int j = 1; j <= p; ++j) target[static_cast<size_t>(j - 1)] = quot.coeff(j);
        std::vector<cplx> x = detail::match_principal_parts(cols, target);
        kcoeffs.insert(kcoeffs.end(), x.begin(), x.end());
    }

    // finite poles
    if (M.den().degree() >= 1) {
        for (const RootCluster& rc : roots(M.den(), opt.tol)) {
            const cplx w0 = rc.root;
            const int order = rc.multiplicity;
            if (std::abs(std::abs(w0) - 1.0) < opt.boundary_band)
                throw membership_error("decompose: pole on the boundary circle", w0);
            std::vector<cplx> target = principal_part(M, w0, order);
            if (std::abs(w0) < 1.0) {
                std::vector<std::vector<cplx>> cols;
                std::vector<kernels::LambdaFamily> fams;
                for (int m = 0; m < order; ++m) {
                    fams.push_back(kernels::lambda_family_w(q, w0, m));
                    std::vector<cplx> col = fams.back().principal_at_pole();
                    col.resize(static_cast<size_t>(order), cplx(0.0));
                    cols.push_back(std::move(col));
                }
                std::vector<cplx> x = detail::match_principal_parts(cols, target);
                for (int m = 0; m < order; ++m) {
                    lfams.push_back(std::move(fams[static_cast<size_t>(m)]));
                    lcoeffs.push_back(x[static_cast<size_t>(m)]);
                }
            } else {
                const cplx alpha = cplx(1.0) / std::conj(w0);
                std::vector<std::vector<cplx>> cols;
                std::vector<kernels::KFamily> fams;
                for (int m = 0; m < order; ++m) {
                    fams.push_back(kernels::k_family_w(q, alpha, m));
                    std::vector<cplx> col = fams.back().principal_at_pole();
                    col.resize(static_cast<size_t>(order), cplx(0.0));
                    cols.push_back(std::move(col));
                }
                std::vector<cplx> x = detail::match_principal_parts(cols, target);
                for (int m = 0; m < order; ++m) {
                    kfams.push_back(std::move(fams[static_cast<size_t>(m)]));
                    kcoeffs.push_back(x[static_cast<size_t>(m)]);
                }
            }
        }
    }

    // residual must be constant on the double
    auto term_sum = [&](cplx w) {
        cplx acc(0.0);
        for (size_t i = 0; i < kfams.size(); ++i) acc += kcoeffs[i] * kfams[i].eval(w);
        for (size_t i = 0; i < lfams.size(); ++i) acc += lcoeffs[i] * lfams[i].eval(w);
        return acc;
    };
    cplx mean(0.0);
    std::vector<cplx> samples;
    double mscale = 1.0;
    for (double r : {0.5, 1.0, 2.0}) {
        for (int k = 0; k < 22; ++k) {
            cplx w = std::polar(r, 2.0 * pi * (k + 0.29) / 22);
            if (std::abs(M.den()(w)) < 1e-7 * std::max(1.0, M.den().coeff_scale())) continue;
            cplx v = M(w) - term_sum(w);
            samples.push_back(v);
            mean += v;
            mscale = std::max(mscale, std::abs(M(w)));
        }
    }
    if (samples.empty()) throw conditioning_error("decompose: no usable residual samples", 0.0);
    mean /= double(samples.size());
    double dev = 0.0;
    for (cplx v : samples) dev = std::max(dev, std::abs(v - mean));
    if (dev > opt.constant_gate * mscale)
        throw conditioning_error("decompose: residual is not constant on the double", dev);
    out.constant = mean;

    double cscale = std::abs(mean);
    for (cplx c : kcoeffs) cscale = std::max(cscale, std::abs(c));
    for (cplx c : lcoeffs) cscale = std::max(cscale, std::abs(c));
    for (size_t i = 0; i < kfams.size(); ++i)
        if (std::abs(kcoeffs[i]) > opt.prune * cscale)
            out.terms1.push_back({TermKind::k_lower, kfams[i].a, kfams[i].m, kcoeffs[i]});
    for (size_t i = 0; i < lfams.size(); ++i)
        if (std::abs(lcoeffs[i]) > opt.prune * cscale)
            out.terms2.push_back({TermKind::lambda_lower, lfams[i].a, lfams[i].m, lcoeffs[i]});
    return out;
}

inline Decomposition decompose(const QuadratureDomain& q, const BivariateRational& R,
                               DecomposeOptions opt = {}) {
    return decompose_w(q, extend_to_double(q, R, opt.boundary_band, opt.tol), opt);
}

// Boundary values of a decomposition at P(e^{i theta}).
inline cplx eval_boundary(const QuadratureDomain& q, const Decomposition& d, double theta) {
    CompiledTerms t1(q, d.terms1), t2(q, d.terms2);
    cplx w = std::polar(1.0, theta);
    cplx s2 = t2.eval_w(w);
    return d.constant + t1.eval_w(w) + (d.form == Form::k_lambda ? s2 : std::conj(s2));
}

// ---------------------------------------------------------------------------
// Form conversion via the boundary relation k_a^m = -conj(lambda_a^m)
// ---------------------------------------------------------------------------

namespace detail {

inline KernelTerm flip(const KernelTerm& t) {
    // c lambda_a^m = conj(-conj(c) k_a^m) on the boundary, and symmetrically.
    KernelTerm out = t;
    out.coeff = -std::conj(t.coeff);
    out.kind = (t.kind == TermKind::lambda_lower) ? TermKind::k_lower : TermKind::lambda_lower;
    return out;
}

}  // namespace detail

inline Decomposition convert(const Decomposition& d, Form target) {
    if (d.form == target) return d;
    if (d.form == Form::k_lambda) {
        Decomposition out;
        out.constant = d.constant;
        out.form = target;
        if (target == Form::k_kbar) {
            out.terms1 = d.terms1;  // k terms stay
            for (const KernelTerm& t : d.terms2) out.terms2.push_back(detail::flip(t));
        } else {
            out.terms1 = d.terms2;  // lambda terms stay
            for (const KernelTerm& t : d.terms1) out.terms2.push_back(detail::flip(t));
        }
        return out;
    }
    // back to k_lambda first
    Decomposition kl;
    kl.form = Form::k_lambda;
    kl.constant = d.constant;
    if (d.form == Form::k_kbar) {
        kl.terms1 = d.terms1;
        for (const KernelTerm& t : d.terms2) kl.terms2.push_back(detail::flip(t));
    } else {
        kl.terms2 = d.terms1;
        for (const KernelTerm& t : d.terms2) kl.terms1.push_back(detail::flip(t));
    }
    return convert(kl, target);
}

// ---------------------------------------------------------------------------
// Dirichlet problem
// ---------------------------------------------------------------------------

// Harmonic extension of rational boundary data, in the pole-free form
// constant + k1 + conj(k2). Immutable and evaluable anywhere in the closed
// domain.
class HarmonicFunction {
public:
    HarmonicFunction(QuadratureDomain q, Decomposition k_kbar_form)
        : q_(std::move(q)), d_(std::move(k_kbar_form)) {
        if (d_.form != Form::k_kbar)
            throw domain_error("HarmonicFunction: expects the k_kbar form");
        t1_ = CompiledTerms(q_, d_.terms1);
        t2_ = CompiledTerms(q_, d_.terms2);
    }

    const QuadratureDomain& domain() const { return q_; }
    const Decomposition& decomposition() const { return d_; }

    cplx eval_w(cplx w) const {
        return d_.constant + t1_.eval_w(w) + std::conj(t2_.eval_w(w));
    }
    cplx operator()(cplx z) const { return eval_w(q_.inverse_map(z)); }

private:
    QuadratureDomain q_;
    Decomposition d_;
    CompiledTerms t1_, t2_;
};

inline HarmonicFunction dirichlet_solve(const QuadratureDomain& q, const BivariateRational& R,
                                        DecomposeOptions opt = {}) {
    return HarmonicFunction(q, convert(decompose(q, R, opt), Form::k_kbar));
}

// ---------------------------------------------------------------------------
// Dirichlet-to-Neumann image
// ---------------------------------------------------------------------------

// Normal derivative of the harmonic extension, as Bergman-span elements:
// du/dn = -i kappa1(z) T(z) + i conj(kappa2(z) T(z)).
class DtnImage {
public:
    DtnImage(QuadratureDomain q, std::vector<KernelTerm> kappa1, std::vector<KernelTerm> kappa2)
        : q_(std::move(q)), k1_(std::move(kappa1)), k2_(std::move(kappa2)) {
        t1_ = CompiledTerms(q_, k1_);
        t2_ = CompiledTerms(q_, k2_);
    }

    const std::vector<KernelTerm>& kappa1() const { return k1_; }
    const std::vector<KernelTerm>& kappa2() const { return k2_; }
    const QuadratureDomain& domain() const { return q_; }

    cplx kappa1_w(cplx w) const { return t1_.eval_w(w); }
    cplx kappa2_w(cplx w) const { return t2_.eval_w(w); }

    cplx normal_derivative(double theta) const {
        cplx w = std::polar(1.0, theta);
        cplx T = q_.tangent(theta);
        return cplx(0.0, -1.0) * t1_.eval_w(w) * T +
               cplx(0.0, 1.0) * std::conj(t2_.eval_w(w) * T);
    }

private:
    QuadratureDomain q_;
    std::vector<KernelTerm> k1_, k2_;
    CompiledTerms t1_, t2_;
};

// Differentiates the k_kbar form termwise: (k_a^m)' = K_a^m, so the span
// coefficients carry over unchanged with kind K.
inline DtnImage dtn(const QuadratureDomain& q, const BivariateRational& R,
                    DecomposeOptions opt = {}) {
    Decomposition d = convert(decompose(q, R, opt), Form::k_kbar);
    std::vector<KernelTerm> kappa1, kappa2;
    for (const KernelTerm& t : d.terms1) kappa1.push_back({TermKind::K, t.a, t.m, t.coeff});
    for (const KernelTerm& t : d.terms2) kappa2.push_back({TermKind::K, t.a, t.m, t.coeff});
    return DtnImage(q, std::move(kappa1), std::move(kappa2));
}

}  // namespace quaddec::decomp

#endif
