#ifndef QUADDEC_BOUNDARY_EQ_HPP
#define QUADDEC_BOUNDARY_EQ_HPP

#include <sstream>

#include "quaddec/decomp.hpp"

namespace quaddec {

// The boundary curve written through a boundary point a:
//   1/(conj z - conj a) - conj(k2(z)) = A/(z - a) + c + k1(z)
// where A = 1/S'(a) removes the simple pole of 1/(S(z) - conj a) at a and
// c + k1 + conj(k2) decomposes the remaining singularity-free boundary
// function.
class BoundaryDescription {
public:
    BoundaryDescription(QuadratureDomain q, cplx a, cplx A, decomp::Decomposition d)
        : q_(std::move(q)), a_(a), A_(A), d_(std::move(d)),
          t1_(q_, d_.terms1), t2_(q_, d_.terms2) {}

    cplx a() const { return a_; }
    cplx A() const { return A_; }
    cplx c() const { return d_.constant; }
    const std::vector<decomp::KernelTerm>& k1_terms() const { return d_.terms1; }
    const std::vector<decomp::KernelTerm>& k2_terms() const { return d_.terms2; }
    const QuadratureDomain& domain() const { return q_; }

    cplx lhs(double theta) const {
        cplx w = std::polar(1.0, theta);
        cplx z = q_.map()(w);
        return cplx(1.0) / (std::conj(z) - std::conj(a_)) - std::conj(t2_.eval_w(w));
    }
    cplx rhs(double theta) const {
        cplx w = std::polar(1.0, theta);
        cplx z = q_.map()(w);
        return A_ / (z - a_) + d_.constant + t1_.eval_w(w);
    }

    // Max relative residual of the curve equation over boundary samples;
    // samples too close to a itself are skipped (both sides blow up there
    // and their difference is the removable singularity).
    double equation_residual(int samples = 256) const {
        double theta_a = std::arg(q_.inverse_map(a_));
        double worst = 0.0;
        for (int k = 0; k < samples; ++k) {
            double theta = 2.0 * pi * (k + 0.5) / samples;
            double sep = std::abs(std::remainder(theta - theta_a, 2.0 * pi));
            if (sep < 2.0 * pi / samples) continue;
            cplx L = lhs(theta), R = rhs(theta);
            worst = std::max(worst, std::abs(L - R) / std::max({1.0, std::abs(L), std::abs(R)}));
        }
        return worst;
    }

    std::string rendered() const {
        std::ostringstream os;
        os.precision(12);
        os << "1/(conj(z) - (" << std::conj(a_) << ")) - conj(k2(z)) = (" << A_
           << ")/(z - (" << a_ << ")) + (" << d_.constant << ") + k1(z)";
        os << "   [k1: " << d_.terms1.size() << " terms, k2: " << d_.terms2.size() << " terms]";
        return os.str();
    }

private:
    QuadratureDomain q_;
    cplx a_, A_;
    decomp::Decomposition d_;
    decomp::CompiledTerms t1_, t2_;
};

inline BoundaryDescription boundary_description(const QuadratureDomain& q, cplx a_boundary,
                                                decomp::DecomposeOptions opt = {}) {
    cplx wa = q.inverse_map(a_boundary);
    if (std::abs(std::abs(wa) - 1.0) > 1e-8)
        throw domain_error("boundary_description: point is not on the boundary");
    wa /= std::abs(wa);

    // S'(a) = (S o P)'(w) / P'(w)
    cplx dS = q.schwarz_w().derivative()(wa);
    cplx dP = q.dmap()(wa);
    if (std::abs(dP) < 1e-12 || std::abs(dS) < 1e-12 * std::max(1.0, std::abs(dP)))
        throw degenerate_data_error("boundary_description: S'(a) degenerate at this point");
    const cplx A = dP / dS;

    // R(z) = 1/(S(z) - conj a) - A/(z - a) in the disc coordinate; each term
    // has a simple pole at wa that the pair cancels, so both the combined
    // numerator and denominator carry an exact double root there.
    const RationalFunction& S = q.schwarz_w();
    RationalFunction t1(S.den(), S.num() - ComplexPoly(std::conj(a_boundary)) * S.den());
    RationalFunction t2(A * q.map().den(),
                        q.map().num() - ComplexPoly(a_boundary) * q.map().den());
    RationalFunction Rw = t1 - t2;
    ComplexPoly n = Rw.num(), d = Rw.den();
    for (int k = 0; k < 2; ++k) {
        n = deflate(n, wa);
        d = deflate(d, wa);
    }
    RationalFunction cleaned = RationalFunction(n, d).normalized(opt.tol);
    if (cleaned.num().coeff_scale() <
        1e-12 * std::max(1.0, Rw.num().coeff_scale() / std::max(1.0, Rw.den().coeff_scale())))
        throw degenerate_data_error("boundary_description: R vanished identically");

    decomp::Decomposition d_kl = decomp::decompose_w(q, cleaned, opt);
    return BoundaryDescription(q, a_boundary, A, decomp::convert(d_kl, decomp::Form::k_kbar));
}

}  // namespace quaddec

#endif
