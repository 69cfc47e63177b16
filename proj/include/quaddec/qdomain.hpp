#ifndef QUADDEC_QDOMAIN_HPP
#define QUADDEC_QDOMAIN_HPP

#include <optional>

#include "quaddec/bivariate.hpp"
#include "quaddec/jet.hpp"

#include <Eigen/Dense>

namespace quaddec {

class outside_domain_error : public qd_error {
public:
    explicit outside_domain_error(const std::string& what) : qd_error(what) {}
};

struct DomainOptions {
    // poles of the map must satisfy |w| > 1 + pole_margin
    double pole_margin = 1e-6;
    // critical points of the map must satisfy |w| > 1 + critical_margin ...
    double critical_margin = 1e-9;
    // ... unless this is set, which admits critical points on |w| = 1
    // itself (cusped boundaries such as the extreme cardioid)
    bool allow_boundary_critical = false;
    // boundary injectivity scan: min |P(wi)-P(wj)| / |wi-wj| over all sample
    // pairs, relative to the boundary scale
    double injectivity_threshold = 1e-6;
    int boundary_samples = 512;
    // |inverse_map(z)| <= 1 + membership_tol defines the closed domain
    double membership_tol = 1e-9;
    double root_tol = 1e-9;
};

// A simply connected area quadrature domain, represented by a rational
// conformal map P of the unit disc, analytic and univalent on its closure.
// Everything downstream works in the disc coordinate w with z = P(w); the
// Schwarz function pulled back to the disc is conj-coefficients-P of 1/w.
class QuadratureDomain {
public:
    explicit QuadratureDomain(RationalFunction map, DomainOptions opt = {})
        : opt_(opt), map_(map.normalized(opt.root_tol)) {
        degree_ = std::max(map_.num().degree(), std::max(map_.den().degree(), 0));
        if (degree_ < 1 || map_.num().is_zero())
            throw domain_error("QuadratureDomain: map must be nonconstant");
        validate();
        dmap_ = map_.derivative();
        schwarz_w_ = map_.conj_coeffs().compose_reciprocal().normalized(opt.root_tol);
        base_ = map_(cplx(0.0));
        boundary_scale_ = 0.0;
        for (int k = 0; k < opt_.boundary_samples; ++k)
            boundary_scale_ = std::max(
                boundary_scale_, std::abs(boundary_point(2.0 * pi * k / opt_.boundary_samples)));
    }

    const RationalFunction& map() const { return map_; }
    const RationalFunction& dmap() const { return dmap_; }
    // S composed with P: a rational function of w equal to conj(P(w)) on |w|=1.
    const RationalFunction& schwarz_w() const { return schwarz_w_; }
    cplx base() const { return base_; }
    int degree() const { return degree_; }
    const DomainOptions& options() const { return opt_; }
    bool is_polynomial_map() const { return map_.den().degree() == 0; }
    double boundary_scale() const { return boundary_scale_; }

    cplx boundary_point(double theta) const { return map_(std::polar(1.0, theta)); }

    // Unit tangent at the boundary point P(e^{i theta}).
    cplx tangent(double theta) const {
        cplx w = std::polar(1.0, theta);
        cplx v = cplx(0.0, 1.0) * w * dmap_(w);
        double m = std::abs(v);
        if (m == 0.0) throw domain_error("tangent: critical boundary point");
        return v / m;
    }

    // The Riemann map f = P^{-1} at z, unique in the closed disc by
    // univalence. Newton-polished so P(w) = z holds to ~1e-12 relative.
    cplx inverse_map(cplx z) const {
        auto w = try_inverse_map(z);
        if (!w)
            throw outside_domain_error("inverse_map: point outside the closed domain");
        return *w;
    }

    std::optional<cplx> try_inverse_map(cplx z) const {
        ComplexPoly candidate = map_.num() - ComplexPoly(z) * map_.den();
        if (candidate.degree() < 1) return std::nullopt;
        std::optional<cplx> best;
        for (const RootCluster& rc : roots(candidate, opt_.root_tol)) {
            cplx w = rc.root;
            for (int it = 0; it < 4; ++it) {
                cplx d = dmap_(w);
                if (std::abs(d) < 1e-300) break;
                w -= (map_(w) - z) / d;
            }
            if (std::abs(w) <= 1.0 + opt_.membership_tol) {
                if (best && std::abs(*best - w) > 1e-6 * (1.0 + std::abs(w)))
                    throw univalence_error("inverse_map: multiple preimages in the closed disc",
                                           "map is not univalent");
                best = w;
            }
        }
        return best;
    }

    bool contains(cplx z) const { return try_inverse_map(z).has_value(); }

private:
    void validate() const {
        if (map_.den().degree() >= 1)
            for (const RootCluster& rc : roots(map_.den(), opt_.root_tol))
                if (std::abs(rc.root) <= 1.0 + opt_.pole_margin)
                    throw univalence_error("QuadratureDomain: map pole too close to closed disc",
                                           "pole at |w| = " + std::to_string(std::abs(rc.root)));
        RationalFunction dp = map_.derivative();
        ComplexPoly dpn = dp.num().trimmed(1e-14);
        if (dpn.is_zero())
            throw domain_error("QuadratureDomain: map has identically zero derivative");
        if (dpn.degree() >= 1)
            for (const RootCluster& rc : roots(dpn, opt_.root_tol)) {
                double m = std::abs(rc.root);
                bool ok = opt_.allow_boundary_critical ? (m >= 1.0 - 1e-9)
                                                       : (m > 1.0 + opt_.critical_margin);
                if (!ok)
                    throw univalence_error(
                        "QuadratureDomain: critical point of the map in the closed disc",
                        "P' root at |w| = " + std::to_string(m));
            }
        // boundary self-intersection scan
        const int N = opt_.boundary_samples;
        std::vector<cplx> ws(static_cast<size_t>(N)), zs(static_cast<size_t>(N));
        double scale = 0.0;
        for (int k = 0; k < N; ++k) {
            ws[static_cast<size_t>(k)] = std::polar(1.0, 2.0 * pi * k / N);
            zs[static_cast<size_t>(k)] = map_(ws[static_cast<size_t>(k)]);
            scale = std::max(scale, std::abs(zs[static_cast<size_t>(k)]));
        }
        for (int i = 0; i < N; ++i)
            for (int j = i + 1; j < N; ++j) {
                double dw = std::abs(ws[static_cast<size_t>(i)] - ws[static_cast<size_t>(j)]);
                double dz = std::abs(zs[static_cast<size_t>(i)] - zs[static_cast<size_t>(j)]);
                if (dz < opt_.injectivity_threshold * scale * dw)
                    throw univalence_error(
                        "QuadratureDomain: boundary self-intersection detected",
                        "samples " + std::to_string(i) + " and " + std::to_string(j));
            }
    }

    DomainOptions opt_;
    RationalFunction map_;
    RationalFunction dmap_;
    RationalFunction schwarz_w_;
    cplx base_;
    int degree_ = 0;
    double boundary_scale_ = 0.0;
};

inline QuadratureDomain disc_domain() {
    return QuadratureDomain(RationalFunction::variable());
}

// P(w) = w + c w^2; univalent on the closed disc for |c| < 1/2, cusped at
// |c| = 1/2.
inline QuadratureDomain cardioid_domain(cplx c, DomainOptions opt = {}) {
    return QuadratureDomain(
        RationalFunction(ComplexPoly({cplx(0.0), cplx(1.0), c}), ComplexPoly::one()), opt);
}

// ---------------------------------------------------------------------------
// Schwarz function
// ---------------------------------------------------------------------------

// Meromorphic extension of z -> conj(z) from the boundary into the domain.
class SchwarzFunction {
public:
    explicit SchwarzFunction(const QuadratureDomain& q) : q_(&q) {
        const RationalFunction& s = q.schwarz_w();
        if (s.den().degree() >= 1)
            for (const RootCluster& rc : roots(s.den(), q.options().root_tol))
                if (std::abs(rc.root) < 1.0 + q.options().membership_tol)
                    poles_.push_back(rc);
    }

    const RationalFunction& as_w_rational() const { return q_->schwarz_w(); }
    // Disc-coordinate poles of the meromorphic extension.
    const std::vector<RootCluster>& w_poles() const { return poles_; }

    cplx eval_w(cplx w) const {
        for (const RootCluster& p : poles_)
            if (std::abs(w - p.root) < 1e-9 * (1.0 + std::abs(w)))
                throw pole_error("SchwarzFunction: evaluation at a pole", p.root,
                                 principal_part(q_->schwarz_w(), p.root, p.multiplicity));
        return q_->schwarz_w()(w);
    }

    cplx operator()(cplx z) const { return eval_w(q_->inverse_map(z)); }

private:
    const QuadratureDomain* q_;
    std::vector<RootCluster> poles_;
};

// ---------------------------------------------------------------------------
// Quadrature identity
// ---------------------------------------------------------------------------

struct QuadratureNode {
    cplx node;                  // point in the domain
    std::vector<cplx> weights;  // weights[m] multiplies h^(m)(node)
};

struct QuadratureData {
    std::vector<QuadratureNode> nodes;

    // Apply the identity to h given as evaluators of its derivatives.
    template <class HDeriv>  // HDeriv(m, a) = h^(m)(a)
    cplx apply(HDeriv&& h) const {
        cplx acc(0.0);
        for (const QuadratureNode& n : nodes)
            for (size_t m = 0; m < n.weights.size(); ++m)
                acc += n.weights[m] * h(static_cast<int>(m), n.node);
        return acc;
    }
};

// Nodes and weights of the area quadrature identity
//   integral_Omega h dA = sum c_{a,m} h^(m)(a),
// from residues of h(P(w)) S(P(w)) P'(w) at the disc-coordinate poles of the
// Schwarz function (Stokes applied to h(z) conj(z) dz / 2i).
inline QuadratureData quadrature_data(const QuadratureDomain& q) {
    RationalFunction F = (q.schwarz_w() * q.dmap()).normalized(q.options().root_tol);
    QuadratureData out;
    if (F.den().degree() < 1) return out;
    for (const RootCluster& rc : roots(F.den(), q.options().root_tol)) {
        if (std::abs(rc.root) >= 1.0) continue;
        const int order = rc.multiplicity;
        std::vector<cplx> L = principal_part(F, rc.root, order);
        QuadratureNode node;
        node.node = q.map()(rc.root);
        node.weights.assign(static_cast<size_t>(order), cplx(0.0));
        // E_m = Taylor coefficients of (P(w0+t) - a)^m
        Jet shift = eval_rational(q.map(), Jet::variable(order - 1, rc.root));
        shift.c[0] = cplx(0.0);
        Jet power(order - 1, cplx(1.0));
        double factorial = 1.0;
        for (int m = 0; m < order; ++m) {
            if (m > 0) {
                power = power * shift;
                factorial *= m;
            }
            cplx acc(0.0);
            for (int j = m + 1; j <= order; ++j)
                acc += L[static_cast<size_t>(j - 1)] * power.c[static_cast<size_t>(j - 1)];
            node.weights[static_cast<size_t>(m)] = pi * acc / factorial;
        }
        out.nodes.push_back(std::move(node));
    }
    return out;
}

// ---------------------------------------------------------------------------
// Reflection in the double
// ---------------------------------------------------------------------------

struct ReflectedPoint {
    bool at_infinity = false;
    cplx w;  // disc coordinate 1/conj(f(a)) when finite
};

// Disc coordinate of the reflection of an interior point across the
// boundary into the reflected half of the double. The base point reflects
// to the point at infinity (tagged, not an error).
inline ReflectedPoint reflect(const QuadratureDomain& q, cplx a) {
    cplx alpha = q.inverse_map(a);
    if (std::abs(alpha) >= 1.0 - 1e-9)
        throw domain_error("reflect: point not strictly inside the domain");
    if (std::abs(alpha) < 1e-13) return {true, cplx(0.0)};
    return {false, cplx(1.0) / std::conj(alpha)};
}

// ---------------------------------------------------------------------------
// Implicitization
// ---------------------------------------------------------------------------

struct ImplicitCurve {
    BivariatePoly poly;  // Q(z, zbar), var order "z,zbar", max |coeff| = 1

    cplx operator()(cplx z) const { return poly(z); }
};

namespace detail {

inline cplx sylvester_det(const std::vector<cplx>& f, const std::vector<cplx>& g) {
    // f, g given descending-degree, formal degrees n = f.size()-1, m = g.size()-1
    const int n = static_cast<int>(f.size()) - 1;
    const int m = static_cast<int>(g.size()) - 1;
    const int N = n + m;
    Eigen::MatrixXcd S = Eigen::MatrixXcd::Zero(N, N);
    for (int r = 0; r < m; ++r)
        for (int k = 0; k <= n; ++k) S(r, r + k) = f[static_cast<size_t>(k)];
    for (int r = 0; r < n; ++r)
        for (int k = 0; k <= m; ++k) S(m + r, r + k) = g[static_cast<size_t>(k)];
    return S.determinant();
}

}  // namespace detail

// Bivariate polynomial vanishing on the boundary: the resultant in w of
// P(w) - z and zbar w^d - P*(w), where P*(w) = w^d conj-coeffs-P(1/w).
// Computed by Sylvester-determinant evaluation on a tensor grid of scaled
// roots of unity and recovered by inverse DFT; the degree bound (d in each
// variable) is certified a posteriori by the boundary residual gate. May
// contain factors beyond the minimal polynomial of the curve.
inline ImplicitCurve implicitize(const QuadratureDomain& q, double residual_gate = 1e-8) {
    if (!q.is_polynomial_map())
        throw domain_error("implicitize: requires a polynomial map");
    const ComplexPoly P = q.map().num() / q.map().den().coeff(0);
    const int d = P.degree();
    const int n = d + 1;

    const double r1 = 1.0 + q.boundary_scale();
    const double r2 = 0.75 * r1 + 0.25;

    // f coefficients descending in w: P(w) - z
    std::vector<cplx> fd(static_cast<size_t>(d) + 1), gd(static_cast<size_t>(d) + 1);
    std::vector<std::vector<cplx>> V(static_cast<size_t>(n),
                                     std::vector<cplx>(static_cast<size_t>(n)));
    for (int i = 0; i < n; ++i) {
        cplx z = r1 * std::polar(1.0, 2.0 * pi * i / n);
        for (int j = 0; j < n; ++j) {
            cplx zb = r2 * std::polar(1.0, 2.0 * pi * (j + 0.5) / n);
            for (int k = 0; k <= d; ++k) fd[static_cast<size_t>(k)] = P.coeff(d - k);
            fd[static_cast<size_t>(d)] -= z;
            // g = zbar w^d - sum conj(p_k) w^{d-k}, descending
            for (int k = 0; k <= d; ++k) gd[static_cast<size_t>(k)] = -std::conj(P.coeff(k));
            gd[0] += zb;
            V[static_cast<size_t>(i)][static_cast<size_t>(j)] = detail::sylvester_det(fd, gd);
        }
    }

    std::vector<std::vector<cplx>> coeffs(static_cast<size_t>(n),
                                          std::vector<cplx>(static_cast<size_t>(n), cplx(0.0)));
    for (int a = 0; a < n; ++a)
        for (int b = 0; b < n; ++b) {
            cplx acc(0.0);
            for (int i = 0; i < n; ++i)
                for (int j = 0; j < n; ++j)
                    acc += V[static_cast<size_t>(i)][static_cast<size_t>(j)] *
                           std::polar(1.0, -2.0 * pi * (double(i * a) / n + double(j * b) / n +
                                                        0.5 * b / n));
            coeffs[static_cast<size_t>(a)][static_cast<size_t>(b)] =
                acc / (double(n) * double(n) * std::pow(r1, a) * std::pow(r2, b));
        }

    BivariatePoly Q(std::move(coeffs));
    double s = Q.coeff_scale();
    if (s == 0.0) throw conditioning_error("implicitize: zero resultant", 0.0);
    Q = Q * (cplx(1.0) / s);

    double worst = 0.0;
    for (int k = 0; k < 256; ++k) {
        cplx z = q.boundary_point(2.0 * pi * (k + 0.5) / 256);
        worst = std::max(worst, std::abs(Q(z)) / Q.eval_scale(z, std::conj(z)));
    }
    if (worst > residual_gate)
        throw conditioning_error("implicitize: boundary residual exceeds the degree-bound gate",
                                 worst);
    return {Q};
}

}  // namespace quaddec

#endif
