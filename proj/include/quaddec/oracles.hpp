#ifndef QUADDEC_ORACLES_HPP
#define QUADDEC_ORACLES_HPP

// Independent reference computations. Nothing here goes through the kernel
// closed forms or the decomposition machinery: the Dirichlet reference is a
// Fourier series on the disc pullback, the quadrature reference is plain
// 2-D numerical integration, and the Bergman reference differentiates the
// Green's function numerically. The acceptance suite and the selftest
// subcommand compare the library against these.

#include "quaddec/fft.hpp"
#include "quaddec/qdomain.hpp"

namespace quaddec::oracles {

// Harmonic extension of boundary data on the unit circle by Fourier series
// with radius-power damping; composed with the inverse Riemann map this
// solves the Dirichlet problem on any of our domains.
class PoissonReference {
public:
    template <class F>  // F(theta) -> complex boundary value
    static PoissonReference build(F&& data, int n = 1024) {
        std::vector<cplx> samples(static_cast<size_t>(n));
        for (int k = 0; k < n; ++k) samples[static_cast<size_t>(k)] = data(2.0 * pi * k / n);
        PoissonReference p;
        p.c_ = fourier_coefficients(std::move(samples));
        return p;
    }

    // Evaluate at a disc point.
    cplx eval_disc(cplx w) const {
        const int n = static_cast<int>(c_.size());
        double rho = std::abs(w);
        double phi = std::arg(w);
        cplx acc = c_[0];
        for (int k = 1; k < n / 2; ++k) {
            double damp = std::pow(rho, k);
            acc += c_[static_cast<size_t>(k)] * damp * std::polar(1.0, k * phi);
            acc += c_[static_cast<size_t>(n - k)] * damp * std::polar(1.0, -k * phi);
        }
        return acc;
    }

private:
    std::vector<cplx> c_;
};

// Dirichlet reference on a quadrature domain for boundary data given as a
// function of theta (the boundary parameter).
template <class F>
class DirichletReference {
public:
    DirichletReference(const QuadratureDomain& q, F data, int n = 1024)
        : q_(&q), p_(PoissonReference::build(std::move(data), n)) {}

    cplx operator()(cplx z) const { return p_.eval_disc(q_->inverse_map(z)); }
    cplx eval_w(cplx w) const { return p_.eval_disc(w); }

private:
    const QuadratureDomain* q_;
    PoissonReference p_;
};

template <class F>
DirichletReference<F> dirichlet_reference(const QuadratureDomain& q, F data, int n = 1024) {
    return DirichletReference<F>(q, std::move(data), n);
}

// ---------------------------------------------------------------------------
// Numerical area integrals
// ---------------------------------------------------------------------------

inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    x.assign(static_cast<size_t>(n), 0.0);
    w.assign(static_cast<size_t>(n), 0.0);
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double t = std::cos(pi * (i + 0.75) / (n + 0.5));
        double p0 = 0.0, p1 = 0.0, dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            p0 = 1.0;
            p1 = 0.0;
            for (int j = 0; j < n; ++j) {
                double p2 = p1;
                p1 = p0;
                p0 = ((2.0 * j + 1.0) * t * p1 - j * p2) / (j + 1.0);
            }
            dp = n * (t * p0 - p1) / (t * t - 1.0);
            double dt = p0 / dp;
            t -= dt;
            if (std::abs(dt) < 1e-15) break;
        }
        x[static_cast<size_t>(i)] = -t;
        x[static_cast<size_t>(n - 1 - i)] = t;
        w[static_cast<size_t>(i)] = 2.0 / ((1.0 - t * t) * dp * dp);
        w[static_cast<size_t>(n - 1 - i)] = w[static_cast<size_t>(i)];
    }
}

// integral over Omega of h dA, pulled back to the disc:
// integral |P'(w)|^2 h(P(w)) dA(w), Gauss-Legendre radially and trapezoid in
// angle, refined by doubling until the relative change passes tol.
template <class H>
inline cplx area_integral(const QuadratureDomain& q, H&& h, double tol = 1e-9,
                          int max_doublings = 6) {
    auto pass = [&](int nr, int nt) {
        std::vector<double> x, w;
        gauss_legendre(nr, x, w);
        cplx acc(0.0);
        for (int i = 0; i < nr; ++i) {
            double rho = 0.5 * (x[static_cast<size_t>(i)] + 1.0);
            double wr = 0.5 * w[static_cast<size_t>(i)];
            cplx ring(0.0);
            for (int k = 0; k < nt; ++k) {
                cplx ww = std::polar(rho, 2.0 * pi * k / nt);
                cplx dp = q.dmap()(ww);
                ring += h(q.map()(ww)) * (dp * std::conj(dp));
            }
            acc += wr * rho * ring * (2.0 * pi / nt);
        }
        return acc;
    };
    int nr = 24, nt = 64;
    cplx prev = pass(nr, nt);
    for (int d = 0; d < max_doublings; ++d) {
        nr *= 2;
        nt *= 2;
        cplx cur = pass(nr, nt);
        if (std::abs(cur - prev) <= tol * std::max(1.0, std::abs(cur))) return cur;
        prev = cur;
    }
    return prev;
}

// ---------------------------------------------------------------------------
// Finite differences
// ---------------------------------------------------------------------------

// Second-order one-sided derivative along the inward ray: the outward
// normal derivative of u at the boundary point P(e^{i theta}).
template <class U>
inline cplx fd_normal_derivative(const QuadratureDomain& q, U&& u, double theta,
                                 double h = 1e-5) {
    cplx z0 = q.boundary_point(theta);
    cplx nu = q.tangent(theta) * cplx(0.0, -1.0);  // outward normal
    cplx u0 = u(z0), u1 = u(z0 - h * nu), u2 = u(z0 - 2.0 * h * nu);
    return (3.0 * u0 - 4.0 * u1 + u2) / (2.0 * h);
}

// Wirtinger derivatives by central differences.
template <class F>
inline cplx fd_dz(F&& f, cplx z, double h = 1e-4) {
    cplx dx = (f(z + h) - f(z - h)) / (2.0 * h);
    cplx dy = (f(z + cplx(0.0, h)) - f(z - cplx(0.0, h))) / (2.0 * h);
    return 0.5 * (dx - cplx(0.0, 1.0) * dy);
}
template <class F>
inline cplx fd_dzbar(F&& f, cplx z, double h = 1e-4) {
    cplx dx = (f(z + h) - f(z - h)) / (2.0 * h);
    cplx dy = (f(z + cplx(0.0, h)) - f(z - cplx(0.0, h))) / (2.0 * h);
    return 0.5 * (dx + cplx(0.0, 1.0) * dy);
}

// Five-point Laplacian.
template <class U>
inline cplx fd_laplacian(U&& u, cplx z, double h = 1e-3) {
    return (u(z + h) + u(z - h) + u(z + cplx(0.0, h)) + u(z - cplx(0.0, h)) - 4.0 * u(z)) /
           (h * h);
}

// ---------------------------------------------------------------------------
// Green's-function route to the Bergman kernel
// ---------------------------------------------------------------------------

// G(z, w) = -log | (f(z)-f(w)) / (1 - f(z) conj f(w)) |; the kernel is
// -(2/pi) d^2 G / dz dwbar, formed by nested central differences. This is
// the independent oracle for bergman_K.
inline double green_function(const QuadratureDomain& q, cplx z, cplx w) {
    cplx fz = q.inverse_map(z), fw = q.inverse_map(w);
    return -std::log(std::abs((fz - fw) / (cplx(1.0) - fz * std::conj(fw))));
}

inline cplx bergman_from_green_fd(const QuadratureDomain& q, cplx z, cplx w, double h = 1e-4) {
    auto dGdz = [&](cplx wpt) {
        return fd_dz([&](cplx zz) { return cplx(green_function(q, zz, wpt)); }, z, h);
    };
    return -(2.0 / pi) * fd_dzbar(dGdz, w, h);
}

// Lambda from the same Green's function: -(2/pi) d^2 G / dz dw.
inline cplx lambda_from_green_fd(const QuadratureDomain& q, cplx z, cplx w, double h = 1e-4) {
    auto dGdz = [&](cplx wpt) {
        return fd_dz([&](cplx zz) { return cplx(green_function(q, zz, wpt)); }, z, h);
    };
    return -(2.0 / pi) * fd_dz(dGdz, w, h);
}

}  // namespace quaddec::oracles

#endif
