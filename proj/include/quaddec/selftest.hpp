#ifndef QUADDEC_SELFTEST_HPP
#define QUADDEC_SELFTEST_HPP

// selftest subcommand: runs every module's invariant suite on a seeded
// corpus and reports max residuals. Exit 0 iff all gates pass.

#include "quaddec/cli.hpp"

namespace quaddec::cli::detail {

inline void cmd_selftest(const RunConfig& cfg, RunResult& res, Summary& sum) {
    std::mt19937_64 rng(cfg.seed);

    // --- polynomial algebra ---
    {
        double recomb = 0.0, pf_resid = 0.0, invol = 0.0;
        std::uniform_real_distribution<double> u(-1.0, 1.0);
        for (int trial = 0; trial < 12; ++trial) {
            std::vector<cplx> c(7);
            for (cplx& v : c) v = {u(rng), u(rng)};
            ComplexPoly p(c);
            if (p.degree() < 2) continue;
            auto rs = roots(p);
            ComplexPoly back = recombine(rs, p.leading());
            for (int k = 0; k <= p.degree(); ++k)
                recomb = std::max(recomb,
                                  std::abs(back.coeff(k) - p.coeff(k)) / p.coeff_scale());

            RationalFunction r(ComplexPoly({cplx(u(rng), u(rng)), cplx(u(rng), u(rng)),
                                            cplx(u(rng), u(rng))}),
                               p);
            PartialFractions pf = partial_fractions(r);
            for (int k = 0; k < 64; ++k) {
                cplx z = std::polar(2.0, 2.0 * pi * k / 64);
                pf_resid = std::max(pf_resid,
                                    std::abs(eval(pf, z) - r(z)) / std::max(1.0, std::abs(r(z))));
            }
            RationalFunction rr = r.conj_reflect().conj_reflect();
            for (int k = 0; k < 16; ++k) {
                cplx z = std::polar(1.0, 2.0 * pi * (k + 0.2) / 16);
                invol = std::max(invol, std::abs(rr(z) - r(z)) / std::max(1.0, std::abs(r(z))));
            }
        }
        sum.gate("cpoly root recombination", recomb, 1e-9);
        sum.gate("cpoly partial-fraction round trip", pf_resid, 1e-9);
        sum.gate("cpoly conj_reflect involution", invol, 1e-12);
    }

    // --- circle decompositions ---
    {
        double four_form = 0.0, dirichlet = 0.0;
        for (int trial = 0; trial < 8; ++trial) {
            BivariateRational R = corpus::random_boundary_data(rng);
            std::vector<circle::CircleDecomposition> ds;
            for (auto f : {circle::Form::poles_outside, circle::Form::poles_inside,
                           circle::Form::holo_restriction, circle::Form::antiholo_restriction})
                ds.push_back(circle::decompose(R, f));
            for (int k = 0; k < 128; ++k) {
                cplx z = std::polar(1.0, 2.0 * pi * (k + 0.5) / 128);
                cplx want = R(z);
                for (const auto& d : ds)
                    four_form = std::max(four_form,
                                         std::abs(d(z) - want) / std::max(1.0, std::abs(want)));
            }
            // harmonicity of the poles_outside form against the Poisson oracle
            auto ref = oracles::PoissonReference::build(
                [&](double theta) { return R(std::polar(1.0, theta)); });
            const auto& d = ds[0];
            for (cplx w : interior_grid(5)) {
                cplx got = d.r1(w) + std::conj(d.r2(w));
                dirichlet = std::max(dirichlet, std::abs(got - ref.eval_disc(w)));
            }
        }
        sum.gate("circle four-representation consistency", four_form, 1e-8);
        sum.gate("circle dirichlet vs poisson oracle", dirichlet, 1e-8);
    }

    // --- domains, kernels, decompositions ---
    {
        double schwarz = 0.0, quad = 0.0, tangent_sq = 0.0, identities = 0.0, unimod = 0.0;
        double reproduce = 0.0, dirichlet = 0.0, dtn_fd = 0.0;
        std::vector<QuadratureDomain> domains;
        domains.push_back(disc_domain());
        domains.push_back(cardioid_domain(cplx(0.25)));
        domains.push_back(cardioid_domain(cplx(0.4)));
        for (const QuadratureDomain& q : domains) {
            for (int k = 0; k < 256; ++k) {
                double theta = 2.0 * pi * (k + 0.5) / 256;
                cplx w = std::polar(1.0, theta);
                cplx z = q.map()(w);
                schwarz = std::max(schwarz, std::abs(q.schwarz_w()(w) - std::conj(z)) /
                                                std::max(1.0, std::abs(z)));
                cplx T = q.tangent(theta);
                cplx expect = -w * w * q.dmap()(w) /
                              q.dmap().conj_coeffs()(cplx(1.0) / w);
                tangent_sq = std::max(tangent_sq, std::abs(T * T - expect));
            }
            QuadratureData qd = quadrature_data(q);
            for (int deg = 0; deg <= 5; ++deg) {
                cplx b = q.base();
                cplx lhs = oracles::area_integral(
                    q, [&](cplx z) { return std::pow(z - b, deg); }, 1e-10);
                cplx rhs = qd.apply([&](int m, cplx a) -> cplx {
                    if (m > deg) return cplx(0.0);
                    double fact = 1.0;
                    for (int i = 0; i < m; ++i) fact *= double(deg - i);
                    return fact * std::pow(a - b, deg - m);
                });
                quad = std::max(quad, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
            }
            identities = std::max(identities, kernels::boundary_identities(q).worst());
            unimod = std::max(unimod, kernels::ratio_checks(q).modulus_dev);

            BivariateRational zbar(BivariatePoly::zbar(), BivariatePoly(cplx(1.0)));
            decomp::Decomposition d = decomp::decompose(q, zbar);
            for (auto form :
                 {decomp::Form::k_lambda, decomp::Form::k_kbar, decomp::Form::lambda_lambdabar}) {
                decomp::Decomposition dc = decomp::convert(d, form);
                for (int k = 0; k < 64; ++k) {
                    double theta = 2.0 * pi * (k + 0.5) / 64;
                    cplx want = std::conj(q.boundary_point(theta));
                    reproduce = std::max(reproduce,
                                         std::abs(decomp::eval_boundary(q, dc, theta) - want) /
                                             std::max(1.0, std::abs(want)));
                }
            }
            decomp::HarmonicFunction u = decomp::dirichlet_solve(q, zbar);
            auto ref = oracles::dirichlet_reference(
                q, [&](double theta) { return std::conj(q.boundary_point(theta)); });
            for (cplx w : interior_grid(5))
                dirichlet = std::max(dirichlet, std::abs(u.eval_w(w) - ref.eval_w(w)));
            decomp::DtnImage img = decomp::dtn(q, zbar);
            for (int k = 0; k < 32; ++k) {
                double theta = 2.0 * pi * (k + 0.5) / 32;
                cplx fd =
                    oracles::fd_normal_derivative(q, [&](cplx z) { return u(z); }, theta);
                dtn_fd = std::max(dtn_fd, std::abs(img.normal_derivative(theta) - fd) /
                                              std::max(1.0, std::abs(fd)));
            }
        }
        sum.gate("schwarz function boundary identity", schwarz, 1e-10);
        sum.gate("tangent squared rational identity", tangent_sq, 1e-12);
        sum.gate("quadrature identities vs integration", quad, 1e-6);
        sum.gate("kernel boundary identities", identities, 1e-9);
        sum.gate("k/lambda ratio unimodularity", unimod, 1e-9);
        sum.gate("decomposition boundary reproduction", reproduce, 1e-8);
        sum.gate("dirichlet vs fourier-poisson reference", dirichlet, 1e-6);
        sum.gate("dtn vs finite differences", dtn_fd, 1e-4);
    }

    // --- approximation ---
    {
        std::vector<cplx> series{cplx(0.0)};
        for (int k = 1; k <= 40; ++k) series.push_back(std::pow(cplx(0.5), k - 1));
        auto g = approx::AnalyticMapInput::from_series(series);
        double prev = 1e300, mono = 0.0, tail = 0.0;
        for (int N = 4; N <= 12; ++N) {
            auto rep = approx::approximate_area_qd(g, N);
            double bound = std::pow(2.0, -(N - 1));
            tail = std::max(tail, std::abs(rep.sup_error - bound) / bound);
            if (rep.sup_error >= prev) mono = 1.0;
            prev = rep.sup_error;
        }
        sum.gate("approximation tail-bound agreement (factor 2)", tail, 1.0);
        sum.gate("approximation monotone convergence", mono, 0.5);
        auto rep = approx::approximate_arclength_qd(g, 6);
        ComplexPoly dP = rep.domain.map().num().derivative();
        sum.note("arclength construction degree " + std::to_string(rep.domain.degree()) +
                 ", sup_error " + io::csv_num(rep.sup_error));
    }

    res.data = "";
    (void)cfg;
}

}  // namespace quaddec::cli::detail

#endif
