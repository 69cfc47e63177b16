#ifndef QUADDEC_CLI_HPP
#define QUADDEC_CLI_HPP

#include "quaddec/corpus.hpp"
#include "quaddec/decomp.hpp"
#include "quaddec/io.hpp"
#include "quaddec/oracles.hpp"

namespace quaddec::cli {

struct RunConfig {
    std::string subcommand;
    std::string domain_path;
    std::string data_path;
    std::string output_path;  // empty: data to the result struct only
    std::string form;
    int samples = 256;
    double tol = 1e-8;
    std::string format = "json";  // json | csv
    std::uint64_t seed = 0;
    int degree = 6;
    std::string kind = "area";
    int log_level = 1;  // QUADDEC_LOG: 0 quiet, 1 info, 2 debug
};

struct RunResult {
    int exit_code = 0;
    std::string data;     // JSON or CSV payload
    std::string summary;  // human-readable residual lines
};

namespace detail {

struct Summary {
    std::ostringstream os;
    bool failed = false;
    std::string first_failure;

    // Reports one residual gate; remembers the first failure by name.
    void gate(const std::string& name, double value, double bound) {
        bool ok = value <= bound;
        os << (ok ? "pass  " : "FAIL  ") << name << ": " << std::scientific
           << std::setprecision(3) << value << " (gate " << bound << ")\n";
        if (!ok && !failed) {
            failed = true;
            first_failure = name;
        }
    }
    void note(const std::string& line) { os << line << "\n"; }
};

inline void validate(const RunConfig& cfg) {
    if (cfg.samples < 16) throw io::parse_error("--samples must be >= 16");
    if (!(cfg.tol > 1e-14 && cfg.tol < 1e-2))
        throw io::parse_error("--tol must lie in (1e-14, 1e-2)");
    if (cfg.format != "json" && cfg.format != "csv")
        throw io::parse_error("--format must be json or csv");
}

inline QuadratureDomain load_domain(const RunConfig& cfg) {
    if (cfg.domain_path.empty()) throw io::parse_error("--domain FILE is required");
    return io::domain_from(io::load_json_file(cfg.domain_path));
}

inline BivariateRational load_data(const RunConfig& cfg) {
    if (cfg.data_path.empty()) throw io::parse_error("--data FILE is required");
    return io::bivariate_from(io::load_json_file(cfg.data_path), "data");
}

// Deterministic interior points in the disc coordinate.
inline std::vector<cplx> interior_grid(int n) {
    std::vector<cplx> out;
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j)
            out.push_back(std::polar(0.12 + 0.72 * i / std::max(1, n - 1),
                                     2.0 * pi * (j + 0.31) / n));
    return out;
}

// ---------------------------------------------------------------------------
// subcommands
// ---------------------------------------------------------------------------

inline void cmd_decompose_circle(const RunConfig& cfg, RunResult& res, Summary& sum) {
    BivariateRational R = load_data(cfg);
    circle::Form form =
        io::circle_form_from(cfg.form.empty() ? "poles_outside" : cfg.form);
    circle::CircleDecomposition d = circle::decompose(R, form);
    double worst = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
        cplx z = std::polar(1.0, 2.0 * pi * (k + 0.5) / cfg.samples);
        cplx want = R(z);
        worst = std::max(worst, std::abs(d(z) - want) / std::max(1.0, std::abs(want)));
    }
    sum.gate("circle-decomposition boundary residual", worst, cfg.tol);
    if (cfg.format == "csv") {
        io::CsvWriter csv({"theta", "re_R", "im_R", "re_decomp", "im_decomp", "residual"});
        for (int k = 0; k < cfg.samples; ++k) {
            double theta = 2.0 * pi * (k + 0.5) / cfg.samples;
            cplx z = std::polar(1.0, theta);
            cplx want = R(z), got = d(z);
            csv.row({theta, want.real(), want.imag(), got.real(), got.imag(),
                     std::abs(got - want)});
        }
        res.data = csv.str();
    } else {
        res.data = io::to_json(d).dump(2) + "\n";
    }
}

inline void cmd_decompose(const RunConfig& cfg, RunResult& res, Summary& sum) {
    QuadratureDomain q = load_domain(cfg);
    BivariateRational R = load_data(cfg);
    decomp::Form form = io::decomp_form_from(cfg.form.empty() ? "k_lambda" : cfg.form);
    decomp::Decomposition d =
        decomp::convert(decomp::decompose(q, R), form);
    decomp::CompiledTerms t1(q, d.terms1), t2(q, d.terms2);
    double worst = 0.0;
    io::CsvWriter csv({"theta", "re_R", "im_R", "re_decomp", "im_decomp", "residual"});
    for (int k = 0; k < cfg.samples; ++k) {
        double theta = 2.0 * pi * (k + 0.5) / cfg.samples;
        cplx w = std::polar(1.0, theta);
        cplx z = q.map()(w);
        cplx want = R(z);
        cplx s2 = t2.eval_w(w);
        cplx got = d.constant + t1.eval_w(w) +
                   (d.form == decomp::Form::k_lambda ? s2 : std::conj(s2));
        worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
        csv.row({theta, want.real(), want.imag(), got.real(), got.imag(), std::abs(got - want)});
    }
    sum.gate("decomposition boundary residual", worst, cfg.tol);
    res.data = (cfg.format == "csv") ? csv.str() : io::to_json(d).dump(2) + "\n";
}

inline void cmd_schwarz(const RunConfig& cfg, RunResult& res, Summary& sum) {
    QuadratureDomain q = load_domain(cfg);
    double worst = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
        double theta = 2.0 * pi * (k + 0.5) / cfg.samples;
        cplx z = q.boundary_point(theta);
        cplx s = q.schwarz_w()(std::polar(1.0, theta));
        worst = std::max(worst, std::abs(s - std::conj(z)) / std::max(1.0, std::abs(z)));
    }
    sum.gate("schwarz boundary residual |S - conj z|", worst, cfg.tol);
    if (cfg.format == "csv") {
        res.data = io::boundary_csv(q, cfg.samples);
    } else {
        SchwarzFunction S(q);
        io::json poles = io::json::array();
        for (const RootCluster& p : S.w_poles())
            poles.push_back(io::json{{"w", io::to_json(p.root)}, {"order", p.multiplicity}});
        res.data = io::json{{"as_w_rational", io::to_json(S.as_w_rational())},
                            {"base", io::to_json(q.base())},
                            {"poles_w", poles}}
                       .dump(2) +
                   "\n";
    }
}

inline void cmd_implicitize(const RunConfig& cfg, RunResult& res, Summary& sum) {
    QuadratureDomain q = load_domain(cfg);
    ImplicitCurve c = implicitize(q);
    double worst = 0.0;
    for (int k = 0; k < cfg.samples; ++k) {
        cplx z = q.boundary_point(2.0 * pi * (k + 0.5) / cfg.samples);
        worst = std::max(worst, std::abs(c(z)) / c.poly.eval_scale(z, std::conj(z)));
    }
    sum.gate("implicit curve boundary residual", worst, cfg.tol);
    cplx b = q.base();
    double at_base = std::abs(c(b)) / std::max(c.poly.eval_scale(b, std::conj(b)), 1e-300);
    sum.note("  |Q| at base point (relative): " + io::csv_num(at_base));
    if (at_base < 1e-6) {
        sum.gate("implicit curve nonvanishing at base", 1.0, 0.0);  // forced failure
    }
    res.data = io::to_json(c).dump(2) + "\n";
}

inline void cmd_quadrature(const RunConfig& cfg, RunResult& res, Summary& sum) {
    QuadratureDomain q = load_domain(cfg);
    QuadratureData qd = quadrature_data(q);
    double worst = 0.0;
    for (int deg = 0; deg <= 5; ++deg) {
        cplx b = q.base();
        cplx lhs = oracles::area_integral(
            q, [&](cplx z) { return std::pow(z - b, deg); }, 1e-10);
        cplx rhs = qd.apply([&](int m, cplx a) -> cplx {
            // m-th derivative of (z-b)^deg at a
            if (m > deg) return cplx(0.0);
            double fact = 1.0;
            for (int i = 0; i < m; ++i) fact *= double(deg - i);
            return fact * std::pow(a - b, deg - m);
        });
        worst = std::max(worst, std::abs(lhs - rhs) / std::max(1.0, std::abs(lhs)));
    }
    sum.gate("quadrature identity vs area integral (monomials deg <= 5)", worst,
             std::max(cfg.tol, 1e-6));
    res.data = io::to_json(qd).dump(2) + "\n";
}

inline void cmd_boundary_eq(const RunConfig& cfg, RunResult& res, Summary& sum) {
    QuadratureDomain q = load_domain(cfg);
    double theta = 0.0;
    cplx a;
    bool have_a = false;
    if (!cfg.data_path.empty()) {
        io::json j = io::load_json_file(cfg.data_path);
        if (j.contains("theta")) theta = j["theta"].get<double>();
        if (j.contains("a")) {
            a = io::complex_from(j["a"], "boundary-eq a");
            have_a = true;
        }
    }
    if (!have_a) a = q.boundary_point(theta);
    BoundaryDescription bd = boundary_description(q, a);
    double worst = bd.equation_residual(cfg.samples);
    sum.gate("boundary equation residual", worst, cfg.tol);
    io::json k1 = io::json::array(), k2 = io::json::array();
    for (const auto& t : bd.k1_terms()) k1.push_back(io::to_json(t));
    for (const auto& t : bd.k2_terms()) k2.push_back(io::to_json(t));
    res.data = io::json{{"a", io::to_json(bd.a())},
                        {"A", io::to_json(bd.A())},
                        {"c", io::to_json(bd.c())},
                        {"k1", k1},
                        {"k2", k2},
                        {"equation", bd.rendered()},
                        {"residual", worst}}
                   .dump(2) +
               "\n";
}

inline void cmd_kernels(const RunConfig& cfg, RunResult& res, Summary& sum) {
    QuadratureDomain q = load_domain(cfg);
    kernels::IdentityReport rep = kernels::boundary_identities(q);
    sum.gate("kernel identity (KL)", rep.kl, std::max(cfg.tol, 1e-9));
    sum.gate("kernel identity (KL_m), m <= 2", rep.kl_m, std::max(cfg.tol, 1e-9));
    sum.gate("kernel identity both-boundary", rep.both_boundary, std::max(cfg.tol, 1e-9));
    sum.gate("antiderivative boundary identity", rep.antideriv, std::max(cfg.tol, 1e-9));
    kernels::RatioReport ratio = kernels::ratio_checks(q);
    sum.gate("k_b0/lambda_b0 unimodularity", ratio.modulus_dev, 1e-9);
    sum.note("  zero counts: k " + std::to_string(ratio.k_zero_count) + ", lambda " +
             std::to_string(ratio.lambda_zero_count));
    if (ratio.k_zero_count != 1 || ratio.lambda_zero_count != 0)
        sum.gate("argument-principle zero counts", 1.0, 0.0);

    io::CsvWriter csv({"theta", "kl_residual", "klm_residual", "antideriv_residual"});
    for (int k = 0; k < cfg.samples; ++k) {
        double theta = 2.0 * pi * (k + 0.37) / cfg.samples;
        cplx u = std::polar(1.0, theta);
        cplx T = q.tangent(theta);
        cplx v = std::polar(0.45, 2.4);
        cplx fz = cplx(1.0) / q.dmap()(u), fw = cplx(1.0) / q.dmap()(v);
        cplx K = fz * std::conj(fw) / (pi * std::pow(cplx(1.0) - u * std::conj(v), 2));
        cplx L = fz * fw / (pi * std::pow(u - v, 2));
        double klr = std::abs(K * T + std::conj(L) * std::conj(T)) / std::abs(K);
        cplx K1 = kernels::K_deriv_w(q, v, 1, u), L1 = kernels::Lambda_deriv_w(q, v, 1, u);
        double klm = std::abs(K1 * T + std::conj(L1) * std::conj(T)) /
                     std::max(std::abs(K1), 1e-300);
        cplx kv = kernels::k_family_w(q, v, 1).eval(u);
        cplx lv = kernels::lambda_family_w(q, v, 1).eval(u);
        double ad = std::abs(kv + std::conj(lv)) / std::max(std::abs(kv), 1e-300);
        csv.row({theta, klr, klm, ad});
    }
    res.data = (cfg.format == "csv")
                   ? csv.str()
                   : io::json{{"kl", rep.kl},
                              {"kl_m", rep.kl_m},
                              {"both_boundary", rep.both_boundary},
                              {"antideriv", rep.antideriv},
                              {"unimodular_constant", io::to_json(ratio.unimodular_constant)}}
                             .dump(2) +
                         "\n";
}

inline void cmd_dirichlet(const RunConfig& cfg, RunResult& res, Summary& sum) {
    QuadratureDomain q = load_domain(cfg);
    BivariateRational R = load_data(cfg);
    decomp::HarmonicFunction u = decomp::dirichlet_solve(q, R);
    auto ref = oracles::dirichlet_reference(
        q, [&](double theta) { return R(q.boundary_point(theta)); });
    double worst = 0.0;
    io::CsvWriter csv({"re_z", "im_z", "re_u", "im_u", "re_ref", "im_ref", "diff"});
    for (cplx w : interior_grid(5)) {
        cplx z = q.map()(w);
        cplx got = u.eval_w(w), want = ref.eval_w(w);
        worst = std::max(worst, std::abs(got - want));
        csv.row({z.real(), z.imag(), got.real(), got.imag(), want.real(), want.imag(),
                 std::abs(got - want)});
    }
    sum.gate("dirichlet solution vs fourier-poisson reference", worst, std::max(cfg.tol, 1e-6));
    res.data = (cfg.format == "csv")
                   ? csv.str()
                   : io::json{{"decomposition", io::to_json(u.decomposition())},
                              {"max_reference_diff", worst}}
                             .dump(2) +
                         "\n";
}

inline void cmd_dtn(const RunConfig& cfg, RunResult& res, Summary& sum) {
    QuadratureDomain q = load_domain(cfg);
    BivariateRational R = load_data(cfg);
    decomp::DtnImage img = decomp::dtn(q, R);
    decomp::HarmonicFunction u = decomp::dirichlet_solve(q, R);
    double worst = 0.0;
    io::CsvWriter csv({"theta", "re_dudn", "im_dudn", "fd_residual"});
    for (int k = 0; k < 64; ++k) {
        double theta = 2.0 * pi * (k + 0.5) / 64;
        cplx got = img.normal_derivative(theta);
        cplx fd = oracles::fd_normal_derivative(q, [&](cplx z) { return u(z); }, theta);
        double rel = std::abs(got - fd) / std::max(1.0, std::abs(fd));
        worst = std::max(worst, rel);
        csv.row({theta, got.real(), got.imag(), rel});
    }
    sum.gate("dtn vs finite-difference normal derivative", worst, 1e-4);
    io::json k1 = io::json::array(), k2 = io::json::array();
    for (const auto& t : img.kappa1()) k1.push_back(io::to_json(t));
    for (const auto& t : img.kappa2()) k2.push_back(io::to_json(t));
    res.data = (cfg.format == "csv") ? csv.str()
                                     : io::json{{"kappa1", k1}, {"kappa2", k2}}.dump(2) + "\n";
}

inline void cmd_approximate(const RunConfig& cfg, RunResult& res, Summary& sum) {
    if (cfg.data_path.empty()) throw io::parse_error("--data FILE is required");
    io::json j = io::load_json_file(cfg.data_path);
    approx::AnalyticMapInput g = [&] {
        if (j.contains("series")) {
            std::vector<cplx> c;
            for (const auto& e : j["series"]) c.push_back(io::complex_from(e, "series"));
            return approx::AnalyticMapInput::from_series(std::move(c));
        }
        if (j.contains("samples")) {
            std::vector<cplx> c;
            for (const auto& e : j["samples"]) c.push_back(io::complex_from(e, "samples"));
            return approx::AnalyticMapInput::from_samples(c);
        }
        throw io::parse_error("approximate: data needs \"series\" or \"samples\"");
    }();
    approx::ApproximationReport rep =
        (cfg.kind == "arclength")
            ? approx::approximate_arclength_qd(g, cfg.degree)
            : approx::approximate_area_qd(g, cfg.degree);
    sum.note("sup_error " + io::csv_num(rep.sup_error) + ", derivative_error " +
             io::csv_num(rep.derivative_error));
    sum.gate("approximation domain validity", 0.0, 1.0);  // construction already validated
    res.data = io::to_json(rep).dump(2) + "\n";
}

void cmd_selftest(const RunConfig& cfg, RunResult& res, Summary& sum);

}  // namespace detail

inline RunResult run(const RunConfig& cfg) {
    RunResult res;
    detail::Summary sum;
    try {
        detail::validate(cfg);
        const std::string& s = cfg.subcommand;
        if (s == "decompose-circle") detail::cmd_decompose_circle(cfg, res, sum);
        else if (s == "decompose") detail::cmd_decompose(cfg, res, sum);
        else if (s == "schwarz") detail::cmd_schwarz(cfg, res, sum);
        else if (s == "implicitize") detail::cmd_implicitize(cfg, res, sum);
        else if (s == "quadrature") detail::cmd_quadrature(cfg, res, sum);
        else if (s == "boundary-eq") detail::cmd_boundary_eq(cfg, res, sum);
        else if (s == "kernels") detail::cmd_kernels(cfg, res, sum);
        else if (s == "dirichlet") detail::cmd_dirichlet(cfg, res, sum);
        else if (s == "dtn") detail::cmd_dtn(cfg, res, sum);
        else if (s == "approximate") detail::cmd_approximate(cfg, res, sum);
        else if (s == "selftest") detail::cmd_selftest(cfg, res, sum);
        else throw io::parse_error("unknown subcommand: " + s);
    } catch (const io::parse_error& e) {
        res.exit_code = 2;
        res.summary = std::string("parse error: ") + e.what() + "\n";
        return res;
    } catch (const qd_error& e) {
        res.exit_code = 1;
        res.summary = std::string("failure: ") + e.what() + "\n";
        return res;
    }
    if (!cfg.output_path.empty() && !res.data.empty())
        io::write_text_file(cfg.output_path, res.data);
    res.summary = sum.os.str();
    if (sum.failed) {
        res.exit_code = 1;
        res.summary += "failed invariant: " + sum.first_failure + "\n";
    }
    return res;
}

}  // namespace quaddec::cli

#include "quaddec/selftest.hpp"

#endif
