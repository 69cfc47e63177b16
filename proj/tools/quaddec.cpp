// quaddec: decompositions of rational boundary data on area quadrature
// domains, with Schwarz functions, quadrature identities, Dirichlet and
// Dirichlet-to-Neumann pipelines, boundary implicitization, and the
// change of variables onto a nearby quadrature domain.

#include <cstdlib>
#include <iostream>

#include <CLI11.hpp>

#include "quaddec/cli.hpp"

int main(int argc, char** argv) {
    using quaddec::cli::RunConfig;

    RunConfig cfg;
    if (const char* lv = std::getenv("QUADDEC_LOG")) {
        std::string s = lv;
        cfg.log_level = (s == "quiet") ? 0 : (s == "debug") ? 2 : 1;
    }

    CLI::App app{"rational boundary data on quadrature domains"};
    app.require_subcommand(1);

    auto add_common = [&](CLI::App* sub, bool needs_domain, bool needs_data) {
        if (needs_domain)
            sub->add_option("--domain", cfg.domain_path, "domain JSON ({\"map\": rational})");
        if (needs_data) sub->add_option("--data", cfg.data_path, "input data JSON");
        sub->add_option("--samples", cfg.samples, "boundary sample count")->capture_default_str();
        sub->add_option("--tol", cfg.tol, "residual gate")->capture_default_str();
        sub->add_option("--output", cfg.output_path, "write JSON/CSV payload to this path");
        sub->add_option("--format", cfg.format, "json | csv")->capture_default_str();
        sub->add_option("--seed", cfg.seed, "seed for randomized suites")->capture_default_str();
    };

    CLI::App* dc = app.add_subcommand("decompose-circle",
                                      "decompose R(z, zbar) on the unit circle");
    add_common(dc, false, true);
    dc->add_option("--form", cfg.form,
                   "poles_outside | poles_inside | holo_restriction | antiholo_restriction");

    CLI::App* dq = app.add_subcommand("decompose", "decompose R on a quadrature domain");
    add_common(dq, true, true);
    dq->add_option("--form", cfg.form, "k_lambda | k_kbar | lambda_lambdabar");

    add_common(app.add_subcommand("schwarz", "Schwarz function and boundary export"), true,
               false);
    add_common(app.add_subcommand("implicitize", "implicit polynomial of the boundary"), true,
               false);
    add_common(app.add_subcommand("quadrature", "area quadrature nodes and weights"), true,
               false);
    add_common(app.add_subcommand("boundary-eq", "boundary curve equation through a point"),
               true, true);
    add_common(app.add_subcommand("kernels", "kernel evaluation and identity residuals"), true,
               false);
    add_common(app.add_subcommand("dirichlet", "Dirichlet solution on an interior grid"), true,
               true);
    add_common(app.add_subcommand("dtn", "Dirichlet-to-Neumann image"), true, true);

    CLI::App* ap = app.add_subcommand("approximate", "nearby quadrature domain from a map");
    add_common(ap, false, true);
    ap->add_option("--degree", cfg.degree, "truncation degree N")->capture_default_str();
    ap->add_option("--kind", cfg.kind, "area | arclength")->capture_default_str();

    add_common(app.add_subcommand("selftest", "run the full invariant suite"), false, false);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    cfg.subcommand = app.get_subcommands().front()->get_name();
    quaddec::cli::RunResult res = quaddec::cli::run(cfg);

    if (cfg.output_path.empty() && !res.data.empty()) std::cout << res.data;
    if (cfg.log_level > 0) {
        std::ostream& os = (cfg.output_path.empty() && !res.data.empty()) ? std::cerr : std::cout;
        os << res.summary;
    }
    return res.exit_code;
}
