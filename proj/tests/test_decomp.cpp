#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace quaddec;
namespace dc = quaddec::decomp;

namespace {

double boundary_residual(const QuadratureDomain& q, const dc::Decomposition& d,
                         const BivariateRational& R, int samples = 256) {
    dc::CompiledTerms t1(q, d.terms1), t2(q, d.terms2);
    double worst = 0.0;
    for (int k = 0; k < samples; ++k) {
        double theta = 2.0 * pi * (k + 0.5) / samples;
        cplx w = std::polar(1.0, theta);
        cplx want = R(q.map()(w));
        cplx s2 = t2.eval_w(w);
        cplx got = d.constant + t1.eval_w(w) +
                   (d.form == dc::Form::k_lambda ? s2 : std::conj(s2));
        worst = std::max(worst, std::abs(got - want) / std::max(1.0, std::abs(want)));
    }
    return worst;
}

BivariateRational data_const(cplx gamma) {
    return {BivariatePoly(gamma), BivariatePoly(cplx(1.0))};
}

}  // namespace

TEST_CASE("extend_to_double: worked extensions", "[decomp]") {
    QuadratureDomain disc = disc_domain();
    // z zbar extends to the constant 1
    BivariateRational zz(BivariatePoly::z() * BivariatePoly::zbar(), BivariatePoly(cplx(1.0)));
    RationalFunction M = dc::extend_to_double(disc, zz);
    for (cplx w : qdtest::boundary_samples(8)) CHECK(std::abs(M(w) - cplx(1.0)) < 1e-12);

    // cardioid, zbar: M(w) = 1/w + conj(c)/w^2
    cplx c(0.3, 0.2);
    QuadratureDomain card = cardioid_domain(c);
    RationalFunction Mc = dc::extend_to_double(card, qdtest::bivariate_zbar());
    for (cplx w : {cplx(0.4, 0.3), cplx(2.0, -1.0), cplx(0.1)}) {
        cplx want = cplx(1.0) / w + std::conj(c) / (w * w);
        CHECK(std::abs(Mc(w) - want) < 1e-12 * std::max(1.0, std::abs(want)));
    }

    // circle, 1/(2.5 - z - zbar): M(w) = -w/((w-2)(w-0.5))
    BivariateRational R(BivariatePoly(cplx(1.0)),
                        BivariatePoly(cplx(2.5)) + BivariatePoly::z() * cplx(-1.0) +
                            BivariatePoly::zbar() * cplx(-1.0));
    RationalFunction Mr = dc::extend_to_double(disc, R);
    for (cplx w : {cplx(1.3, 0.4), cplx(-0.7, 0.2)}) {
        cplx want = -w / ((w - 2.0) * (w - 0.5));
        CHECK(std::abs(Mr(w) - want) < 1e-12);
    }

    // membership gate: 1/(2 - z - zbar) has a boundary pole at w = 1
    BivariateRational bad(BivariatePoly(cplx(1.0)),
                          BivariatePoly(cplx(2.0)) + BivariatePoly::z() * cplx(-1.0) +
                              BivariatePoly::zbar() * cplx(-1.0));
    CHECK_THROWS_AS(dc::extend_to_double(disc, bad), membership_error);
}

TEST_CASE("decompose: cardioid zbar has exactly the hand-matched terms", "[decomp]") {
    cplx c(0.4);
    QuadratureDomain card = cardioid_domain(c);
    dc::Decomposition d = dc::decompose(card, qdtest::bivariate_zbar());
    CHECK(d.form == dc::Form::k_lambda);
    CHECK(std::abs(d.constant) < 1e-10);
    CHECK(d.terms1.empty());  // no k terms
    REQUIRE(d.terms2.size() == 2);
    // coefficients -pi (1 + 2 c^2) on lambda_b^0 and -pi conj(c) on lambda_b^1
    for (const dc::KernelTerm& t : d.terms2) {
        CHECK(t.kind == dc::TermKind::lambda_lower);
        CHECK(std::abs(t.a) < 1e-12);
        if (t.m == 0)
            CHECK(std::abs(t.coeff - cplx(-pi * (1.0 + 2.0 * std::norm(c)))) < 1e-10);
        else {
            CHECK(t.m == 1);
            CHECK(std::abs(t.coeff + pi * std::conj(c)) < 1e-10);
        }
    }
    CHECK(boundary_residual(card, d, qdtest::bivariate_zbar()) < 1e-9);
}

TEST_CASE("decompose: circle real part splits into k and lambda", "[decomp]") {
    QuadratureDomain disc = disc_domain();
    dc::Decomposition d = dc::decompose(disc, qdtest::bivariate_x());
    CHECK(std::abs(d.constant) < 1e-12);
    REQUIRE(d.terms1.size() == 1);
    REQUIRE(d.terms2.size() == 1);
    CHECK(d.terms1[0].m == 0);
    CHECK(std::abs(d.terms1[0].coeff - cplx(pi / 2.0)) < 1e-12);
    CHECK(d.terms2[0].m == 0);
    CHECK(std::abs(d.terms2[0].coeff + pi / 2.0) < 1e-12);
    CHECK(boundary_residual(disc, d, qdtest::bivariate_x()) < 1e-10);
}

TEST_CASE("decompose: constants pass through", "[decomp]") {
    for (cplx c : {cplx(0.0), cplx(0.4)}) {
        QuadratureDomain q = c == cplx(0.0) ? disc_domain() : cardioid_domain(c);
        cplx gamma(1.25, -0.75);
        dc::Decomposition d = dc::decompose(q, data_const(gamma));
        CHECK(std::abs(d.constant - gamma) < 1e-12);
        CHECK(d.terms1.empty());
        CHECK(d.terms2.empty());
    }
}

TEST_CASE("decompose: pole bookkeeping on a mixed example", "[decomp]") {
    // R = zbar^2 + 1/(4 - z - zbar) on the cardioid c = 0.25:
    // M = Pbar(1/w)^2 + 1/(4 - P(w) - Pbar(1/w)) has an order-4 pole at 0
    // plus simple poles from the second term
    cplx c(0.25);
    QuadratureDomain card = cardioid_domain(c);
    BivariatePoly den4 = BivariatePoly(cplx(4.0)) + BivariatePoly::z() * cplx(-1.0) +
                         BivariatePoly::zbar() * cplx(-1.0);
    BivariatePoly num = BivariatePoly::zbar() * BivariatePoly::zbar() * den4 +
                        BivariatePoly(cplx(1.0));
    BivariateRational R(num, den4);
    RationalFunction M = dc::extend_to_double(card, R);
    dc::Decomposition d = dc::decompose(card, R);

    int lambda_mult = 0, k_mult = 0;
    for (const auto& t : d.terms2) lambda_mult += 1;
    for (const auto& t : d.terms1) k_mult += 1;
    // inside-pole multiplicity of M equals the lambda term count; outside
    // (including infinity) equals the k term count
    int inside = 0, outside = std::max(M.num().degree() - M.den().degree(), 0);
    for (const auto& rc : roots(M.den()))
        (std::abs(rc.root) < 1.0 ? inside : outside) += rc.multiplicity;
    CHECK(lambda_mult == inside);
    CHECK(k_mult == outside);
    CHECK(boundary_residual(card, d, R) < 1e-8);
}

TEST_CASE("convert: round trips and boundary reproduction", "[decomp]") {
    cplx c(0.4);
    QuadratureDomain card = cardioid_domain(c);
    BivariateRational R = qdtest::bivariate_zbar();
    dc::Decomposition d = dc::decompose(card, R);

    dc::Decomposition kk = dc::convert(d, dc::Form::k_kbar);
    CHECK(kk.form == dc::Form::k_kbar);
    for (const auto& t : kk.terms2) CHECK(t.kind == dc::TermKind::k_lower);
    CHECK(boundary_residual(card, kk, R) < 1e-9);

    dc::Decomposition ll = dc::convert(d, dc::Form::lambda_lambdabar);
    for (const auto& t : ll.terms2) CHECK(t.kind == dc::TermKind::lambda_lower);
    CHECK(boundary_residual(card, ll, R) < 1e-9);

    // round trip coefficients exactly (involutive rewrite)
    dc::Decomposition back = dc::convert(kk, dc::Form::k_lambda);
    REQUIRE(back.terms2.size() == d.terms2.size());
    for (size_t i = 0; i < d.terms2.size(); ++i) {
        CHECK(back.terms2[i].kind == d.terms2[i].kind);
        CHECK(std::abs(back.terms2[i].coeff - d.terms2[i].coeff) < 1e-12);
    }

    // cardioid zbar in k_kbar form: conjugated list carries conj-mapped
    // lambda coefficients
    REQUIRE(kk.terms2.size() == 2);
    for (const auto& t : kk.terms2)
        if (t.m == 0)
            CHECK(std::abs(t.coeff - cplx(pi * (1.0 + 2.0 * std::norm(c)))) < 1e-10);
}

TEST_CASE("convert: real data gives conjugate-paired k lists", "[decomp]") {
    QuadratureDomain disc = disc_domain();
    dc::Decomposition kk = dc::convert(dc::decompose(disc, qdtest::bivariate_x()),
                                       dc::Form::k_kbar);
    REQUIRE(kk.terms1.size() == kk.terms2.size());
    // on real data the conjugated list mirrors the plain list
    for (size_t i = 0; i < kk.terms1.size(); ++i)
        CHECK(std::abs(kk.terms2[i].coeff - std::conj(kk.terms1[i].coeff)) < 1e-12);
}

TEST_CASE("dirichlet_solve: exact harmonic data on the disc", "[decomp]") {
    QuadratureDomain disc = disc_domain();
    // boundary data x: u = Re z
    dc::HarmonicFunction u = dc::dirichlet_solve(disc, qdtest::bivariate_x());
    std::mt19937_64 rng(40);
    for (int t = 0; t < 20; ++t) {
        cplx z = qdtest::rand_cplx(rng, 0.65);
        if (std::abs(z) > 0.95) continue;
        CHECK(std::abs(u(z) - cplx(z.real())) < 1e-12);
    }
    // boundary data z zbar: u identically 1
    BivariateRational zz(BivariatePoly::z() * BivariatePoly::zbar(), BivariatePoly(cplx(1.0)));
    dc::HarmonicFunction u1 = dc::dirichlet_solve(disc, zz);
    CHECK(std::abs(u1(cplx(0.2, -0.4)) - cplx(1.0)) < 1e-12);
}

TEST_CASE("dirichlet_solve: oracle comparison, harmonicity, mean value", "[decomp]") {
    for (cplx c : {cplx(0.0), cplx(0.4)}) {
        QuadratureDomain q = c == cplx(0.0) ? disc_domain() : cardioid_domain(c);
        BivariateRational R = qdtest::bivariate_zbar();
        dc::HarmonicFunction u = dc::dirichlet_solve(q, R);
        auto ref = oracles::dirichlet_reference(
            q, [&](double theta) { return R(q.boundary_point(theta)); });
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                cplx w = std::polar(0.1 + 0.17 * i, 2.0 * pi * (j + 0.3) / 5);
                CHECK(std::abs(u.eval_w(w) - ref.eval_w(w)) < 1e-6);
            }
        // five-point Laplacian at interior points
        double scale = 0.0;
        for (int k = 0; k < 16; ++k)
            scale = std::max(scale, std::abs(u.eval_w(std::polar(0.5, 2.0 * pi * k / 16))));
        for (cplx w : {cplx(0.2, 0.1), cplx(-0.3, 0.2), cplx(0.05, -0.35)}) {
            cplx z = q.map()(w);
            CHECK(std::abs(oracles::fd_laplacian([&](cplx p) { return u(p); }, z)) <
                  1e-5 * std::max(1.0, scale));
        }
        // mean-value property over small circles
        for (cplx w : {cplx(0.15, 0.2), cplx(-0.25, -0.1)}) {
            cplx z = q.map()(w);
            cplx avg(0.0);
            const int n = 64;
            const double rho = 0.05;
            for (int k = 0; k < n; ++k) avg += u(z + std::polar(rho, 2.0 * pi * k / n));
            avg /= double(n);
            CHECK(std::abs(avg - u(z)) < 1e-7 * std::max(1.0, scale));
        }
        // boundary values along radial limits
        for (int k = 0; k < 64; ++k) {
            double theta = 2.0 * pi * (k + 0.5) / 64;
            cplx got = u.eval_w(std::polar(1.0, theta));
            cplx want = R(q.boundary_point(theta));
            CHECK(std::abs(got - want) < 1e-7 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("dtn: image structure and finite-difference oracle", "[decomp]") {
    QuadratureDomain disc = disc_domain();
    // constants map to the zero image
    dc::DtnImage zero_img = dc::dtn(disc, data_const(cplx(2.0, 1.0)));
    CHECK(zero_img.kappa1().empty());
    CHECK(zero_img.kappa2().empty());

    // R = x on the circle: kappa1 = (pi/2) K_0^0
    dc::DtnImage xi = dc::dtn(disc, qdtest::bivariate_x());
    REQUIRE(xi.kappa1().size() == 1);
    CHECK(xi.kappa1()[0].kind == dc::TermKind::K);
    CHECK(xi.kappa1()[0].m == 0);
    CHECK(std::abs(xi.kappa1()[0].coeff - cplx(pi / 2.0)) < 1e-12);

    for (cplx c : {cplx(0.0), cplx(0.4)}) {
        QuadratureDomain q = c == cplx(0.0) ? disc_domain() : cardioid_domain(c);
        for (const BivariateRational& R : {qdtest::bivariate_zbar(), qdtest::bivariate_x()}) {
            dc::DtnImage img = dc::dtn(q, R);
            dc::HarmonicFunction u = dc::dirichlet_solve(q, R);
            for (int k = 0; k < 64; ++k) {
                double theta = 2.0 * pi * (k + 0.5) / 64;
                cplx fd = oracles::fd_normal_derivative(q, [&](cplx z) { return u(z); }, theta);
                cplx got = img.normal_derivative(theta);
                CHECK(std::abs(got - fd) < 1e-4 * std::max(1.0, std::abs(fd)));
            }
        }
    }
}

TEST_CASE("dtn: kernel is the constants, image is unique", "[decomp]") {
    cplx c(0.4);
    QuadratureDomain card = cardioid_domain(c);
    BivariateRational R = qdtest::bivariate_zbar();
    // R + gamma has the same image coefficientwise
    BivariateRational shifted(R.num + BivariatePoly(cplx(0.7, -0.2)) * R.den, R.den);
    dc::DtnImage i1 = dc::dtn(card, R);
    dc::DtnImage i2 = dc::dtn(card, shifted);
    REQUIRE(i1.kappa2().size() == i2.kappa2().size());
    for (size_t i = 0; i < i1.kappa2().size(); ++i)
        CHECK(std::abs(i1.kappa2()[i].coeff - i2.kappa2()[i].coeff) < 1e-10);

    // uniqueness across presentations of the same function
    BivariatePoly factor = BivariatePoly::z() + BivariatePoly(cplx(-4.0));
    BivariateRational R2(R.num * factor, R.den * factor);
    dc::DtnImage i3 = dc::dtn(card, R2);
    REQUIRE(i3.kappa2().size() == i1.kappa2().size());
    for (size_t i = 0; i < i1.kappa2().size(); ++i)
        CHECK(std::abs(i1.kappa2()[i].coeff - i3.kappa2()[i].coeff) < 1e-9);
}

TEST_CASE("span elements decompose to themselves (surjectivity witness)", "[decomp]") {
    cplx c(0.3, 0.15);
    QuadratureDomain card = cardioid_domain(c);
    // hand-built element of the k and lambda spans plus a constant
    cplx a1(0.45, -0.2), a2(0.1, 0.35);
    kernels::KFamily kf = kernels::k_family_w(card, a1, 2);
    kernels::LambdaFamily lf = kernels::lambda_family_w(card, a2, 1);
    RationalFunction M = kf.to_rational() * cplx(3.0, 1.0) +
                         lf.to_rational() * cplx(-2.0, 0.5) + RationalFunction(cplx(0.7));
    dc::Decomposition d = dc::decompose_w(card, M.normalized());
    CHECK(std::abs(d.constant - cplx(0.7)) < 1e-9);
    bool found_k = false, found_l = false;
    for (const auto& t : d.terms1)
        if (t.m == 2 && std::abs(t.coeff - cplx(3.0, 1.0)) < 1e-9) found_k = true;
    for (const auto& t : d.terms2)
        if (t.m == 1 && std::abs(t.coeff - cplx(-2.0, 0.5)) < 1e-9) found_l = true;
    CHECK(found_k);
    CHECK(found_l);
    // lower-order siblings matched with zero coefficients and are pruned
    CHECK(d.terms1.size() == 3);  // m = 0,1,2 at the reflected pole, two pruned? kept if nonzero
}

TEST_CASE("circle consistency: identity map reproduces the circle module", "[decomp]") {
    QuadratureDomain disc = disc_domain();
    std::mt19937_64 rng(1234);
    for (int trial = 0; trial < 8; ++trial) {
        BivariateRational R = corpus::random_boundary_data(rng);
        circle::CircleDecomposition cd = circle::decompose(R, circle::Form::poles_outside);
        dc::Decomposition kk;
        try {
            kk = dc::convert(dc::decompose(disc, R), dc::Form::k_kbar);
        } catch (const membership_error&) {
            continue;  // corpus data with poles too near the circle
        }
        dc::CompiledTerms t1(disc, kk.terms1), t2(disc, kk.terms2);
        std::vector<cplx> holo_diff;
        for (int k = 0; k < 128; ++k) {
            cplx w = std::polar(1.0, 2.0 * pi * (k + 0.5) / 128);
            cplx circle_val = cd(w);
            cplx decomp_val = kk.constant + t1.eval_w(w) + std::conj(t2.eval_w(w));
            CHECK(std::abs(circle_val - decomp_val) <
                  1e-9 * std::max(1.0, std::abs(circle_val)));
            holo_diff.push_back(cd.r1(w) - (kk.constant + t1.eval_w(w)));
        }
        // the holomorphic halves agree up to one constant
        for (const cplx& v : holo_diff)
            CHECK(std::abs(v - holo_diff[0]) < 1e-9 * std::max(1.0, std::abs(holo_diff[0])));
    }
}

TEST_CASE("ill-conditioned matching is reported", "[decomp]") {
    // the k_kbar form requires the k_kbar-form handle; HarmonicFunction
    // rejects anything else
    QuadratureDomain disc = disc_domain();
    dc::Decomposition d = dc::decompose(disc, qdtest::bivariate_x());
    CHECK_THROWS_AS(dc::HarmonicFunction(disc, d), domain_error);
}
