#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace quaddec;
using circle::CircleDecomposition;
using circle::Form;

namespace {

double boundary_residual(const BivariateRational& R, const CircleDecomposition& d,
                         int samples = 128) {
    double worst = 0.0;
    for (cplx z : qdtest::boundary_samples(samples)) {
        cplx want = R(z);
        worst = std::max(worst, std::abs(d(z) - want) / std::max(1.0, std::abs(want)));
    }
    return worst;
}

BivariateRational one_minus_zzbar() {
    BivariatePoly num = BivariatePoly(cplx(1.0)) +
                        BivariatePoly::z() * BivariatePoly::zbar() * cplx(-1.0);
    return {num, BivariatePoly(cplx(1.0))};
}

}  // namespace

TEST_CASE("holo_restriction: worked substitutions", "[circle]") {
    // 1 - z zbar restricts to identically zero
    CHECK(circle::holo_restriction(one_minus_zzbar()).is_zero());

    // zbar -> 1/z
    RationalFunction q = circle::holo_restriction(qdtest::bivariate_zbar());
    CHECK(std::abs(q(cplx(0.0, 2.0)) - cplx(0.0, -0.5)) < 1e-14);

    // (z + zbar)/2 -> (z^2+1)/(2z)
    RationalFunction x = circle::holo_restriction(qdtest::bivariate_x());
    for (cplx z : qdtest::boundary_samples(16))
        CHECK(std::abs(x(z) - (z * z + cplx(1.0)) / (2.0 * z)) < 1e-13);
}

TEST_CASE("holo_restriction: degenerate denominator", "[circle]") {
    BivariateRational bad(BivariatePoly(cplx(1.0)), one_minus_zzbar().num);
    CHECK(bad.degenerate_on_circle());
    CHECK_THROWS_AS(circle::holo_restriction(bad), degenerate_data_error);
}

TEST_CASE("decompose: constants and real part", "[circle]") {
    // z zbar is identically 1 on the circle
    BivariateRational zz(BivariatePoly::z() * BivariatePoly::zbar(), BivariatePoly(cplx(1.0)));
    CircleDecomposition d = circle::decompose(zz, Form::poles_outside);
    CHECK(d.r2.is_zero());
    for (cplx z : qdtest::boundary_samples(8)) CHECK(std::abs(d.r1(z) - cplx(1.0)) < 1e-12);

    // (z + zbar)/2: r1 = z/2, r2 = z/2
    CircleDecomposition dx = circle::decompose(qdtest::bivariate_x(), Form::poles_outside);
    for (cplx z : qdtest::boundary_samples(8)) {
        CHECK(std::abs(dx.r1(z) - 0.5 * z) < 1e-12);
        CHECK(std::abs(dx.r2(z) - 0.5 * z) < 1e-12);
    }
}

TEST_CASE("decompose: worked poles_outside example", "[circle]") {
    // R = 1/(2.5 - z - zbar): r1 = -2/3 - (4/3)/(z-2), r2 = -(4/3)/(z-2)
    BivariateRational R(BivariatePoly(cplx(1.0)),
                        BivariatePoly(cplx(2.5)) + BivariatePoly::z() * cplx(-1.0) +
                            BivariatePoly::zbar() * cplx(-1.0));
    CircleDecomposition d = circle::decompose(R, Form::poles_outside);

    // coefficient-level: r1 = (-2/3 z)/(z-2) after combining, monic denominator
    REQUIRE(d.r1.num().degree() == 1);
    REQUIRE(d.r1.den().degree() == 1);
    CHECK(std::abs(d.r1.num().coeff(0) - cplx(0.0)) < 1e-10);
    CHECK(std::abs(d.r1.num().coeff(1) - cplx(-2.0 / 3.0)) < 1e-10);
    CHECK(std::abs(d.r1.den().coeff(0) - cplx(-2.0)) < 1e-10);
    CHECK(std::abs(d.r1.den().coeff(1) - cplx(1.0)) < 1e-10);
    REQUIRE(d.r2.den().degree() == 1);
    CHECK(std::abs(d.r2.num().coeff(0) - cplx(-4.0 / 3.0)) < 1e-10);
    CHECK(std::abs(d.r2.den().coeff(0) - cplx(-2.0)) < 1e-10);

    // spot value at z = 1: r1 + conj(r2) = 2/3 + 4/3 = 2 = R(1,1)
    CHECK(std::abs(d(cplx(1.0)) - cplx(2.0)) < 1e-12);
    CHECK(boundary_residual(R, d) < 1e-10);
}

TEST_CASE("decompose: pole side placement", "[circle]") {
    BivariateRational R(BivariatePoly(cplx(1.0)),
                        BivariatePoly(cplx(2.5)) + BivariatePoly::z() * cplx(-1.0) +
                            BivariatePoly::zbar() * cplx(-1.0));
    CircleDecomposition out = circle::decompose(R, Form::poles_outside);
    for (const auto& rf : {out.r1, out.r2})
        if (rf.den().degree() >= 1)
            for (const auto& rc : roots(rf.den())) CHECK(std::abs(rc.root) > 1.0);
    CircleDecomposition in = circle::decompose(R, Form::poles_inside);
    for (const auto& rf : {in.r1, in.r2})
        if (rf.den().degree() >= 1)
            for (const auto& rc : roots(rf.den())) CHECK(std::abs(rc.root) < 1.0);
    // poles_inside has no positive-degree polynomial part
    CHECK(in.r1.num().degree() <= in.r1.den().degree());
    CHECK(in.r2.num().degree() <= in.r2.den().degree());
    CHECK(boundary_residual(R, in) < 1e-10);
}

TEST_CASE("decompose: boundary pole data is flagged and kept in r1", "[circle]") {
    // R = 1/(2 - z - zbar): denominator vanishes at z = 1 on the circle but
    // not identically; this is restriction-field data outside the
    // singularity-free subspace.
    BivariateRational R(BivariatePoly(cplx(1.0)),
                        BivariatePoly(cplx(2.0)) + BivariatePoly::z() * cplx(-1.0) +
                            BivariatePoly::zbar() * cplx(-1.0));
    CHECK(!R.degenerate_on_circle());
    CircleDecomposition d = circle::decompose(R, Form::poles_outside);
    CHECK(d.has_boundary_poles);
    // away from the singular point the decomposition still reproduces R
    for (int k = 8; k < 120; ++k) {
        cplx z = std::polar(1.0, 2.0 * pi * k / 128.0);
        cplx want = R(z);
        CHECK(std::abs(d(z) - want) < 1e-8 * std::max(1.0, std::abs(want)));
    }
}

TEST_CASE("four representations agree on the corpus", "[circle]") {
    std::mt19937_64 rng(424242);
    for (int trial = 0; trial < 12; ++trial) {
        BivariateRational R = corpus::random_boundary_data(rng);
        std::vector<CircleDecomposition> ds;
        for (Form f : {Form::poles_outside, Form::poles_inside, Form::holo_restriction,
                       Form::antiholo_restriction})
            ds.push_back(circle::decompose(R, f));
        for (cplx z : qdtest::boundary_samples(128)) {
            cplx ref = ds[0](z);
            double scale = std::max(1.0, std::abs(ref));
            for (size_t i = 1; i < ds.size(); ++i)
                CHECK(std::abs(ds[i](z) - ref) < 1e-8 * scale);
        }
    }
}

TEST_CASE("involution consistency: conjugated data vs reflected decomposition", "[circle]") {
    std::mt19937_64 rng(9);
    for (int trial = 0; trial < 6; ++trial) {
        BivariateRational R = corpus::random_boundary_data(rng);
        RationalFunction q = circle::holo_restriction(R);
        RationalFunction s = circle::holo_restriction(R.conj_swap());
        RationalFunction qr = q.conj_reflect();
        for (cplx z : qdtest::boundary_samples(32)) {
            cplx want = qr(z);
            CHECK(std::abs(s(z) - want) < 1e-10 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("real boundary data symmetry", "[circle]") {
    // For data real on the circle, r1 + conj(r2) and conj(r1) + r2 both
    // reproduce R; pole-side uniqueness forces r2 = r1 - gamma with a real
    // constant gamma.
    std::mt19937_64 rng(31);
    for (int trial = 0; trial < 6; ++trial) {
        BivariateRational R = corpus::random_real_boundary_data(rng);
        CircleDecomposition d = circle::decompose(R, Form::poles_outside);
        std::vector<cplx> h;
        for (cplx z : qdtest::boundary_samples(32)) h.push_back(d.r1(z) - d.r2(z));
        double scale = std::max(1.0, std::abs(h[0]));
        for (const cplx& v : h) CHECK(std::abs(v - h[0]) < 1e-9 * scale);
        CHECK(std::abs(h[0].imag()) < 1e-9 * scale);
    }
    // for coefficientwise-real data such as x both descriptions coincide
    CircleDecomposition dx = circle::decompose(qdtest::bivariate_x(), Form::poles_outside);
    for (cplx z : qdtest::boundary_samples(8))
        CHECK(std::abs(dx.r2(z) - dx.r1.conj_coeffs()(z)) < 1e-12);
}

TEST_CASE("uniqueness: equivalent presentations and convention violations", "[circle]") {
    BivariateRational R(BivariatePoly(cplx(1.0)),
                        BivariatePoly(cplx(2.5)) + BivariatePoly::z() * cplx(-1.0) +
                            BivariatePoly::zbar() * cplx(-1.0));
    // same function, different presentation: multiply num and den by (z - 3)
    BivariatePoly factor = BivariatePoly::z() + BivariatePoly(cplx(-3.0));
    BivariateRational R2(R.num * factor, R.den * factor);
    CircleDecomposition d1 = circle::decompose(R, Form::poles_outside);
    CircleDecomposition d2 = circle::decompose(R2, Form::poles_outside);
    circle::UniquenessReport rep = circle::uniqueness_check(d1, d2);
    CHECK(rep.r1_constancy < 1e-9);
    CHECK(rep.r2_constancy < 1e-9);
    CHECK(rep.convention_residual < 1e-9);

    // constructed violation: shift the constant between the parts
    CircleDecomposition shifted = d1;
    shifted.r1 = shifted.r1 + cplx(5.0);
    shifted.r2 = shifted.r2 + cplx(5.0);  // conj(5) = 5
    circle::UniquenessReport bad = circle::uniqueness_check(d1, shifted);
    CHECK(bad.r1_constancy < 1e-9);  // still only a constant apart
    CHECK(bad.convention_residual > 1.0);

    // zero function decomposes to zero parts
    BivariateRational zero(BivariatePoly::zero(), BivariatePoly(cplx(1.0)));
    CircleDecomposition dz = circle::decompose(zero, Form::poles_outside);
    CHECK(dz.r1.is_zero());
    CHECK(dz.r2.is_zero());
}

TEST_CASE("poles_outside solves the Dirichlet problem", "[circle]") {
    std::mt19937_64 rng(77);
    for (int trial = 0; trial < 5; ++trial) {
        BivariateRational R = corpus::random_boundary_data(rng);
        CircleDecomposition d = circle::decompose(R, Form::poles_outside);
        auto ref = oracles::PoissonReference::build(
            [&](double theta) { return R(std::polar(1.0, theta)); });
        for (int i = 0; i < 5; ++i)
            for (int j = 0; j < 5; ++j) {
                cplx w = std::polar(0.1 + 0.17 * i, 2.0 * pi * (j + 0.3) / 5);
                cplx u = d.r1(w) + std::conj(d.r2(w));
                CHECK(std::abs(u - ref.eval_disc(w)) < 1e-8);
            }
    }
}

TEST_CASE("xy data enters as written", "[circle]") {
    // x^2 + y^2 = z zbar
    BivariatePoly p = xy_to_zzbar({{0.0, 0.0, 1.0}, {0.0}, {1.0}});
    CHECK(std::abs(p.coeff(1, 1) - cplx(1.0)) < 1e-15);
    CHECK(std::abs(p.coeff(0, 0)) < 1e-15);
    CHECK(std::abs(p.coeff(2, 0)) < 1e-15);
    CHECK(std::abs(p.coeff(0, 2)) < 1e-15);
    // x = (z + zbar)/2
    BivariatePoly x = xy_to_zzbar({{0.0}, {1.0}});
    CHECK(std::abs(x.coeff(1, 0) - cplx(0.5)) < 1e-15);
    CHECK(std::abs(x.coeff(0, 1) - cplx(0.5)) < 1e-15);
}
