#include <catch2/catch_amalgamated.hpp>

#include "helpers.hpp"

using namespace quaddec;
using qdtest::rand_cplx;

TEST_CASE("roots: factored cases", "[cpoly]") {
    // z^2 - 1
    auto r = roots(ComplexPoly({cplx(-1.0), cplx(0.0), cplx(1.0)}));
    REQUIRE(r.size() == 2);
    CHECK(std::abs(r[0].root - cplx(-1.0)) < 1e-12);
    CHECK(std::abs(r[1].root - cplx(1.0)) < 1e-12);
    CHECK(r[0].multiplicity == 1);
    CHECK(r[1].multiplicity == 1);

    // (z-2)^2 (z-0.5) expanded
    auto r2 = roots(ComplexPoly({cplx(-2.0), cplx(6.0), cplx(-4.5), cplx(1.0)}), 1e-7);
    REQUIRE(r2.size() == 2);
    CHECK(std::abs(r2[0].root - cplx(0.5)) < 1e-10);
    CHECK(r2[0].multiplicity == 1);
    CHECK(std::abs(r2[1].root - cplx(2.0)) < 1e-6);
    CHECK(r2[1].multiplicity == 2);
}

TEST_CASE("roots: random degree-6 vs companion-matrix oracle", "[cpoly]") {
    std::mt19937_64 rng(2024);
    for (int trial = 0; trial < 20; ++trial) {
        ComplexPoly p = qdtest::random_poly(rng, 6);
        std::vector<cplx> mine;
        for (const auto& rc : roots(p))
            for (int i = 0; i < rc.multiplicity; ++i) mine.push_back(rc.root);
        std::vector<cplx> oracle = qdtest::companion_roots(p);
        REQUIRE(mine.size() == oracle.size());
        CHECK(qdtest::root_match_distance(mine, oracle) < 1e-10);
    }
}

TEST_CASE("roots: recombination property", "[cpoly]") {
    std::mt19937_64 rng(7);
    for (int trial = 0; trial < 25; ++trial) {
        int deg = 2 + static_cast<int>(rng() % 7);
        ComplexPoly p = qdtest::random_poly(rng, deg);
        ComplexPoly back = recombine(roots(p), p.leading());
        for (int k = 0; k <= deg; ++k)
            CHECK(std::abs(back.coeff(k) - p.coeff(k)) < 1e-9 * p.coeff_scale());
    }
}

TEST_CASE("roots: error cases and exact origin roots", "[cpoly]") {
    CHECK_THROWS_AS(roots(ComplexPoly::zero()), domain_error);
    CHECK_THROWS_AS(roots(ComplexPoly(cplx(3.0))), domain_error);
    // z^3 (z - 1): origin root is exact
    auto r = roots(ComplexPoly({cplx(0.0), cplx(0.0), cplx(0.0), cplx(-1.0), cplx(1.0)}));
    REQUIRE(r.size() == 2);
    CHECK(r[0].root == cplx(0.0));
    CHECK(r[0].multiplicity == 3);
    CHECK(std::abs(r[1].root - cplx(1.0)) < 1e-12);
}

TEST_CASE("partial fractions: worked residues", "[cpoly]") {
    // -z/((z-2)(z-0.5)): residues by A = lim (z-a) r(z)
    RationalFunction r(ComplexPoly({cplx(0.0), cplx(-1.0)}),
                       ComplexPoly({cplx(1.0), cplx(-2.5), cplx(1.0)}));
    PartialFractions pf = partial_fractions(r);
    REQUIRE(pf.poly_part.is_zero());
    REQUIRE(pf.terms.size() == 2);
    for (const PFTerm& t : pf.terms) {
        REQUIRE(t.order == 1);
        if (std::abs(t.pole - cplx(2.0)) < 1e-9)
            CHECK(std::abs(t.coeff - cplx(-4.0 / 3.0)) < 1e-12);
        else {
            CHECK(std::abs(t.pole - cplx(0.5)) < 1e-9);
            CHECK(std::abs(t.coeff - cplx(1.0 / 3.0)) < 1e-12);
        }
    }
}

TEST_CASE("partial fractions: already a principal part", "[cpoly]") {
    RationalFunction r(ComplexPoly::one(), ComplexPoly::monomial(2));  // 1/z^2
    PartialFractions pf = partial_fractions(r);
    REQUIRE(pf.poly_part.is_zero());
    REQUIRE(pf.terms.size() == 2);  // orders 1 and 2 at 0; order-1 coeff 0
    double c1 = 0.0, c2 = 0.0;
    for (const PFTerm& t : pf.terms) {
        if (t.order == 1) c1 = std::abs(t.coeff);
        if (t.order == 2) c2 = std::abs(t.coeff - cplx(1.0));
    }
    CHECK(c1 < 1e-12);
    CHECK(c2 < 1e-12);
}

TEST_CASE("partial fractions: polynomial part via long division", "[cpoly]") {
    // z^3/(z-1) = z^2 + z + 1 + 1/(z-1)
    RationalFunction r(ComplexPoly::monomial(3), ComplexPoly({cplx(-1.0), cplx(1.0)}));
    PartialFractions pf = partial_fractions(r);
    REQUIRE(pf.poly_part.degree() == 2);
    CHECK(std::abs(pf.poly_part.coeff(0) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(pf.poly_part.coeff(1) - cplx(1.0)) < 1e-12);
    CHECK(std::abs(pf.poly_part.coeff(2) - cplx(1.0)) < 1e-12);
    REQUIRE(pf.terms.size() == 1);
    CHECK(std::abs(pf.terms[0].coeff - cplx(1.0)) < 1e-12);
}

TEST_CASE("partial fractions: round-trip property on random corpus", "[cpoly]") {
    std::mt19937_64 rng(99);
    for (int trial = 0; trial < 15; ++trial) {
        ComplexPoly num = qdtest::random_poly(rng, 1 + static_cast<int>(rng() % 5));
        ComplexPoly den = qdtest::random_poly(rng, 2 + static_cast<int>(rng() % 4));
        RationalFunction r = RationalFunction(num, den).normalized();
        PartialFractions pf = partial_fractions(r);
        for (int k = 0; k < 64; ++k) {
            cplx z = std::polar(2.0, 2.0 * pi * (k + 0.5) / 64);
            cplx want = r(z);
            CHECK(std::abs(eval(pf, z) - want) < 1e-9 * std::max(1.0, std::abs(want)));
        }
    }
}

TEST_CASE("partial fractions: multiple-pole accuracy", "[cpoly]") {
    // (3z+1)/((z-1)^3 (z+2)): exact coefficients by hand Taylor expansion
    ComplexPoly den = ComplexPoly::from_roots({cplx(1.0), cplx(1.0), cplx(1.0), cplx(-2.0)});
    RationalFunction r(ComplexPoly({cplx(1.0), cplx(3.0)}), den);
    PartialFractions pf = partial_fractions(r, 1e-7);
    // g(z) = (3z+1)/(z+2); g(1) = 4/3, g'(1) = (3(z+2)-(3z+1))/(z+2)^2 = 5/9,
    // g''(1)/2 = -5/27
    for (const PFTerm& t : pf.terms) {
        if (t.order == 3 && std::abs(t.pole - cplx(1.0)) < 1e-6)
            CHECK(std::abs(t.coeff - cplx(4.0 / 3.0)) < 1e-9);
        if (t.order == 2 && std::abs(t.pole - cplx(1.0)) < 1e-6)
            CHECK(std::abs(t.coeff - cplx(5.0 / 9.0)) < 1e-9);
        if (t.order == 1 && std::abs(t.pole - cplx(1.0)) < 1e-6)
            CHECK(std::abs(t.coeff - cplx(-5.0 / 27.0)) < 1e-8);
    }
}

TEST_CASE("conj_reflect: worked examples and involution", "[cpoly]") {
    // r(z) = z -> 1/w
    RationalFunction id = RationalFunction::variable();
    RationalFunction s = id.conj_reflect();
    CHECK(std::abs(s(cplx(2.0)) - cplx(0.5)) < 1e-15);

    // r = 1/(z - 0.5) -> w/(1 - 0.5 w), pole moved to 2
    RationalFunction r(ComplexPoly::one(), ComplexPoly({cplx(-0.5), cplx(1.0)}));
    RationalFunction sr = r.conj_reflect().normalized();
    auto poles = roots(sr.den());
    REQUIRE(poles.size() == 1);
    CHECK(std::abs(poles[0].root - cplx(2.0)) < 1e-12);

    // constant c -> conj(c)
    RationalFunction c(cplx(1.0, -3.0));
    CHECK(std::abs(c.conj_reflect()(cplx(0.7, 0.1)) - cplx(1.0, 3.0)) < 1e-15);

    std::mt19937_64 rng(5);
    for (int trial = 0; trial < 10; ++trial) {
        RationalFunction rr(qdtest::random_poly(rng, 3), qdtest::random_poly(rng, 2));
        RationalFunction back = rr.conj_reflect().conj_reflect();
        for (cplx z : qdtest::boundary_samples(16)) {
            // on |z|=1 the reflection is conj(r); twice is r itself
            CHECK(std::abs(rr.conj_reflect()(z) - std::conj(rr(z))) <
                  1e-12 * std::max(1.0, std::abs(rr(z))));
            CHECK(std::abs(back(z) - rr(z)) < 1e-12 * std::max(1.0, std::abs(rr(z))));
        }
    }
}

TEST_CASE("arithmetic and calculus", "[cpoly]") {
    // 1/(z-1) + 1/(z+1) = 2z/(z^2-1)
    RationalFunction a(ComplexPoly::one(), ComplexPoly({cplx(-1.0), cplx(1.0)}));
    RationalFunction b(ComplexPoly::one(), ComplexPoly({cplx(1.0), cplx(1.0)}));
    RationalFunction s = arith(a, b, ArithOp::add);
    std::mt19937_64 rng(11);
    for (int k = 0; k < 32; ++k) {
        cplx z = rand_cplx(rng, 3.0);
        if (std::abs(z * z - cplx(1.0)) < 1e-2) continue;
        cplx want = 2.0 * z / (z * z - cplx(1.0));
        CHECK(std::abs(s(z) - want) < 1e-12 * std::max(1.0, std::abs(want)));
    }

    // derivative(1/(a-z)) = 1/(a-z)^2 with a = 0.3+0.1i
    cplx aa(0.3, 0.1);
    RationalFunction r(ComplexPoly::one(), ComplexPoly({aa, cplx(-1.0)}));
    RationalFunction dr = r.derivative();
    for (int k = 0; k < 8; ++k) {
        cplx z = rand_cplx(rng, 2.0);
        cplx want = cplx(1.0) / std::pow(aa - z, 2);
        CHECK(std::abs(dr(z) - want) < 1e-10 * std::max(1.0, std::abs(want)));
    }

    // antiderivative(3z^2) = z^3 exactly, derivative of antiderivative = id
    ComplexPoly p({cplx(0.0), cplx(0.0), cplx(3.0)});
    CHECK(p.antiderivative() == ComplexPoly::monomial(3));
    for (int trial = 0; trial < 10; ++trial) {
        ComplexPoly q = qdtest::random_poly(rng, 5);
        CHECK(q.antiderivative().derivative() == q);
    }

    CHECK_THROWS_AS(arith(a, RationalFunction(), ArithOp::div), domain_error);
}

TEST_CASE("normalized cancels shared factors", "[cpoly]") {
    // (z-1)(z-2) / ((z-1)(z+3)) -> (z-2)/(z+3), monic denominator
    ComplexPoly num = ComplexPoly::from_roots({cplx(1.0), cplx(2.0)}, cplx(2.5));
    ComplexPoly den = ComplexPoly::from_roots({cplx(1.0), cplx(-3.0)}, cplx(-1.0));
    RationalFunction r = RationalFunction(num, den).normalized();
    CHECK(r.num().degree() == 1);
    CHECK(r.den().degree() == 1);
    CHECK(std::abs(r.den().leading() - cplx(1.0)) < 1e-15);
    for (cplx z : qdtest::boundary_samples(8))
        CHECK(std::abs(r(z) - cplx(2.5) / cplx(-1.0) * (z - 2.0) / (z + 3.0)) < 1e-12);
}
