#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <latcalc/laurent.hpp>
#include <latcalc/polynomial.hpp>
#include <latcalc/random_gen.hpp>

#include <nlohmann/json.hpp>

#include <stdexcept>

using namespace latcalc;

TEST_CASE("rational helpers parse and render lowest terms") {
    CHECK(rational_from_string("3/4") == Rational(3, 4));
    CHECK(rational_from_string("-6/4") == Rational(-3, 2));
    CHECK(rational_from_string("5") == Rational(5));
    CHECK(rational_to_string(Rational(-3, 2)) == "-3/2");
    CHECK(rational_to_string(Rational(7)) == "7");
    CHECK_THROWS_AS(rational_from_string("1/0"), std::exception);
    CHECK_THROWS_AS(rational_from_string("seven"), std::exception);
    CHECK(rational_abs(Rational(-5, 3)) == Rational(5, 3));
    CHECK(rational_num(Rational(-6, 4)) == -3);
    CHECK(rational_den(Rational(-6, 4)) == 2);
    CHECK(pow2(-3) == Rational(1, 8));
    CHECK(pow2(4) == Rational(16));
    CHECK(pow2(0) == Rational(1));
    CHECK(factorial(0) == 1);
    CHECK(factorial(5) == 120);
    CHECK(binomial(7, 3) == 35);
    CHECK(binomial(3, 5) == 0);
    CHECK(binomial(3, -1) == 0);
}

TEST_CASE("valuation ordering puts infinity on top") {
    const Valuation inf;
    CHECK(!inf.is_finite());
    CHECK(Valuation(2) < inf);
    CHECK(inf >= 100);
    CHECK(Valuation(-1) >= -1);
    CHECK_FALSE(Valuation(-1) >= 0);
    CHECK(min(Valuation(3), Valuation(1)) == Valuation(1));
    CHECK(min(Valuation(3), inf) == Valuation(3));
    CHECK(Valuation(2) + 3 == Valuation(5));
    CHECK(inf + 5 == inf);
    CHECK(inf.to_string() == "inf");
    CHECK(Valuation(-2).to_string() == "-2");
    CHECK_THROWS_AS(inf.value(), std::logic_error);
}

TEST_CASE("laurent valuation and exact division by scale powers") {
    const LaurentH x = LaurentH::monomial(2, 3) - LaurentH::monomial(3);
    CHECK(x.valuation() == Valuation(2));
    CHECK(LaurentH().valuation() == Valuation());
    CHECK(divide_by_h_power(x, 2) == LaurentH(3) - LaurentH::h());
    CHECK(divide_by_h_power(x, 2).shifted(2) == x);
    CHECK(divide_by_h_power(x, -1) == LaurentH::monomial(3, 3) - LaurentH::monomial(4));
    CHECK(x.coefficient(2) == Rational(3));
    CHECK(x.coefficient(0) == Rational(0));
    CHECK(LaurentH(5).is_constant());
    CHECK(LaurentH().is_constant());
    CHECK_FALSE(x.is_constant());
    CHECK((-x) + x == LaurentH());
}

TEST_CASE("scale substitution sends the step to a dyadic value") {
    CHECK(LaurentH::h().evaluate_at_scale(1) == Rational(1, 2));
    CHECK(LaurentH::monomial(-1).evaluate_at_scale(2) == Rational(4));
    const LaurentH y = LaurentH(1) + LaurentH::monomial(2, 2);
    CHECK(y.evaluate_at_scale(1) == Rational(3, 2));
    CHECK(LaurentH(7).evaluate_at_scale(5) == Rational(7));
}

TEST_CASE("laurent ring axioms and valuation arithmetic on random draws") {
    Rng rng(501);
    for (int t = 0; t < 200; ++t) {
        const LaurentH a = rng.laurent(-3, 3, 3);
        const LaurentH b = rng.laurent(-3, 3, 3);
        const LaurentH c = rng.laurent(-3, 3, 3);
        CHECK((a * b) * c == a * (b * c));
        CHECK(a * (b + c) == a * b + a * c);
        CHECK(a * b == b * a);
        CHECK(a + (-a) == LaurentH());

        // the coefficient field has no zero divisors, so product valuations add
        const Valuation va = a.valuation(), vb = b.valuation();
        if (va.is_finite() && vb.is_finite())
            CHECK((a * b).valuation() == Valuation(va.value() + vb.value()));
        CHECK((a + b).valuation() >= min(va, vb));

        const int level = rng.uniform(0, 6);
        CHECK((a * b).evaluate_at_scale(level) ==
              a.evaluate_at_scale(level) * b.evaluate_at_scale(level));
        CHECK((a + b).evaluate_at_scale(level) ==
              a.evaluate_at_scale(level) + b.evaluate_at_scale(level));
    }
}

TEST_CASE("polynomial calculus basics") {
    const Polynomial x = Polynomial::variable(2, 0);
    const Polynomial y = Polynomial::variable(2, 1);
    const Polynomial p = x * x * y;
    CHECK(p.derivative(0) == Polynomial::monomial({1, 1}, 2));
    CHECK(p.derivative(1) == x * x);
    CHECK(p.total_degree() == 3);
    CHECK(Polynomial(2).total_degree() == -1);
    CHECK(Polynomial::constant(2, Rational(4)).total_degree() == 0);
    CHECK(p.evaluate({Rational(2), Rational(5)}) == Rational(20));
    CHECK(p.evaluate_at_h_multiple({3, 2}) == LaurentH::monomial(3, 18));

    Rng rng(523);
    for (int t = 0; t < 60; ++t) {
        const Polynomial a = rng.polynomial(2, 3);
        const Polynomial b = rng.polynomial(2, 3);
        const std::vector<Rational> pt{rng.rational(), rng.rational()};
        CHECK((a * b).evaluate(pt) == a.evaluate(pt) * b.evaluate(pt));
        CHECK((a + b).evaluate(pt) == a.evaluate(pt) + b.evaluate(pt));
        CHECK((a * b).derivative(0) == a.derivative(0) * b + a * b.derivative(0));
        // sampling at integer multiples of the step matches direct evaluation
        const int c0 = rng.uniform(-3, 3), c1 = rng.uniform(-3, 3);
        const LaurentH sampled = a.evaluate_at_h_multiple({c0, c1});
        CHECK(sampled.evaluate_at_scale(0) == a.evaluate({Rational(c0), Rational(c1)}));
    }
}

TEST_CASE("scalar json round trips") {
    Rng rng(517);
    for (int t = 0; t < 50; ++t) {
        const LaurentH a = rng.laurent(-4, 4, 4);
        CHECK(LaurentH::from_json(a.to_json()) == a);
        const Polynomial p = rng.polynomial(2, 3);
        CHECK(Polynomial::from_json(p.to_json()) == p);
        const PolynomialField f = rng.field(2, {0u, 1u, 2u, 3u}, 2);
        const PolynomialField g = PolynomialField::from_json(f.to_json());
        CHECK(g.n == f.n);
        CHECK(g.components == f.components);
    }
}
