#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chainforge/poly.hpp"
#include "chainforge/roots.hpp"

namespace cf = chainforge;
using cf::ExactPolynomial;
using cf::Rational;

namespace {
ExactPolynomial P(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return ExactPolynomial(std::move(v));
}
}  // namespace

TEST_CASE("basic arithmetic and degree conventions") {
    CHECK(ExactPolynomial::zero().degree() == -1);
    CHECK(ExactPolynomial::one().degree() == 0);
    ExactPolynomial p = P({-5, 0, 1});  // x^2 - 5
    CHECK(p(Rational(3)) == 4);
    CHECK(p.eval_double(3.0) == doctest::Approx(4.0));
    CHECK((p - p).is_zero());
    CHECK((p * ExactPolynomial::zero()).is_zero());
    CHECK(p.derivative() == P({0, 2}));
    CHECK(p.monic() == p);
    CHECK((p * Rational(2)).lead() == 2);
}

TEST_CASE("poly_from_roots expands fixed root sets") {
    // roots 1, -1, 2, -2 -> x^4 - 5x^2 + 4
    CHECK(cf::poly_from_roots({Rational(1), Rational(-1), Rational(2), Rational(-2)}) ==
          P({4, 0, -5, 0, 1}));
    // roots -8, -4, 0, 8, 9
    ExactPolynomial q =
        cf::poly_from_roots({Rational(-8), Rational(-4), Rational(0), Rational(8), Rational(9)});
    CHECK(q.degree() == 5);
    CHECK(q.is_monic());
    for (long r : {-8L, -4L, 0L, 8L, 9L}) CHECK(q(Rational(r)) == 0);
    CHECK(q(Rational(1)) == Rational((1 + 8) * (1 + 4) * 1 * (1 - 8) * (1 - 9)));
}

TEST_CASE("reflected negates the root multiset") {
    ExactPolynomial p = cf::poly_from_roots({Rational(1), Rational(2), Rational(2)});
    ExactPolynomial r = p.reflected();
    CHECK(r.is_monic());
    CHECK(r(Rational(-1)) == 0);
    CHECK(r(Rational(-2)) == 0);
    CHECK(r.reflected() == p);
}

TEST_CASE("compose_affine substitutes a*x + b") {
    ExactPolynomial p = P({0, 0, 1});  // x^2
    ExactPolynomial q = p.compose_affine(Rational(2), Rational(-1));  // (2x-1)^2
    CHECK(q == P({1, -4, 4}));
}

TEST_CASE("divrem and exact_div") {
    ExactPolynomial a = P({4, 0, -5, 0, 1});
    ExactPolynomial b = P({-2, 0, 1});  // x^2 - 2
    auto [q, r] = cf::divrem(a, b);
    CHECK(a == b * q + r);
    CHECK(r.degree() < b.degree());
    ExactPolynomial c = P({-1, 1});  // x - 1
    CHECK(cf::exact_div(a, c) == cf::poly_from_roots({Rational(-1), Rational(2), Rational(-2)}));
    CHECK_THROWS_AS(cf::exact_div(b, c), cf::Error);
}

TEST_CASE("gcd picks up shared roots, monic") {
    ExactPolynomial a = cf::poly_from_roots({Rational(1), Rational(2)}) * Rational(3);
    ExactPolynomial b = cf::poly_from_roots({Rational(2), Rational(5)}) * Rational(7, 2);
    CHECK(cf::poly_gcd(a, b) == ExactPolynomial::linear_root(Rational(2)));
    CHECK(cf::poly_gcd(a, ExactPolynomial::zero()) == a.monic());
    CHECK(cf::poly_gcd(ExactPolynomial::zero(), ExactPolynomial::zero()).is_zero());
}

TEST_CASE("lagrange interpolation") {
    CHECK(cf::lagrange_interpolate({{Rational(0), Rational(1)}, {Rational(1), Rational(1)}}) ==
          ExactPolynomial::one());
    // through (2,3/2), (1,-3/2), (-1,-3/2), (-2,3/2): unique and already monic
    std::vector<std::pair<Rational, Rational>> pts = {
        {Rational(2), Rational(3, 2)},
        {Rational(1), Rational(-3, 2)},
        {Rational(-1), Rational(-3, 2)},
        {Rational(-2), Rational(3, 2)},
    };
    ExactPolynomial g = cf::lagrange_interpolate(pts);
    for (const auto& [x, y] : pts) CHECK(g(x) == y);
    CHECK(g == P({-5, 0, 2}) / Rational(2));  // x^2 - 5/2

    CHECK_THROWS_AS(cf::lagrange_interpolate({{Rational(1), Rational(0)},
                                              {Rational(1), Rational(2)}}),
                    cf::DuplicateAbscissa);
}

TEST_CASE("partial fractions over distinct rational poles") {
    ExactPolynomial den = P({-1, 0, 1});  // x^2 - 1
    // 1/(x^2-1) = (1/2)/(x-1) - (1/2)/(x+1)
    auto pf1 = cf::partial_fractions(ExactPolynomial::one(), den);
    REQUIRE(pf1.size() == 2);
    for (const auto& [pole, res] : pf1) {
        if (pole == 1) CHECK(res == Rational(1, 2));
        else {
            CHECK(pole == -1);
            CHECK(res == Rational(-1, 2));
        }
    }
    // x/(x^2-1) = (1/2)/(x-1) + (1/2)/(x+1)
    auto pf2 = cf::partial_fractions(P({0, 1}), den);
    REQUIRE(pf2.size() == 2);
    for (const auto& [pole, res] : pf2) CHECK(res == Rational(1, 2));

    CHECK_THROWS_AS(cf::partial_fractions(ExactPolynomial::one(), P({1, 2, 1})),
                    cf::RepeatedPole);
    CHECK_THROWS_AS(cf::partial_fractions(ExactPolynomial::one(), P({-2, 0, 1})),
                    cf::IrrationalPole);
    CHECK_THROWS_AS(cf::partial_fractions(P({0, 0, 1}), den), cf::DegreeOrder);
}

TEST_CASE("partial fraction recombination on random inputs") {
    std::mt19937 rng(20240817);
    std::uniform_int_distribution<int> pick(-8, 8);
    for (int iter = 0; iter < 30; ++iter) {
        // distinct rational poles
        std::vector<Rational> poles;
        while (poles.size() < 3) {
            Rational cand(pick(rng), 1 + (rng() % 2));
            cand.canonicalize();
            bool dup = false;
            for (const auto& p : poles) dup |= (p == cand);
            if (!dup) poles.push_back(cand);
        }
        ExactPolynomial den = cf::poly_from_roots(poles);
        ExactPolynomial num = ExactPolynomial{Rational(pick(rng)), Rational(pick(rng))};
        if (num.is_zero()) continue;
        auto pf = cf::partial_fractions(num, den);
        // recombine: sum res * den/(x - pole)
        ExactPolynomial acc;
        for (const auto& [pole, res] : pf)
            acc = acc + cf::exact_div(den, ExactPolynomial::linear_root(pole)) * res;
        CHECK(acc == num);
    }
}
