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

TEST_CASE("isolate_real_roots recognizes rational roots exactly") {
    // (x-1)^2 (x+3)
    ExactPolynomial p = cf::poly_from_roots({Rational(1), Rational(1), Rational(-3)});
    cf::RootSet rs = cf::isolate_real_roots(p);
    REQUIRE(rs.roots.size() == 2);
    CHECK(rs.all_rational());
    CHECK(rs.roots[0].value == -3);
    CHECK(rs.roots[0].multiplicity == 1);
    CHECK(rs.roots[1].value == 1);
    CHECK(rs.roots[1].multiplicity == 2);
    CHECK(rs.count_with_multiplicity() == 3);
}

TEST_CASE("isolate_real_roots isolates irrational roots in disjoint intervals") {
    ExactPolynomial p = P({-2, 0, 1});  // x^2 - 2
    cf::RootSet rs = cf::isolate_real_roots(p);
    REQUIRE(rs.roots.size() == 2);
    CHECK(!rs.roots[0].exact);
    CHECK(!rs.roots[1].exact);
    CHECK(rs.roots[0].hi <= rs.roots[1].lo);
    CHECK(rs.roots[0].witness == doctest::Approx(-std::sqrt(2.0)).epsilon(1e-12));
    CHECK(rs.roots[1].witness == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
    // sign change across each isolating interval
    for (const auto& r : rs.roots) CHECK(cf::sign(p(r.lo)) * cf::sign(p(r.hi)) == -1);
}

TEST_CASE("mixed rational and irrational roots stay ordered") {
    // x (x^2 - 5/2)
    ExactPolynomial p = ExactPolynomial{Rational(0), Rational(-5, 2), Rational(0), Rational(1)};
    cf::RootSet rs = cf::isolate_real_roots(p);
    REQUIRE(rs.roots.size() == 3);
    CHECK(!rs.roots[0].exact);
    CHECK(rs.roots[1].exact);
    CHECK(rs.roots[1].value == 0);
    CHECK(!rs.roots[2].exact);
    CHECK(rs.roots[2].witness == doctest::Approx(std::sqrt(2.5)).epsilon(1e-12));
}

TEST_CASE("no real roots") {
    CHECK(cf::isolate_real_roots(P({1, 0, 1})).roots.empty());
    CHECK(cf::isolate_real_roots(ExactPolynomial::one()).roots.empty());
}

TEST_CASE("count_roots_in uses the open interval") {
    ExactPolynomial p = cf::poly_from_roots({Rational(-1), Rational(0), Rational(2)});
    CHECK(cf::count_roots_in(p, Rational(-2), Rational(3)) == 3);
    CHECK(cf::count_roots_in(p, Rational(0), Rational(2)) == 0);  // endpoints excluded
    CHECK(cf::count_roots_in(p, Rational(-1, 2), Rational(5, 2)) == 2);
}

TEST_CASE("strongly_interlaces on the pinned pairs") {
    ExactPolynomial top = P({4, 0, -5, 0, 1});                    // x^4 - 5x^2 + 4
    ExactPolynomial low = ExactPolynomial{Rational(-5, 2), Rational(0), Rational(1)};
    CHECK(cf::strongly_interlaces(low, top));
    CHECK(cf::strongly_interlaces(P({0, 1}), P({-1, 0, 1})));
    // root -2 of x^2 - 4 falls outside the open extreme interval of (x-3)(x-1)(x+1)
    CHECK(!cf::strongly_interlaces(
        P({-4, 0, 1}), cf::poly_from_roots({Rational(3), Rational(1), Rational(-1)})));
    // shared roots are permitted
    CHECK(cf::strongly_interlaces(P({0, 1}), cf::poly_from_roots({Rational(-1), Rational(0),
                                                                  Rational(1)})));
    CHECK_THROWS_AS(cf::strongly_interlaces(P({1, 0, 1}), P({0, -1, 0, 1})), cf::NonRealRoots);
    CHECK_THROWS_AS(cf::strongly_interlaces(P({-1, 0, 1}), P({0, 1})), cf::DegreeOrder);
}

TEST_CASE("derivative strongly interlaces on random real-rooted polynomials") {
    std::mt19937 rng(777);
    std::uniform_int_distribution<int> pick(-9, 9);
    for (int iter = 0; iter < 40; ++iter) {
        std::vector<Rational> roots;
        while (roots.size() < 4) {
            Rational cand(pick(rng));
            bool dup = false;
            for (const auto& r : roots) dup |= (r == cand);
            if (!dup) roots.push_back(cand);
        }
        ExactPolynomial p = cf::poly_from_roots(roots);
        CHECK(cf::strongly_interlaces(p.derivative().monic(), p));
    }
}

TEST_CASE("min_abs_critical_value") {
    // x^2 - 4: critical value -4 at x = 0
    Rational b = cf::min_abs_critical_value(P({-4, 0, 1}));
    CHECK(b > 0);
    CHECK(b <= 4);
    // critical value 0 for a double root
    CHECK(cf::min_abs_critical_value(P({1, 2, 1})) == 0);
    // no critical points
    CHECK(cf::min_abs_critical_value(P({3, 1})) == 1);
}

TEST_CASE("simplest_rational_between") {
    CHECK(cf::simplest_rational_between(Rational(1, 3), Rational(1, 2)) == Rational(2, 5));
    CHECK(cf::simplest_rational_between(Rational(0), Rational(1)) == Rational(1, 2));
    CHECK(cf::simplest_rational_between(Rational(5, 2), Rational(7, 2)) == Rational(3));
    Rational q = cf::simplest_rational_between(Rational(-1, 7), Rational(-1, 8));
    CHECK(q > Rational(-1, 7));
    CHECK(q < Rational(-1, 8));
}

TEST_CASE("refine_root narrows an isolating interval") {
    ExactPolynomial p = P({-2, 0, 1});
    cf::RootSet rs = cf::isolate_real_roots(p);
    cf::RealRoot r = rs.roots[1];
    cf::refine_root(p, r, Rational(1, 1000000));
    if (!r.exact) {
        CHECK(r.hi - r.lo <= Rational(1, 1000000));
        CHECK(cf::sign(p(r.lo)) * cf::sign(p(r.hi)) == -1);
    }
    CHECK(r.witness == doctest::Approx(std::sqrt(2.0)).epsilon(1e-12));
}
