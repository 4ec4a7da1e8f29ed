#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "chainforge/opsbuild.hpp"
#include "helpers.hpp"

using cf::BuildCertificate;
using cf::ExactPolynomial;
using cf::Rational;

namespace {
ExactPolynomial P(std::initializer_list<long> cs) {
    std::vector<Rational> v;
    for (long c : cs) v.emplace_back(c);
    return ExactPolynomial(std::move(v));
}
const ExactPolynomial kQm = ExactPolynomial{Rational(-5, 2), Rational(0), Rational(1)};
const ExactPolynomial kQtop = P({4, 0, -5, 0, 1});
}  // namespace

TEST_CASE("exact_spectrum orders distinct rational roots descending") {
    std::vector<Rational> sp = cf::exact_spectrum(kQtop);
    CHECK(sp == std::vector<Rational>{Rational(2), Rational(1), Rational(-1), Rational(-2)});
    CHECK_THROWS_AS(cf::exact_spectrum(P({-2, 0, 1})), cf::IrrationalSpectrum);
}

TEST_CASE("common_zeros finds shared spectrum indices") {
    CHECK(cf::common_zeros(kQm, kQtop).empty());
    // q_m = x, q_top = x^3 - x: spectrum 1, 0, -1; zero sits at index 1
    std::vector<int> j = cf::common_zeros(P({0, 1}), P({0, -1, 0, 1}));
    CHECK(j == std::vector<int>{1});
}

TEST_CASE("build_q_hat fills the empty gap; forced when J covers everything") {
    // the only q_m-free gap of the pinned pair is [-1,1]; midpoint gives x
    CHECK(cf::build_q_hat(kQm, kQtop) == P({0, 1}));
    // shared-root case: q_hat forced to vanish at the shared root
    CHECK(cf::build_q_hat(P({0, 1}), P({0, -1, 0, 1})) == P({0, 1}));
    CHECK_THROWS_AS(
        cf::build_q_hat(P({-3, 1}), cf::poly_from_roots({Rational(1), Rational(2)})),
        cf::InterlacingViolation);
}

TEST_CASE("choose_weights: positive, normalized, rho supported on J") {
    SUBCASE("no shared roots") {
        std::vector<Rational> sp = cf::exact_spectrum(kQtop);
        cf::Weights w = cf::choose_weights(kQm, cf::build_q_hat(kQm, kQtop), sp);
        Rational sum(0);
        for (const auto& t : w.tau) {
            CHECK(t > 0);
            sum += t;
        }
        CHECK(sum == 1);
        for (const auto& r : w.rho) CHECK(r == 0);
        CHECK(w.scale > 0);
    }
    SUBCASE("shared root gets positive rho above the proof bound") {
        ExactPolynomial qm = P({0, 1}), qtop = P({0, -1, 0, 1});
        std::vector<Rational> sp = cf::exact_spectrum(qtop);
        cf::Weights w = cf::choose_weights(qm, cf::build_q_hat(qm, qtop), sp);
        REQUIRE(w.rho.size() == 3);
        CHECK(w.rho[0] == 0);
        CHECK(w.rho[1] > Rational(1, 6));  // 1/(2(d+1)) with d = 2
        CHECK(w.rho[2] == 0);
        Rational sum(0);
        for (const auto& t : w.tau) {
            CHECK(t > 0);
            sum += t;
        }
        CHECK(sum == 1);
    }
}

TEST_CASE("build_ops reproduces the pinned 3-chain inputs exactly") {
    BuildCertificate bc = cf::build_ops(kQm, kQtop);
    CHECK(bc.chain.d() == 3);
    cf::OPSequence seq = cf::ops_from_chain(bc.chain);
    CHECK(seq.p[2] == kQm);
    CHECK(seq.top() == kQtop);
    CHECK(bc.q_d == seq.p[3]);
    for (const auto& l : bc.chain.lambda_sq()) CHECK(l > 0);
}

TEST_CASE("build_ops with adjacent degrees bypasses the gap machinery") {
    BuildCertificate bc = cf::build_ops(P({0, 1}), P({-1, 0, 1}));
    CHECK(bc.chain.a() == std::vector<Rational>{Rational(0), Rational(0)});
    CHECK(bc.chain.lambda_sq() == std::vector<Rational>{Rational(1)});
}

TEST_CASE("build_ops through a shared root") {
    BuildCertificate bc = cf::build_ops(P({0, 1}), P({0, -1, 0, 1}));
    cf::OPSequence seq = cf::ops_from_chain(bc.chain);
    CHECK(seq.p[1] == P({0, 1}));
    CHECK(seq.top() == P({0, -1, 0, 1}));
}

TEST_CASE("certificate q_hat is the gcd-consistent complement") {
    for (const auto& [qm, qtop] :
         std::vector<std::pair<ExactPolynomial, ExactPolynomial>>{
             {kQm, kQtop}, {P({0, 1}), P({0, -1, 0, 1})}}) {
        BuildCertificate bc = cf::build_ops(qm, qtop);
        CHECK(cf::poly_gcd(qm, qtop) == cf::poly_gcd(bc.q_hat, qtop));
    }
}

TEST_CASE("distinct admissible mu give distinct chains containing the same pair") {
    cf::BuildOptions o1, o2;
    o1.mu = std::vector<Rational>{Rational(1, 4)};
    o2.mu = std::vector<Rational>{Rational(-1, 3)};
    BuildCertificate b1 = cf::build_ops(kQm, kQtop, o1);
    BuildCertificate b2 = cf::build_ops(kQm, kQtop, o2);
    CHECK(!(b1.chain == b2.chain));
    for (const BuildCertificate* b : {&b1, &b2}) {
        cf::OPSequence seq = cf::ops_from_chain(b->chain);
        CHECK(seq.p[2] == kQm);
        CHECK(seq.top() == kQtop);
    }
}

TEST_CASE("non-interlacing pairs are rejected") {
    CHECK_THROWS_AS(cf::build_ops(P({-4, 0, 1}),
                                  cf::poly_from_roots({Rational(3), Rational(1), Rational(-1)})),
                    cf::InterlacingViolation);
    CHECK_THROWS_AS(cf::build_ops(P({-3, 1}), cf::poly_from_roots({Rational(1), Rational(2)})),
                    cf::InterlacingViolation);
}

TEST_CASE("random strongly interlacing pairs always build; violations always reject") {
    std::mt19937 rng(90210);
    for (int iter = 0; iter < 60; ++iter) {
        InterlacingPair p = random_interlacing_pair(rng, 7);
        BuildCertificate bc = cf::build_ops(p.q_m, p.q_top);
        cf::OPSequence seq = cf::ops_from_chain(bc.chain);
        CHECK(seq.p[static_cast<std::size_t>(p.m)] == p.q_m);
        CHECK(seq.top() == p.q_top);
    }
    for (int iter = 0; iter < 60; ++iter) {
        InterlacingPair p = random_non_interlacing_pair(rng, 7);
        CHECK_THROWS_AS(cf::build_ops(p.q_m, p.q_top), cf::Error);
    }
}
