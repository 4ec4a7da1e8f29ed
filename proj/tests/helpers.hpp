#ifndef CHAINFORGE_TEST_HELPERS_HPP
#define CHAINFORGE_TEST_HELPERS_HPP

#include <algorithm>
#include <random>
#include <vector>

#include "chainforge/chain.hpp"
#include "chainforge/poly.hpp"

namespace cf = chainforge;

// Random chain with small rational entries; deterministic under a caller seed.
inline cf::Chain random_chain(std::mt19937& rng, int d) {
    std::uniform_int_distribution<int> num(-6, 6);
    std::uniform_int_distribution<int> den(1, 3);
    std::uniform_int_distribution<int> lnum(1, 8);
    std::vector<cf::Rational> a, lsq;
    for (int i = 0; i <= d; ++i) {
        cf::Rational q(num(rng), den(rng));
        q.canonicalize();
        a.push_back(q);
    }
    for (int i = 0; i < d; ++i) {
        cf::Rational q(lnum(rng), den(rng));
        q.canonicalize();
        lsq.push_back(q);
    }
    return cf::Chain(std::move(a), std::move(lsq));
}

// Strictly interlacing pair with integer top roots and rational lower roots:
// distinct integers for the top polynomial, then one rational strictly inside
// each of m chosen top gaps.
struct InterlacingPair {
    cf::ExactPolynomial q_m, q_top;
    int m = 0, d = 0;
};

inline InterlacingPair random_interlacing_pair(std::mt19937& rng, int max_d) {
    std::uniform_int_distribution<int> dd(1, max_d);
    InterlacingPair out;
    out.d = dd(rng);
    std::uniform_int_distribution<int> mm(1, out.d);
    out.m = mm(rng);
    // d+1 distinct integers, ascending
    std::vector<int> pool;
    for (int v = -2 * out.d - 2; v <= 2 * out.d + 2; ++v) pool.push_back(v);
    std::shuffle(pool.begin(), pool.end(), rng);
    std::vector<int> theta(pool.begin(), pool.begin() + out.d + 1);
    std::sort(theta.begin(), theta.end());
    std::vector<cf::Rational> top_roots(theta.begin(), theta.end());
    out.q_top = cf::poly_from_roots(top_roots);
    // choose m of the d gaps, put a rational strictly inside each
    std::vector<int> gaps(static_cast<std::size_t>(out.d));
    for (int i = 0; i < out.d; ++i) gaps[static_cast<std::size_t>(i)] = i;
    std::shuffle(gaps.begin(), gaps.end(), rng);
    std::uniform_int_distribution<int> third(1, 2);
    std::vector<cf::Rational> low_roots;
    for (int i = 0; i < out.m; ++i) {
        int g = gaps[static_cast<std::size_t>(i)];
        cf::Rational lo(theta[static_cast<std::size_t>(g)]);
        cf::Rational hi(theta[static_cast<std::size_t>(g) + 1]);
        low_roots.push_back(lo + (hi - lo) * third(rng) / 3);
    }
    std::sort(low_roots.begin(), low_roots.end());
    out.q_m = cf::poly_from_roots(low_roots);
    return out;
}

// Breaks strong interlacing: either pushes a lower root outside the top span
// or stacks two lower roots inside one gap (requires m >= 2 for the latter).
inline InterlacingPair random_non_interlacing_pair(std::mt19937& rng, int max_d) {
    InterlacingPair p = random_interlacing_pair(rng, max_d);
    cf::RootSet top = cf::isolate_real_roots(p.q_top);
    cf::RootSet low = cf::isolate_real_roots(p.q_m);
    std::vector<cf::Rational> roots = low.rational_values();
    if (p.m >= 2 && (rng() & 1)) {
        roots[0] = roots[1];  // repeated lower root: never strongly interlacing
    } else {
        roots.back() = top.roots.back().value + 1;  // beyond the top span
    }
    p.q_m = cf::poly_from_roots(roots);
    return p;
}

#endif
