#ifndef CHAINFORGE_ROOTS_HPP
#define CHAINFORGE_ROOTS_HPP

#include <vector>

#include "chainforge/poly.hpp"
#include "chainforge/rational.hpp"

namespace chainforge {

// One real root: either an exact rational, or an isolating open interval
// (lo, hi) containing exactly one root, with a refined double witness.
struct RealRoot {
    bool exact = false;
    Rational value;  // meaningful when exact
    Rational lo, hi;
    double witness = 0.0;
    int multiplicity = 1;

    Rational lower() const { return exact ? value : lo; }
    Rational upper() const { return exact ? value : hi; }
};

struct RootSet {
    std::vector<RealRoot> roots;  // strictly increasing

    int count_with_multiplicity() const {
        int n = 0;
        for (const auto& r : roots) n += r.multiplicity;
        return n;
    }
    bool all_rational() const {
        for (const auto& r : roots)
            if (!r.exact) return false;
        return true;
    }
    bool all_simple() const {
        for (const auto& r : roots)
            if (r.multiplicity != 1) return false;
        return true;
    }
    std::vector<Rational> rational_values() const {
        std::vector<Rational> v;
        for (const auto& r : roots)
            for (int i = 0; i < r.multiplicity; ++i) v.push_back(r.value);
        return v;
    }
    std::vector<double> witnesses() const {
        std::vector<double> v;
        for (const auto& r : roots) v.push_back(r.exact ? r.value.get_d() : r.witness);
        return v;
    }
};

// All real roots with multiplicity, via Yun squarefree split and exact Sturm
// bisection. Rational roots are recognized exactly.
RootSet isolate_real_roots(const ExactPolynomial& p);

// Number of distinct real roots of p in the open interval (a, b); endpoints
// that are roots are not counted.
int count_roots_in(const ExactPolynomial& p, const Rational& a, const Rational& b);

// Strong interlacing of the definition used throughout: every open interval
// between consecutive roots of `low` contains a root of `high`, and the roots
// of `low` lie strictly between the extreme roots of `high`. Shared roots are
// permitted. Throws NonRealRoots / DegreeOrder on bad input.
bool strongly_interlaces(const ExactPolynomial& low, const ExactPolynomial& high);

// Positive rational lower bound on min |p(c)| over critical points c of p.
// Returns 0 when some critical value vanishes; returns 1 when p has no
// critical points.
Rational min_abs_critical_value(const ExactPolynomial& p);

// Rational of minimal denominator strictly inside (a, b), a < b.
Rational simplest_rational_between(const Rational& a, const Rational& b);

// Refine an isolating interval of p by bisection until its width is at most
// `width`; may discover the root to be exactly rational (dyadic midpoint).
void refine_root(const ExactPolynomial& p, RealRoot& r, const Rational& width);

}  // namespace chainforge

#endif
