#include "chainforge/roots.hpp"

#include <algorithm>
#include <cassert>
#include <utility>

namespace chainforge {

namespace {

// Scale a nonzero rational polynomial to integer-primitive form with the same
// sign; keeps Sturm chains from blowing up.
ExactPolynomial primitive_part(const ExactPolynomial& p) {
    if (p.is_zero()) return p;
    Integer den_lcm = 1, num_gcd = 0;
    for (const auto& c : p.coeffs()) {
        mpz_lcm(den_lcm.get_mpz_t(), den_lcm.get_mpz_t(), c.get_den().get_mpz_t());
        mpz_gcd(num_gcd.get_mpz_t(), num_gcd.get_mpz_t(), c.get_num().get_mpz_t());
    }
    Rational scale(den_lcm, num_gcd == 0 ? Integer(1) : num_gcd);
    scale.canonicalize();
    return p * scale;
}

struct SturmChain {
    std::vector<ExactPolynomial> seq;  // seq[0] squarefree, seq[1] = seq[0]'

    explicit SturmChain(const ExactPolynomial& squarefree) {
        seq.push_back(primitive_part(squarefree));
        if (seq[0].degree() >= 1) seq.push_back(primitive_part(seq[0].derivative()));
        while (seq.back().degree() >= 1) {
            auto r = divrem(seq[seq.size() - 2], seq.back()).second;
            if (r.is_zero()) break;  // cannot happen for squarefree input
            seq.push_back(primitive_part(-r));
        }
    }

    int variations(const Rational& x) const {
        int v = 0, prev = 0;
        for (const auto& p : seq) {
            int s = sgn(p(x));
            if (s == 0) continue;
            if (prev != 0 && s != prev) ++v;
            prev = s;
        }
        return v;
    }

    // Distinct roots in (a, b); requires seq[0](a) != 0 and seq[0](b) != 0.
    int count(const Rational& a, const Rational& b) const {
        return variations(a) - variations(b);
    }
};

// Yun squarefree factorization: returns (factor, multiplicity) with monic
// squarefree pairwise-coprime factors.
std::vector<std::pair<ExactPolynomial, int>> squarefree_factors(const ExactPolynomial& p) {
    std::vector<std::pair<ExactPolynomial, int>> out;
    ExactPolynomial f = p.monic();
    if (f.degree() < 1) return out;
    ExactPolynomial df = f.derivative();
    ExactPolynomial g = poly_gcd(f, df);
    if (g.degree() == 0) {
        out.emplace_back(f, 1);
        return out;
    }
    ExactPolynomial a = exact_div(f, g);
    ExactPolynomial b = exact_div(df, g);
    ExactPolynomial c = b - a.derivative();
    int i = 1;
    while (a.degree() >= 1) {
        ExactPolynomial gi = poly_gcd(a, c);
        if (gi.degree() >= 1) out.emplace_back(gi, i);
        a = exact_div(a, gi);
        b = gi.degree() >= 1 ? exact_div(c, gi) : c;
        c = b - a.derivative();
        ++i;
    }
    return out;
}

Rational cauchy_bound(const ExactPolynomial& p) {
    Rational m(0);
    const Rational lead = abs(p.lead());
    for (int i = 0; i < p.degree(); ++i) m = std::max(m, Rational(abs(p.coeff(i)) / lead));
    return m + 1;
}

Rational simplest_above(const Rational& a) {  // smallest integer > a
    Integer f;
    mpz_fdiv_q(f.get_mpz_t(), a.get_num().get_mpz_t(), a.get_den().get_mpz_t());
    return Rational(f + 1);
}

}  // namespace

Rational simplest_rational_between(const Rational& a, const Rational& b) {
    if (!(a < b)) throw Error("simplest_rational_between: empty interval");
    if (a < 0 && b > 0) return Rational(0);
    Rational z = simplest_above(a);
    if (z < b) return z;
    Rational n = z - 1;  // floor(a); interval sits inside [n, n+1)
    if (a == n) {
        // (n, b): reciprocal tail is (1/(b-n), inf)
        return n + 1 / simplest_above(1 / (b - n));
    }
    return n + 1 / simplest_rational_between(1 / (b - n), 1 / (a - n));
}

int count_roots_in(const ExactPolynomial& p, const Rational& a, const Rational& b) {
    if (p.is_zero()) throw Error("count_roots_in: zero polynomial");
    if (!(a < b)) return 0;
    ExactPolynomial sf = p.degree() >= 1 ? exact_div(p, poly_gcd(p, p.derivative())) : p;
    while (sf.degree() >= 1 && sf(a) == 0) sf = exact_div(sf, ExactPolynomial::linear_root(a));
    while (sf.degree() >= 1 && sf(b) == 0) sf = exact_div(sf, ExactPolynomial::linear_root(b));
    if (sf.degree() < 1) return 0;
    SturmChain chain(sf);
    return chain.count(a, b);
}

namespace {

// Isolation for a squarefree polynomial; roots come out sorted and simple.
// Intervals are open with non-root endpoints and opposite signs.
void isolate_squarefree(const ExactPolynomial& f, std::vector<RealRoot>& out) {
    if (f.degree() < 1) return;
    if (f.degree() == 1) {
        RealRoot r;
        r.exact = true;
        r.value = -f.coeff(0) / f.coeff(1);
        r.witness = r.value.get_d();
        out.push_back(r);
        return;
    }
    SturmChain chain(f);
    Rational B = cauchy_bound(f);
    struct Seg {
        Rational a, b;
        int n;
    };
    std::vector<Seg> stack{{-B, B, chain.count(-B, B)}};
    std::vector<RealRoot> found;
    while (!stack.empty()) {
        Seg s = stack.back();
        stack.pop_back();
        if (s.n == 0) continue;
        if (s.n == 1) {
            RealRoot r;
            r.exact = false;
            r.lo = s.a;
            r.hi = s.b;
            found.push_back(r);
            continue;
        }
        Rational m = (s.a + s.b) / 2;
        if (f(m) == 0) {
            RealRoot r;
            r.exact = true;
            r.value = m;
            r.witness = m.get_d();
            found.push_back(r);
            Rational d = (s.b - s.a) / 4;
            while (f(m - d) == 0 || f(m + d) == 0 || chain.count(m - d, m + d) != 1) d /= 2;
            stack.push_back({s.a, m - d, chain.count(s.a, m - d)});
            stack.push_back({m + d, s.b, chain.count(m + d, s.b)});
        } else {
            stack.push_back({s.a, m, chain.count(s.a, m)});
            stack.push_back({m, s.b, chain.count(m, s.b)});
        }
    }

    // Denominator of any rational root divides the integer-primitive leading
    // coefficient; that bounds the recognition loop below.
    Integer L = abs(primitive_part(f).lead().get_num());
    for (auto& r : found) {
        if (r.exact) continue;
        int sa = sgn(f(r.lo));
        for (;;) {
            Rational s = simplest_rational_between(r.lo, r.hi);
            if (f(s) == 0) {
                r.exact = true;
                r.value = s;
                break;
            }
            if (s.get_den() > L) break;
            Rational m = (r.lo + r.hi) / 2;
            int sm = sgn(f(m));
            if (sm == 0) {
                r.exact = true;
                r.value = m;
                break;
            }
            if (sm == sa) r.lo = m;
            else r.hi = m;
        }
        if (!r.exact) {
            Rational target = (r.hi - r.lo);
            for (int i = 0; i < 52; ++i) target /= 2;
            refine_root(f, r, target);
        }
        r.witness = r.exact ? r.value.get_d() : Rational((r.lo + r.hi) / 2).get_d();
    }
    std::sort(found.begin(), found.end(),
              [](const RealRoot& x, const RealRoot& y) { return x.lower() < y.lower(); });
    for (auto& r : found) out.push_back(std::move(r));
}

}  // namespace

void refine_root(const ExactPolynomial& p, RealRoot& r, const Rational& width) {
    if (r.exact) return;
    ExactPolynomial sf =
        p.degree() >= 1 ? exact_div(p, poly_gcd(p, p.derivative())) : p;
    int sa = sgn(sf(r.lo));
    int sb = sgn(sf(r.hi));
    if (sa == 0 || sb == 0 || sa == sb)
        throw Error("refine_root: interval does not bracket a sign change");
    while (r.hi - r.lo > width) {
        Rational m = (r.lo + r.hi) / 2;
        int sm = sgn(sf(m));
        if (sm == 0) {
            r.exact = true;
            r.value = m;
            r.witness = m.get_d();
            return;
        }
        if (sm == sa) r.lo = m;
        else r.hi = m;
    }
    r.witness = Rational((r.lo + r.hi) / 2).get_d();
}

RootSet isolate_real_roots(const ExactPolynomial& p) {
    if (p.is_zero()) throw Error("isolate_real_roots: zero polynomial");
    RootSet rs;
    if (p.degree() < 1) return rs;
    auto factors = squarefree_factors(p);
    struct Tagged {
        RealRoot root;
        std::size_t factor;
    };
    std::vector<Tagged> all;
    for (std::size_t i = 0; i < factors.size(); ++i) {
        std::vector<RealRoot> roots;
        isolate_squarefree(factors[i].first, roots);
        for (auto& r : roots) {
            r.multiplicity = factors[i].second;
            all.push_back({std::move(r), i});
        }
    }
    // Roots of distinct (coprime) factors are distinct; refine overlapping
    // intervals until the global order is unambiguous.
    for (std::size_t i = 0; i < all.size(); ++i) {
        for (std::size_t j = i + 1; j < all.size(); ++j) {
            if (all[i].factor == all[j].factor) continue;
            RealRoot& x = all[i].root;
            RealRoot& y = all[j].root;
            while (x.lower() < y.upper() && y.lower() < x.upper()) {
                if (x.exact && y.exact) break;  // distinct values never overlap
                if (!x.exact)
                    refine_root(factors[all[i].factor].first, x, (x.hi - x.lo) / 4);
                if (!y.exact)
                    refine_root(factors[all[j].factor].first, y, (y.hi - y.lo) / 4);
            }
        }
    }
    std::sort(all.begin(), all.end(), [](const Tagged& x, const Tagged& y) {
        return x.root.lower() < y.root.lower();
    });
    for (auto& t : all) rs.roots.push_back(std::move(t.root));
    return rs;
}

namespace {

// Order two algebraic numbers given as isolated roots of pa and pb.
// g = gcd(pa, pb) decides equality. Refines in place.
int compare_algebraic(RealRoot& a, const ExactPolynomial& pa, RealRoot& b,
                      const ExactPolynomial& pb, const ExactPolynomial& g) {
    if (a.exact && b.exact) return a.value < b.value ? -1 : (a.value == b.value ? 0 : 1);
    for (;;) {
        if (a.upper() <= b.lower() && !(a.exact && b.exact && a.value == b.value)) {
            if (a.upper() < b.lower()) return -1;
            // touching endpoints: endpoints are non-roots, so order is strict
            return -1;
        }
        if (b.upper() <= a.lower()) return 1;
        // overlapping: equal iff gcd has a root in the overlap
        Rational lo = std::max(a.lower(), b.lower());
        Rational hi = std::min(a.upper(), b.upper());
        if (a.exact && b.exact) return a.value == b.value ? 0 : (a.value < b.value ? -1 : 1);
        if (a.exact) {
            if (pb(a.value) == 0) return 0;
            refine_root(pb, b, (b.hi - b.lo) / 4);
            continue;
        }
        if (b.exact) {
            if (pa(b.value) == 0) return 0;
            refine_root(pa, a, (a.hi - a.lo) / 4);
            continue;
        }
        if (g.degree() >= 1 && lo < hi && count_roots_in(g, lo, hi) >= 1) return 0;
        refine_root(pa, a, (a.hi - a.lo) / 4);
        refine_root(pb, b, (b.hi - b.lo) / 4);
    }
}

}  // namespace

bool strongly_interlaces(const ExactPolynomial& low, const ExactPolynomial& high) {
    if (low.is_zero() || high.is_zero())
        throw DegreeOrder("strongly_interlaces: zero polynomial input");
    if (low.degree() >= high.degree())
        throw DegreeOrder("strongly_interlaces: deg(low) must be below deg(high)");
    RootSet L = isolate_real_roots(low);
    RootSet H = isolate_real_roots(high);
    if (L.count_with_multiplicity() != low.degree())
        throw NonRealRoots("strongly_interlaces: lower polynomial has non-real roots");
    if (H.count_with_multiplicity() != high.degree())
        throw NonRealRoots("strongly_interlaces: higher polynomial has non-real roots");
    if (!L.all_simple()) return false;  // empty open interval at a repeated root
    if (L.roots.empty()) return true;   // constant low: conditions are vacuous

    ExactPolynomial g = poly_gcd(low, high);
    // Tag merged order: 0 = low only, 1 = high only, 2 = shared.
    struct Item {
        Rational key;
        int tag;
    };
    std::vector<Item> merged;
    std::vector<int> match(L.roots.size(), -1);  // low index -> high index if equal
    for (std::size_t i = 0; i < L.roots.size(); ++i) {
        for (std::size_t j = 0; j < H.roots.size(); ++j) {
            if (compare_algebraic(L.roots[i], low, H.roots[j], high, g) == 0) {
                match[i] = static_cast<int>(j);
                break;
            }
        }
    }
    std::vector<bool> high_shared(H.roots.size(), false);
    for (std::size_t i = 0; i < L.roots.size(); ++i)
        if (match[i] >= 0) high_shared[static_cast<std::size_t>(match[i])] = true;
    for (std::size_t i = 0; i < L.roots.size(); ++i)
        if (match[i] < 0) merged.push_back({L.roots[i].lower(), 0});
    for (std::size_t j = 0; j < H.roots.size(); ++j)
        merged.push_back({H.roots[j].lower(), high_shared[j] ? 2 : 1});
    std::sort(merged.begin(), merged.end(),
              [](const Item& x, const Item& y) { return x.key < y.key; });

    // Extreme roots of high must strictly bound every root of low.
    if (merged.front().tag != 1 || merged.back().tag != 1) return false;
    // Between consecutive low roots (tags 0 or 2) there must be a high-only
    // root; a shared root in between would itself be a low root.
    int last_low = -1;
    for (std::size_t i = 0; i < merged.size(); ++i) {
        if (merged[i].tag == 1) continue;
        if (last_low >= 0) {
            bool ok = false;
            for (std::size_t k = static_cast<std::size_t>(last_low) + 1; k < i; ++k)
                if (merged[k].tag == 1) ok = true;
            if (!ok) return false;
        }
        last_low = static_cast<int>(i);
    }
    return true;
}

namespace {

struct RatInterval {
    Rational lo, hi;
    RatInterval operator+(const RatInterval& o) const { return {lo + o.lo, hi + o.hi}; }
    RatInterval operator*(const RatInterval& o) const {
        Rational a = lo * o.lo, b = lo * o.hi, c = hi * o.lo, d = hi * o.hi;
        return {std::min(std::min(a, b), std::min(c, d)),
                std::max(std::max(a, b), std::max(c, d))};
    }
};

RatInterval eval_interval(const ExactPolynomial& p, const RatInterval& x) {
    RatInterval acc{Rational(0), Rational(0)};
    for (auto it = p.coeffs().rbegin(); it != p.coeffs().rend(); ++it)
        acc = acc * x + RatInterval{*it, *it};
    return acc;
}

}  // namespace

Rational min_abs_critical_value(const ExactPolynomial& p) {
    ExactPolynomial dp = p.derivative();
    if (dp.degree() < 1) return Rational(1);
    RootSet crit = isolate_real_roots(dp);
    Rational best(0);
    bool have = false;
    for (auto& c : crit.roots) {
        Rational bound;
        if (c.exact) {
            bound = abs(p(c.value));
            if (bound == 0) return Rational(0);
        } else {
            RealRoot r = c;
            for (;;) {
                RatInterval img = eval_interval(p, {r.lo, r.hi});
                if (sgn(img.lo) > 0 || sgn(img.hi) < 0) {
                    bound = std::min(abs(img.lo), abs(img.hi));
                    break;
                }
                refine_root(dp, r, (r.hi - r.lo) / 4);
                if (r.exact) {
                    bound = abs(p(r.value));
                    if (bound == 0) return Rational(0);
                    break;
                }
            }
        }
        if (!have || bound < best) {
            best = bound;
            have = true;
        }
    }
    return best;
}

}  // namespace chainforge
