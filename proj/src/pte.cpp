#include "chainforge/pte.hpp"

#include <algorithm>
#include <map>

#include "chainforge/cospec.hpp"
#include "chainforge/opsbuild.hpp"
#include "chainforge/pst.hpp"

namespace chainforge {

namespace {

ExactPolynomial poly_from_multiset(const std::vector<Integer>& s) {
    std::vector<Rational> roots;
    for (const auto& e : s) roots.emplace_back(e);
    return poly_from_roots(roots);
}

Integer power_sum(const std::vector<Integer>& s, unsigned long k) {
    Integer acc(0), t;
    for (const auto& e : s) {
        mpz_pow_ui(t.get_mpz_t(), e.get_mpz_t(), k);
        acc += t;
    }
    return acc;
}

PTEClass classify(const std::vector<Integer>& E, const std::vector<Integer>& F) {
    std::map<Integer, int> count;
    for (const auto& e : E) ++count[e];
    for (const auto& f : F) ++count[f];
    int doubles = 0;
    for (const auto& [v, c] : count) {
        if (c > 2) return PTEClass::General;
        if (c == 2) ++doubles;
    }
    if (doubles == 0) return PTEClass::Pte0;
    if (doubles == 1) return PTEClass::Pte1;
    return PTEClass::General;
}

}  // namespace

std::string pte_class_name(PTEClass cls) {
    switch (cls) {
        case PTEClass::Pte0: return "pte0";
        case PTEClass::Pte1: return "pte1";
        default: return "general";
    }
}

std::optional<Integer> pte_poly_gap(const std::vector<Integer>& E,
                                    const std::vector<Integer>& F) {
    ExactPolynomial diff = poly_from_multiset(E) - poly_from_multiset(F);
    if (diff.degree() >= 1) return std::nullopt;
    Rational c = diff.coeff(0);
    return Integer(c.get_num());
}

std::optional<PTESolution> verify_pte(std::vector<Integer> E, std::vector<Integer> F,
                                      std::string* reason) {
    if (E.size() != F.size() || E.empty())
        throw SizeMismatch("verify_pte: need |E| = |F| >= 1");
    std::sort(E.begin(), E.end());
    std::sort(F.begin(), F.end());
    auto fail = [&](const std::string& why) -> std::optional<PTESolution> {
        if (reason) *reason = why;
        return std::nullopt;
    };
    if (E == F) return fail("E and F coincide as multisets");
    const int n = static_cast<int>(E.size());
    bool sums_ok = true;
    for (unsigned long k = 1; k < static_cast<unsigned long>(n); ++k)
        if (power_sum(E, k) != power_sum(F, k)) {
            sums_ok = false;
            if (reason)
                *reason = "power sums differ at exponent " + std::to_string(k);
            break;
        }
    bool gap_ok = pte_poly_gap(E, F).has_value();
    if (sums_ok != gap_ok)
        throw Error("internal: power-sum and polynomial-difference checks disagree");
    if (!sums_ok) return std::nullopt;
    PTESolution sol;
    sol.n = n;
    sol.cls = classify(E, F);
    sol.E = std::move(E);
    sol.F = std::move(F);
    return sol;
}

bool pte_interlacing_check(const PTESolution& sol) {
    const std::vector<Integer>* e = &sol.E;
    const std::vector<Integer>* f = &sol.F;
    if ((*e)[0] > (*f)[0]) std::swap(e, f);
    if ((*e)[0] == (*f)[0]) return false;
    // merged order e_1 | f_1 f_2 | e_2 e_3 | f_3 f_4 | ... with strict
    // inequality between blocks and <= inside a block
    std::vector<std::pair<Integer, int>> merged;  // (value, side)
    std::size_t ei = 0, fi = 0;
    merged.emplace_back((*e)[ei++], 0);
    int side = 1;
    while (ei < e->size() || fi < f->size()) {
        const std::vector<Integer>& src = side == 0 ? *e : *f;
        std::size_t& i = side == 0 ? ei : fi;
        for (int t = 0; t < 2 && i < src.size(); ++t) merged.emplace_back(src[i++], side);
        side = 1 - side;
    }
    for (std::size_t i = 1; i < merged.size(); ++i) {
        if (merged[i].second == merged[i - 1].second) {
            if (merged[i].first < merged[i - 1].first) return false;
        } else if (merged[i].first <= merged[i - 1].first) {
            return false;
        }
    }
    return true;
}

PTESolution chain_to_pte(const Chain& c, int m) {
    const int d = c.d();
    if (m != (d + 2) / 2)
        throw WrongPosition("chain_to_pte: m must be the half position ceil((d+1)/2)");
    if (!is_cospectral(c, 0, m, /*require_exact=*/true))
        throw NotPeriodicCospectral("chain_to_pte: vertices 0 and m are not cospectral");
    SpectralData sd = eigen(c);
    std::vector<Rational> spectrum;
    try {
        spectrum = sd.rational_spectrum();
    } catch (const IrrationalSpectrum&) {
        throw NotPeriodicCospectral("chain_to_pte: spectrum is not rational");
    }
    NormalizedSpectrum ns = normalize_spectrum(spectrum);
    OPSequence seq = ops_from_chain(c);
    const ExactPolynomial& pm = seq.p[static_cast<std::size_t>(m)];
    std::vector<Integer> splus, sminus;
    for (std::size_t s = 0; s < spectrum.size(); ++s) {
        int sg = sgn(pm(spectrum[s]));
        if (sg == 0)
            throw NotPeriodicCospectral("chain_to_pte: p_m vanishes on an eigenvalue");
        (sg > 0 ? splus : sminus).push_back(ns.theta[s]);
    }
    std::vector<Integer> E = splus, F = sminus;
    if (d % 2 == 0) {
        Integer xi(0);
        for (const auto& v : splus) xi += v;
        for (const auto& v : sminus) xi -= v;
        (E.size() < F.size() ? E : F).push_back(xi);
    }
    std::optional<PTESolution> sol = verify_pte(std::move(E), std::move(F));
    if (!sol || sol->n != m)
        throw CertificationFailure("chain_to_pte: extracted sets fail the power-sum check");
    return *sol;
}

Chain pte_to_chain(const PTESolution& sol, bool force_even_d) {
    if (sol.cls == PTEClass::General)
        throw WrongClass("pte_to_chain: needs a pte0 or pte1 solution");
    const int n = sol.n;
    ExactPolynomial pm = (poly_from_multiset(sol.E) + poly_from_multiset(sol.F)) / 2;

    std::vector<Integer> joint(sol.E);
    joint.insert(joint.end(), sol.F.begin(), sol.F.end());
    std::sort(joint.begin(), joint.end());

    if (sol.cls == PTEClass::Pte1 || force_even_d) {
        std::optional<Integer> xi;
        for (std::size_t i = 0; i + 1 < joint.size(); ++i)
            if (joint[i] == joint[i + 1]) xi = joint[i];
        if (!xi) {
            // no repeat: prune the smallest interior element
            for (const auto& v : joint)
                if (v != sol.E.front() && v != sol.F.front() && v != sol.E.back() &&
                    v != sol.F.back()) {
                    xi = v;
                    break;
                }
            if (!xi) throw WrongClass("pte_to_chain: no interior element available to prune");
        }
        joint.erase(std::find(joint.begin(), joint.end(), *xi));
    }

    std::vector<Rational> spectrum(joint.rbegin(), joint.rend());
    BuildCertificate bc = build_ops(pm, poly_from_roots(spectrum));
    if (!is_cospectral(bc.chain, 0, n, /*require_exact=*/true) || !is_periodic(bc.chain, 0) ||
        !is_periodic(bc.chain, n))
        throw CertificationFailure("pte_to_chain: output failed certification");
    return bc.chain;
}

Chain pte_to_pst_chain(const PTESolution& sol) {
    if (sol.cls != PTEClass::Pte0)
        throw WrongClass("pte_to_pst_chain: needs a pte0 solution");
    auto odd_count = [](const std::vector<Integer>& s) {
        int c = 0;
        for (const auto& v : s)
            if (mpz_odd_p(v.get_mpz_t())) ++c;
        return c;
    };
    if (odd_count(sol.E) != 1 || odd_count(sol.F) != 1)
        throw ParityMismatch("pte_to_pst_chain: each side must contain exactly one odd element");
    std::vector<Integer> spectrum;
    for (const auto* side : {&sol.E, &sol.F})
        for (const auto& v : *side)
            if (mpz_even_p(v.get_mpz_t())) spectrum.push_back(v / 2);
    std::sort(spectrum.begin(), spectrum.end(), std::greater<Integer>());
    return build_pst_chain(spectrum, sol.n);
}

std::vector<PTESolution> search_pte(int n, long lo, long hi,
                                    std::optional<PTEClass> class_filter) {
    if (n < 1 || hi < lo) throw Error("search_pte: need n >= 1 and lo <= hi");
    // all ascending n-multisets over [lo, hi] with multiplicity <= 2
    std::vector<std::vector<Integer>> multisets;
    std::vector<Integer> cur;
    auto rec = [&](auto&& self, long next, int left) -> void {
        if (left == 0) {
            multisets.push_back(cur);
            return;
        }
        for (long v = next; v <= hi; ++v)
            for (int rep = 1; rep <= std::min(2, left); ++rep) {
                for (int t = 0; t < rep; ++t) cur.emplace_back(v);
                self(self, v + 1, left - rep);
                for (int t = 0; t < rep; ++t) cur.pop_back();
            }
    };
    rec(rec, lo, n);

    std::map<std::vector<Integer>, std::vector<std::size_t>> buckets;
    for (std::size_t i = 0; i < multisets.size(); ++i) {
        std::vector<Integer> key;
        for (unsigned long k = 1; k < static_cast<unsigned long>(n); ++k)
            key.push_back(power_sum(multisets[i], k));
        buckets[std::move(key)].push_back(i);
    }

    std::vector<PTESolution> out;
    for (const auto& [key, members] : buckets)
        for (std::size_t i = 0; i < members.size(); ++i)
            for (std::size_t j = i + 1; j < members.size(); ++j) {
                const auto* E = &multisets[members[i]];
                const auto* F = &multisets[members[j]];
                if ((*E)[0] > (*F)[0]) std::swap(E, F);
                std::optional<PTESolution> sol = verify_pte(*E, *F);
                if (!sol) continue;
                if (class_filter && sol->cls != *class_filter) continue;
                out.push_back(std::move(*sol));
            }
    return out;
}

}  // namespace chainforge
