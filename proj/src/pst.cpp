#include "chainforge/pst.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <map>
#include <numbers>

#include "chainforge/cospec.hpp"

namespace chainforge {

NormalizedSpectrum normalize_spectrum(const std::vector<Rational>& descending) {
    if (descending.empty()) throw Error("normalize_spectrum: empty spectrum");
    NormalizedSpectrum ns;
    ns.shift = descending.back();
    Rational g(0);
    for (const auto& th : descending) g = rational_gcd(g, th - ns.shift);
    ns.scale = (g == 0) ? Rational(1) : g;
    for (const auto& th : descending) {
        Rational n = (th - ns.shift) / ns.scale;
        if (!is_integer(n)) throw Error("internal: normalization did not produce integers");
        ns.theta.push_back(n.get_num());
    }
    return ns;
}

bool is_periodic(const Chain& c, int v) {
    if (v < 0 || v > c.d()) throw IndexOutOfRange("is_periodic: vertex out of range");
    OPSequence seq = ops_from_chain(c);
    // Eigenvalues outside the support of v (shared zeros of p_v and the
    // characteristic polynomial) place no constraint.
    ExactPolynomial support = seq.top();
    ExactPolynomial shared = poly_gcd(support, seq.p[static_cast<std::size_t>(v)]);
    if (shared.degree() >= 1) support = exact_div(support, shared);
    RootSet rs = isolate_real_roots(support);
    if (rs.roots.size() <= 1) return true;
    if (!rs.all_rational())
        throw IrrationalSpectrum(
            "periodicity over an irrational support is undecided by this tool");
    return true;  // rational support eigenvalues are always commensurable
}

namespace {

std::optional<PSTCertificate> check_pst_numeric(const Chain& c, int l, int m) {
    SpectralData sd = eigen(c);
    double dmin = std::numeric_limits<double>::infinity();
    for (std::size_t s = 0; s + 1 < sd.theta.size(); ++s)
        dmin = std::min(dmin, sd.theta[s] - sd.theta[s + 1]);
    double tmax = 2.0 * std::numbers::pi / dmin;
    const int steps = 20000;
    double best_t = 0.0, best = -1.0;
    for (int i = 1; i <= steps; ++i) {
        double t = tmax * i / steps;
        double f = std::abs(transition_amplitude(sd, t, l, m));
        if (f > best) {
            best = f;
            best_t = t;
        }
    }
    // golden-section refinement around the best grid point
    double a = best_t - tmax / steps, b = best_t + tmax / steps;
    const double gr = (std::sqrt(5.0) - 1.0) / 2.0;
    double x1 = b - gr * (b - a), x2 = a + gr * (b - a);
    for (int it = 0; it < 200; ++it) {
        if (std::abs(transition_amplitude(sd, x1, l, m)) <
            std::abs(transition_amplitude(sd, x2, l, m))) {
            a = x1;
            x1 = x2;
            x2 = a + gr * (b - a);
        } else {
            b = x2;
            x2 = x1;
            x1 = b - gr * (b - a);
        }
    }
    double t = (a + b) / 2;
    double f = std::abs(transition_amplitude(sd, t, l, m));
    if (f < 1.0 - 1e-9) return std::nullopt;
    PSTCertificate cert;
    cert.mode = PSTCertificate::Mode::Numeric;
    cert.l = l;
    cert.m = m;
    cert.time = t;
    cert.fidelity = f;
    return cert;
}

}  // namespace

std::optional<PSTCertificate> check_pst(const Chain& c, int l, int m) {
    if (l == m || l < 0 || m < 0 || l > c.d() || m > c.d())
        throw IndexOutOfRange("check_pst: need two distinct vertices in range");
    OPSequence seq = ops_from_chain(c);
    RootSet rs = isolate_real_roots(seq.top());
    if (!rs.all_rational()) return check_pst_numeric(c, l, m);

    std::vector<Rational> spectrum;
    for (auto it = rs.roots.rbegin(); it != rs.roots.rend(); ++it) spectrum.push_back(it->value);
    NormalizedSpectrum ns = normalize_spectrum(spectrum);
    const ExactPolynomial& pl = seq.p[static_cast<std::size_t>(l)];
    const ExactPolynomial& pm = seq.p[static_cast<std::size_t>(m)];
    Rational pm0 = pm(spectrum[0]);
    if (pm0 == 0) return std::nullopt;
    Rational C = pl(spectrum[0]) / pm0;
    if (sgn(C) <= 0) return std::nullopt;
    for (std::size_t s = 0; s < spectrum.size(); ++s) {
        Integer diff = ns.theta[0] - ns.theta[s];
        int eps = mpz_even_p(diff.get_mpz_t()) ? 1 : -1;
        if (pl(spectrum[s]) != C * pm(spectrum[s]) * eps) return std::nullopt;
    }
    PSTCertificate cert;
    cert.mode = PSTCertificate::Mode::Exact;
    cert.l = l;
    cert.m = m;
    cert.normalized_spectrum = ns.theta;
    cert.C = C;
    cert.time = std::numbers::pi / ns.scale.get_d();
    cert.fidelity = std::abs(transition_amplitude(c, cert.time, l, m));
    return cert;
}

bool admissible_pattern(const SignPattern& sp, int m) {
    if (sp.signs.empty() || sp.signs.size() != sp.spectrum.size()) return false;
    for (int s : sp.signs)
        if (s != 1 && s != -1) return false;
    if (sp.signs.front() != 1) return false;
    int run = 1;
    for (std::size_t i = 1; i < sp.signs.size(); ++i) {
        run = (sp.signs[i] == sp.signs[i - 1]) ? run + 1 : 1;
        if (run > 2) return false;
    }
    return (sp.signs.back() == 1) == (m % 2 == 0);
}

InterpolantResult pst_interpolant(const std::vector<Integer>& spectrum, int m) {
    const int d = static_cast<int>(spectrum.size()) - 1;
    if (d < 0) throw Error("pst_interpolant: empty spectrum");
    for (int s = 0; s < d; ++s)
        if (spectrum[static_cast<std::size_t>(s)] <= spectrum[static_cast<std::size_t>(s) + 1])
            throw DuplicateAbscissa("pst_interpolant: spectrum must be strictly descending");
    if (!(2 * m > d && m <= d)) throw IndexOutOfRange("pst_interpolant: need d/2 < m <= d");

    InterpolantResult out;
    std::vector<std::pair<Rational, Rational>> points;
    for (const auto& th : spectrum) {
        Integer diff = spectrum[0] - th;
        points.emplace_back(Rational(th), Rational(mpz_even_p(diff.get_mpz_t()) ? 1 : -1));
    }
    ExactPolynomial g = lagrange_interpolate(points);
    if (g.degree() != m) {
        out.failure = "interpolant has degree " + std::to_string(g.degree()) +
                      ", expected " + std::to_string(m);
        return out;
    }
    if (sgn(g.lead()) <= 0) {
        out.failure = "interpolant has nonpositive leading coefficient";
        return out;
    }
    ExactPolynomial pm = g / g.lead();
    RootSet rs = isolate_real_roots(pm);
    if (rs.count_with_multiplicity() != m || !rs.all_simple()) {
        out.failure = "candidate is not real-rooted with distinct zeros";
        return out;
    }
    std::vector<Rational> roots;
    for (const auto& th : spectrum) roots.emplace_back(th);
    ExactPolynomial ptop = poly_from_roots(roots);
    if (!strongly_interlaces(pm, ptop)) {
        out.failure = "candidate does not strongly interlace the spectrum polynomial";
        return out;
    }
    out.p_m = pm;
    out.C = 1 / g.lead();
    return out;
}

Chain build_pst_chain(const std::vector<Integer>& spectrum, int m) {
    InterpolantResult r = pst_interpolant(spectrum, m);
    if (!r.p_m) throw InfeasibleSpectrum("no realizable sign interpolant: " + r.failure);
    std::vector<Rational> roots;
    for (const auto& th : spectrum) roots.emplace_back(th);
    BuildCertificate bc = build_ops(*r.p_m, poly_from_roots(roots));
    if (!check_pst(bc.chain, 0, m))
        throw Error("internal: built chain failed its transfer certificate");
    return bc.chain;
}

std::vector<Rational> shrink(const ExactPolynomial& p_m, const std::vector<Rational>& spectrum,
                             int d_target) {
    const int d = static_cast<int>(spectrum.size()) - 1;
    const int m = p_m.degree();
    if (!(m <= d_target && d_target <= d))
        throw IndexOutOfRange("shrink: need m <= d_target <= d");
    int removals = d - d_target;
    if (removals == 0) return spectrum;

    std::vector<Rational> asc(spectrum.rbegin(), spectrum.rend());
    RootSet roots = isolate_real_roots(p_m);
    if (roots.roots.empty()) throw NotEnoughSlack("shrink: p_m has no real zeros");
    Rational below = roots.roots.front().lower() - 1;
    Rational above = roots.roots.back().upper() + 1;

    std::vector<bool> drop(asc.size(), false);
    int j = 0;
    while (j + 1 < static_cast<int>(asc.size()) && removals > 0) {
        const Rational& lo = asc[static_cast<std::size_t>(j)];
        const Rational& hi = asc[static_cast<std::size_t>(j) + 1];
        // a pair with no zero of p_m between it shares one doubly-occupied
        // interval, which must be interior for the removal to be safe
        if (count_roots_in(p_m, lo, hi) == 0 && count_roots_in(p_m, below, lo) > 0 &&
            count_roots_in(p_m, hi, above) > 0) {
            drop[static_cast<std::size_t>(j)] = true;  // the smaller of the pair
            --removals;
            j += 2;
        } else {
            ++j;
        }
    }
    if (removals > 0)
        throw NotEnoughSlack("shrink: not enough doubly-occupied intervals to reach d_target");
    std::vector<Rational> out;
    for (std::size_t i = asc.size(); i-- > 0;)
        if (!drop[i]) out.push_back(asc[i]);
    return out;
}

namespace {

std::vector<std::vector<Integer>> scan_stripe(int d, int bound, long first) {
    std::vector<std::vector<Integer>> hits;
    const int k = d;  // elements above the fixed minimum
    std::vector<long> values;
    for (long v = first + 1; v <= bound; ++v) values.push_back(v);
    if (static_cast<int>(values.size()) < k) return hits;
    const int m = (d + 2) / 2;
    std::vector<int> idx(static_cast<std::size_t>(k));
    for (int i = 0; i < k; ++i) idx[static_cast<std::size_t>(i)] = i;
    while (true) {
        std::vector<Integer> spectrum;  // descending
        for (int i = k - 1; i >= 0; --i)
            spectrum.emplace_back(values[static_cast<std::size_t>(idx[static_cast<std::size_t>(i)])]);
        spectrum.emplace_back(first);
        if (pst_interpolant(spectrum, m).p_m) hits.push_back(std::move(spectrum));
        // next k-combination of indices
        int i = k - 1;
        while (i >= 0 &&
               idx[static_cast<std::size_t>(i)] == static_cast<int>(values.size()) - k + i)
            --i;
        if (i < 0) break;
        ++idx[static_cast<std::size_t>(i)];
        for (int t = i + 1; t < k; ++t)
            idx[static_cast<std::size_t>(t)] = idx[static_cast<std::size_t>(t) - 1] + 1;
    }
    return hits;
}

}  // namespace

std::vector<std::vector<Integer>> scan_no_pst_half(int d, int bound, int workers) {
    if (d < 1 || bound < 0) throw Error("scan_no_pst_half: need d >= 1 and bound >= 0");
    if (workers < 1) workers = 1;
    std::vector<long> stripes;
    for (long v = -bound; v <= bound; ++v) stripes.push_back(v);

    std::vector<std::vector<std::vector<Integer>>> per_stripe(stripes.size());
    if (workers == 1) {
        for (std::size_t i = 0; i < stripes.size(); ++i)
            per_stripe[i] = scan_stripe(d, bound, stripes[i]);
    } else {
        std::vector<std::future<std::vector<std::vector<Integer>>>> futures;
        for (long v : stripes)
            futures.push_back(
                std::async(std::launch::async, [d, bound, v] { return scan_stripe(d, bound, v); }));
        for (std::size_t i = 0; i < stripes.size(); ++i) per_stripe[i] = futures[i].get();
    }

    // deduplicate up to integer translation: key on differences from the top
    std::map<std::vector<Integer>, std::vector<Integer>> canon;
    std::vector<std::vector<Integer>> out;
    for (const auto& stripe : per_stripe)
        for (const auto& spectrum : stripe) {
            std::vector<Integer> key;
            for (const auto& th : spectrum) key.push_back(spectrum[0] - th);
            if (canon.emplace(std::move(key), spectrum).second) out.push_back(spectrum);
        }
    return out;
}

}  // namespace chainforge
