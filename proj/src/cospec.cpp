#include "chainforge/cospec.hpp"

#include <algorithm>
#include <cmath>
#include <functional>

namespace chainforge {

namespace {

// --- small double-polynomial helpers for the numeric construction path ---

using DPoly = std::vector<double>;  // lowest degree first

DPoly dmul_linear(const DPoly& p, double root) {
    DPoly out(p.size() + 1, 0.0);
    for (std::size_t i = 0; i < p.size(); ++i) {
        out[i] -= root * p[i];
        out[i + 1] += p[i];
    }
    return out;
}

double deval(const DPoly& p, double x) {
    double acc = 0.0;
    for (auto it = p.rbegin(); it != p.rend(); ++it) acc = acc * x + *it;
    return acc;
}

DPoly dfrom_roots(const std::vector<double>& roots) {
    DPoly p{1.0};
    for (double r : roots) p = dmul_linear(p, r);
    return p;
}

Rational rational_from_double(double x) {
    Rational q;
    mpq_set_d(q.get_mpq_t(), x);
    return q;
}

// Downward three-term recurrence in doubles; emits a chain with dyadic
// rational entries.
Chain chain_from_top_pair_numeric(DPoly hi, DPoly lo) {
    const int d = static_cast<int>(hi.size()) - 2;
    std::vector<Rational> a(static_cast<std::size_t>(d) + 1);
    std::vector<Rational> lambda_sq(static_cast<std::size_t>(d));
    for (int k = d; k >= 0; --k) {
        // hi (monic, deg k+1) = (x - a_k) lo (monic, deg k) + rem
        double ak = lo.size() >= 2 ? (lo[lo.size() - 2] - hi[hi.size() - 2]) : -hi[0];
        // rem = hi - (x - (-?)) ... compute rem = hi - (x + c) * lo with c = hi[k] - lo[k-1]
        DPoly quot{-ak, 1.0};
        DPoly rem(hi);
        for (std::size_t i = 0; i < lo.size(); ++i) {
            rem[i] -= quot[0] * lo[i];
            rem[i + 1] -= quot[1] * lo[i];
        }
        a[static_cast<std::size_t>(k)] = rational_from_double(ak);
        if (k == 0) break;
        double lsq = -rem[static_cast<std::size_t>(k) - 1];
        if (!(lsq > 0.0))
            throw NonPositiveCoupling("numeric downward recurrence: lambda^2 <= 0");
        lambda_sq[static_cast<std::size_t>(k) - 1] = rational_from_double(lsq);
        DPoly next(static_cast<std::size_t>(k), 0.0);
        for (std::size_t i = 0; i < next.size(); ++i) next[i] = rem[i] / (-lsq);
        next.back() = 1.0;  // keep monic against roundoff
        hi = std::move(lo);
        lo = std::move(next);
    }
    return Chain(std::move(a), std::move(lambda_sq));
}

// Numeric analog of build_ops for a target polynomial given by its roots and
// a spectrum with no common zeros (the level-set construction guarantees
// |p_m| = eps > 0 on the spectrum).
Chain numeric_build_ops(const std::function<double(double)>& pm_eval,
                        const std::vector<double>& pm_roots,
                        const std::vector<double>& spectrum_desc) {
    const int n = static_cast<int>(spectrum_desc.size());
    std::vector<double> qhat_roots;
    for (int s = 0; s + 1 < n; ++s) {
        double hi = spectrum_desc[static_cast<std::size_t>(s)];
        double lo = spectrum_desc[static_cast<std::size_t>(s) + 1];
        bool occupied = false;
        for (double r : pm_roots)
            if (lo < r && r < hi) occupied = true;
        if (!occupied) qhat_roots.push_back((lo + hi) / 2.0);
    }
    auto qhat = dfrom_roots(qhat_roots);
    std::vector<double> raw(static_cast<std::size_t>(n));
    double raw_sum = 0.0;
    for (int s = 0; s < n; ++s) {
        double th = spectrum_desc[static_cast<std::size_t>(s)];
        double prod = 1.0;
        for (int r = 0; r < n; ++r)
            if (r != s) prod *= th - spectrum_desc[static_cast<std::size_t>(r)];
        raw[static_cast<std::size_t>(s)] = pm_eval(th) / deval(qhat, th) / prod;
        raw_sum += raw[static_cast<std::size_t>(s)];
    }
    DPoly q_d(static_cast<std::size_t>(n), 0.0);
    for (int s = 0; s < n; ++s) {
        double tau = raw[static_cast<std::size_t>(s)] / raw_sum;
        if (!(tau > 0.0)) throw Error("numeric build: nonpositive weight");
        std::vector<double> others;
        for (int r = 0; r < n; ++r)
            if (r != s) others.push_back(spectrum_desc[static_cast<std::size_t>(r)]);
        DPoly basis = dfrom_roots(others);
        for (std::size_t i = 0; i < basis.size(); ++i) q_d[i] += tau * basis[i];
    }
    q_d.back() = 1.0;
    DPoly q_top = dfrom_roots(spectrum_desc);
    return chain_from_top_pair_numeric(std::move(q_top), std::move(q_d));
}

}  // namespace

std::optional<CospectralCertificate> is_cospectral(const Chain& c, int l, int m,
                                                   bool require_exact) {
    if (l == m || l < 0 || m < 0 || l > c.d() || m > c.d())
        throw IndexOutOfRange("is_cospectral: need two distinct vertices in range");
    ExactPolynomial dl = vertex_deleted_charpoly(c, {l});
    ExactPolynomial dm = vertex_deleted_charpoly(c, {m});
    if (dl == dm) {
        CospectralCertificate cert;
        cert.mode = CospectralCertificate::Mode::Exact;
        cert.l = l;
        cert.m = m;
        cert.deleted_charpoly = dl;
        // |p_l(theta)| = C |p_m(theta)| with C^2 = prod_{t=l+1}^{m} lambda_t^2.
        Rational csq(1);
        for (int t = std::min(l, m) + 1; t <= std::max(l, m); ++t)
            csq *= c.lambda_sq()[static_cast<std::size_t>(t) - 1];
        cert.c_squared = csq;
        return cert;
    }
    if (require_exact) return std::nullopt;
    SpectralData sd = eigen(c);
    double dev = 0.0;
    for (std::size_t s = 0; s < sd.theta.size(); ++s)
        dev = std::max(dev, std::abs(std::abs(sd.vectors[s][static_cast<std::size_t>(l)]) -
                                     std::abs(sd.vectors[s][static_cast<std::size_t>(m)])));
    if (dev <= kNumericCospectralTol) {
        CospectralCertificate cert;
        cert.mode = CospectralCertificate::Mode::Numeric;
        cert.l = l;
        cert.m = m;
        cert.max_deviation = dev;
        return cert;
    }
    return std::nullopt;
}

bool position_feasible(int l, int m, int d) {
    if (!(0 <= l && l < m && m <= d)) return false;
    return 2 * l < d && d < 2 * m;
}

Chain construct_cospectral_base(int m, int d) {
    if (!(m >= 1 && m <= d && d < 2 * m))
        throw InfeasiblePosition("construct_cospectral_base: need d/2 < m <= d");
    std::vector<Rational> pm_int_roots;
    for (int j = 0; j < m; ++j) pm_int_roots.emplace_back(j);
    ExactPolynomial pm = poly_from_roots(pm_int_roots);
    Rational eps = dyadic_floor_pow2(min_abs_critical_value(pm) / 2);
    ExactPolynomial minus = pm - ExactPolynomial(eps);
    ExactPolynomial plus = pm + ExactPolynomial(eps);
    std::vector<double> rho = isolate_real_roots(minus).witnesses();
    for (double w : isolate_real_roots(plus).witnesses()) rho.push_back(w);
    if (static_cast<int>(rho.size()) != 2 * m)
        throw Error("internal: level sets of p_m are not fully real-rooted");
    std::sort(rho.begin(), rho.end(), std::greater<double>());  // rho_0 largest

    std::vector<double> S{rho.front(), rho.back()};
    for (int i = 2; i <= 2 * m - 2; i += 2) S.push_back(rho[static_cast<std::size_t>(i)]);
    int odd_needed = d - m;
    for (int i = 1; i <= 2 * m - 3 && odd_needed > 0; i += 2, --odd_needed)
        S.push_back(rho[static_cast<std::size_t>(i)]);
    if (odd_needed != 0) throw InfeasiblePosition("not enough free level-set points for d");
    std::sort(S.begin(), S.end(), std::greater<double>());

    std::vector<double> pm_roots;
    for (int j = 0; j < m; ++j) pm_roots.push_back(static_cast<double>(j));
    Chain chain = numeric_build_ops([&pm](double x) { return pm.eval_double(x); }, pm_roots, S);
    if (!is_cospectral(chain, 0, m))
        throw Error("internal: base construction failed its cospectrality certificate");
    return chain;
}

namespace {

struct EndData {
    // lambda_end^2 * p_prev / p_end as pole/residue pairs
    std::vector<Rational> poles;
    std::vector<Rational> residues;
};

// One exact extension step; nullopt when the sub-spectra are irrational.
std::optional<Chain> extend_one_exact(const Chain& c, int l, int m) {
    const int d = c.d();
    OPSequence seq = ops_from_chain(c);
    EndData head, tail;
    try {
        if (l >= 1) {
            ExactPolynomial num = seq.p[static_cast<std::size_t>(l) - 1] *
                                  c.lambda_sq()[static_cast<std::size_t>(l) - 1];
            for (const auto& pr : partial_fractions(num, seq.p[static_cast<std::size_t>(l)])) {
                head.poles.push_back(pr.first);
                head.residues.push_back(pr.second);
            }
        }
        if (m <= d - 1) {
            ExactPolynomial hat = block_charpoly(c, m + 1, d);
            ExactPolynomial hat_minus = block_charpoly(c, m + 2, d);
            ExactPolynomial num = hat_minus * c.lambda_sq()[static_cast<std::size_t>(m)];
            for (const auto& pr : partial_fractions(num, hat)) {
                tail.poles.push_back(pr.first);
                tail.residues.push_back(pr.second);
            }
        }
    } catch (const IrrationalPole&) {
        return std::nullopt;
    }

    Rational u(-1);
    {
        bool have = false;
        Rational mn(0);
        for (const auto& p : head.poles) {
            if (!have || p < mn) mn = p;
            have = true;
        }
        for (const auto& p : tail.poles) {
            if (!have || p < mn) mn = p;
            have = true;
        }
        if (have) {
            Integer f;
            mpz_fdiv_q(f.get_mpz_t(), mn.get_num().get_mpz_t(), mn.get_den().get_mpz_t());
            u = Rational(f - 1);
        }
    }

    auto end_chain = [&u](const EndData& e, const ExactPolynomial& den)
        -> std::pair<Chain, Rational> {
        // N/D = sum mu_s/(x - r_s) + 1/(x - u), D = den * (x - u)
        ExactPolynomial lin_u = ExactPolynomial::linear_root(u);
        ExactPolynomial N = den;  // the 1/(x-u) term
        for (std::size_t s = 0; s < e.poles.size(); ++s)
            N = N + exact_div(den, ExactPolynomial::linear_root(e.poles[s])) * lin_u *
                        e.residues[s];
        Rational lam_sq = N.lead();
        if (sgn(lam_sq) <= 0) throw NonPositiveCoupling("extension: end coupling <= 0");
        ExactPolynomial q_hi = den * lin_u;
        ExactPolynomial q_lo = N / lam_sq;
        return {chain_from_top_pair(q_hi, q_lo), lam_sq};
    };

    ExactPolynomial p_l = seq.p[static_cast<std::size_t>(l)];
    ExactPolynomial hat = block_charpoly(c, m + 1, d);
    auto [head_chain, lam_head] = end_chain(head, p_l);
    auto [tail_chain_rev, lam_tail] = end_chain(tail, hat);
    Chain tail_chain = reflect_chain(tail_chain_rev);

    std::vector<Rational> a;
    std::vector<Rational> lsq;
    a.insert(a.end(), head_chain.a().begin(), head_chain.a().end());
    for (int s = l; s <= m; ++s) a.push_back(c.a()[static_cast<std::size_t>(s)]);
    a.insert(a.end(), tail_chain.a().begin(), tail_chain.a().end());
    lsq.insert(lsq.end(), head_chain.lambda_sq().begin(), head_chain.lambda_sq().end());
    lsq.push_back(lam_head);
    for (int t = l + 1; t <= m; ++t) lsq.push_back(c.lambda_sq()[static_cast<std::size_t>(t) - 1]);
    lsq.push_back(lam_tail);
    lsq.insert(lsq.end(), tail_chain.lambda_sq().begin(), tail_chain.lambda_sq().end());
    return Chain(std::move(a), std::move(lsq));
}

Chain extend_one_numeric(const Chain& c, int l, int m) {
    const int d = c.d();
    OPSequence seq = ops_from_chain(c);
    auto pole_data = [](const ExactPolynomial& num, const ExactPolynomial& den)
        -> std::pair<std::vector<double>, std::vector<double>> {
        std::vector<double> poles = isolate_real_roots(den).witnesses();
        ExactPolynomial dden = den.derivative();
        std::vector<double> res;
        for (double r : poles) res.push_back(num.eval_double(r) / dden.eval_double(r));
        return {poles, res};
    };

    std::vector<double> hp, hr, tp, tr;
    if (l >= 1) {
        auto [p, r] = pole_data(seq.p[static_cast<std::size_t>(l) - 1] *
                                    c.lambda_sq()[static_cast<std::size_t>(l) - 1],
                                seq.p[static_cast<std::size_t>(l)]);
        hp = p;
        hr = r;
    }
    ExactPolynomial hat = block_charpoly(c, m + 1, d);
    if (m <= d - 1) {
        auto [p, r] = pole_data(block_charpoly(c, m + 2, d) *
                                    c.lambda_sq()[static_cast<std::size_t>(m)],
                                hat);
        tp = p;
        tr = r;
    }
    double u = -1.0;
    {
        double mn = 0.0;
        bool have = false;
        for (double p : hp) {
            if (!have || p < mn) mn = p;
            have = true;
        }
        for (double p : tp) {
            if (!have || p < mn) mn = p;
            have = true;
        }
        if (have) u = std::floor(mn) - 1.0;
    }

    auto end_chain = [&u](const std::vector<double>& poles, const std::vector<double>& res)
        -> std::pair<Chain, double> {
        DPoly den = dfrom_roots(poles);
        DPoly N = den;
        for (std::size_t s = 0; s < poles.size(); ++s) {
            std::vector<double> others;
            for (std::size_t r = 0; r < poles.size(); ++r)
                if (r != s) others.push_back(poles[r]);
            DPoly basis = dmul_linear(dfrom_roots(others), u);
            for (std::size_t i = 0; i < basis.size(); ++i)
                if (i < N.size()) N[i] += res[s] * basis[i];
        }
        double lam_sq = N.back();
        if (!(lam_sq > 0.0)) throw NonPositiveCoupling("numeric extension: end coupling <= 0");
        DPoly q_hi = dmul_linear(den, u);
        DPoly q_lo(N);
        for (auto& x : q_lo) x /= lam_sq;
        q_lo.back() = 1.0;
        return {chain_from_top_pair_numeric(std::move(q_hi), std::move(q_lo)), lam_sq};
    };

    auto [head_chain, lam_head] = end_chain(hp, hr);
    auto [tail_chain_rev, lam_tail] = end_chain(tp, tr);
    Chain tail_chain = reflect_chain(tail_chain_rev);

    std::vector<Rational> a;
    std::vector<Rational> lsq;
    a.insert(a.end(), head_chain.a().begin(), head_chain.a().end());
    for (int s = l; s <= m; ++s) a.push_back(c.a()[static_cast<std::size_t>(s)]);
    a.insert(a.end(), tail_chain.a().begin(), tail_chain.a().end());
    lsq.insert(lsq.end(), head_chain.lambda_sq().begin(), head_chain.lambda_sq().end());
    lsq.push_back(rational_from_double(lam_head));
    for (int t = l + 1; t <= m; ++t) lsq.push_back(c.lambda_sq()[static_cast<std::size_t>(t) - 1]);
    lsq.push_back(rational_from_double(lam_tail));
    lsq.insert(lsq.end(), tail_chain.lambda_sq().begin(), tail_chain.lambda_sq().end());
    return Chain(std::move(a), std::move(lsq));
}

}  // namespace

Chain extend_cospectral(const Chain& c, int l, int m, int k) {
    if (k < 0) throw Error("extend_cospectral: negative step count");
    if (!is_cospectral(c, l, m))
        throw NotCospectralInput("extend_cospectral: input pair is not cospectral");
    Chain cur = c;
    for (int step = 0; step < k; ++step) {
        std::optional<Chain> next = extend_one_exact(cur, l, m);
        cur = next ? *next : extend_one_numeric(cur, l, m);
        ++l;
        ++m;
        if (!is_cospectral(cur, l, m))
            throw Error("internal: extension step lost cospectrality");
    }
    return cur;
}

Chain construct_cospectral(int l, int m, int d) {
    if (!position_feasible(l, m, d))
        throw InfeasiblePosition("construct_cospectral: need l < d/2 < m");
    const int l0 = l, m0 = m;
    bool reflected = false;
    if (l + m > d) {
        // Work with the mirror pair, which satisfies l + m <= d.
        int nl = d - m, nm = d - l;
        l = nl;
        m = nm;
        reflected = true;
    }
    Chain base = construct_cospectral_base(m - l, d - 2 * l);
    Chain out = l > 0 ? extend_cospectral(base, 0, m - l, l) : base;
    if (reflected) out = reflect_chain(out);
    if (!is_cospectral(out, l0, m0))
        throw Error("internal: constructed chain failed its cospectrality certificate");
    return out;
}

}  // namespace chainforge
