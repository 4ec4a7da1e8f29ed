#include "chainforge/chain.hpp"

#include <algorithm>
#include <cmath>

namespace chainforge {

Chain::Chain(std::vector<Rational> a, std::vector<Rational> lambda_sq)
    : a_(std::move(a)), lambda_sq_(std::move(lambda_sq)) {
    if (a_.empty()) throw Error("chain needs at least one site");
    if (a_.size() != lambda_sq_.size() + 1)
        throw Error("chain size mismatch: need |a| = |lambda_sq| + 1");
    for (const auto& l : lambda_sq_)
        if (sgn(l) <= 0) throw NonPositiveCoupling("coupling lambda^2 must be positive");
}

std::vector<double> Chain::lambda() const {
    std::vector<double> out;
    out.reserve(lambda_sq_.size());
    for (const auto& l : lambda_sq_) out.push_back(std::sqrt(l.get_d()));
    return out;
}

OPSequence ops_from_chain(const Chain& c) {
    OPSequence seq;
    const int d = c.d();
    seq.p.resize(static_cast<std::size_t>(d) + 2);
    seq.p[0] = ExactPolynomial::one();
    seq.p[1] = ExactPolynomial::linear_root(c.a()[0]);
    for (int k = 1; k <= d; ++k) {
        seq.p[static_cast<std::size_t>(k) + 1] =
            ExactPolynomial::linear_root(c.a()[static_cast<std::size_t>(k)]) *
                seq.p[static_cast<std::size_t>(k)] -
            seq.p[static_cast<std::size_t>(k) - 1] *
                c.lambda_sq()[static_cast<std::size_t>(k) - 1];
    }
    return seq;
}

ExactPolynomial block_charpoly(const Chain& c, int i, int j) {
    if (i > j) return ExactPolynomial::one();
    if (i < 0 || j > c.d()) throw IndexOutOfRange("block_charpoly: block out of range");
    ExactPolynomial prev = ExactPolynomial::one();
    ExactPolynomial cur = ExactPolynomial::linear_root(c.a()[static_cast<std::size_t>(i)]);
    for (int k = i + 1; k <= j; ++k) {
        ExactPolynomial next =
            ExactPolynomial::linear_root(c.a()[static_cast<std::size_t>(k)]) * cur -
            prev * c.lambda_sq()[static_cast<std::size_t>(k) - 1];
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

std::pair<ExactPolynomial, ExactPolynomial> subchain_polys(const Chain& c, int m) {
    const int d = c.d();
    if (m < 0 || m > d) throw IndexOutOfRange("subchain_polys: m out of range");
    ExactPolynomial hat = block_charpoly(c, m + 1, d);
    ExactPolynomial bar = (m == d) ? ExactPolynomial::zero() : block_charpoly(c, m + 1, d - 1);
    return {hat, bar};
}

bool cd_identity_check(const Chain& c, int m) {
    const int d = c.d();
    if (m < 0 || m > d) throw IndexOutOfRange("cd_identity_check: m out of range");
    OPSequence seq = ops_from_chain(c);
    auto [hat, bar] = subchain_polys(c, m);
    Rational prod(1);
    for (int t = m + 1; t <= d; ++t) prod *= c.lambda_sq()[static_cast<std::size_t>(t) - 1];
    ExactPolynomial lhs = hat * seq.p[static_cast<std::size_t>(d)] -
                          bar * seq.p[static_cast<std::size_t>(d) + 1];
    return lhs == seq.p[static_cast<std::size_t>(m)] * prod;
}

std::vector<Rational> SpectralData::rational_spectrum() const {
    std::vector<Rational> out;
    for (const auto& e : eigenvalues) {
        if (!e.exact) throw IrrationalSpectrum("spectrum has irrational eigenvalues");
        out.push_back(e.value);
    }
    return out;
}

SpectralData eigen(const Chain& c) {
    OPSequence seq = ops_from_chain(c);
    RootSet rs = isolate_real_roots(seq.top());
    SpectralData sd;
    // descending order
    for (auto it = rs.roots.rbegin(); it != rs.roots.rend(); ++it) sd.eigenvalues.push_back(*it);
    const int n = c.sites();
    std::vector<double> lam = c.lambda();
    for (const auto& e : sd.eigenvalues) {
        double th = e.exact ? e.value.get_d() : e.witness;
        sd.theta.push_back(th);
        std::vector<double> v(static_cast<std::size_t>(n));
        double denom = 1.0;
        double norm2 = 0.0;
        for (int k = 0; k < n; ++k) {
            if (k > 0) denom *= lam[static_cast<std::size_t>(k) - 1];
            v[static_cast<std::size_t>(k)] =
                seq.p[static_cast<std::size_t>(k)].eval_double(th) / denom;
            norm2 += v[static_cast<std::size_t>(k)] * v[static_cast<std::size_t>(k)];
        }
        double norm = std::sqrt(norm2);
        for (auto& x : v) x /= norm;
        sd.vectors.push_back(std::move(v));
    }
    return sd;
}

std::complex<double> transition_amplitude(const SpectralData& sd, double t, int from, int to) {
    std::complex<double> acc(0.0, 0.0);
    for (std::size_t s = 0; s < sd.theta.size(); ++s) {
        std::complex<double> phase(std::cos(t * sd.theta[s]), std::sin(t * sd.theta[s]));
        acc += phase * sd.vectors[s][static_cast<std::size_t>(to)] *
               sd.vectors[s][static_cast<std::size_t>(from)];
    }
    return acc;
}

std::complex<double> transition_amplitude(const Chain& c, double t, int from, int to) {
    if (from < 0 || from > c.d() || to < 0 || to > c.d())
        throw IndexOutOfRange("transition_amplitude: vertex out of range");
    return transition_amplitude(eigen(c), t, from, to);
}

RationalFn alpha(const Chain& c, int v) {
    if (v < 0 || v > c.d()) throw IndexOutOfRange("alpha: vertex out of range");
    OPSequence seq = ops_from_chain(c);
    ExactPolynomial num = seq.top();
    ExactPolynomial den = seq.p[static_cast<std::size_t>(v)] * block_charpoly(c, v + 1, c.d());
    ExactPolynomial g = poly_gcd(num, den);
    if (g.degree() >= 1) {
        num = exact_div(num, g);
        den = exact_div(den, g);
    }
    return {num, den};
}

Chain chain_from_top_pair(const ExactPolynomial& p_top, const ExactPolynomial& p_next) {
    if (!p_top.is_monic() || !p_next.is_monic())
        throw Error("chain_from_top_pair: inputs must be monic");
    if (p_top.degree() != p_next.degree() + 1)
        throw DegreeOrder("chain_from_top_pair: degrees must be adjacent");
    const int d = p_top.degree() - 1;
    std::vector<Rational> a(static_cast<std::size_t>(d) + 1);
    std::vector<Rational> lambda_sq(static_cast<std::size_t>(d));
    ExactPolynomial hi = p_top, lo = p_next;
    for (int k = d; k >= 0; --k) {
        auto [quot, rem] = divrem(hi, lo);
        if (quot.degree() != 1 || quot.coeff(1) != 1)
            throw DegreeDrop("chain_from_top_pair: quotient is not x - a_k");
        a[static_cast<std::size_t>(k)] = -quot.coeff(0);
        if (k == 0) {
            if (!rem.is_zero())
                throw DegreeDrop("chain_from_top_pair: nonzero remainder at the bottom");
            break;
        }
        if (rem.degree() != k - 1)
            throw DegreeDrop("chain_from_top_pair: remainder degree mismatch");
        Rational lsq = -rem.lead();
        if (sgn(lsq) <= 0)
            throw NonPositiveCoupling(
                "chain_from_top_pair: extracted lambda^2 <= 0 (inputs do not interlace)");
        lambda_sq[static_cast<std::size_t>(k) - 1] = lsq;
        ExactPolynomial next_lo = rem / (-lsq);
        hi = std::move(lo);
        lo = std::move(next_lo);
    }
    return Chain(std::move(a), std::move(lambda_sq));
}

Chain reflect_chain(const Chain& c) {
    std::vector<Rational> a(c.a().rbegin(), c.a().rend());
    std::vector<Rational> l(c.lambda_sq().rbegin(), c.lambda_sq().rend());
    return Chain(std::move(a), std::move(l));
}

ExactPolynomial vertex_deleted_charpoly(const Chain& c, std::vector<int> deleted) {
    std::sort(deleted.begin(), deleted.end());
    deleted.erase(std::unique(deleted.begin(), deleted.end()), deleted.end());
    for (int v : deleted)
        if (v < 0 || v > c.d()) throw IndexOutOfRange("vertex_deleted_charpoly: vertex out of range");
    ExactPolynomial out = ExactPolynomial::one();
    int start = 0;
    for (int v : deleted) {
        out = out * block_charpoly(c, start, v - 1);
        start = v + 1;
    }
    out = out * block_charpoly(c, start, c.d());
    return out;
}

}  // namespace chainforge
