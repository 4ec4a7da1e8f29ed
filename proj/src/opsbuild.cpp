#include "chainforge/opsbuild.hpp"

#include <algorithm>

namespace chainforge {

std::vector<Rational> exact_spectrum(const ExactPolynomial& q_top) {
    RootSet rs = isolate_real_roots(q_top);
    if (rs.count_with_multiplicity() != q_top.degree() || !rs.all_simple())
        throw InterlacingViolation("top polynomial must have distinct real zeros");
    if (!rs.all_rational())
        throw IrrationalSpectrum(
            "exact construction requires rational zeros of the top polynomial; "
            "rationalize the spectrum or use the numeric path");
    std::vector<Rational> spectrum;
    for (auto it = rs.roots.rbegin(); it != rs.roots.rend(); ++it) spectrum.push_back(it->value);
    return spectrum;
}

std::vector<int> common_zeros(const ExactPolynomial& q_m, const ExactPolynomial& q_top) {
    std::vector<Rational> spectrum = exact_spectrum(q_top);
    std::vector<int> J;
    for (std::size_t s = 0; s < spectrum.size(); ++s)
        if (q_m(spectrum[s]) == 0) J.push_back(static_cast<int>(s));
    return J;
}

namespace {

// Descending-order gaps [theta_{s+1}, theta_s] with no zero of q_m, as pairs
// of indices (s+1, s).
std::vector<int> empty_gaps(const ExactPolynomial& q_m, const std::vector<Rational>& spectrum) {
    std::vector<int> gaps;
    for (std::size_t s = 0; s + 1 < spectrum.size(); ++s) {
        const Rational& hi = spectrum[s];
        const Rational& lo = spectrum[s + 1];
        if (q_m(hi) == 0 || q_m(lo) == 0) continue;
        if (q_m.degree() >= 1 && count_roots_in(q_m, lo, hi) > 0) continue;
        gaps.push_back(static_cast<int>(s));
    }
    return gaps;
}

}  // namespace

ExactPolynomial build_q_hat(const ExactPolynomial& q_m, const ExactPolynomial& q_top,
                            const BuildOptions& opts) {
    if (!strongly_interlaces(q_m, q_top))
        throw InterlacingViolation("q_m and q_top do not strongly interlace");
    std::vector<Rational> spectrum = exact_spectrum(q_top);
    std::vector<int> J = common_zeros(q_m, q_top);
    const int d = q_top.degree() - 1;
    const int m = q_m.degree();
    std::vector<int> gaps = empty_gaps(q_m, spectrum);
    if (static_cast<int>(gaps.size()) != d - m - static_cast<int>(J.size()))
        throw InterlacingViolation("unexpected number of empty spectral gaps");

    std::vector<Rational> mus;
    if (opts.mu) {
        if (opts.mu->size() != gaps.size())
            throw Error("build_q_hat: expected " + std::to_string(gaps.size()) +
                        " free abscissae");
        for (std::size_t i = 0; i < gaps.size(); ++i) {
            const Rational& hi = spectrum[static_cast<std::size_t>(gaps[i])];
            const Rational& lo = spectrum[static_cast<std::size_t>(gaps[i]) + 1];
            const Rational& mu = (*opts.mu)[i];
            if (!(lo < mu && mu < hi))
                throw Error("build_q_hat: supplied abscissa " + rational_to_string(mu) +
                            " is outside its gap interior");
            mus.push_back(mu);
        }
    } else {
        for (int g : gaps)
            mus.push_back((spectrum[static_cast<std::size_t>(g)] +
                           spectrum[static_cast<std::size_t>(g) + 1]) /
                          2);
    }
    ExactPolynomial q_hat = ExactPolynomial::one();
    for (const auto& mu : mus) q_hat = q_hat * ExactPolynomial::linear_root(mu);
    for (int s : J) q_hat = q_hat * ExactPolynomial::linear_root(spectrum[static_cast<std::size_t>(s)]);
    return q_hat;
}

Weights choose_weights(const ExactPolynomial& q_m, const ExactPolynomial& q_hat,
                       const std::vector<Rational>& spectrum, const BuildOptions& opts) {
    const int n = static_cast<int>(spectrum.size());
    const int d = n - 1;
    std::vector<int> J;
    for (int s = 0; s < n; ++s)
        if (q_m(spectrum[static_cast<std::size_t>(s)]) == 0) J.push_back(s);

    // raw_s = (q_m / q_hat)(theta_s) / prod_{r != s}(theta_s - theta_r), with
    // the shared linear factor cancelled on J.
    std::vector<Rational> raw(static_cast<std::size_t>(n));
    for (int s = 0; s < n; ++s) {
        const Rational& th = spectrum[static_cast<std::size_t>(s)];
        Rational num, den;
        if (q_m(th) == 0) {
            ExactPolynomial lin = ExactPolynomial::linear_root(th);
            num = exact_div(q_m, lin)(th);
            den = exact_div(q_hat, lin)(th);
        } else {
            num = q_m(th);
            den = q_hat(th);
        }
        Rational prod(1);
        for (int r = 0; r < n; ++r)
            if (r != s) prod *= th - spectrum[static_cast<std::size_t>(r)];
        raw[static_cast<std::size_t>(s)] = num / (den * prod);
    }

    Weights w;
    w.rho.assign(static_cast<std::size_t>(n), Rational(0));
    Rational raw_sum(0);
    for (const auto& r : raw) raw_sum += r;

    if (J.empty()) {
        for (const auto& r : raw)
            if (sgn(r) <= 0)
                throw InterlacingViolation("nonpositive weight term outside the common-zero set");
        w.scale = 1 / raw_sum;
    } else {
        if (opts.lambda_cap) {
            if (sgn(*opts.lambda_cap) <= 0) throw Error("lambda cap must be positive");
            w.scale = *opts.lambda_cap;
        } else {
            Rational cap(1, 2 * (d + 1));
            Rational max_abs(0);
            for (const auto& r : raw) max_abs = std::max(max_abs, rational_abs(r));
            // largest power of 1/2 with |raw_s| * scale < cap for all s
            w.scale = Rational(1);
            if (max_abs > 0)
                while (max_abs * w.scale >= cap) w.scale /= 2;
        }
        if (opts.rho) {
            if (opts.rho->size() != J.size())
                throw Error("choose_weights: expected one rho per common zero");
            for (std::size_t i = 0; i < J.size(); ++i) {
                if (sgn((*opts.rho)[i]) <= 0) throw Error("supplied rho must be positive");
                w.rho[static_cast<std::size_t>(J[i])] = (*opts.rho)[i];
            }
            // rescale so the total still sums to 1: adjust scale is not
            // possible here, so require the supplied rho to satisfy the sum
            Rational total = w.scale * raw_sum;
            for (std::size_t i = 0; i < J.size(); ++i) total += (*opts.rho)[i];
            if (total != 1) throw Error("supplied rho do not normalize the weights to 1");
        } else {
            Rational uniform = (1 - w.scale * raw_sum) / Rational(static_cast<long>(J.size()));
            for (int s : J) w.rho[static_cast<std::size_t>(s)] = uniform;
        }
    }

    w.tau.resize(static_cast<std::size_t>(n));
    Rational tau_sum(0);
    for (int s = 0; s < n; ++s) {
        w.tau[static_cast<std::size_t>(s)] =
            raw[static_cast<std::size_t>(s)] * w.scale + w.rho[static_cast<std::size_t>(s)];
        if (sgn(w.tau[static_cast<std::size_t>(s)]) <= 0)
            throw InterlacingViolation("nonpositive tau weight");
        tau_sum += w.tau[static_cast<std::size_t>(s)];
    }
    if (tau_sum != 1) throw Error("internal: tau weights do not sum to 1");
    return w;
}

BuildCertificate build_ops(const ExactPolynomial& q_m, const ExactPolynomial& q_top,
                           const BuildOptions& opts) {
    if (q_top.degree() < 1 || !q_top.is_monic())
        throw Error("build_ops: q_top must be monic of degree >= 1");
    if (q_m.is_zero() || !q_m.is_monic()) throw Error("build_ops: q_m must be monic");
    const int m = q_m.degree();
    const int d = q_top.degree() - 1;
    if (m > d) throw DegreeOrder("build_ops: need deg(q_m) < deg(q_top)");
    {
        RootSet rs = isolate_real_roots(q_m);
        if (m >= 1 && (rs.count_with_multiplicity() != m || !rs.all_simple()))
            throw InterlacingViolation("q_m must have distinct real zeros");
    }
    std::vector<Rational> spectrum = exact_spectrum(q_top);
    if (!strongly_interlaces(q_m, q_top))
        throw InterlacingViolation("q_m and q_top do not strongly interlace");

    if (m == d) {
        // Adjacent degrees: the classical completion is the downward
        // recurrence itself, no free weights.
        Chain chain = chain_from_top_pair(q_top, q_m);
        BuildCertificate cert{q_m,
                              q_top,
                              ExactPolynomial::one(),
                              Rational(1),
                              std::vector<Rational>(spectrum.size(), Rational(0)),
                              {},
                              q_m,
                              chain};
        for (const auto& pr : partial_fractions(q_m, q_top)) cert.tau.push_back(pr.second);
        return cert;
    }

    ExactPolynomial q_hat = build_q_hat(q_m, q_top, opts);
    Weights w = choose_weights(q_m, q_hat, spectrum, opts);

    // q_d = sum tau_s * prod_{r != s}(x - theta_r): monic since the tau sum to 1.
    ExactPolynomial q_d;
    for (std::size_t s = 0; s < spectrum.size(); ++s) {
        ExactPolynomial basis = ExactPolynomial::one();
        for (std::size_t r = 0; r < spectrum.size(); ++r)
            if (r != s) basis = basis * ExactPolynomial::linear_root(spectrum[r]);
        q_d = q_d + basis * w.tau[s];
    }

    Chain chain = chain_from_top_pair(q_top, q_d);
    OPSequence seq = ops_from_chain(chain);
    if (!(seq.p[static_cast<std::size_t>(m)] == q_m) || !(seq.top() == q_top))
        throw Error("internal: re-expanded OPS does not reproduce the inputs");
    return BuildCertificate{q_m, q_top, q_hat, w.scale, w.rho, w.tau, q_d, chain};
}

}  // namespace chainforge
