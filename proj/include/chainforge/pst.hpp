#ifndef CHAINFORGE_PST_HPP
#define CHAINFORGE_PST_HPP

#include <optional>
#include <string>
#include <vector>

#include "chainforge/chain.hpp"
#include "chainforge/opsbuild.hpp"

namespace chainforge {

struct NotEnoughSlack : Error {
    using Error::Error;
};
struct InfeasibleSpectrum : Error {
    using Error::Error;
};

// Signs of p_m along a descending spectrum: +1 on S_+, -1 on S_-.
struct SignPattern {
    std::vector<Rational> spectrum;  // theta_0 > ... > theta_d
    std::vector<int> signs;          // entries in {+1, -1}
};

// Canonical affine form of a rational spectrum: original = shift + scale * n
// with n descending coprime integers and n_d = 0.
struct NormalizedSpectrum {
    std::vector<Integer> theta;
    Rational shift;
    Rational scale;
};

NormalizedSpectrum normalize_spectrum(const std::vector<Rational>& descending);

// A vertex returns to itself under the walk iff its support eigenvalues are
// commensurable; rational support always qualifies, irrational support is out
// of scope and raises IrrationalSpectrum.
bool is_periodic(const Chain& c, int v);

struct PSTCertificate {
    enum class Mode { Exact, Numeric };
    Mode mode;
    int l = 0, m = 0;
    // Exact mode: normalized integer spectrum and the constant of the sign
    // condition p_l(theta_s) = (-1)^(n_0 - n_s) * C * p_m(theta_s).
    std::vector<Integer> normalized_spectrum;
    Rational C;
    double time = 0.0;  // transfer time in the chain's own units
    double fidelity = 0.0;
};

// Empty optional = checked and no perfect state transfer. Rational spectra
// are certified exactly; irrational spectra fall back to a numeric fidelity
// search reported as evidence only.
std::optional<PSTCertificate> check_pst(const Chain& c, int l, int m);

// Necessary shape of a realizable sign pattern: alternating sign blocks of
// length one or two, +1 at the top, and the bottom sign fixed by the parity
// of m.
bool admissible_pattern(const SignPattern& sp, int m);

struct InterpolantResult {
    std::optional<ExactPolynomial> p_m;
    Rational C;
    std::string failure;  // set when p_m is absent
};

// The unique monic candidate taking values (-1)^(theta_0 - theta_s) * C on a
// distinct integer spectrum, when one of degree m exists.
InterpolantResult pst_interpolant(const std::vector<Integer>& spectrum, int m);

// Interpolate, realize via the OPS construction, and certify transfer (0, m).
Chain build_pst_chain(const std::vector<Integer>& spectrum, int m);

// Removes d - d_target eigenvalues, one per doubly-occupied interval between
// consecutive zeros of p_m (leftmost intervals first, smaller eigenvalue
// dropped), preserving strong interlacing and the sign condition.
std::vector<Rational> shrink(const ExactPolynomial& p_m, const std::vector<Rational>& spectrum,
                             int d_target);

// All (d+1)-subsets of [-bound, bound] admitting a feasible interpolant at
// the half position m = ceil((d+1)/2), deduplicated up to integer
// translation. Expected empty for d >= 4.
std::vector<std::vector<Integer>> scan_no_pst_half(int d, int bound, int workers = 1);

}  // namespace chainforge

#endif
