#ifndef CHAINFORGE_COSPEC_HPP
#define CHAINFORGE_COSPEC_HPP

#include <optional>

#include "chainforge/chain.hpp"

namespace chainforge {

struct InfeasiblePosition : Error {
    using Error::Error;
};
struct NotCospectralInput : Error {
    using Error::Error;
};

struct CospectralCertificate {
    enum class Mode { Exact, Numeric };
    Mode mode;
    int l = 0, m = 0;
    // Exact mode: the common vertex-deleted characteristic polynomial and the
    // squared constant relating |p_l| and |p_m| on the spectrum.
    ExactPolynomial deleted_charpoly;
    Rational c_squared;
    // Numeric mode: max_s | |<theta_s|l>| - |<theta_s|m>| |.
    double max_deviation = 0.0;
};

inline constexpr double kNumericCospectralTol = 1e-8;

// Empty optional means certified not cospectral (a value, not an error).
std::optional<CospectralCertificate> is_cospectral(const Chain& c, int l, int m,
                                                   bool require_exact = false);

// Positions can host a cospectral pair iff l < d/2 < m.
bool position_feasible(int l, int m, int d);

// A d-chain in which 0 and m are cospectral (numeric certificate; the
// construction runs through irrational level sets of p_m).
Chain construct_cospectral_base(int m, int d);

// k applications of the one-step alpha-function extension; exact when the
// relevant sub-spectra are rational, numeric otherwise.
Chain extend_cospectral(const Chain& c, int l, int m, int k);

// Driver: reflect / base-construct / extend to hit any feasible (l, m, d).
Chain construct_cospectral(int l, int m, int d);

}  // namespace chainforge

#endif
