#ifndef CHAINFORGE_OPSBUILD_HPP
#define CHAINFORGE_OPSBUILD_HPP

#include <optional>
#include <vector>

#include "chainforge/chain.hpp"
#include "chainforge/poly.hpp"

namespace chainforge {

struct InterlacingViolation : Error {
    using Error::Error;
};

struct BuildOptions {
    // Free abscissae for the empty spectral gaps, one per gap in descending
    // gap order; midpoints when absent.
    std::optional<std::vector<Rational>> mu;
    // Positive weights on the common-zero index set J; the uniform
    // deficit-split when absent.
    std::optional<std::vector<Rational>> rho;
    // Override for the small positive scale used when J is nonempty.
    std::optional<Rational> lambda_cap;
};

struct BuildCertificate {
    ExactPolynomial q_m, q_top;
    ExactPolynomial q_hat;
    Rational scale;               // Lambda
    std::vector<Rational> rho;    // per eigenvalue, descending
    std::vector<Rational> tau;    // per eigenvalue, descending; positive, sums to 1
    ExactPolynomial q_d;
    Chain chain;
};

// Descending distinct rational roots of q_top; throws IrrationalSpectrum with
// guidance when the exact path does not apply.
std::vector<Rational> exact_spectrum(const ExactPolynomial& q_top);

// Indices s (into the descending spectrum) where q_m vanishes.
std::vector<int> common_zeros(const ExactPolynomial& q_m, const ExactPolynomial& q_top);

ExactPolynomial build_q_hat(const ExactPolynomial& q_m, const ExactPolynomial& q_top,
                            const BuildOptions& opts = {});

struct Weights {
    Rational scale;
    std::vector<Rational> rho;
    std::vector<Rational> tau;
};

Weights choose_weights(const ExactPolynomial& q_m, const ExactPolynomial& q_hat,
                       const std::vector<Rational>& spectrum,
                       const BuildOptions& opts = {});

// A chain whose OPS contains q_m at index m and q_top at index d+1
// exists iff the pair strongly interlaces; this constructs one and certifies
// it by exact re-expansion.
BuildCertificate build_ops(const ExactPolynomial& q_m, const ExactPolynomial& q_top,
                           const BuildOptions& opts = {});

}  // namespace chainforge

#endif
