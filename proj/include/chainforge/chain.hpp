#ifndef CHAINFORGE_CHAIN_HPP
#define CHAINFORGE_CHAIN_HPP

#include <complex>
#include <vector>

#include "chainforge/poly.hpp"
#include "chainforge/roots.hpp"

namespace chainforge {

struct IndexOutOfRange : Error {
    using Error::Error;
};
struct NonPositiveCoupling : Error {
    using Error::Error;
};
struct DegreeDrop : Error {
    using Error::Error;
};
struct IrrationalSpectrum : Error {
    using Error::Error;
};

// Weighted linear chain on d+1 sites: diagonal a_0..a_d and squared couplings
// lambda_1^2..lambda_d^2, all positive. Couplings are stored squared; the
// constructions determine them rationally while lambda itself is typically
// irrational.
class Chain {
   public:
    Chain(std::vector<Rational> a, std::vector<Rational> lambda_sq);

    int d() const { return static_cast<int>(a_.size()) - 1; }
    int sites() const { return static_cast<int>(a_.size()); }
    const std::vector<Rational>& a() const { return a_; }
    const std::vector<Rational>& lambda_sq() const { return lambda_sq_; }
    std::vector<double> lambda() const;  // sqrt of lambda_sq, as doubles

    bool operator==(const Chain& o) const {
        return a_ == o.a_ && lambda_sq_ == o.lambda_sq_;
    }

   private:
    std::vector<Rational> a_;
    std::vector<Rational> lambda_sq_;
};

// p_0 = 1, ..., p_{d+1}; p_k is the charpoly of the leading k x k block.
struct OPSequence {
    std::vector<ExactPolynomial> p;
    const ExactPolynomial& top() const { return p.back(); }
};

OPSequence ops_from_chain(const Chain& c);

// Charpoly of the contiguous principal block [i, j] (1 when empty).
ExactPolynomial block_charpoly(const Chain& c, int i, int j);

// hat = charpoly of the trailing (d-m) block; bar = charpoly of the block
// strictly between m and d (zero polynomial when m = d), chosen so the
// Christoffel-Darboux identity holds as an exact polynomial identity.
std::pair<ExactPolynomial, ExactPolynomial> subchain_polys(const Chain& c, int m);

// hat * p_d - bar * p_{d+1} == (prod_{t=m+1}^{d} lambda_t^2) * p_m, exactly.
bool cd_identity_check(const Chain& c, int m);

struct SpectralData {
    // Descending: eigenvalues[0] is theta_0, the largest.
    std::vector<RealRoot> eigenvalues;
    std::vector<double> theta;                // double witnesses, descending
    std::vector<std::vector<double>> vectors; // vectors[s] = unit eigenvector for theta[s]

    bool all_rational() const {
        for (const auto& e : eigenvalues)
            if (!e.exact) return false;
        return true;
    }
    // Descending rational eigenvalues; throws IrrationalSpectrum otherwise.
    std::vector<Rational> rational_spectrum() const;
};

// Exact-first eigensolver: rational eigenvalues recognized exactly, the rest
// isolated by Sturm bisection; eigenvectors from the p_k(theta)/lambda-product
// formula, normalized.
SpectralData eigen(const Chain& c);

// <to| exp(i t J) |from>
std::complex<double> transition_amplitude(const Chain& c, double t, int from, int to);
std::complex<double> transition_amplitude(const SpectralData& sd, double t, int from, int to);

// Rational function stored coprime with monic denominator.
struct RationalFn {
    ExactPolynomial num, den;
    bool operator==(const RationalFn& o) const { return num == o.num && den == o.den; }
};

// alpha_v = phi^P / phi^{P minus v} with phi^{P minus v} = p_v * hat_{d-v}.
RationalFn alpha(const Chain& c, int v);

// Downward three-term recurrence: recovers the unique chain whose OPS has the
// given p_{d+1} and p_d. Throws NonPositiveCoupling / DegreeDrop when the pair
// is not realizable.
Chain chain_from_top_pair(const ExactPolynomial& p_top, const ExactPolynomial& p_next);

Chain reflect_chain(const Chain& c);

// Product of block charpolys after deleting the given vertices.
ExactPolynomial vertex_deleted_charpoly(const Chain& c, std::vector<int> deleted);

}  // namespace chainforge

#endif
