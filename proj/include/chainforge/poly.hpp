#ifndef CHAINFORGE_POLY_HPP
#define CHAINFORGE_POLY_HPP

#include <initializer_list>
#include <string>
#include <utility>
#include <vector>

#include "chainforge/rational.hpp"

namespace chainforge {

struct NonRealRoots : Error {
    using Error::Error;
};
struct DegreeOrder : Error {
    using Error::Error;
};
struct DuplicateAbscissa : Error {
    using Error::Error;
};
struct RepeatedPole : Error {
    using Error::Error;
};
struct IrrationalPole : Error {
    using Error::Error;
};

// Dense univariate polynomial over Q, coefficients lowest degree first.
// The zero polynomial has an empty coefficient vector and degree -1.
class ExactPolynomial {
   public:
    ExactPolynomial() = default;
    ExactPolynomial(std::initializer_list<Rational> cs) : coeffs_(cs) { normalize(); }
    explicit ExactPolynomial(std::vector<Rational> cs) : coeffs_(std::move(cs)) { normalize(); }
    explicit ExactPolynomial(const Rational& c) : coeffs_{c} { normalize(); }

    static ExactPolynomial zero() { return ExactPolynomial(); }
    static ExactPolynomial one() { return ExactPolynomial(Rational(1)); }
    // x - r
    static ExactPolynomial linear_root(const Rational& r) {
        return ExactPolynomial{-r, Rational(1)};
    }

    bool is_zero() const { return coeffs_.empty(); }
    // -1 for the zero polynomial.
    int degree() const { return static_cast<int>(coeffs_.size()) - 1; }
    const std::vector<Rational>& coeffs() const { return coeffs_; }
    Rational coeff(int i) const {
        if (i < 0 || i >= static_cast<int>(coeffs_.size())) return Rational(0);
        return coeffs_[static_cast<std::size_t>(i)];
    }
    Rational lead() const { return is_zero() ? Rational(0) : coeffs_.back(); }
    bool is_monic() const { return !is_zero() && coeffs_.back() == 1; }

    Rational operator()(const Rational& x) const;  // Horner
    double eval_double(double x) const;

    ExactPolynomial operator-() const;
    ExactPolynomial operator+(const ExactPolynomial& o) const;
    ExactPolynomial operator-(const ExactPolynomial& o) const;
    ExactPolynomial operator*(const ExactPolynomial& o) const;
    ExactPolynomial operator*(const Rational& c) const;
    ExactPolynomial operator/(const Rational& c) const;
    bool operator==(const ExactPolynomial& o) const { return coeffs_ == o.coeffs_; }

    ExactPolynomial derivative() const;
    // p(x) -> (-1)^deg p(-x); maps the root multiset to its negation.
    ExactPolynomial reflected() const;
    ExactPolynomial monic() const;
    // Shift-and-scale substitution p(a*x + b).
    ExactPolynomial compose_affine(const Rational& a, const Rational& b) const;

    std::string to_string() const;  // human-readable, highest degree first

   private:
    void normalize() {
        while (!coeffs_.empty() && coeffs_.back() == 0) coeffs_.pop_back();
    }
    std::vector<Rational> coeffs_;
};

// Exact division with remainder: a = b*q + r, deg(r) < deg(b).
std::pair<ExactPolynomial, ExactPolynomial> divrem(const ExactPolynomial& a,
                                                   const ExactPolynomial& b);

// Throws if the division leaves a remainder.
ExactPolynomial exact_div(const ExactPolynomial& a, const ExactPolynomial& b);

// Monic gcd; gcd(0,0) = 0.
ExactPolynomial poly_gcd(ExactPolynomial a, ExactPolynomial b);

// Monic polynomial with the given root multiset.
ExactPolynomial poly_from_roots(const std::vector<Rational>& roots);

// Unique polynomial of degree <= n-1 through n points with distinct abscissae.
ExactPolynomial lagrange_interpolate(
    const std::vector<std::pair<Rational, Rational>>& points);

// num/den = sum residue_s/(x - pole_s); den monic with distinct rational
// roots, deg(num) < deg(den).
std::vector<std::pair<Rational, Rational>> partial_fractions(const ExactPolynomial& num,
                                                             const ExactPolynomial& den);

}  // namespace chainforge

#endif
