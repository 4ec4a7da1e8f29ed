#ifndef CHAINFORGE_RATIONAL_HPP
#define CHAINFORGE_RATIONAL_HPP

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>

namespace chainforge {

using Integer = mpz_class;
using Rational = mpq_class;

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Parses "num/den" or "num"; denominator must be nonzero.
inline Rational rational_from_string(const std::string& s) {
    Rational q;
    if (q.set_str(s, 10) != 0)
        throw Error("malformed rational: '" + s + "'");
    if (q.get_den() == 0)
        throw Error("zero denominator in rational: '" + s + "'");
    q.canonicalize();
    return q;
}

// "num/den", den omitted when 1.
inline std::string rational_to_string(const Rational& q) {
    if (q.get_den() == 1) return q.get_num().get_str();
    return q.get_num().get_str() + "/" + q.get_den().get_str();
}

inline int sign(const Rational& q) { return sgn(q); }

inline Rational rational_abs(const Rational& q) { return abs(q); }

// gcd on Q: gcd of numerators over lcm of denominators; gcd(0,0) = 0.
inline Rational rational_gcd(const Rational& a, const Rational& b) {
    Integer g, l;
    mpz_gcd(g.get_mpz_t(), a.get_num().get_mpz_t(), b.get_num().get_mpz_t());
    mpz_lcm(l.get_mpz_t(), a.get_den().get_mpz_t(), b.get_den().get_mpz_t());
    if (l == 0) return Rational(0);
    Rational r(g, l);
    r.canonicalize();
    return r;
}

inline bool is_integer(const Rational& q) { return q.get_den() == 1; }

// Largest dyadic rational 2^-k style round-down: returns the largest power of
// 1/2 that is <= q (q > 0 required).
inline Rational dyadic_floor_pow2(const Rational& q) {
    if (sgn(q) <= 0) throw Error("dyadic_floor_pow2 requires positive input");
    Rational p(1);
    if (q >= 1) {
        while (p * 2 <= q) p *= 2;
        return p;
    }
    while (p > q) p /= 2;
    return p;
}

inline double to_double(const Rational& q) { return q.get_d(); }

}  // namespace chainforge

#endif
