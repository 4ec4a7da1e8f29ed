#include "chainforge/poly.hpp"

#include <algorithm>
#include <sstream>

#include "chainforge/roots.hpp"

namespace chainforge {

Rational ExactPolynomial::operator()(const Rational& x) const {
    Rational acc(0);
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * x + *it;
    return acc;
}

double ExactPolynomial::eval_double(double x) const {
    double acc = 0.0;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * x + it->get_d();
    return acc;
}

ExactPolynomial ExactPolynomial::operator-() const {
    std::vector<Rational> c(coeffs_);
    for (auto& q : c) q = -q;
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::operator+(const ExactPolynomial& o) const {
    std::vector<Rational> c(std::max(coeffs_.size(), o.coeffs_.size()), Rational(0));
    for (std::size_t i = 0; i < c.size(); ++i) c[i] = coeff(int(i)) + o.coeff(int(i));
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::operator-(const ExactPolynomial& o) const {
    return *this + (-o);
}

ExactPolynomial ExactPolynomial::operator*(const ExactPolynomial& o) const {
    if (is_zero() || o.is_zero()) return zero();
    std::vector<Rational> c(coeffs_.size() + o.coeffs_.size() - 1, Rational(0));
    for (std::size_t i = 0; i < coeffs_.size(); ++i)
        for (std::size_t j = 0; j < o.coeffs_.size(); ++j)
            c[i + j] += coeffs_[i] * o.coeffs_[j];
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::operator*(const Rational& k) const {
    std::vector<Rational> c(coeffs_);
    for (auto& q : c) q *= k;
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::operator/(const Rational& k) const {
    if (k == 0) throw Error("division of polynomial by zero scalar");
    std::vector<Rational> c(coeffs_);
    for (auto& q : c) q /= k;
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::derivative() const {
    if (degree() <= 0) return zero();
    std::vector<Rational> c(coeffs_.size() - 1);
    for (std::size_t i = 1; i < coeffs_.size(); ++i)
        c[i - 1] = coeffs_[i] * Rational(static_cast<long>(i));
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::reflected() const {
    std::vector<Rational> c(coeffs_);
    const int d = degree();
    for (int i = 0; i <= d; ++i)
        if ((d - i) % 2 != 0) c[static_cast<std::size_t>(i)] = -c[static_cast<std::size_t>(i)];
    return ExactPolynomial(std::move(c));
}

ExactPolynomial ExactPolynomial::monic() const {
    if (is_zero()) throw Error("monic() of zero polynomial");
    return *this / lead();
}

ExactPolynomial ExactPolynomial::compose_affine(const Rational& a, const Rational& b) const {
    // Horner in (a x + b).
    ExactPolynomial arg{b, a};
    ExactPolynomial acc;
    for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it)
        acc = acc * arg + ExactPolynomial(*it);
    return acc;
}

std::string ExactPolynomial::to_string() const {
    if (is_zero()) return "0";
    std::ostringstream os;
    bool first = true;
    for (int i = degree(); i >= 0; --i) {
        const Rational& c = coeff(i);
        if (c == 0) continue;
        if (!first) os << (sgn(c) > 0 ? " + " : " - ");
        else if (sgn(c) < 0) os << "-";
        Rational a = abs(c);
        if (i == 0 || a != 1) os << rational_to_string(a);
        if (i > 0) {
            if (a != 1) os << "*";
            os << "x";
            if (i > 1) os << "^" << i;
        }
        first = false;
    }
    return os.str();
}

std::pair<ExactPolynomial, ExactPolynomial> divrem(const ExactPolynomial& a,
                                                   const ExactPolynomial& b) {
    if (b.is_zero()) throw Error("polynomial division by zero");
    std::vector<Rational> rem(a.coeffs());
    const int db = b.degree();
    const Rational lb = b.lead();
    int dr = a.degree();
    if (dr < db) return {ExactPolynomial::zero(), a};
    std::vector<Rational> quot(static_cast<std::size_t>(dr - db + 1), Rational(0));
    while (dr >= db) {
        Rational f = rem[static_cast<std::size_t>(dr)] / lb;
        quot[static_cast<std::size_t>(dr - db)] = f;
        for (int i = 0; i <= db; ++i)
            rem[static_cast<std::size_t>(dr - db + i)] -= f * b.coeff(i);
        rem.pop_back();
        dr = static_cast<int>(rem.size()) - 1;
        while (dr >= 0 && rem[static_cast<std::size_t>(dr)] == 0) {
            rem.pop_back();
            --dr;
        }
    }
    return {ExactPolynomial(std::move(quot)), ExactPolynomial(std::move(rem))};
}

ExactPolynomial exact_div(const ExactPolynomial& a, const ExactPolynomial& b) {
    auto [q, r] = divrem(a, b);
    if (!r.is_zero()) throw Error("exact_div: nonzero remainder");
    return q;
}

ExactPolynomial poly_gcd(ExactPolynomial a, ExactPolynomial b) {
    while (!b.is_zero()) {
        auto r = divrem(a, b).second;
        a = std::move(b);
        b = std::move(r);
    }
    if (a.is_zero()) return a;
    return a.monic();
}

ExactPolynomial poly_from_roots(const std::vector<Rational>& roots) {
    ExactPolynomial p = ExactPolynomial::one();
    for (const auto& r : roots) p = p * ExactPolynomial::linear_root(r);
    return p;
}

ExactPolynomial lagrange_interpolate(
    const std::vector<std::pair<Rational, Rational>>& points) {
    const std::size_t n = points.size();
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j)
            if (points[i].first == points[j].first)
                throw DuplicateAbscissa("duplicate abscissa " +
                                        rational_to_string(points[i].first));
    ExactPolynomial acc;
    for (std::size_t i = 0; i < n; ++i) {
        ExactPolynomial basis = ExactPolynomial::one();
        Rational denom(1);
        for (std::size_t j = 0; j < n; ++j) {
            if (j == i) continue;
            basis = basis * ExactPolynomial::linear_root(points[j].first);
            denom *= points[i].first - points[j].first;
        }
        acc = acc + basis * (points[i].second / denom);
    }
    return acc;
}

std::vector<std::pair<Rational, Rational>> partial_fractions(const ExactPolynomial& num,
                                                             const ExactPolynomial& den) {
    if (den.is_zero() || !den.is_monic()) throw Error("partial_fractions: denominator must be monic");
    if (num.degree() >= den.degree())
        throw DegreeOrder("partial_fractions: numerator degree must be below denominator degree");
    RootSet rs = isolate_real_roots(den);
    std::vector<Rational> poles;
    int total = 0;
    for (const auto& r : rs.roots) {
        if (r.multiplicity > 1) throw RepeatedPole("repeated pole in denominator");
        if (!r.exact) throw IrrationalPole("irrational pole; exact path requires rational poles");
        poles.push_back(r.value);
        total += r.multiplicity;
    }
    if (total != den.degree()) throw NonRealRoots("denominator has non-real roots");
    ExactPolynomial dden = den.derivative();
    std::vector<std::pair<Rational, Rational>> out;
    out.reserve(poles.size());
    for (const auto& p : poles) out.emplace_back(p, num(p) / dden(p));
    return out;
}

}  // namespace chainforge
