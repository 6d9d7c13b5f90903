#include "rfe/exact.hpp"

#include <cmath>
#include <stdexcept>

namespace rfe {

long floor_rational(const Rational& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);  // always > 0
    Int q = num / den;
    if (num < 0 && q * den != num) --q;
    return static_cast<long>(q);
}

long ceil_rational(const Rational& r) {
    return -floor_rational(-r);
}

Rational pow2(long e) {
    Int one = 1;
    if (e >= 0) return Rational(one << e, 1);
    return Rational(one, one << (-e));
}

// v >= r + log2(mult)  <=>  (v*q - p) >= q*log2(mult)  with r = p/q
// <=>  2^(v*q - p) >= mult^q   (both sides exact integers once v*q >= p).
static bool ge_log2(long v, const Rational& r, const Int& mult) {
    Int p = boost::multiprecision::numerator(r);
    Int q = boost::multiprecision::denominator(r);
    Int lhs_exp = Int(v) * q - p;
    if (lhs_exp < 0) return false;  // mult >= 1 makes the rhs >= 1
    Int rhs = boost::multiprecision::pow(mult, static_cast<unsigned>(q));
    return (Int(1) << static_cast<unsigned>(lhs_exp)) >= rhs;
}

long ceil_add_log2(const Rational& r, const Int& mult) {
    if (mult < 1) throw std::invalid_argument("ceil_add_log2: mult must be >= 1");
    long v = ceil_rational(r) + static_cast<long>(boost::multiprecision::msb(mult)) + 1;
    while (ge_log2(v - 1, r, mult)) --v;
    return v;
}

bool le_plus_log2(const Rational& a, const Int& x, const Rational& b) {
    if (x < 1) throw std::invalid_argument("le_plus_log2: x must be >= 1");
    // a + log2(x) <= b  <=>  log2(x) <= b - a = p/q  <=>  x^q <= 2^p (p >= 0 needed unless x = 1)
    Rational d = b - a;
    Int p = boost::multiprecision::numerator(d);
    Int q = boost::multiprecision::denominator(d);
    if (p < 0) return false;  // log2(x) >= 0 > d
    Int lhs = boost::multiprecision::pow(x, static_cast<unsigned>(q));
    return lhs <= (Int(1) << static_cast<unsigned>(p));
}

double to_double(const Rational& r) {
    return r.convert_to<double>();
}

double log2_int(const Int& x) {
    if (x <= 0) throw std::invalid_argument("log2_int: positive argument required");
    // Split off the top 64 bits for precision beyond double range.
    std::size_t bits = boost::multiprecision::msb(x) + 1;
    if (bits <= 63) return std::log2(x.convert_to<double>());
    std::size_t shift = bits - 63;
    Int top = x >> shift;
    return std::log2(top.convert_to<double>()) + static_cast<double>(shift);
}

}  // namespace rfe
