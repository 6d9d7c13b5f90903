// Exact big-integer / rational arithmetic used by the parameter solvers and
// the ground-truth oracles. No floating point enters any pass/fail decision;
// logarithms are taken only at reporting boundaries.
#pragma once

#include <boost/multiprecision/cpp_int.hpp>

#include <cstdint>

namespace rfe {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

long floor_rational(const Rational& r);
long ceil_rational(const Rational& r);

// 2^e as an exact rational, e any integer.
Rational pow2(long e);

// Smallest integer v with v >= r + log2(mult), for mult >= 1.
long ceil_add_log2(const Rational& r, const Int& mult);

// Exact truth of  a + log2(x) <= b  for x >= 1.
bool le_plus_log2(const Rational& a, const Int& x, const Rational& b);

double to_double(const Rational& r);
double log2_int(const Int& x);

}  // namespace rfe
