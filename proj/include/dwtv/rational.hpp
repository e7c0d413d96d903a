#pragma once

// Exact rational arithmetic. Thin layer over boost::multiprecision so the rest
// of the code can stay agnostic about the backing type.

#include <boost/multiprecision/cpp_int.hpp>

#include <stdexcept>
#include <string>

namespace dwtv {

using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline BigInt rat_num(const Rational& r) { return boost::multiprecision::numerator(r); }
inline BigInt rat_den(const Rational& r) { return boost::multiprecision::denominator(r); }

// g^e for integer e (e < 0 allowed when g != 0).
inline Rational rat_pow(const Rational& base, long long e) {
  if (e < 0) {
    if (base == 0) throw std::domain_error("rat_pow: zero to negative power");
    return rat_pow(Rational(1) / base, -e);
  }
  Rational acc(1), b = base;
  unsigned long long n = static_cast<unsigned long long>(e);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

inline BigInt int_pow(const BigInt& base, long long e) {
  if (e < 0) throw std::domain_error("int_pow: negative exponent");
  BigInt acc(1), b = base;
  unsigned long long n = static_cast<unsigned long long>(e);
  while (n) {
    if (n & 1) acc *= b;
    b *= b;
    n >>= 1;
  }
  return acc;
}

// Canonical "num/den" text, den > 0, gcd-reduced (boost keeps it reduced).
inline std::string rat_to_string(const Rational& r) {
  return rat_num(r).str() + "/" + rat_den(r).str();
}

inline double rat_to_double(const Rational& r) { return static_cast<double>(r); }

}  // namespace dwtv
