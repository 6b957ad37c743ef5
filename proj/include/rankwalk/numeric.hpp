#pragma once

// Number types shared by every module. Counts and kernel probabilities are
// exact (GMP-backed); asymptotic quantities use 100-digit MPFR reals.

#include <boost/multiprecision/gmp.hpp>
#include <boost/multiprecision/mpfr.hpp>

#include <cstdint>
#include <vector>

namespace rankwalk {

namespace mp = boost::multiprecision;

using BigCount = mp::number<mp::gmp_int, mp::et_off>;
using Rational = mp::number<mp::gmp_rational, mp::et_off>;
using Real = mp::number<mp::mpfr_float_backend<100>, mp::et_off>;

inline Rational make_rational(const BigCount& num, const BigCount& den) {
  return Rational(num, den);
}

inline BigCount numerator_of(const Rational& q) { return mp::numerator(q); }
inline BigCount denominator_of(const Rational& q) { return mp::denominator(q); }

inline Real to_real(const Rational& q) {
  return Real(numerator_of(q)) / Real(denominator_of(q));
}

inline Real to_real(const BigCount& z) { return Real(z); }

// a^e for nonnegative integer e.
template <class T>
T ipow(T base, unsigned long e) {
  T result(1);
  while (e != 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e != 0) base *= base;
  }
  return result;
}

// Sum of a rank profile evaluated at x, i.e. sum_i counts[i] * x^i (Horner).
template <class T>
T evaluate_profile(const std::vector<BigCount>& counts, const T& x) {
  T acc(0);
  for (auto it = counts.rbegin(); it != counts.rend(); ++it) {
    acc = acc * x + T(*it);
  }
  return acc;
}

}  // namespace rankwalk
