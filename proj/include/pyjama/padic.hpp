#pragma once

// Finite-precision elements of Q_5 and Q_13.

#include <climits>
#include <string>
#include <string_view>

#include "pyjama/gaussian.hpp"

namespace pyjama {

class PadicNumber {
 public:
  static constexpr long kExact = LONG_MAX;

  // Exact zero (known to every digit).
  static PadicNumber zero(unsigned long p);
  // A value known only to be divisible by p^abs_precision.
  static PadicNumber zero_mod(unsigned long p, long abs_precision);
  // p^valuation * unit with the unit known mod p^precision. A unit divisible by p is
  // folded into the valuation; a unit that vanishes mod p^precision gives a zero marker.
  PadicNumber(unsigned long p, long valuation, Integer unit, long precision);
  // Rational x (denominator and numerator arbitrary) to `precision` significant digits.
  static PadicNumber from_rational(const Rational& x, unsigned long p, long precision);
  // The integer `value`, known modulo p^abs_precision.
  static PadicNumber from_residue(const Integer& value, unsigned long p, long abs_precision);

  unsigned long prime() const noexcept { return p_; }
  bool is_zero() const noexcept { return zero_; }
  bool is_exact_zero() const noexcept { return zero_ && abs_ == kExact; }
  // Valuation; a zero marker reports its absolute precision, exact zero reports kExact.
  long valuation() const noexcept { return zero_ ? abs_ : v_; }
  // Number of known unit digits (0 for zero markers).
  long precision() const noexcept { return zero_ ? 0 : k_; }
  // valuation + precision: the value is known modulo p^absolute_precision.
  long absolute_precision() const noexcept { return abs_; }
  const Integer& unit() const noexcept { return u_; }

  // Truncate to fewer relative digits (no-op when already coarser).
  PadicNumber with_precision(long k) const;
  // The residue modulo p^n as an integer in [0, p^n); needs valuation >= 0 and n <= absolute precision.
  Integer residue(long n) const;
  // |x|_p as an exact rational; zero markers throw PrecisionError, exact zero gives 0.
  Rational norm() const;
  // Upper bound for |x|_p: p^-absolute_precision for a zero marker.
  Rational norm_bound() const;

  PadicNumber operator-() const;
  friend PadicNumber operator+(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator-(const PadicNumber& x, const PadicNumber& y) { return x + (-y); }
  friend PadicNumber operator*(const PadicNumber& x, const PadicNumber& y);
  friend PadicNumber operator/(const PadicNumber& x, const PadicNumber& y);
  // Same representation (prime, valuation, unit, precision).
  friend bool operator==(const PadicNumber& x, const PadicNumber& y);

  // "p^v * u mod p^k", "0 mod p^N" for a zero marker, "0" for exact zero.
  std::string to_string() const;
  // A bare "0" needs p_default to say which prime it lives over.
  static PadicNumber parse(std::string_view text, unsigned long p_default = 0);

 private:
  PadicNumber() = default;
  Integer modulus() const;

  unsigned long p_ = 5;
  bool zero_ = true;
  long v_ = 0;
  long k_ = 0;
  long abs_ = kExact;
  Integer u_ = 0;
};

struct CanonicalRoot {
  unsigned long p;
  long precision;
  Integer digits;  // digits^2 == -1 mod p^precision
};

// The square root of -1 in Z_p under which 1-2i (p = 5) or 2-3i (p = 13) is a non-unit.
CanonicalRoot sqrt_neg1(unsigned long p, long k);

// Image of q under i -> i_p with k significant digits. Zero maps to exact zero.
PadicNumber embed(const GaussianRational& q, unsigned long p, long k);

// The p-adic fractional part {a}_p in [0, 1).
Rational frac_part(const PadicNumber& a);

// p-adic logarithm on 1 + pZ_p and exponential on pZ_p.
PadicNumber plog(const PadicNumber& u);
PadicNumber pexp(const PadicNumber& x);

struct ClosureIndex {
  bool finite = false;   // false: u is a root of unity modulo p^k
  Integer index = 0;     // [(Z/p^k)^x : <u>] when finite
  Integer order = 0;     // order of u modulo p^k
};

// Index of <u mod p^k> in (Z/p^k)^x.
ClosureIndex closure_index(const PadicNumber& u, long k);

// Multiplicative order of a unit modulo p^k (p odd).
Integer unit_order_mod(const Integer& u, unsigned long p, long k);

}  // namespace pyjama
