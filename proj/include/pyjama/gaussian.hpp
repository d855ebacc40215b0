#pragma once

// Exact arithmetic in Z[i] and Q(i), valuations at the primes above 5 and 13,
// and the rotation sets built from theta_5 = (1+2i)/(1-2i), theta_13 = (2+3i)/(2-3i).

#include <gmpxx.h>

#include <compare>
#include <cstdint>
#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

namespace pyjama {

using Integer = mpz_class;
using Rational = mpq_class;

// n/d in lowest terms (the two-argument mpq_class constructor does not reduce).
inline Rational ratio(const Integer& n, const Integer& d) {
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// floor / ceil / nearest (ties toward +inf) of an exact rational.
Integer floor_of(const Rational& x);
Integer ceil_of(const Rational& x);
Integer round_of(const Rational& x);
// Exponent of the rational prime p in n (n != 0).
long prime_exponent(Integer n, unsigned long p);
Integer ipow(const Integer& base, unsigned long e);
std::string to_string(const Rational& x);
Rational parse_rational(std::string_view text);

class GaussianInt {
 public:
  GaussianInt() = default;
  GaussianInt(Integer re, Integer im = 0) : re_(std::move(re)), im_(std::move(im)) {}
  GaussianInt(long re, long im = 0) : re_(re), im_(im) {}
  GaussianInt(int re, int im = 0) : re_(re), im_(im) {}

  const Integer& re() const noexcept { return re_; }
  const Integer& im() const noexcept { return im_; }

  Integer norm() const { return re_ * re_ + im_ * im_; }
  GaussianInt conj() const { return {re_, -im_}; }
  bool is_zero() const { return re_ == 0 && im_ == 0; }
  // gcd of the two components (the largest rational integer dividing g).
  Integer content() const;

  // True iff d | *this in Z[i].
  bool divisible_by(const GaussianInt& d) const;
  // Exact quotient; throws DomainError when d does not divide *this.
  GaussianInt exact_div(const GaussianInt& d) const;

  GaussianInt& operator+=(const GaussianInt& o);
  GaussianInt& operator-=(const GaussianInt& o);
  GaussianInt& operator*=(const GaussianInt& o);

  friend GaussianInt operator+(GaussianInt a, const GaussianInt& b) { return a += b; }
  friend GaussianInt operator-(GaussianInt a, const GaussianInt& b) { return a -= b; }
  friend GaussianInt operator*(GaussianInt a, const GaussianInt& b) { return a *= b; }
  friend GaussianInt operator-(const GaussianInt& a) { return {-a.re_, -a.im_}; }
  friend bool operator==(const GaussianInt& a, const GaussianInt& b) { return a.re_ == b.re_ && a.im_ == b.im_; }

  GaussianInt pow(unsigned long e) const;
  std::string to_string() const;

 private:
  Integer re_{0};
  Integer im_{0};
};

// Element of Q(i) held as num/den with den a positive rational integer and
// gcd(num.re, num.im, den) = 1. The canonical form makes == a plain comparison.
class GaussianRational {
 public:
  GaussianRational() : num_(0), den_(1) {}
  GaussianRational(const GaussianInt& g) : num_(g), den_(1) {}
  GaussianRational(long n) : num_(n), den_(1) {}
  GaussianRational(int n) : num_(n), den_(1) {}
  GaussianRational(GaussianInt num, Integer den);
  GaussianRational(const Rational& re, const Rational& im);

  const GaussianInt& num() const noexcept { return num_; }
  const Integer& den() const noexcept { return den_; }
  Rational real() const;
  Rational imag() const;

  bool is_zero() const { return num_.is_zero(); }
  bool is_gaussian_integer() const { return den_ == 1; }
  GaussianRational conj() const { return {num_.conj(), den_}; }
  // |q|^2 as an exact rational.
  Rational modulus_squared() const;
  GaussianRational inverse() const;
  GaussianRational pow(long e) const;

  GaussianRational& operator+=(const GaussianRational& o);
  GaussianRational& operator-=(const GaussianRational& o);
  GaussianRational& operator*=(const GaussianRational& o);
  GaussianRational& operator/=(const GaussianRational& o);

  friend GaussianRational operator+(GaussianRational a, const GaussianRational& b) { return a += b; }
  friend GaussianRational operator-(GaussianRational a, const GaussianRational& b) { return a -= b; }
  friend GaussianRational operator*(GaussianRational a, const GaussianRational& b) { return a *= b; }
  friend GaussianRational operator/(GaussianRational a, const GaussianRational& b) { return a /= b; }
  friend GaussianRational operator-(const GaussianRational& a) { return {-a.num_, a.den_}; }
  friend bool operator==(const GaussianRational& a, const GaussianRational& b) {
    return a.num_ == b.num_ && a.den_ == b.den_;
  }

  // "a/d+b/di" with both parts in lowest terms, e.g. "-3/5+4/5i".
  std::string to_string() const;
  static GaussianRational parse(std::string_view text);

  double approx_re() const;
  double approx_im() const;

 private:
  void normalize();

  GaussianInt num_;
  Integer den_;
};

// Total order used for deterministic sorting (by den, then re, then im).
bool canonical_less(const GaussianRational& a, const GaussianRational& b);

std::ostream& operator<<(std::ostream& os, const GaussianInt& g);
std::ostream& operator<<(std::ostream& os, const GaussianRational& q);

// The four primes of Z[i] the rest of the library cares about.
enum class PrimeSite { P5, P5bar, P13, P13bar };

GaussianInt generator(PrimeSite site);   // 1+2i, 1-2i, 2+3i, 2-3i
unsigned long residue_norm(PrimeSite site);  // 5 or 13
const char* site_name(PrimeSite site);
PrimeSite conjugate_site(PrimeSite site);

// Exponent of the site's prime in q. Throws DomainError for q = 0.
long valuation(const GaussianInt& g, PrimeSite site);
long valuation(const GaussianRational& q, PrimeSite site);
// residue_norm^(-valuation); throws DomainError for q = 0.
Rational abs_at(const GaussianRational& q, PrimeSite site);

const GaussianInt& p5();
const GaussianInt& p5bar();
const GaussianInt& p13();
const GaussianInt& p13bar();
const GaussianRational& theta5();
const GaussianRational& theta13();

// theta5^r * theta13^s.
GaussianRational theta_power(long r, long s);
// {theta5^r theta13^s : 0 <= r, s <= N}, ordered with r major.
std::vector<GaussianRational> theta_set(unsigned N);
// p5bar^N * p13bar^N: the least common period multiplier of theta_set(N).
GaussianInt min_period_multiplier(unsigned N);
// All unit-modulus (r+si)/t with 0 < t <= t_max, sorted canonically.
std::vector<GaussianRational> unit_circle_elements(unsigned long t_max);

// Membership in A = Z[i][1/p5bar, 1/p13bar].
bool in_A(const GaussianRational& q);
// Membership in A[1/7].
bool in_A7(const GaussianRational& q);

// Residue arithmetic in Z[i]/nZ[i] for a rational modulus n >= 1.
GaussianInt reduce_mod(const GaussianInt& g, const Integer& n);
GaussianInt mul_mod(const GaussianInt& a, const GaussianInt& b, const Integer& n);
GaussianInt pow_mod(GaussianInt a, Integer e, const Integer& n);
// Inverse of a unit of Z[i]/nZ[i]; DomainError when gcd(norm(a), n) != 1.
GaussianInt inverse_mod(const GaussianInt& a, const Integer& n);
// |(Z[i]/nZ[i])^x|, from the rational factorisation of n (trial division).
Integer gaussian_unit_group_order(const Integer& n);
// Multiplicative order of a unit of Z[i]/nZ[i].
Integer multiplicative_order_mod(const GaussianInt& a, const Integer& n);

}  // namespace pyjama
