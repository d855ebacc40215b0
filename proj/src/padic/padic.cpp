#include "pyjama/padic.hpp"

#include <algorithm>
#include <regex>
#include <vector>

#include "pyjama/errors.hpp"

namespace pyjama {

namespace {

Integer ppow(unsigned long p, long e) { return ipow(Integer(p), static_cast<unsigned long>(e)); }

Integer mod_inverse(const Integer& a, const Integer& m) {
  Integer r;
  if (mpz_invert(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t()) == 0) throw DomainError("not invertible");
  return r;
}

Integer mod_floor(const Integer& a, const Integer& m) {
  Integer r;
  mpz_fdiv_r(r.get_mpz_t(), a.get_mpz_t(), m.get_mpz_t());
  return r;
}

void check_prime(unsigned long p) {
  if (p != 5 && p != 13) throw DomainError("only p = 5 and p = 13 are supported");
}

std::vector<unsigned long> prime_factors(unsigned long n) {
  std::vector<unsigned long> f;
  for (unsigned long d = 2; d * d <= n; ++d) {
    if (n % d == 0) f.push_back(d);
    while (n % d == 0) n /= d;
  }
  if (n > 1) f.push_back(n);
  return f;
}

}  // namespace

PadicNumber PadicNumber::zero(unsigned long p) {
  PadicNumber z;
  z.p_ = p;
  return z;
}

PadicNumber PadicNumber::zero_mod(unsigned long p, long abs_precision) {
  PadicNumber z;
  z.p_ = p;
  z.abs_ = abs_precision;
  return z;
}

PadicNumber::PadicNumber(unsigned long p, long valuation, Integer unit, long precision) : p_(p) {
  if (precision <= 0) {
    *this = zero_mod(p, valuation + precision);
    return;
  }
  unit = mod_floor(unit, ppow(p, precision));
  if (unit == 0) {
    *this = zero_mod(p, valuation + precision);
    return;
  }
  const long e = prime_exponent(unit, p);
  if (e > 0) unit /= ppow(p, e);
  zero_ = false;
  v_ = valuation + e;
  k_ = precision - e;
  abs_ = v_ + k_;
  u_ = std::move(unit);
}

PadicNumber PadicNumber::from_rational(const Rational& x, unsigned long p, long precision) {
  if (x == 0) return zero(p);
  Integer num = x.get_num(), den = x.get_den();
  const long a = prime_exponent(num, p);
  const long b = prime_exponent(den, p);
  num /= ppow(p, a);
  den /= ppow(p, b);
  const Integer m = ppow(p, precision);
  return {p, a - b, Integer(num * mod_inverse(den, m)), precision};
}

PadicNumber PadicNumber::from_residue(const Integer& value, unsigned long p, long abs_precision) {
  const Integer r = mod_floor(value, ppow(p, abs_precision));
  if (r == 0) return zero_mod(p, abs_precision);
  const long v = prime_exponent(r, p);
  return {p, v, Integer(r / ppow(p, v)), abs_precision - v};
}

Integer PadicNumber::modulus() const { return ppow(p_, k_); }

PadicNumber PadicNumber::with_precision(long k) const {
  if (zero_ || k >= k_) return *this;
  return {p_, v_, u_, k};
}

Integer PadicNumber::residue(long n) const {
  if (n > abs_) throw PrecisionError("residue mod p^" + std::to_string(n) + " needs more digits than are known");
  if (zero_) return 0;
  if (v_ < 0) throw DomainError("residue of a non-integral p-adic number");
  if (n <= v_) return 0;
  return mod_floor(u_ * ppow(p_, v_), ppow(p_, n));
}

Rational PadicNumber::norm() const {
  if (is_exact_zero()) return 0;
  if (zero_) throw PrecisionError("norm of an inexact zero is not determined");
  if (v_ >= 0) return Rational(1, ppow(p_, v_));
  return Rational(ppow(p_, -v_));
}

Rational PadicNumber::norm_bound() const {
  if (is_exact_zero()) return 0;
  const long v = zero_ ? abs_ : v_;
  if (v >= 0) return Rational(1, ppow(p_, v));
  return Rational(ppow(p_, -v));
}

PadicNumber PadicNumber::operator-() const {
  if (zero_) return *this;
  return {p_, v_, Integer(modulus() - u_), k_};
}

PadicNumber operator+(const PadicNumber& x, const PadicNumber& y) {
  if (x.p_ != y.p_) throw DomainError("p-adic numbers over different primes");
  if (x.is_exact_zero()) return y;
  if (y.is_exact_zero()) return x;
  const long abs = std::min(x.abs_, y.abs_);
  if (x.zero_ && y.zero_) return PadicNumber::zero_mod(x.p_, abs);
  long vmin = PadicNumber::kExact;
  if (!x.zero_) vmin = std::min(vmin, x.v_);
  if (!y.zero_) vmin = std::min(vmin, y.v_);
  if (abs <= vmin) return PadicNumber::zero_mod(x.p_, abs);
  Integer s = 0;
  if (!x.zero_) s += x.u_ * ppow(x.p_, x.v_ - vmin);
  if (!y.zero_) s += y.u_ * ppow(y.p_, y.v_ - vmin);
  return {x.p_, vmin, s, abs - vmin};
}

PadicNumber operator*(const PadicNumber& x, const PadicNumber& y) {
  if (x.p_ != y.p_) throw DomainError("p-adic numbers over different primes");
  if (x.is_exact_zero() || y.is_exact_zero()) return PadicNumber::zero(x.p_);
  if (x.zero_ && y.zero_) return PadicNumber::zero_mod(x.p_, x.abs_ + y.abs_);
  if (x.zero_) return PadicNumber::zero_mod(x.p_, x.abs_ + y.v_);
  if (y.zero_) return PadicNumber::zero_mod(x.p_, y.abs_ + x.v_);
  return {x.p_, x.v_ + y.v_, Integer(x.u_ * y.u_), std::min(x.k_, y.k_)};
}

PadicNumber operator/(const PadicNumber& x, const PadicNumber& y) {
  if (x.p_ != y.p_) throw DomainError("p-adic numbers over different primes");
  if (y.is_exact_zero()) throw DomainError("division by zero");
  if (y.zero_) throw PrecisionError("division by an inexact zero");
  if (x.is_exact_zero()) return x;
  if (x.zero_) return PadicNumber::zero_mod(x.p_, x.abs_ - y.v_);
  const long k = std::min(x.k_, y.k_);
  const Integer m = ppow(x.p_, k);
  return {x.p_, x.v_ - y.v_, Integer(x.u_ * mod_inverse(y.u_, m)), k};
}

bool operator==(const PadicNumber& x, const PadicNumber& y) {
  return x.p_ == y.p_ && x.zero_ == y.zero_ && x.abs_ == y.abs_ && x.v_ == y.v_ && x.k_ == y.k_ && x.u_ == y.u_;
}

std::string PadicNumber::to_string() const {
  const std::string ps = std::to_string(p_);
  if (is_exact_zero()) return "0";
  if (zero_) return "0 mod " + ps + "^" + std::to_string(abs_);
  return ps + "^" + std::to_string(v_) + " * " + u_.get_str() + " mod " + ps + "^" + std::to_string(k_);
}

PadicNumber PadicNumber::parse(std::string_view text, unsigned long p_default) {
  static const std::regex full(R"(^\s*(\d+)\^(-?\d+)\s*\*\s*(\d+)\s+mod\s+(\d+)\^(\d+)\s*$)");
  static const std::regex zmod(R"(^\s*0\s+mod\s+(\d+)\^(-?\d+)\s*$)");
  static const std::regex zero_only(R"(^\s*0\s*$)");
  const std::string s(text);
  std::smatch m;
  try {
    if (std::regex_match(s, m, full)) {
      const unsigned long p = std::stoul(m[1]);
      if (std::stoul(m[4]) != p) throw ParseError("mismatched primes in '" + s + "'");
      check_prime(p);
      const Integer u(m[3].str());
      const long k = std::stol(m[5]);
      if (k < 1) throw ParseError("precision must be positive in '" + s + "'");
      if (mpz_divisible_ui_p(u.get_mpz_t(), p) || u >= ppow(p, k))
        throw ParseError("unit digits must lie in [1, p^k) and be prime to p in '" + s + "'");
      return {p, std::stol(m[2]), u, k};
    }
    if (std::regex_match(s, m, zmod)) {
      const unsigned long p = std::stoul(m[1]);
      check_prime(p);
      return zero_mod(p, std::stol(m[2]));
    }
  } catch (const std::out_of_range&) {
    throw ParseError("number out of range in '" + s + "'");
  } catch (const DomainError& e) {
    throw ParseError(e.what());
  }
  if (std::regex_match(s, m, zero_only)) {
    if (p_default == 0) throw ParseError("exact zero needs a prime: write '0 mod p^N'");
    return zero(p_default);
  }
  throw ParseError("malformed p-adic number '" + s + "'");
}

CanonicalRoot sqrt_neg1(unsigned long p, long k) {
  check_prime(p);
  if (k < 1) throw DomainError("precision must be positive");
  const GaussianInt bar = p == 5 ? p5bar() : p13bar();
  const long a = bar.re().get_si();
  const long b = bar.im().get_si();
  long x0 = -1;
  for (long x = 0; x < static_cast<long>(p); ++x) {
    const long pl = static_cast<long>(p);
    if ((x * x + 1) % pl == 0 && ((a + b * x) % pl + pl) % pl == 0) x0 = x;
  }
  Integer x = x0;
  long prec = 1;
  while (prec < k) {
    prec = std::min(2 * prec, k);
    const Integer m = ppow(p, prec);
    x = mod_floor(x - (x * x + 1) * mod_inverse(Integer(2 * x), m), m);
  }
  return {p, k, x};
}

PadicNumber embed(const GaussianRational& q, unsigned long p, long k) {
  check_prime(p);
  if (k < 1) throw DomainError("precision must be positive");
  if (q.is_zero()) return PadicNumber::zero(p);
  // v_p(a + b i_p) <= log_p(norm(num)), so K digits expose the valuation and k more.
  const Integer nrm = q.num().norm();
  long log_n = 0;
  for (Integer t = nrm; t >= p; t /= p) ++log_n;
  const long K = k + log_n + 1;
  const Integer mK = ppow(p, K);
  const Integer x = sqrt_neg1(p, K).digits;
  const Integer img = mod_floor(q.num().re() + q.num().im() * x, mK);
  const long v0 = prime_exponent(img, p);
  const Integer m = ppow(p, k);
  const Integer unit_num = mod_floor(Integer(img / ppow(p, v0)), m);
  Integer den = q.den();
  const long e = prime_exponent(den, p);
  den /= ppow(p, e);
  return {p, v0 - e, Integer(unit_num * mod_inverse(den, m)), k};
}

Rational frac_part(const PadicNumber& a) {
  if (a.is_exact_zero()) return 0;
  if (a.absolute_precision() < 0)
    throw PrecisionError("fractional part needs digits down to p^0, known only to p^" +
                         std::to_string(a.absolute_precision()));
  if (a.is_zero() || a.valuation() >= 0) return 0;
  const Integer m = ppow(a.prime(), -a.valuation());
  Rational r(mod_floor(a.unit(), m), m);
  r.canonicalize();
  return r;
}

PadicNumber plog(const PadicNumber& u) {
  const unsigned long p = u.prime();
  if (u.is_zero() || u.valuation() != 0) throw DomainError("plog needs a unit in 1 + pZ_p");
  const long N = u.absolute_precision();
  const Integer x = u.residue(N) - 1;
  if (!mpz_divisible_ui_p(x.get_mpz_t(), p)) throw DomainError("plog needs a unit in 1 + pZ_p");
  const Integer mN = ppow(p, N);
  Integer sum = 0, xn = 1;
  for (long n = 1;; ++n) {
    long log_n = 0;
    for (long t = n; t >= static_cast<long>(p); t /= static_cast<long>(p)) ++log_n;
    if (n - log_n >= N + 1 && n > 1) break;
    xn *= x;
    Integer nn = n;
    const long e = prime_exponent(nn, p);
    nn /= ppow(p, e);
    Integer term = Integer(xn / ppow(p, e)) * mod_inverse(nn, mN);
    if (n % 2 == 0) term = -term;
    sum = mod_floor(sum + term, mN);
  }
  return PadicNumber::from_residue(sum, p, N);
}

PadicNumber pexp(const PadicNumber& x) {
  const unsigned long p = x.prime();
  if (x.is_exact_zero()) throw PrecisionError("pexp of exact zero needs an explicit precision");
  if (x.valuation() < 1) throw DomainError("pexp needs an argument in pZ_p");
  const long N = x.absolute_precision();
  const Integer mN = ppow(p, N);
  const Integer xi = x.residue(N);
  Integer sum = 1, xn = 1, fact = 1;
  const long pl = static_cast<long>(p);
  for (long n = 1;; ++n) {
    // v(x^n / n!) >= n - (n - 1)/(p - 1)
    if (n - (n - 1) / (pl - 1) >= N + 1 && n > 1) break;
    xn *= xi;
    fact *= n;
    Integer f = fact;
    const long e = prime_exponent(f, p);
    f /= ppow(p, e);
    sum = mod_floor(sum + Integer(xn / ppow(p, e)) * mod_inverse(f, mN), mN);
  }
  return PadicNumber::from_residue(sum, p, N);
}

Integer unit_order_mod(const Integer& u, unsigned long p, long k) {
  const Integer m = ppow(p, k);
  Integer ord = (p - 1) * ppow(p, k - 1);
  std::vector<unsigned long> primes = prime_factors(p - 1);
  primes.push_back(p);
  auto is_one = [&](const Integer& e) {
    Integer r;
    mpz_powm(r.get_mpz_t(), u.get_mpz_t(), e.get_mpz_t(), m.get_mpz_t());
    return r == 1 % m;
  };
  for (unsigned long q : primes) {
    while (mpz_divisible_ui_p(ord.get_mpz_t(), q) && is_one(Integer(ord / q))) ord /= q;
  }
  return ord;
}

ClosureIndex closure_index(const PadicNumber& u, long k) {
  if (k < 1) throw DomainError("precision must be positive");
  if (u.is_zero() || u.valuation() != 0) throw DomainError("closure index needs a unit (valuation 0)");
  const unsigned long p = u.prime();
  const Integer r = u.residue(k);
  ClosureIndex out;
  out.order = unit_order_mod(r, p, k);
  // u^(p-1) == 1 exactly when p does not divide the order
  out.finite = mpz_divisible_ui_p(out.order.get_mpz_t(), p) != 0;
  if (out.finite) out.index = Integer((p - 1) * ppow(p, k - 1)) / out.order;
  return out;
}

}  // namespace pyjama
