#include "pyjama/gaussian.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <ostream>
#include <set>

#include "pyjama/errors.hpp"

namespace pyjama {

Integer floor_of(const Rational& x) {
  Integer q;
  mpz_fdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer ceil_of(const Rational& x) {
  Integer q;
  mpz_cdiv_q(q.get_mpz_t(), x.get_num_mpz_t(), x.get_den_mpz_t());
  return q;
}

Integer round_of(const Rational& x) { return floor_of(x + Rational(1, 2)); }

long prime_exponent(Integer n, unsigned long p) {
  if (n == 0) throw DomainError("prime exponent of zero undefined");
  long e = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), p)) {
    mpz_divexact_ui(n.get_mpz_t(), n.get_mpz_t(), p);
    ++e;
  }
  return e;
}

Integer ipow(const Integer& base, unsigned long e) {
  Integer r;
  mpz_pow_ui(r.get_mpz_t(), base.get_mpz_t(), e);
  return r;
}

std::string to_string(const Rational& x) { return x.get_num().get_str() + "/" + x.get_den().get_str(); }

Rational parse_rational(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ParseError("empty rational");
  auto valid_int = [](const std::string& t, bool allow_sign) {
    if (t.empty()) return false;
    std::size_t i = 0;
    if (allow_sign && (t[0] == '-' || t[0] == '+')) i = 1;
    if (i == t.size()) return false;
    return std::all_of(t.begin() + static_cast<long>(i), t.end(), [](unsigned char c) { return std::isdigit(c); });
  };
  const auto slash = s.find('/');
  std::string num = s.substr(0, slash);
  std::string den = slash == std::string::npos ? "1" : s.substr(slash + 1);
  if (!valid_int(num, true) || !valid_int(den, false)) throw ParseError("malformed rational '" + s + "'");
  if (num[0] == '+') num.erase(0, 1);
  Integer n(num), d(den);
  if (d == 0) throw ParseError("zero denominator in '" + s + "'");
  Rational r(n, d);
  r.canonicalize();
  return r;
}

// ---------------------------------------------------------------- GaussianInt

Integer GaussianInt::content() const {
  Integer g;
  mpz_gcd(g.get_mpz_t(), re_.get_mpz_t(), im_.get_mpz_t());
  return g;
}

bool GaussianInt::divisible_by(const GaussianInt& d) const {
  if (d.is_zero()) return is_zero();
  const Integer n = d.norm();
  const GaussianInt t = *this * d.conj();
  return mpz_divisible_p(t.re_.get_mpz_t(), n.get_mpz_t()) && mpz_divisible_p(t.im_.get_mpz_t(), n.get_mpz_t());
}

GaussianInt GaussianInt::exact_div(const GaussianInt& d) const {
  if (!divisible_by(d) || d.is_zero()) throw DomainError("Gaussian division is not exact");
  const Integer n = d.norm();
  GaussianInt t = *this * d.conj();
  mpz_divexact(t.re_.get_mpz_t(), t.re_.get_mpz_t(), n.get_mpz_t());
  mpz_divexact(t.im_.get_mpz_t(), t.im_.get_mpz_t(), n.get_mpz_t());
  return t;
}

GaussianInt& GaussianInt::operator+=(const GaussianInt& o) {
  re_ += o.re_;
  im_ += o.im_;
  return *this;
}

GaussianInt& GaussianInt::operator-=(const GaussianInt& o) {
  re_ -= o.re_;
  im_ -= o.im_;
  return *this;
}

GaussianInt& GaussianInt::operator*=(const GaussianInt& o) {
  Integer r = re_ * o.re_ - im_ * o.im_;
  Integer i = re_ * o.im_ + im_ * o.re_;
  re_ = std::move(r);
  im_ = std::move(i);
  return *this;
}

GaussianInt GaussianInt::pow(unsigned long e) const {
  GaussianInt result(1), base = *this;
  while (e > 0) {
    if (e & 1UL) result *= base;
    e >>= 1;
    if (e) base *= base;
  }
  return result;
}

std::string GaussianInt::to_string() const {
  std::string s = re_.get_str();
  s += im_ < 0 ? "-" : "+";
  s += Integer(abs(im_)).get_str();
  s += "i";
  return s;
}

// ----------------------------------------------------------- GaussianRational

GaussianRational::GaussianRational(GaussianInt num, Integer den) : num_(std::move(num)), den_(std::move(den)) {
  if (den_ == 0) throw DomainError("zero denominator");
  normalize();
}

GaussianRational::GaussianRational(const Rational& re, const Rational& im) {
  Integer l;
  mpz_lcm(l.get_mpz_t(), re.get_den_mpz_t(), im.get_den_mpz_t());
  num_ = GaussianInt(Integer(re.get_num() * (l / re.get_den())), Integer(im.get_num() * (l / im.get_den())));
  den_ = l;
  normalize();
}

void GaussianRational::normalize() {
  if (den_ < 0) {
    den_ = -den_;
    num_ = -num_;
  }
  if (num_.is_zero()) {
    den_ = 1;
    return;
  }
  Integer g = num_.content();
  mpz_gcd(g.get_mpz_t(), g.get_mpz_t(), den_.get_mpz_t());
  if (g != 1) {
    num_ = GaussianInt(Integer(num_.re() / g), Integer(num_.im() / g));
    den_ /= g;
  }
}

Rational GaussianRational::real() const {
  Rational r(num_.re(), den_);
  r.canonicalize();
  return r;
}

Rational GaussianRational::imag() const {
  Rational r(num_.im(), den_);
  r.canonicalize();
  return r;
}

Rational GaussianRational::modulus_squared() const {
  Rational r(num_.norm(), Integer(den_ * den_));
  r.canonicalize();
  return r;
}

GaussianRational GaussianRational::inverse() const {
  if (is_zero()) throw DomainError("inverse of zero");
  // den / num = den * conj(num) / norm(num)
  return {num_.conj() * GaussianInt(den_), num_.norm()};
}

GaussianRational GaussianRational::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  GaussianInt n = num_.pow(static_cast<unsigned long>(e));
  return {std::move(n), ipow(den_, static_cast<unsigned long>(e))};
}

GaussianRational& GaussianRational::operator+=(const GaussianRational& o) {
  num_ = num_ * GaussianInt(o.den_) + o.num_ * GaussianInt(den_);
  den_ *= o.den_;
  normalize();
  return *this;
}

GaussianRational& GaussianRational::operator-=(const GaussianRational& o) {
  num_ = num_ * GaussianInt(o.den_) - o.num_ * GaussianInt(den_);
  den_ *= o.den_;
  normalize();
  return *this;
}

GaussianRational& GaussianRational::operator*=(const GaussianRational& o) {
  num_ *= o.num_;
  den_ *= o.den_;
  normalize();
  return *this;
}

GaussianRational& GaussianRational::operator/=(const GaussianRational& o) { return *this *= o.inverse(); }

std::string GaussianRational::to_string() const {
  const Rational re = real();
  const Rational im = imag();
  std::string s = pyjama::to_string(re);
  s += im < 0 ? "-" : "+";
  s += pyjama::to_string(Rational(abs(im)));
  s += "i";
  return s;
}

GaussianRational GaussianRational::parse(std::string_view text) {
  std::string s(text);
  s.erase(std::remove_if(s.begin(), s.end(), [](unsigned char c) { return std::isspace(c); }), s.end());
  if (s.empty()) throw ParseError("empty Gaussian rational");
  if (s.back() != 'i') return {parse_rational(s), Rational(0)};
  s.pop_back();
  // split at the last sign that is not leading and not directly after '/'
  std::size_t split = std::string::npos;
  for (std::size_t k = s.size(); k-- > 1;) {
    if ((s[k] == '+' || s[k] == '-') && s[k - 1] != '/') {
      split = k;
      break;
    }
  }
  // a bare "i" or "-i" has unit coefficient
  auto coeff = [&](std::string c) -> Rational {
    if (c.empty() || c == "+") return 1;
    if (c == "-") return -1;
    if (c.back() == '+' || c.back() == '-') throw ParseError("malformed Gaussian rational '" + std::string(text) + "'");
    return parse_rational(c);
  };
  if (split == std::string::npos) return {Rational(0), coeff(s)};
  return {parse_rational(s.substr(0, split)), coeff(s.substr(split))};
}

double GaussianRational::approx_re() const { return real().get_d(); }
double GaussianRational::approx_im() const { return imag().get_d(); }

bool canonical_less(const GaussianRational& a, const GaussianRational& b) {
  if (a.den() != b.den()) return a.den() < b.den();
  if (a.num().re() != b.num().re()) return a.num().re() < b.num().re();
  return a.num().im() < b.num().im();
}

std::ostream& operator<<(std::ostream& os, const GaussianInt& g) { return os << g.to_string(); }
std::ostream& operator<<(std::ostream& os, const GaussianRational& q) { return os << q.to_string(); }

// ----------------------------------------------------------------- sites

GaussianInt generator(PrimeSite site) {
  switch (site) {
    case PrimeSite::P5: return {1, 2};
    case PrimeSite::P5bar: return {1, -2};
    case PrimeSite::P13: return {2, 3};
    case PrimeSite::P13bar: return {2, -3};
  }
  return {1, 0};
}

unsigned long residue_norm(PrimeSite site) {
  return (site == PrimeSite::P5 || site == PrimeSite::P5bar) ? 5UL : 13UL;
}

const char* site_name(PrimeSite site) {
  switch (site) {
    case PrimeSite::P5: return "P5";
    case PrimeSite::P5bar: return "P5bar";
    case PrimeSite::P13: return "P13";
    case PrimeSite::P13bar: return "P13bar";
  }
  return "?";
}

PrimeSite conjugate_site(PrimeSite site) {
  switch (site) {
    case PrimeSite::P5: return PrimeSite::P5bar;
    case PrimeSite::P5bar: return PrimeSite::P5;
    case PrimeSite::P13: return PrimeSite::P13bar;
    case PrimeSite::P13bar: return PrimeSite::P13;
  }
  return site;
}

long valuation(const GaussianInt& g, PrimeSite site) {
  if (g.is_zero()) throw DomainError("valuation of zero undefined");
  const GaussianInt pi = generator(site);
  const GaussianInt pi_conj = pi.conj();
  const unsigned long p = residue_norm(site);
  GaussianInt cur = g;
  long v = 0;
  for (;;) {
    // cur / pi = cur * conj(pi) / p
    GaussianInt t = cur * pi_conj;
    if (!mpz_divisible_ui_p(t.re().get_mpz_t(), p) || !mpz_divisible_ui_p(t.im().get_mpz_t(), p)) break;
    cur = GaussianInt(Integer(t.re() / p), Integer(t.im() / p));
    ++v;
  }
  return v;
}

long valuation(const GaussianRational& q, PrimeSite site) {
  if (q.is_zero()) throw DomainError("valuation of zero undefined");
  // den is a rational integer and p splits as pi * conj(pi), so v_pi(den) = v_p(den).
  return valuation(q.num(), site) - prime_exponent(q.den(), residue_norm(site));
}

Rational abs_at(const GaussianRational& q, PrimeSite site) {
  const long v = valuation(q, site);
  const Integer p(residue_norm(site));
  if (v >= 0) return Rational(1, ipow(p, static_cast<unsigned long>(v)));
  return Rational(ipow(p, static_cast<unsigned long>(-v)));
}

const GaussianInt& p5() {
  static const GaussianInt g(1, 2);
  return g;
}
const GaussianInt& p5bar() {
  static const GaussianInt g(1, -2);
  return g;
}
const GaussianInt& p13() {
  static const GaussianInt g(2, 3);
  return g;
}
const GaussianInt& p13bar() {
  static const GaussianInt g(2, -3);
  return g;
}
const GaussianRational& theta5() {
  static const GaussianRational t = GaussianRational(p5()) / GaussianRational(p5bar());
  return t;
}
const GaussianRational& theta13() {
  static const GaussianRational t = GaussianRational(p13()) / GaussianRational(p13bar());
  return t;
}

GaussianRational theta_power(long r, long s) { return theta5().pow(r) * theta13().pow(s); }

std::vector<GaussianRational> theta_set(unsigned N) {
  std::vector<GaussianRational> out;
  out.reserve(static_cast<std::size_t>(N + 1) * (N + 1));
  GaussianRational a(1);
  for (unsigned r = 0; r <= N; ++r) {
    GaussianRational b = a;
    for (unsigned s = 0; s <= N; ++s) {
      out.push_back(b);
      b *= theta13();
    }
    a *= theta5();
  }
  return out;
}

GaussianInt min_period_multiplier(unsigned N) { return p5bar().pow(N) * p13bar().pow(N); }

std::vector<GaussianRational> unit_circle_elements(unsigned long t_max) {
  if (t_max < 1) throw DomainError("t_max must be positive");
  // Every unit of Q(i) is u * g/conj(g) = u * g^2/norm(g) with g = m + ni primitive
  // (gcd(m, n) = 1, m + n odd); the fraction is then already in lowest terms.
  auto less = [](const GaussianRational& a, const GaussianRational& b) { return canonical_less(a, b); };
  std::set<GaussianRational, decltype(less)> found(less);
  const GaussianInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  const long bound = static_cast<long>(t_max);
  for (long m = 0; m * m <= bound; ++m) {
    for (long n = 0; m * m + n * n <= bound; ++n) {
      if ((m + n) % 2 == 0) continue;
      if (std::gcd(m, n) != 1) continue;
      const GaussianInt g(m, n);
      const GaussianRational base(g * g, g.norm());
      for (const auto& u : units) found.insert(base * GaussianRational(u));
    }
  }
  return {found.begin(), found.end()};
}

namespace {

// Strip every factor 5 and 13 from n; true if nothing else remains.
bool only_5_13(Integer n, long* e5, long* e13) {
  n = abs(n);
  *e5 = 0;
  *e13 = 0;
  while (mpz_divisible_ui_p(n.get_mpz_t(), 5)) {
    n /= 5;
    ++*e5;
  }
  while (mpz_divisible_ui_p(n.get_mpz_t(), 13)) {
    n /= 13;
    ++*e13;
  }
  return n == 1;
}

}  // namespace

bool in_A(const GaussianRational& q) {
  if (q.is_zero()) return true;
  long e5 = 0, e13 = 0;
  if (!only_5_13(q.den(), &e5, &e13)) return false;
  return valuation(q, PrimeSite::P5) >= 0 && valuation(q, PrimeSite::P13) >= 0;
}

bool in_A7(const GaussianRational& q) {
  if (q.is_zero()) return true;
  const long e7 = prime_exponent(q.den(), 7);
  return in_A(q * GaussianRational(GaussianInt(ipow(7, static_cast<unsigned long>(e7)))));
}

// ------------------------------------------------------------ residues mod n

GaussianInt reduce_mod(const GaussianInt& g, const Integer& n) {
  Integer r, i;
  mpz_fdiv_r(r.get_mpz_t(), g.re().get_mpz_t(), n.get_mpz_t());
  mpz_fdiv_r(i.get_mpz_t(), g.im().get_mpz_t(), n.get_mpz_t());
  return {r, i};
}

GaussianInt mul_mod(const GaussianInt& a, const GaussianInt& b, const Integer& n) { return reduce_mod(a * b, n); }

GaussianInt pow_mod(GaussianInt a, Integer e, const Integer& n) {
  GaussianInt r = reduce_mod(GaussianInt(1), n);
  a = reduce_mod(a, n);
  while (e > 0) {
    if (mpz_odd_p(e.get_mpz_t())) r = mul_mod(r, a, n);
    e >>= 1;
    if (e > 0) a = mul_mod(a, a, n);
  }
  return r;
}

GaussianInt inverse_mod(const GaussianInt& a, const Integer& n) {
  const Integer nm = a.norm();
  Integer inv;
  if (mpz_invert(inv.get_mpz_t(), nm.get_mpz_t(), n.get_mpz_t()) == 0) {
    if (n == 1) return {0, 0};
    throw DomainError("not a unit modulo " + n.get_str());
  }
  return reduce_mod(a.conj() * GaussianInt(inv), n);
}

namespace {

std::map<Integer, unsigned long> factor(Integer n) {
  std::map<Integer, unsigned long> f;
  n = abs(n);
  for (Integer d = 2; d * d <= n; ++d) {
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      ++f[d];
      n /= d;
    }
  }
  if (n > 1) ++f[n];
  return f;
}

}  // namespace

Integer gaussian_unit_group_order(const Integer& n) {
  Integer order = 1;
  for (const auto& [l, e] : factor(n)) {
    if (l == 2) {
      order *= ipow(2, 2 * e - 1);
    } else if (mpz_fdiv_ui(l.get_mpz_t(), 4) == 1) {
      const Integer t = ipow(l, e) - ipow(l, e - 1);
      order *= t * t;
    } else {
      order *= ipow(l, 2 * e) - ipow(l, 2 * e - 2);
    }
  }
  return order;
}

Integer multiplicative_order_mod(const GaussianInt& a, const Integer& n) {
  if (n == 1) return 1;
  const GaussianInt one(1);
  Integer ord = gaussian_unit_group_order(n);
  if (pow_mod(a, ord, n) != one) throw DomainError("not a unit modulo " + n.get_str());
  for (const auto& [q, e] : factor(ord)) {
    (void)e;
    while (mpz_divisible_p(ord.get_mpz_t(), q.get_mpz_t()) && pow_mod(a, Integer(ord / q), n) == one) ord /= q;
  }
  return ord;
}

}  // namespace pyjama
