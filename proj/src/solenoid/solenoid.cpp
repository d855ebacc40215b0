#include "pyjama/solenoid.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <numbers>

#include "pyjama/errors.hpp"
#include "pyjama/kernels.hpp"

namespace pyjama {

// ------------------------------------------------------------- ComplexCoord

const GaussianRational& ComplexCoord::value() const {
  if (!exact_) throw ModeError("exact value requested from a floating complex coordinate");
  return q_;
}

std::complex<double> ComplexCoord::approx() const {
  if (!exact_) return f_;
  return {q_.approx_re(), q_.approx_im()};
}

ComplexCoord ComplexCoord::operator-() const {
  if (exact_) return ComplexCoord(-q_);
  return ComplexCoord(-f_);
}

ComplexCoord operator+(const ComplexCoord& x, const ComplexCoord& y) {
  if (x.exact_ && y.exact_) return ComplexCoord(x.q_ + y.q_);
  return ComplexCoord(x.approx() + y.approx());
}

ComplexCoord operator*(const ComplexCoord& x, const GaussianRational& q) {
  if (x.exact_) return ComplexCoord(x.q_ * q);
  return ComplexCoord(x.f_ * std::complex<double>(q.approx_re(), q.approx_im()));
}

std::string ComplexCoord::to_string() const {
  if (exact_) return q_.to_string();
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.17g%+.17gi", f_.real(), f_.imag());
  return buf;
}

double torus_norm(const TorusValue& t) {
  const double v = t.approx();
  return std::min(v, 1.0 - v);
}

// ------------------------------------------------------------ SolenoidPoint

SolenoidPoint::SolenoidPoint() : z_(GaussianRational(0)), a_(PadicNumber::zero(5)), b_(PadicNumber::zero(13)) {}

SolenoidPoint::SolenoidPoint(ComplexCoord z, PadicNumber a, PadicNumber b)
    : z_(std::move(z)), a_(std::move(a)), b_(std::move(b)) {
  if (a_.prime() != 5 || b_.prime() != 13) throw DomainError("solenoid components must lie in Q_5 and Q_13");
}

SolenoidPoint SolenoidPoint::from_complex(const ComplexCoord& w) {
  return {-w, PadicNumber::zero(5), PadicNumber::zero(13)};
}

PadicNumber diagonal_component(const GaussianRational& q, unsigned long p, long k) {
  return embed(q, p, k) * PadicNumber::from_rational(Rational(1, 2), p, k);
}

SolenoidPoint SolenoidPoint::diagonal(const GaussianRational& q, long k) {
  return {ComplexCoord(q), diagonal_component(q, 5, k), diagonal_component(q, 13, k)};
}

SolenoidPoint operator+(const SolenoidPoint& x, const SolenoidPoint& y) {
  return {x.z_ + y.z_, x.a_ + y.a_, x.b_ + y.b_};
}

SolenoidPoint operator-(const SolenoidPoint& x, const SolenoidPoint& y) {
  return {x.z_ - y.z_, x.a_ - y.a_, x.b_ - y.b_};
}

std::string SolenoidPoint::to_string() const {
  return "(" + z_.to_string() + "; " + a_.to_string() + "; " + b_.to_string() + ")";
}

// ---------------------------------------------------------------- reduction

namespace {

long working_precision(const SolenoidPoint& x) {
  return std::max({x.a().precision(), x.b().precision(), 1L});
}

// Relative digits for a shift image so that it does not coarsen a component known
// to absolute precision `abs` (or `fallback` digits when the component is exact).
long shift_digits(const PadicNumber& c, long shift_valuation, long fallback) {
  if (c.absolute_precision() == PadicNumber::kExact) return fallback;
  return std::max(1L, c.absolute_precision() - shift_valuation + 1);
}

// r = c / pbar^e in A with i_p(r)/2 == {a}_p mod Z_p and r integral at the other prime.
GaussianRational fractional_shift(const PadicNumber& a, unsigned long p) {
  const Rational f = frac_part(a);
  if (f == 0) return GaussianRational(0);
  const long e = prime_exponent(f.get_den(), p);
  const GaussianInt pbar = p == 5 ? p5bar() : p13bar();
  const Integer m = ipow(Integer(p), static_cast<unsigned long>(e));
  // i_p(pbar) = p * u with u a unit
  const Integer u = embed(GaussianRational(pbar), p, e).unit();
  Integer ue;
  mpz_powm_ui(ue.get_mpz_t(), u.get_mpz_t(), static_cast<unsigned long>(e), m.get_mpz_t());
  Integer c = 2 * f.get_num() * ue;
  mpz_fdiv_r(c.get_mpz_t(), c.get_mpz_t(), m.get_mpz_t());
  return GaussianRational(GaussianInt(c), 1) / GaussianRational(pbar.pow(static_cast<unsigned long>(e)));
}

SolenoidPoint subtract_diagonal(const SolenoidPoint& x, const GaussianRational& r, long fallback) {
  if (r.is_zero()) return x;
  const long v5 = valuation(r, PrimeSite::P5bar);
  const long v13 = valuation(r, PrimeSite::P13bar);
  const PadicNumber a = diagonal_component(r, 5, shift_digits(x.a(), v5, fallback));
  const PadicNumber b = diagonal_component(r, 13, shift_digits(x.b(), v13, fallback));
  return {x.z() - ComplexCoord(r), x.a() - a, x.b() - b};
}

}  // namespace

Reduction reduce_to_fundamental(const SolenoidPoint& x) {
  const long fallback = std::max(working_precision(x), SolenoidPoint::kDefaultPrecision);
  const GaussianRational r = fractional_shift(x.a(), 5) + fractional_shift(x.b(), 13);
  SolenoidPoint y = subtract_diagonal(x, r, fallback);
  GaussianInt g;
  if (y.exact()) {
    const GaussianRational& z = y.z().value();
    g = GaussianInt(floor_of(z.real()), floor_of(z.imag()));
  } else {
    const std::complex<double> z = y.z().approx();
    g = GaussianInt(static_cast<long>(std::floor(z.real())), static_cast<long>(std::floor(z.imag())));
  }
  y = subtract_diagonal(y, GaussianRational(g), fallback);
  GaussianRational shift = r + GaussianRational(g);
  if (!y.exact()) {
    // rounding can land exactly on 1
    std::complex<double> z = y.z().approx();
    GaussianInt fix(z.real() >= 1.0 ? 1 : 0, z.imag() >= 1.0 ? 1 : 0);
    if (!fix.is_zero()) {
      y = subtract_diagonal(y, GaussianRational(fix), fallback);
      shift += GaussianRational(fix);
    }
  }
  return {y, shift};
}

bool same_point(const SolenoidPoint& x, const SolenoidPoint& y, double tol) {
  const Reduction red = reduce_to_fundamental(x - y);
  if (!red.point.a().is_zero() || !red.point.b().is_zero()) return false;
  if (red.point.exact()) return red.point.z().value().is_zero();
  const std::complex<double> z = red.point.z().approx();
  auto near0 = [tol](double v) { return std::min(v, 1.0 - v) <= tol; };
  return near0(z.real()) && near0(z.imag());
}

// --------------------------------------------------------- action, characters

SolenoidPoint act(const GaussianRational& q, const SolenoidPoint& x) {
  if (!in_A(q)) throw DomainError("action of " + q.to_string() + " is not defined: it does not lie in A");
  const long k = working_precision(x);
  return {x.z() * q, x.a() * embed(q, 5, k), x.b() * embed(q, 13, k)};
}

TorusValue evaluate(const SolenoidPoint& x, const GaussianRational& r) {
  if (!in_A(r)) throw DomainError("characters are only evaluated at elements of A");
  const long k = working_precision(x);
  Rational padic = 0;
  if (!x.a().is_exact_zero()) padic += frac_part(x.a() * embed(r, 5, k));
  if (!x.b().is_exact_zero()) padic += frac_part(x.b() * embed(r, 13, k));
  TorusValue out;
  if (x.exact()) {
    const GaussianRational zr = x.z().value() * r;
    Rational v = padic - zr.real();
    v -= Rational(floor_of(v));
    out.exact = true;
    out.q = v;
    out.f = v.get_d();
  } else {
    const std::complex<double> zr = x.z().approx() * std::complex<double>(r.approx_re(), r.approx_im());
    double v = padic.get_d() - zr.real();
    v -= std::floor(v);
    if (v >= 1.0) v = 0.0;
    out.exact = false;
    out.f = v;
  }
  return out;
}

bool stripe_membership(const SolenoidPoint& x, const GaussianRational& theta, const Rational& eps) {
  if (eps <= 0 || eps >= Rational(1, 2)) throw DomainError("stripe half-width must lie in (0, 1/2)");
  const TorusValue t = evaluate(x, theta);
  if (t.exact) {
    const Rational d = std::min(t.q, Rational(1 - t.q));
    return d < eps;
  }
  return torus_norm(t) < eps.get_d();
}

// ------------------------------------------------------------ classification

Classification classify_point(const GaussianRational& q) {
  Classification c;
  if (q.is_zero()) return c;
  c.abs_p5 = abs_at(q, PrimeSite::P5);
  c.abs_p13 = abs_at(q, PrimeSite::P13);
  c.periodic = c.abs_p5 <= 1 && c.abs_p13 <= 1;
  return c;
}

ThetaWitness torsion_to_periodic(const GaussianRational& q) {
  ThetaWitness w;
  w.theta = GaussianRational(1);
  if (q.is_zero()) return w;
  w.r = std::max(0L, -valuation(q, PrimeSite::P5));
  w.s = std::max(0L, -valuation(q, PrimeSite::P13));
  w.theta = theta_power(w.r, w.s);
  return w;
}

namespace {

std::vector<Integer> divisors(Integer n) {
  std::vector<std::pair<Integer, unsigned>> f;
  for (Integer d = 2; d * d <= n; ++d) {
    unsigned e = 0;
    while (mpz_divisible_p(n.get_mpz_t(), d.get_mpz_t())) {
      n /= d;
      ++e;
    }
    if (e) f.emplace_back(d, e);
  }
  if (n > 1) f.emplace_back(n, 1);
  std::vector<Integer> out{1};
  for (const auto& [p, e] : f) {
    const std::size_t base = out.size();
    Integer pk = 1;
    for (unsigned k = 1; k <= e; ++k) {
      pk *= p;
      for (std::size_t i = 0; i < base; ++i) out.push_back(out[i] * pk);
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

Integer lcm(const Integer& a, const Integer& b) {
  Integer r;
  mpz_lcm(r.get_mpz_t(), a.get_mpz_t(), b.get_mpz_t());
  return r;
}

}  // namespace

Integer period_exponent(const GaussianRational& q) {
  if (q.is_zero()) return 1;
  if (!classify_point(q).periodic) throw DomainError("period exponent needs a periodic point");
  Integer den = q.den();
  const long a5 = prime_exponent(den, 5);
  const long a13 = prime_exponent(den, 13);
  const Integer n = den / (ipow(5, a5) * ipow(13, a13));
  if (n == 1) return 1;
  // q == h / (P n) with P = p5bar^a5 p13bar^a13, and 1/P is a unit of A, so q == h c / n mod A
  // for c P == 1 mod n.
  const GaussianInt h = q.num().exact_div(p5().pow(a5) * p13().pow(a13));
  const GaussianInt P = p5bar().pow(a5) * p13bar().pow(a13);
  const GaussianInt g = mul_mod(h, inverse_mod(P, n), n);
  const std::vector<Integer> divs = divisors(gaussian_unit_group_order(n));
  auto least = [&](const GaussianInt& pi, const GaussianInt& pibar) {
    const GaussianInt t = mul_mod(pi, inverse_mod(pibar, n), n);
    for (const Integer& d : divs) {
      const GaussianInt diff = pow_mod(t, d, n) - GaussianInt(1);
      if (mul_mod(diff, g, n).is_zero()) return d;
    }
    throw DomainError("no period found");  // unreachable: the group order always works
  };
  return lcm(least(p5(), p5bar()), least(p13(), p13bar()));
}

SolenoidPoint ExactPoint::to_point(long k) const {
  return SolenoidPoint::diagonal(q, k) + SolenoidPoint::from_complex(ComplexCoord(offset_w));
}

PeriodicSet periodic_dense_set(unsigned n) {
  if (n < 1) throw DomainError("periodic_dense_set needs n >= 1");
  const Integer N = ipow(7, n);
  PeriodicSet out;
  const unsigned long side = N.get_ui();
  out.points.reserve(side * side);
  for (unsigned long x = 0; x < side; ++x)
    for (unsigned long y = 0; y < side; ++y)
      out.points.push_back({GaussianRational(GaussianInt(Integer(x), Integer(y)), N), GaussianRational(0)});
  const Integer o5 = multiplicative_order_mod(mul_mod(p5(), inverse_mod(p5bar(), N), N), N);
  const Integer o13 = multiplicative_order_mod(mul_mod(p13(), inverse_mod(p13bar(), N), N), N);
  out.m = lcm(o5, o13);
  return out;
}

// --------------------------------------------------------------- sweeps

namespace {

double max_cyclic_gap(std::vector<double> v) {
  if (v.empty()) return 1.0;
  std::sort(v.begin(), v.end());
  double gap = v.front() + 1.0 - v.back();
  for (std::size_t i = 1; i < v.size(); ++i) gap = std::max(gap, v[i] - v[i - 1]);
  return gap;
}

}  // namespace

SweepResult orbit_eval_sweep(const SolenoidPoint& x, long m, long M, bool keep_rows) {
  if (m < 1 || M < 0) throw DomainError("orbit sweep needs m >= 1 and M >= 0");
  const std::size_t side = static_cast<std::size_t>(M + 1);
  std::vector<double> values(side * side);
  const bool trivial_padic = x.a().is_exact_zero() && x.b().is_exact_zero();
  if (!x.exact() && trivial_padic) {
    // evaluate(act(theta, x), 1) = Re(-z theta) mod 1 with theta on the unit circle
    const double a5 = std::arg(std::complex<double>(-3.0, 4.0));
    const double a13 = std::arg(std::complex<double>(-5.0, 12.0));
    std::vector<double> cre(side * side), cim(side * side);
    for (std::size_t r = 0; r < side; ++r)
      for (std::size_t s = 0; s < side; ++s) {
        const double ang =
            std::fmod(static_cast<double>(m) * (static_cast<double>(r) * a5 + static_cast<double>(s) * a13),
                      2.0 * std::numbers::pi);
        cre[r * side + s] = std::cos(ang);
        cim[r * side + s] = std::sin(ang);
      }
    const std::complex<double> w = -x.z().approx();
    kernels::torus_project(cre.data(), cim.data(), cre.size(), w.real(), w.imag(), values.data());
  } else {
    // evaluate(act(theta, x), 1) = evaluate(x, theta)
    const GaussianRational t5 = theta5().pow(m);
    const GaussianRational t13 = theta13().pow(m);
    GaussianRational row(1);
    for (std::size_t r = 0; r < side; ++r) {
      GaussianRational theta = row;
      for (std::size_t s = 0; s < side; ++s) {
        values[r * side + s] = evaluate(x, theta).approx();
        theta *= t13;
      }
      row *= t5;
    }
  }
  SweepResult out;
  if (keep_rows) {
    out.rows.reserve(values.size());
    for (std::size_t r = 0; r < side; ++r)
      for (std::size_t s = 0; s < side; ++s)
        out.rows.push_back({static_cast<long>(r), static_cast<long>(s), values[r * side + s]});
  }
  out.max_gap = max_cyclic_gap(std::move(values));
  return out;
}

double distance_upper(const SolenoidPoint& x, const SolenoidPoint& y, long search_bound) {
  if (search_bound < 0) throw DomainError("search bound must be nonnegative");
  const SolenoidPoint d = x - y;
  const long k = working_precision(d) + 2 * search_bound + 2;
  double best = HUGE_VAL;
  for (long e5 = 0; e5 <= search_bound; ++e5) {
    for (long e13 = 0; e13 <= search_bound; ++e13) {
      const GaussianRational inv_den =
          GaussianRational(p5bar().pow(static_cast<unsigned long>(e5)) * p13bar().pow(static_cast<unsigned long>(e13)))
              .inverse();
      for (long gr = -search_bound; gr <= search_bound; ++gr) {
        for (long gi = -search_bound; gi <= search_bound; ++gi) {
          const GaussianRational r = GaussianRational(GaussianInt(gr, gi)) * inv_den;
          const SolenoidPoint s = subtract_diagonal(d, r, k);
          double zc;
          if (s.exact())
            zc = std::sqrt(s.z().value().modulus_squared().get_d());
          else
            zc = std::abs(s.z().approx());
          const double total = zc + s.a().norm_bound().get_d() + s.b().norm_bound().get_d();
          best = std::min(best, total);
        }
      }
    }
  }
  return best;
}

}  // namespace pyjama
