#include "pyjama/approximation.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>
#include <vector>

#include "pyjama/errors.hpp"

namespace pyjama {

namespace {

Integer dot(const GaussianInt& u, const GaussianInt& v) { return u.re() * v.re() + u.im() * v.im(); }

Integer ppow(unsigned long p, long e) { return ipow(Integer(p), static_cast<unsigned long>(e)); }

// Least t >= 0 with p^-t <= delta.
long digits_for(unsigned long p, const Rational& delta) {
  long t = 0;
  Rational bound = 1;
  while (bound > delta) {
    bound /= p;
    ++t;
  }
  return t;
}

GaussianInt bar_of(unsigned long p) { return p == 5 ? p5bar() : p13bar(); }
unsigned long other_prime(unsigned long p) { return p == 5 ? 13 : 5; }

void check_delta(const Rational& delta) {
  if (delta <= 0) throw DomainError("approximation tolerance must be positive");
}

// beta in [0, p^N) with beta == target * i_p(den) mod p^N.
Integer congruence_target(const PadicNumber& target, const GaussianRational& den, long N) {
  if (target.is_exact_zero()) return 0;
  const PadicNumber scaled = target * embed(den, target.prime(), N + 1);
  return scaled.residue(N);
}

Rational padic_residual(const GaussianRational& q, const PadicNumber& target, long digits) {
  const unsigned long p = target.prime();
  long k = digits + 2;
  if (!q.is_zero()) k += std::max(0L, -valuation(q, p == 5 ? PrimeSite::P5bar : PrimeSite::P13bar));
  return (embed(q, p, k) - target).norm_bound();
}

}  // namespace

std::array<GaussianInt, 2> lagrange_reduce(GaussianInt b1, GaussianInt b2) {
  if (b1.is_zero() || b2.is_zero()) throw DomainError("degenerate lattice basis");
  if (b1.re() * b2.im() - b1.im() * b2.re() == 0) throw DomainError("degenerate lattice basis");
  if (b1.norm() > b2.norm()) std::swap(b1, b2);
  for (;;) {
    const Integer mu = round_of(ratio(dot(b1, b2), b1.norm()));
    b2 -= GaussianInt(mu) * b1;
    if (b2.norm() >= b1.norm()) break;
    std::swap(b1, b2);
  }
  return {b1, b2};
}

GaussianInt closest_vector(const GaussianInt& b1_in, const GaussianInt& b2_in, const GaussianRational& target) {
  const auto [b1, b2] = lagrange_reduce(b1_in, b2_in);
  const Integer det = b1.re() * b2.im() - b1.im() * b2.re();
  const Rational tr = target.real(), ti = target.imag();
  // target = x b1 + y b2
  const Rational x = (tr * Rational(b2.im()) - ti * Rational(b2.re())) / Rational(det);
  const Rational y = (ti * Rational(b1.re()) - tr * Rational(b1.im())) / Rational(det);
  const Integer x0 = round_of(x), y0 = round_of(y);
  GaussianInt best;
  Rational best_d = -1;
  for (int dx = -1; dx <= 1; ++dx) {
    for (int dy = -1; dy <= 1; ++dy) {
      const GaussianInt v = GaussianInt(Integer(x0 + dx)) * b1 + GaussianInt(Integer(y0 + dy)) * b2;
      const Rational d = (GaussianRational(v) - target).modulus_squared();
      if (best_d < 0 || d < best_d) {
        best_d = d;
        best = v;
      }
    }
  }
  return best;
}

ApproxCertificate strong_approx(const GaussianRational& z, const PadicNumber& b, const Rational& delta) {
  check_delta(delta);
  const unsigned long p = b.prime();
  const unsigned long l = other_prime(p);
  const long t = digits_for(p, delta);
  if (b.absolute_precision() < t)
    throw PrecisionError("target known to p^" + std::to_string(b.absolute_precision()) + ", tolerance needs p^" +
                         std::to_string(t));
  const long E = (!b.is_zero() && b.valuation() < 0) ? -b.valuation() : 0;
  // coset spacing in q-space: covering radius^2 = p^t / (2 l^F)
  long F = 0;
  while (ratio(ppow(p, t), 2 * ppow(l, F)) > delta * delta) ++F;
  const GaussianInt den = bar_of(p).pow(static_cast<unsigned long>(E)) * bar_of(l).pow(static_cast<unsigned long>(F));
  const long N = t + E;
  const Integer beta = congruence_target(b, GaussianRational(den), N);
  const GaussianInt pi = bar_of(p).pow(static_cast<unsigned long>(N));
  const GaussianRational target = z * GaussianRational(den) - GaussianRational(GaussianInt(beta));
  const GaussianInt w = closest_vector(pi, GaussianInt(0, 1) * pi, target);
  ApproxCertificate c;
  c.q = GaussianRational(GaussianInt(beta) + w) / GaussianRational(den);
  c.complex_residual_sq = (c.q - z).modulus_squared();
  const Rational res = padic_residual(c.q, b, t + E);
  (p == 5 ? c.residual_5 : c.residual_13) = res;
  if (c.complex_residual_sq > delta * delta || res > delta || !in_A(c.q))
    throw Error("strong approximation certificate failed verification");
  return c;
}

ApproxCertificate strong_approx_3way(const GaussianRational& z, const PadicNumber& a, const PadicNumber& b,
                                     const Rational& delta) {
  check_delta(delta);
  if (a.prime() != 5 || b.prime() != 13) throw DomainError("targets must lie in Q_5 and Q_13");
  const long t5 = digits_for(5, delta), t13 = digits_for(13, delta);
  if (a.absolute_precision() < t5 || b.absolute_precision() < t13)
    throw PrecisionError("p-adic targets are not known to the requested tolerance");
  const long E5 = (!a.is_zero() && a.valuation() < 0) ? -a.valuation() : 0;
  const long E13 = (!b.is_zero() && b.valuation() < 0) ? -b.valuation() : 0;
  const Integer spacing = ppow(5, t5) * ppow(13, t13);
  long G = 0;
  while (ratio(spacing, 2 * ppow(49, G)) > delta * delta) ++G;
  const GaussianInt den = p5bar().pow(static_cast<unsigned long>(E5)) * p13bar().pow(static_cast<unsigned long>(E13)) *
                          GaussianInt(ppow(7, G));
  const long N5 = t5 + E5, N13 = t13 + E13;
  const Integer m5 = ppow(5, N5), m13 = ppow(13, N13);
  const Integer b5 = congruence_target(a, GaussianRational(den), N5);
  const Integer b13 = congruence_target(b, GaussianRational(den), N13);
  // rational CRT: beta == b5 mod 5^N5, beta == b13 mod 13^N13
  Integer inv;
  mpz_invert(inv.get_mpz_t(), m5.get_mpz_t(), m13.get_mpz_t());
  Integer beta = b5 + m5 * ((b13 - b5) * inv);
  const Integer mm = m5 * m13;
  mpz_fdiv_r(beta.get_mpz_t(), beta.get_mpz_t(), mm.get_mpz_t());
  const GaussianInt pi = p5bar().pow(static_cast<unsigned long>(N5)) * p13bar().pow(static_cast<unsigned long>(N13));
  const GaussianRational target = z * GaussianRational(den) - GaussianRational(GaussianInt(beta));
  const GaussianInt w = closest_vector(pi, GaussianInt(0, 1) * pi, target);
  ApproxCertificate c;
  c.q = GaussianRational(GaussianInt(beta) + w) / GaussianRational(den);
  c.complex_residual_sq = (c.q - z).modulus_squared();
  c.residual_5 = padic_residual(c.q, a, N5);
  c.residual_13 = padic_residual(c.q, b, N13);
  c.denominator_exponent_7 = G;
  if (c.complex_residual_sq > delta * delta || c.residual_5 > delta || c.residual_13 > delta || !in_A7(c.q))
    throw Error("three-way approximation certificate failed verification");
  return c;
}

// ---------------------------------------------------------------- cosets

bool coset_contains(const CosetSpec& H, const PadicNumber& y) {
  const unsigned long p = H.p;
  if (p != 5 && p != 13) throw DomainError("coset prime must be 5 or 13");
  if (H.m < 1 || H.precision < 1) throw DomainError("coset needs m >= 1 and precision >= 1");
  if (y.is_zero()) throw PrecisionError("coset membership of an inexact zero is not determined");
  const long k = H.precision;
  const PadicNumber w = y / H.representative;
  if (w.precision() < k) throw PrecisionError("coset membership needs " + std::to_string(k) + " digits");
  const long v = w.valuation();
  if (v % H.m != 0) return false;
  // i_p(theta_p) has valuation -1
  const GaussianRational theta_p = p == 5 ? theta5() : theta13();
  const GaussianRational theta_o = p == 5 ? theta13() : theta5();
  const long j = -v / H.m;
  const PadicNumber u = w / embed(theta_p.pow(H.m * j), p, k);
  const Integer s = embed(theta_o.pow(H.m), p, k).residue(k);
  const Integer d = unit_order_mod(s, p, k);
  const Integer mod = ppow(p, k);
  Integer r;
  const Integer ur = u.residue(k);
  mpz_powm(r.get_mpz_t(), ur.get_mpz_t(), d.get_mpz_t(), mod.get_mpz_t());
  return r == 1;
}

CosetElement coset_element(const Rational& mu, const Rational& nu, const CosetSpec& H) {
  if (mu <= 0 || nu <= 0) throw DomainError("coset_element needs mu, nu > 0");
  const unsigned long p = H.p;
  if (p != 5 && p != 13) throw DomainError("coset prime must be 5 or 13");
  const unsigned long l = other_prime(p);
  const PrimeSite site_p = p == 5 ? PrimeSite::P5bar : PrimeSite::P13bar;
  const PrimeSite site_l = p == 5 ? PrimeSite::P13bar : PrimeSite::P5bar;
  const long k = H.precision;
  const GaussianRational y = GaussianRational(bar_of(l)) / GaussianRational(bar_of(p).pow(10));
  // representatives c * pbar^j, 1 <= c < p^k, 0 <= j < m
  const Integer cmax = ppow(p, k) - 1;
  const Rational C2 = std::max({Rational(cmax * cmax * ppow(p, H.m - 1)), Rational(1), Rational(ppow(p, 2 * (H.m - 1)))});
  const Rational mu2 = mu * mu;
  const Rational ylen2 = y.modulus_squared();
  unsigned long n = 0;
  Rational y_len2 = 1;  // |y^n|^2
  for (;;) {
    const Rational l_abs2(1, ppow(l, 2 * static_cast<long>(n)));
    const Rational p_abs2(ppow(p, 20 * static_cast<long>(n)));
    if (y_len2 * C2 <= mu2 && l_abs2 * C2 <= mu2 && p_abs2 >= C2 * nu * nu) break;
    y_len2 *= ylen2;
    ++n;
  }
  const GaussianRational yn = y.pow(static_cast<long>(n));
  for (long j = 0; j < H.m; ++j) {
    const GaussianRational pj(bar_of(p).pow(static_cast<unsigned long>(j)));
    for (Integer c = 1; c <= cmax; ++c) {
      if (mpz_divisible_ui_p(c.get_mpz_t(), p)) continue;
      const GaussianRational x = GaussianRational(GaussianInt(c)) * pj;
      const GaussianRational r = x * yn;
      if (!coset_contains(H, embed(r, p, k))) continue;
      if (r.modulus_squared() > mu2 || abs_at(r, site_l) > mu || abs_at(r, site_p) < nu || !in_A(r))
        throw Error("coset element failed verification");
      return {r, x, y, n};
    }
  }
  throw PrecisionError("no coset representative found at precision " + std::to_string(k));
}

// --------------------------------------------------------------- density

DensityReport semigroup_density(const Rational& eta, const Rational& delta) {
  if (eta <= 0 || eta >= 1) throw DomainError("eta must lie in (0, 1)");
  if (delta <= 0 || delta >= 1) throw DomainError("delta must lie in (0, 1)");
  std::vector<Rational> pts;
  for (Rational a = eta; a <= 1; a *= 2)
    for (Rational b = a; b <= 1; b *= 3) pts.push_back(b);
  DensityReport rep;
  rep.sample_size = pts.size();
  pts.push_back(0);
  pts.push_back(1);
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  Rational best = -1;
  std::pair<Rational, Rational> w;
  for (std::size_t i = 1; i < pts.size(); ++i) {
    const Rational g = pts[i] - pts[i - 1];
    if (g > best) {
      best = g;
      w = {pts[i - 1], pts[i]};
    }
  }
  rep.max_gap_exact = best;
  rep.max_gap = best.get_d();
  rep.witness_exact = w;
  rep.witness = {w.first.get_d(), w.second.get_d()};
  rep.dense = best <= delta;
  return rep;
}

DensityReport circle_density(const GaussianRational& theta, const GaussianRational& t, long M) {
  if (theta.modulus_squared() != 1) throw DomainError("rotation must have modulus exactly 1");
  if (t.is_zero()) throw DomainError("circle radius must be positive");
  if (M < 0) throw DomainError("M must be nonnegative");
  GaussianRational pw(1);
  for (int k = 1; k <= 12; ++k) {
    pw *= theta;
    if (pw == GaussianRational(1)) throw DomainError("rotation is a root of unity (order " + std::to_string(k) + ")");
  }
  const double two_pi = 2.0 * std::numbers::pi;
  const double base = std::arg(std::complex<double>(t.approx_re(), t.approx_im()));
  const double step = std::arg(std::complex<double>(theta.approx_re(), theta.approx_im()));
  std::vector<double> ang;
  ang.reserve(static_cast<std::size_t>(M + 1));
  for (long r = 0; r <= M; ++r) {
    double a = std::fmod(base + static_cast<double>(r) * step, two_pi);
    if (a < 0) a += two_pi;
    ang.push_back(a);
  }
  std::sort(ang.begin(), ang.end());
  DensityReport rep;
  rep.sample_size = ang.size();
  rep.max_gap = ang.front() + two_pi - ang.back();
  rep.witness = {ang.back(), ang.front()};
  for (std::size_t i = 1; i < ang.size(); ++i) {
    if (ang[i] - ang[i - 1] > rep.max_gap) {
      rep.max_gap = ang[i] - ang[i - 1];
      rep.witness = {ang[i - 1], ang[i]};
    }
  }
  return rep;
}

}  // namespace pyjama
