#pragma once

// Points of (C x Q_5 x Q_13) / diag(A), the Theta-action, character evaluation and
// the torsion / periodic classification of diagonal rational points.

#include <complex>
#include <string>
#include <vector>

#include "pyjama/gaussian.hpp"
#include "pyjama/padic.hpp"

namespace pyjama {

// Complex coordinate held exactly or as a double pair.
class ComplexCoord {
 public:
  ComplexCoord() = default;
  ComplexCoord(const GaussianRational& q) : exact_(true), q_(q) {}
  ComplexCoord(std::complex<double> w) : exact_(false), f_(w) {}

  bool exact() const noexcept { return exact_; }
  // Exact value; throws ModeError in floating mode.
  const GaussianRational& value() const;
  std::complex<double> approx() const;

  ComplexCoord operator-() const;
  friend ComplexCoord operator+(const ComplexCoord& x, const ComplexCoord& y);
  friend ComplexCoord operator-(const ComplexCoord& x, const ComplexCoord& y) { return x + (-y); }
  friend ComplexCoord operator*(const ComplexCoord& x, const GaussianRational& q);

  std::string to_string() const;

 private:
  bool exact_ = true;
  GaussianRational q_;
  std::complex<double> f_;
};

// Value in T = R/Z, exact when every input was exact.
struct TorusValue {
  bool exact = true;
  Rational q = 0;  // in [0, 1) when exact
  double f = 0.0;  // in [0, 1) otherwise

  double approx() const { return exact ? q.get_d() : f; }
};

// Distance to the nearest integer of a torus value.
double torus_norm(const TorusValue& t);

class SolenoidPoint {
 public:
  static constexpr long kDefaultPrecision = 24;

  SolenoidPoint();
  SolenoidPoint(ComplexCoord z, PadicNumber a, PadicNumber b);

  // The triple (-w, 0, 0): evaluates to Re(w r) mod 1.
  static SolenoidPoint from_complex(const ComplexCoord& w);
  // The diagonal image of q: (q, i_5(q)/2, i_13(q)/2) with k significant p-adic digits.
  static SolenoidPoint diagonal(const GaussianRational& q, long k = kDefaultPrecision);

  const ComplexCoord& z() const noexcept { return z_; }
  const PadicNumber& a() const noexcept { return a_; }
  const PadicNumber& b() const noexcept { return b_; }
  bool exact() const noexcept { return z_.exact(); }

  friend SolenoidPoint operator+(const SolenoidPoint& x, const SolenoidPoint& y);
  friend SolenoidPoint operator-(const SolenoidPoint& x, const SolenoidPoint& y);

  // "(z; a; b)" using the component serializations.
  std::string to_string() const;

 private:
  ComplexCoord z_;
  PadicNumber a_;
  PadicNumber b_;
};

// The p-adic part of the diagonal embedding, i_p(q)/2.
PadicNumber diagonal_component(const GaussianRational& q, unsigned long p, long k);

struct Reduction {
  SolenoidPoint point;  // z in [0,1)^2, a in Z_5, b in Z_13
  GaussianRational shift;  // r in A with input = point + diagonal(r)
};

Reduction reduce_to_fundamental(const SolenoidPoint& x);

// Same point of the quotient: exact in exact mode, |dz| <= tol in floating mode.
bool same_point(const SolenoidPoint& x, const SolenoidPoint& y, double tol = 1e-9);

// Componentwise multiplication by q in A.
SolenoidPoint act(const GaussianRational& q, const SolenoidPoint& x);

// -Re(z r) + {a i_5(r)}_5 + {b i_13(r)}_13 mod 1, for r in A.
TorusValue evaluate(const SolenoidPoint& x, const GaussianRational& r);

// dist(evaluate(x, theta), Z) < eps.
bool stripe_membership(const SolenoidPoint& x, const GaussianRational& theta, const Rational& eps);

struct Classification {
  bool periodic = true;  // every rational point is torsion; periodic is the stronger claim
  Rational abs_p5 = 0;   // |q| at P5 (0 for q = 0)
  Rational abs_p13 = 0;  // |q| at P13
};

Classification classify_point(const GaussianRational& q);

struct ThetaWitness {
  long r = 0;
  long s = 0;
  GaussianRational theta;  // theta5^r theta13^s
};

ThetaWitness torsion_to_periodic(const GaussianRational& q);

// Least m >= 1 with theta5^m q - q and theta13^m q - q both in A.
Integer period_exponent(const GaussianRational& q);

struct ExactPoint {
  GaussianRational q;
  GaussianRational offset_w;  // contributes from_complex(offset_w)

  SolenoidPoint to_point(long k = SolenoidPoint::kDefaultPrecision) const;
};

struct PeriodicSet {
  std::vector<ExactPoint> points;
  Integer m;
};

// Representatives g / 7^n of 7^-n A / A and an exponent m fixing all of them.
PeriodicSet periodic_dense_set(unsigned n);

struct SweepRow {
  long r;
  long s;
  double value;
};

struct SweepResult {
  double max_gap = 1.0;
  std::vector<SweepRow> rows;
};

// evaluate(act(theta, x), 1) over theta = theta5^(m r) theta13^(m s), 0 <= r, s <= M,
// and the largest gap between the values on the circle.
SweepResult orbit_eval_sweep(const SolenoidPoint& x, long m, long M, bool keep_rows = false);

// min over shifts r = g / (p5bar^e5 p13bar^e13), |Re g|, |Im g|, e5, e13 <= bound, of
// |z - r| + |a - i_5(r)/2|_5 + |b - i_13(r)/2|_13 for the difference x - y.
double distance_upper(const SolenoidPoint& x, const SolenoidPoint& y, long search_bound);

}  // namespace pyjama
