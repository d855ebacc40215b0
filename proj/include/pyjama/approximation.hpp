#pragma once

// Strong approximation in A and A[1/7], coset-constrained small elements, and the
// density experiments for x2 x3 orbits and rotations of the circle.

#include <array>
#include <optional>
#include <utility>

#include "pyjama/gaussian.hpp"
#include "pyjama/padic.hpp"

namespace pyjama {

// ---- rank-2 lattices in Z[i] ---------------------------------------------------

// Lagrange-Gauss reduction of the basis {b1, b2}.
std::array<GaussianInt, 2> lagrange_reduce(GaussianInt b1, GaussianInt b2);
// Exact closest point of the lattice spanned by b1, b2 to target.
GaussianInt closest_vector(const GaussianInt& b1, const GaussianInt& b2, const GaussianRational& target);

// ---- strong approximation -----------------------------------------------------

struct ApproxCertificate {
  GaussianRational q;
  Rational complex_residual_sq;  // |q - z|^2
  Rational residual_5 = 0;       // upper bound for |i_5(q) - a|_5 (0 when not targeted)
  Rational residual_13 = 0;      // upper bound for |i_13(q) - b|_13
  long denominator_exponent_7 = 0;
};

// q in A with |q - z| <= delta and |i_p(q) - b|_p <= delta, p = b.prime().
ApproxCertificate strong_approx(const GaussianRational& z, const PadicNumber& b, const Rational& delta);
// q in A[1/7] with all three residuals <= delta.
ApproxCertificate strong_approx_3way(const GaussianRational& z, const PadicNumber& a, const PadicNumber& b,
                                     const Rational& delta);

// ---- cosets of J = closure <theta_other^m, theta_p^m> in Q_p^x ------------------

struct CosetSpec {
  unsigned long p = 5;
  long m = 1;
  PadicNumber representative = PadicNumber(5, 0, 1, 64);
  long precision = 4;
};

// Membership of y in representative * J, decided modulo p^precision.
bool coset_contains(const CosetSpec& H, const PadicNumber& y);

struct CosetElement {
  GaussianRational r;
  GaussianRational representative;  // x_i
  GaussianRational y;               // the contracting element
  unsigned long n = 0;              // r = x_i y^n
};

// r in A with |r|_C, |r|_other <= mu, |r|_p >= nu and i_p(r) in H.
CosetElement coset_element(const Rational& mu, const Rational& nu, const CosetSpec& H);

// ---- density ------------------------------------------------------------------

struct DensityReport {
  double max_gap = 0.0;
  std::optional<Rational> max_gap_exact;  // interval experiments are exact
  std::pair<double, double> witness{0.0, 0.0};
  std::optional<std::pair<Rational, Rational>> witness_exact;
  std::size_t sample_size = 0;
  bool dense = false;  // max_gap <= delta where a delta was given
};

// {eta 2^r 3^s <= 1} together with the endpoints 0 and 1.
DensityReport semigroup_density(const Rational& eta, const Rational& delta);
// Angular gaps of {theta^r t : 0 <= r <= M} on the circle of radius |t|.
DensityReport circle_density(const GaussianRational& theta, const GaussianRational& t, long M);

}  // namespace pyjama
