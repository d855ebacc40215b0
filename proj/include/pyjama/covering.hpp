#pragma once

// Pyjama stripes E_theta = {z : dist(Re(theta z), Z) < eps} and the uncovered set
// W = C \ union E_theta over a period lattice D Z[i].

#include <array>
#include <complex>
#include <vector>

#include "pyjama/gaussian.hpp"
#include "pyjama/polygon.hpp"

namespace pyjama {

struct CoveringConfig {
  std::vector<GaussianRational> rotations;              // exact mode
  std::vector<std::complex<double>> float_rotations;    // floating mode (irrational rotations)
  Rational epsilon = Rational(1, 4);
  GaussianInt D{1};

  bool exact() const { return float_rotations.empty(); }
  // Throws ConfigError: unit modulus, 0 < eps < 1/2, D theta in Z[i], D != 0.
  void validate() const;
};

struct Obstruction {
  long a = 0, b = 0, m = 1;
  Rational margin;
};

struct ObstructionMatch {
  Obstruction tuple;
  Point2 point;          // (a + bi)/m D reduced into the fundamental parallelogram
  Rational distance_sq;  // to the nearest uncovered polygon (0 when inside)
};

struct CoverReport {
  CoveringConfig config;
  std::vector<ConvexPolygon> uncovered;
  Rational total_uncovered_area = 0;
  std::vector<ObstructionMatch> obstruction_matches;

  bool covered() const { return uncovered.empty(); }
};

// The parallelogram with corners 0, D, D(1+i), iD.
ConvexPolygon fundamental_domain(const GaussianInt& D);
// Direct evaluation: dist(Re(theta p), Z) >= eps for every rotation.
bool point_uncovered(const CoveringConfig& config, const Point2& p);
// Closed uncovered pieces of `window`, by subtracting every open slab.
std::vector<ConvexPolygon> uncovered_in(const CoveringConfig& config, const ConvexPolygon& window);
// Uncovered pieces of the fundamental parallelogram plus obstruction matches with m <= m_max.
CoverReport uncovered_region(const CoveringConfig& config, long obstruction_m_max = 2);

struct ObstructionCheck {
  bool holds = false;
  Rational margin = 0;
  bool empty_enumeration = false;
  std::size_t candidates = 0;
};

// Uniform grid over the bounding boxes of a polygon list, for closed point-membership queries.
class PolygonIndex {
 public:
  explicit PolygonIndex(const std::vector<ConvexPolygon>& polygons);

  // True iff some polygon contains p (exact).
  bool contains(const Point2& p) const;

 private:
  long cell(const Rational& v, const Rational& lo, bool y) const;

  const std::vector<ConvexPolygon>* polys_;
  Rational x0_ = 0, y0_ = 0, w_ = 1, h_ = 1;
  long side_ = 1;
  std::vector<std::vector<std::size_t>> cells_;
};

// Whether (a+bi)/m D avoids every stripe for every g with norm(g) = normD.
ObstructionCheck verify_obstruction(long a, long b, long m, const Integer& normD, const Rational& eps);
// All passing (a, b, m) with m <= m_max, 0 <= a, b < m, gcd(a, b, m) = 1, by margin descending.
std::vector<Obstruction> obstruction_catalog(const Rational& eps, long m_max, const Integer& normD);

// zeta1 = 1/(2n) + i sqrt(1 - 1/(4n^2)), zeta2 = conj(zeta1), zeta3 = 1.
std::array<std::complex<double>, 3> irrational_triple(long n);
// zeta_k theta for k = 1, 2, 3 and theta in theta_set(N), 3 (N+1)^2 values.
std::vector<std::complex<double>> theta_prime(long n, long N);

struct DiskCell {
  double x0, y0, h;  // lower-left corner and side
  double margin;     // min over rotations of dist(Re(theta c), Z) at the centre
};

struct DiskCoverResult {
  bool certified = false;
  std::size_t cells_checked = 0;
  std::vector<DiskCell> failing;
};

// Certify B_R(0) is covered by the open stripes using cells of side h and the
// 1-Lipschitz slack h sqrt(2)/2; failing cells are re-split `refine` times.
DiskCoverResult certified_disk_cover(const std::vector<std::complex<double>>& rotations, double eps, double R,
                                     double h, int refine = 0);

// The point of p5bar^a p13bar^b Z[i] within eta of x, after checking that every
// theta5^r theta13^s x (r <= a, s <= b) lies within eta of Z[i].
GaussianRational snap_to_lattice(const GaussianRational& x, long a, long b, const Rational& eta);

struct RationalityReport {
  long n = 2;
  // per polygon: squared distance from the polygon to S = (1/n) D Z[i] \ D Z[i]
  std::vector<Rational> inf_distance_sq;
  // per polygon: squared sup over its points of the distance to S
  std::vector<Rational> sup_distance_sq;
  Rational max_inf_distance_sq = 0;
  Rational max_sup_distance_sq = 0;
  bool within_20 = true;         // max_sup_distance_sq <= 400
  bool d_exceeds_bound = false;  // |D| > 40 n^2 + 20 n
};

RationalityReport rationality_check(const CoveringConfig& config, long n);
RationalityReport rationality_check(const CoveringConfig& config, const std::vector<ConvexPolygon>& uncovered, long n);

}  // namespace pyjama
