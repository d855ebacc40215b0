#include "pyjama/covering.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "pyjama/errors.hpp"
#include "pyjama/kernels.hpp"

namespace pyjama {

namespace {

Rational torus_dist(const Rational& q) {
  const Rational f = q - Rational(floor_of(q));
  return std::min(f, Rational(1 - f));
}

Point2 to_point(const GaussianRational& z) { return {z.real(), z.imag()}; }

}  // namespace

void CoveringConfig::validate() const {
  if (epsilon <= 0 || epsilon >= Rational(1, 2)) throw ConfigError("epsilon must lie in (0, 1/2)");
  if (D.is_zero()) throw ConfigError("period multiplier D must be nonzero");
  if (exact()) {
    if (rotations.empty()) throw ConfigError("at least one rotation is required");
    for (const auto& t : rotations) {
      if (t.modulus_squared() != 1) throw ConfigError("rotation " + t.to_string() + " does not have modulus 1");
      if (!(t * GaussianRational(D)).is_gaussian_integer())
        throw ConfigError("D = " + D.to_string() + " is not a period for rotation " + t.to_string());
    }
  } else {
    for (const auto& t : float_rotations)
      if (std::fabs(std::abs(t) - 1.0) > 1e-12) throw ConfigError("floating rotation does not have modulus 1");
  }
}

ConvexPolygon fundamental_domain(const GaussianInt& D) {
  const GaussianRational d(D);
  const GaussianRational i(GaussianInt(0, 1));
  return ConvexPolygon({Point2{0, 0}, to_point(d), to_point(d * (GaussianRational(1) + i)), to_point(d * i)});
}

bool point_uncovered(const CoveringConfig& config, const Point2& p) {
  if (!config.exact()) throw ModeError("exact evaluation needs rational rotations");
  for (const auto& t : config.rotations) {
    const Rational f = t.real() * p.x - t.imag() * p.y;
    if (torus_dist(f) < config.epsilon) return false;
  }
  return true;
}

std::vector<ConvexPolygon> uncovered_in(const CoveringConfig& config, const ConvexPolygon& window) {
  if (!config.exact()) throw ModeError("uncovered_region needs rational rotations and epsilon");
  std::vector<ConvexPolygon> pieces{window};
  const Rational& eps = config.epsilon;
  for (const auto& t : config.rotations) {
    // Re(theta z) = c x - s y; keep the closed gaps k + eps <= f <= k + 1 - eps
    const Rational c = t.real(), s = -t.imag();
    std::vector<ConvexPolygon> next;
    for (const auto& piece : pieces) {
      const auto [lo, hi] = piece.support(c, s);
      const Integer k_lo = floor_of(lo - 1 + eps);
      const Integer k_hi = floor_of(hi - eps);
      for (Integer k = k_lo; k <= k_hi; ++k) {
        ConvexPolygon g = piece.clip(c, s, Rational(k) + eps);
        if (g.empty()) continue;
        g = g.clip(-c, -s, -(Rational(k) + 1 - eps));
        if (!g.empty()) next.push_back(std::move(g));
      }
    }
    pieces = std::move(next);
  }
  return pieces;
}

CoverReport uncovered_region(const CoveringConfig& config, long obstruction_m_max) {
  if (!config.exact()) throw ModeError("uncovered_region needs rational rotations and epsilon");
  config.validate();
  CoverReport rep;
  rep.config = config;
  rep.uncovered = uncovered_in(config, fundamental_domain(config.D));
  for (const auto& p : rep.uncovered) rep.total_uncovered_area += p.area();
  if (obstruction_m_max >= 1) {
    const GaussianRational D(config.D);
    for (const auto& ob : obstruction_catalog(config.epsilon, obstruction_m_max, config.D.norm())) {
      GaussianRational w(GaussianInt(ob.a, ob.b), Integer(ob.m));
      w = GaussianRational(Rational(w.real() - Rational(floor_of(w.real()))),
                           Rational(w.imag() - Rational(floor_of(w.imag()))));
      ObstructionMatch m{ob, to_point(w * D), -1};
      for (const auto& poly : rep.uncovered) {
        const Rational d = poly.distance_sq(m.point);
        if (m.distance_sq < 0 || d < m.distance_sq) m.distance_sq = d;
        if (m.distance_sq == 0) break;
      }
      rep.obstruction_matches.push_back(std::move(m));
    }
  }
  return rep;
}

PolygonIndex::PolygonIndex(const std::vector<ConvexPolygon>& polygons) : polys_(&polygons) {
  std::vector<std::array<Rational, 4>> boxes;
  boxes.reserve(polygons.size());
  bool first = true;
  Rational x1 = 0, y1 = 0;
  for (const auto& p : polygons) {
    if (p.empty()) {
      boxes.push_back({1, 0, 1, 0});
      continue;
    }
    const auto [xl, xh] = p.support(1, 0);
    const auto [yl, yh] = p.support(0, 1);
    boxes.push_back({xl, xh, yl, yh});
    if (first || xl < x0_) x0_ = xl;
    if (first || yl < y0_) y0_ = yl;
    if (first || xh > x1) x1 = xh;
    if (first || yh > y1) y1 = yh;
    first = false;
  }
  w_ = x1 > x0_ ? Rational(x1 - x0_) : Rational(1);
  h_ = y1 > y0_ ? Rational(y1 - y0_) : Rational(1);
  side_ = std::max(1L, static_cast<long>(std::sqrt(static_cast<double>(polygons.size()))));
  cells_.assign(static_cast<std::size_t>(side_ * side_), {});
  for (std::size_t k = 0; k < boxes.size(); ++k) {
    const auto& b = boxes[k];
    if (b[0] > b[1]) continue;
    for (long i = cell(b[0], x0_, false); i <= cell(b[1], x0_, false); ++i)
      for (long j = cell(b[2], y0_, true); j <= cell(b[3], y0_, true); ++j)
        cells_[static_cast<std::size_t>(i * side_ + j)].push_back(k);
  }
}

long PolygonIndex::cell(const Rational& v, const Rational& lo, bool y) const {
  const Integer c = floor_of((v - lo) * side_ / (y ? h_ : w_));
  if (c < 0) return 0;
  if (c >= side_) return side_ - 1;
  return c.get_si();
}

bool PolygonIndex::contains(const Point2& p) const {
  const std::size_t k = static_cast<std::size_t>(cell(p.x, x0_, false) * side_ + cell(p.y, y0_, true));
  for (std::size_t idx : cells_[k])
    if ((*polys_)[idx].contains(p)) return true;
  return false;
}

// ------------------------------------------------------------- obstructions

ObstructionCheck verify_obstruction(long a, long b, long m, const Integer& normD, const Rational& eps) {
  if (m < 1) throw DomainError("m must be positive");
  if (normD < 1) throw DomainError("norm(D) must be positive");
  ObstructionCheck out;
  Integer x_max;
  mpz_sqrt(x_max.get_mpz_t(), normD.get_mpz_t());
  bool first = true;
  for (Integer x = -x_max; x <= x_max; ++x) {
    const Integer rest = normD - x * x;
    if (mpz_perfect_square_p(rest.get_mpz_t()) == 0) continue;
    Integer y;
    mpz_sqrt(y.get_mpz_t(), rest.get_mpz_t());
    for (int sign = 0; sign < (y == 0 ? 1 : 2); ++sign) {
      const Integer yy = sign ? Integer(-y) : y;
      const Rational d = torus_dist(ratio(x * a - yy * b, m));
      if (first || d < out.margin) out.margin = d;
      first = false;
      ++out.candidates;
    }
  }
  out.empty_enumeration = out.candidates == 0;
  out.holds = !out.empty_enumeration && out.margin >= eps;
  return out;
}

std::vector<Obstruction> obstruction_catalog(const Rational& eps, long m_max, const Integer& normD) {
  if (eps <= 0 || eps >= Rational(1, 2)) throw DomainError("epsilon must lie in (0, 1/2)");
  std::vector<Obstruction> out;
  for (long m = 1; m <= m_max; ++m)
    for (long a = 0; a < m; ++a)
      for (long b = 0; b < m; ++b) {
        if (std::gcd(std::gcd(a, b), m) != 1) continue;
        const ObstructionCheck c = verify_obstruction(a, b, m, normD, eps);
        if (c.holds) out.push_back({a, b, m, c.margin});
      }
  std::stable_sort(out.begin(), out.end(), [](const Obstruction& x, const Obstruction& y) { return x.margin > y.margin; });
  return out;
}

// --------------------------------------------------------- irrational trick

std::array<std::complex<double>, 3> irrational_triple(long n) {
  if (n < 1) throw DomainError("n must be positive");
  const double re = 1.0 / (2.0 * static_cast<double>(n));
  const double im = std::sqrt(1.0 - re * re);
  return {std::complex<double>(re, im), std::complex<double>(re, -im), std::complex<double>(1.0, 0.0)};
}

std::vector<std::complex<double>> theta_prime(long n, long N) {
  if (n < 1 || N < 0) throw DomainError("theta_prime needs n >= 1 and N >= 0");
  const auto zeta = irrational_triple(n);
  const auto thetas = theta_set(static_cast<unsigned>(N));
  std::vector<std::complex<double>> out;
  out.reserve(3 * thetas.size());
  for (const auto& z : zeta)
    for (const auto& t : thetas) out.push_back(z * std::complex<double>(t.approx_re(), t.approx_im()));
  return out;
}

DiskCoverResult certified_disk_cover(const std::vector<std::complex<double>>& rotations, double eps, double R,
                                     double h, int refine) {
  if (!(h > 0) || !(R > 0)) throw DomainError("disk cover needs h > 0 and R > 0");
  if (eps <= h * std::sqrt(2.0) / 2.0) throw DomainError("pitch too coarse: eps <= h sqrt(2)/2");
  std::vector<double> rre, rim;
  for (const auto& t : rotations) {
    rre.push_back(t.real());
    rim.push_back(t.imag());
  }
  auto meets_disk = [R](double x0, double y0, double s) {
    const double dx = std::max({x0 - 0.0, 0.0, 0.0 - (x0 + s)});
    const double dy = std::max({y0 - 0.0, 0.0, 0.0 - (y0 + s)});
    return dx * dx + dy * dy <= R * R;
  };
  std::vector<DiskCell> level;
  const long lo = static_cast<long>(std::floor(-R / h));
  const long hi = static_cast<long>(std::ceil(R / h));
  for (long i = lo; i < hi; ++i)
    for (long j = lo; j < hi; ++j) {
      const double x0 = static_cast<double>(i) * h, y0 = static_cast<double>(j) * h;
      if (meets_disk(x0, y0, h)) level.push_back({x0, y0, h, 0.0});
    }
  DiskCoverResult out;
  double pitch = h;
  for (int depth = 0;; ++depth) {
    const std::size_t n = level.size();
    std::vector<double> xs(n), ys(n), margin(n);
    for (std::size_t k = 0; k < n; ++k) {
      xs[k] = level[k].x0 + pitch / 2.0;
      ys[k] = level[k].y0 + pitch / 2.0;
    }
    kernels::min_torus_distance(xs.data(), ys.data(), n, rre.data(), rim.data(), rre.size(), margin.data());
    out.cells_checked += n;
    const double threshold = eps - pitch * std::sqrt(2.0) / 2.0;
    std::vector<DiskCell> failing;
    for (std::size_t k = 0; k < n; ++k) {
      if (margin[k] < threshold) continue;
      level[k].margin = margin[k];
      failing.push_back(level[k]);
    }
    if (failing.empty() || depth >= refine) {
      out.failing = std::move(failing);
      break;
    }
    pitch /= 2.0;
    level.clear();
    for (const auto& c : failing)
      for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b) {
          const double x0 = c.x0 + a * pitch, y0 = c.y0 + b * pitch;
          if (meets_disk(x0, y0, pitch)) level.push_back({x0, y0, pitch, 0.0});
        }
  }
  out.certified = out.failing.empty();
  return out;
}

// -------------------------------------------------------------- lattice snap

GaussianRational snap_to_lattice(const GaussianRational& x, long a, long b, const Rational& eta) {
  if (eta <= 0 || eta > Rational(1, 100)) throw DomainError("snap_to_lattice needs 0 < eta <= 1/100");
  if (a < 0 || b < 0) throw DomainError("exponents must be nonnegative");
  const Rational eta2 = eta * eta;
  const std::size_t A = static_cast<std::size_t>(a) + 1, B = static_cast<std::size_t>(b) + 1;
  // L[r][s][i][j]: point of p5bar^i p13bar^j Z[i] near theta5^r theta13^s x, r + i <= a, s + j <= b
  std::vector<GaussianRational> L(A * B * A * B);
  auto at = [&](std::size_t r, std::size_t s, std::size_t i, std::size_t j) -> GaussianRational& {
    return L[((r * B + s) * A + i) * B + j];
  };
  GaussianRational row = x;
  for (std::size_t r = 0; r < A; ++r) {
    GaussianRational xr = row;
    for (std::size_t s = 0; s < B; ++s) {
      const GaussianInt g(round_of(xr.real()), round_of(xr.imag()));
      if ((xr - GaussianRational(g)).modulus_squared() > eta2)
        throw DomainError("not uniformly close to Z[i]: theta5^" + std::to_string(r) + " theta13^" +
                          std::to_string(s) + " x is farther than eta from every Gaussian integer");
      at(r, s, 0, 0) = GaussianRational(g);
      xr *= theta13();
    }
    row *= theta5();
  }
  for (std::size_t level = 1; level < A + B - 1; ++level) {
    for (std::size_t i = 0; i < A; ++i) {
      if (level < i || level - i >= B) continue;
      const std::size_t j = level - i;
      for (std::size_t r = 0; r + i < A; ++r)
        for (std::size_t s = 0; s + j < B; ++s) {
          const bool step5 = i > 0;
          const GaussianRational& y1 = step5 ? at(r, s, i - 1, j) : at(r, s, i, j - 1);
          const GaussianRational& y2 = step5 ? at(r + 1, s, i - 1, j) : at(r, s + 1, i, j - 1);
          if (!(y1 * (step5 ? theta5() : theta13()) == y2))
            throw Error("lattice snap induction failed: rotated neighbours disagree");
          at(r, s, i, j) = y1;
        }
    }
  }
  const GaussianRational y = at(0, 0, A - 1, B - 1);
  const GaussianInt D = p5bar().pow(static_cast<unsigned long>(a)) * p13bar().pow(static_cast<unsigned long>(b));
  if (!y.is_gaussian_integer() || !y.num().divisible_by(D) || (x - y).modulus_squared() > eta2)
    throw Error("lattice snap produced a point outside D Z[i]");
  return y;
}

// ------------------------------------------------------- rationality check

namespace {

struct SiteGeometry {
  long n;

  bool is_site(const Integer& u, const Integer& v) const {
    return !(mpz_divisible_ui_p(u.get_mpz_t(), static_cast<unsigned long>(n)) &&
             mpz_divisible_ui_p(v.get_mpz_t(), static_cast<unsigned long>(n)));
  }

  // Squared distance to Z^2 \ nZ^2; every point is within 1 of a site when n >= 2.
  Rational dist_sq(const Point2& w) const {
    const Integer fx = floor_of(w.x), fy = floor_of(w.y);
    Rational best = -1;
    for (Integer u = fx - 2; u <= fx + 3; ++u)
      for (Integer v = fy - 2; v <= fy + 3; ++v) {
        if (!is_site(u, v)) continue;
        const Rational d = distance_sq(w, Point2{Rational(u), Rational(v)});
        if (best < 0 || d < best) best = d;
      }
    return best;
  }
};

std::vector<Point2> sites_near(const ConvexPolygon& P, const SiteGeometry& g, long pad) {
  Rational xmin = P.vertices().front().x, xmax = xmin, ymin = P.vertices().front().y, ymax = ymin;
  for (const auto& v : P.vertices()) {
    xmin = std::min(xmin, v.x);
    xmax = std::max(xmax, v.x);
    ymin = std::min(ymin, v.y);
    ymax = std::max(ymax, v.y);
  }
  std::vector<Point2> out;
  for (Integer u = ceil_of(xmin) - pad; u <= floor_of(xmax) + pad; ++u)
    for (Integer v = ceil_of(ymin) - pad; v <= floor_of(ymax) + pad; ++v)
      if (g.is_site(u, v)) out.push_back({Rational(u), Rational(v)});
  return out;
}

Rational inf_distance_sq(const ConvexPolygon& P, const SiteGeometry& g) {
  Rational best = -1;
  for (const auto& s : sites_near(P, g, 1)) {
    const Rational d = P.distance_sq(s);
    if (best < 0 || d < best) best = d;
    if (best == 0) break;
  }
  return best;
}

// The sup of the distance to the site set over P is attained at a vertex of some
// Voronoi cell clipped to P: a polygon vertex, an edge meeting a bisector, or a
// Voronoi vertex (circumcentre) inside P. Voronoi edges only join sites at distance <= 2.
Rational sup_distance_sq(const ConvexPolygon& P, const SiteGeometry& g) {
  Rational best = 0;
  auto consider = [&](const Point2& w) {
    const Rational d = g.dist_sq(w);
    if (d > best) best = d;
  };
  for (const auto& v : P.vertices()) consider(v);
  const std::vector<Point2> sites = sites_near(P, g, 1);
  const auto& V = P.vertices();
  const std::size_t nv = V.size();
  const std::size_t ne = nv < 2 ? 0 : (nv == 2 ? 1 : nv);
  auto close = [](const Point2& s, const Point2& t) { return distance_sq(s, t) <= 4; };
  auto less = [](const Point2& s, const Point2& t) { return s.x < t.x || (s.x == t.x && s.y < t.y); };
  for (std::size_t e = 0; e < ne; ++e) {
    const Point2& p = V[e];
    const Point2& q = V[(e + 1) % nv];
    for (const auto& s1 : sites)
      for (const auto& s2 : sites) {
        if (!less(s1, s2) || !close(s1, s2)) continue;
        // 2 (s2 - s1) . w = |s2|^2 - |s1|^2
        const Rational ax = 2 * (s2.x - s1.x), ay = 2 * (s2.y - s1.y);
        const Rational c = s2.x * s2.x + s2.y * s2.y - s1.x * s1.x - s1.y * s1.y;
        const Rational gp = ax * p.x + ay * p.y - c, gq = ax * q.x + ay * q.y - c;
        if (gp == gq || (gp > 0 && gq > 0) || (gp < 0 && gq < 0)) continue;
        const Rational t = gp / (gp - gq);
        consider({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
      }
  }
  if (!P.degenerate()) {
    for (std::size_t i = 0; i < sites.size(); ++i)
      for (std::size_t j = i + 1; j < sites.size(); ++j) {
        if (!close(sites[i], sites[j])) continue;
        for (std::size_t k = j + 1; k < sites.size(); ++k) {
          if (!close(sites[i], sites[k]) || !close(sites[j], sites[k])) continue;
          const Point2 &A = sites[i], &B = sites[j], &C = sites[k];
          const Rational d = 2 * (A.x * (B.y - C.y) + B.x * (C.y - A.y) + C.x * (A.y - B.y));
          if (d == 0) continue;
          const Rational a2 = A.x * A.x + A.y * A.y, b2 = B.x * B.x + B.y * B.y, c2 = C.x * C.x + C.y * C.y;
          const Point2 cc{(a2 * (B.y - C.y) + b2 * (C.y - A.y) + c2 * (A.y - B.y)) / d,
                          (a2 * (C.x - B.x) + b2 * (A.x - C.x) + c2 * (B.x - A.x)) / d};
          if (distance_sq(cc, A) > 1 || !P.contains(cc)) continue;
          consider(cc);
        }
      }
  }
  return best;
}

}  // namespace

RationalityReport rationality_check(const CoveringConfig& config, const std::vector<ConvexPolygon>& uncovered,
                                    long n) {
  if (n < 2) throw DomainError("rationality check needs n >= 2 ((1/n) D Z[i] \\ D Z[i] is empty for n = 1)");
  RationalityReport rep;
  rep.n = n;
  const Integer normD = config.D.norm();
  const Rational dr(config.D.re()), di(config.D.im());
  const Rational scale = ratio(n, normD);
  // w = n z conj(D) / norm(D) sends (1/n) D Z[i] to Z[i] and D Z[i] to n Z[i]
  auto to_w = [&](const Point2& p) {
    return Point2{scale * (p.x * dr + p.y * di), scale * (p.y * dr - p.x * di)};
  };
  const SiteGeometry g{n};
  const Rational back = ratio(normD, n * n);
  for (const auto& poly : uncovered) {
    std::vector<Point2> w;
    for (const auto& v : poly.vertices()) w.push_back(to_w(v));
    const ConvexPolygon P(std::move(w));
    const Rational inf = inf_distance_sq(P, g) * back;
    const Rational sup = sup_distance_sq(P, g) * back;
    rep.inf_distance_sq.push_back(inf);
    rep.sup_distance_sq.push_back(sup);
    rep.max_inf_distance_sq = std::max(rep.max_inf_distance_sq, inf);
    rep.max_sup_distance_sq = std::max(rep.max_sup_distance_sq, sup);
  }
  rep.within_20 = rep.max_sup_distance_sq <= 400;
  const Integer bound = 40 * n * n + 20 * n;
  rep.d_exceeds_bound = normD > bound * bound;
  return rep;
}

RationalityReport rationality_check(const CoveringConfig& config, long n) {
  const CoverReport cover = uncovered_region(config, 0);
  return rationality_check(config, cover.uncovered, n);
}

}  // namespace pyjama
