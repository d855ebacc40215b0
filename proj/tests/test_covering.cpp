#include <doctest.h>

#include <cmath>
#include <complex>

#include "pyjama/covering.hpp"
#include "pyjama/errors.hpp"
#include "support.hpp"

using namespace pyjama;
using testing_support::random_gaussian;
using testing_support::rng;
using testing_support::uniform;

namespace {

GaussianRational gr(const char* s) { return GaussianRational::parse(s); }

CoveringConfig make(std::vector<GaussianRational> rotations, const Rational& eps, const GaussianInt& D) {
  CoveringConfig c;
  c.rotations = std::move(rotations);
  c.epsilon = eps;
  c.D = D;
  return c;
}

CoveringConfig theta5_config() { return make({GaussianRational(1), theta5()}, Rational(1, 4), GaussianInt(1, -2)); }

bool in_union(const std::vector<ConvexPolygon>& polys, const Point2& p) {
  for (const auto& poly : polys)
    if (poly.contains(p)) return true;
  return false;
}

// u D + v iD for u, v in [0, 1) with the given denominator.
Point2 random_domain_point(const GaussianInt& D, long den) {
  const GaussianRational w(ratio(uniform(0, den - 1), den), ratio(uniform(0, den - 1), den));
  const GaussianRational z = w * GaussianRational(D);
  return {z.real(), z.imag()};
}

// Direct floating check that z lies in some open stripe.
double min_margin(const std::vector<std::complex<double>>& rot, std::complex<double> z) {
  double best = 1.0;
  for (const auto& t : rot) {
    const double f = (t * z).real();
    best = std::min(best, std::fabs(f - std::round(f)));
  }
  return best;
}

}  // namespace

TEST_SUITE("covering") {

TEST_CASE("a single stripe family leaves one band") {
  const CoverReport r = uncovered_region(make({GaussianRational(1)}, Rational(1, 4), GaussianInt(1)));
  REQUIRE(r.uncovered.size() == 1);
  CHECK(r.total_uncovered_area == Rational(1, 2));
  const auto [lo, hi] = r.uncovered[0].support(1, 0);
  CHECK(lo == Rational(1, 4));
  CHECK(hi == Rational(3, 4));
  for (const Rational& eps : {Rational(49, 100), Rational(1, 3), Rational(999, 2000)}) {
    const GaussianInt D(2, 1);
    CHECK(uncovered_region(make({GaussianRational(1)}, eps, D)).total_uncovered_area == (1 - 2 * eps) * Rational(5));
  }
}

TEST_CASE("configuration validation") {
  CHECK_THROWS_AS(make({GaussianRational(1)}, Rational(1, 2), GaussianInt(1)).validate(), ConfigError);
  CHECK_THROWS_AS(make({GaussianRational(1)}, Rational(0), GaussianInt(1)).validate(), ConfigError);
  CHECK_THROWS_AS(make({theta5()}, Rational(1, 4), GaussianInt(1)).validate(), ConfigError);
  CHECK_THROWS_AS(make({gr("1+i")}, Rational(1, 4), GaussianInt(1)).validate(), ConfigError);
  CHECK_THROWS_AS(make({GaussianRational(1)}, Rational(1, 4), GaussianInt(0)).validate(), ConfigError);
  CHECK_NOTHROW(theta5_config().validate());
  CoveringConfig f;
  f.float_rotations = {std::complex<double>(0.6, 0.8)};
  CHECK_THROWS_AS(uncovered_region(f), ModeError);
}

TEST_CASE("the {1, theta5} configuration") {
  const CoverReport r = uncovered_region(theta5_config());
  CHECK_FALSE(r.covered());
  // two independent stripe families leave (1 - 2 eps)^2 of the domain
  CHECK(r.total_uncovered_area == Rational(5, 4));
  const GaussianRational ob = gr("1/2+1/2i") * GaussianRational(GaussianInt(1, -2));
  CHECK(in_union(r.uncovered, Point2{ob.real(), ob.imag()}));
  CHECK(point_uncovered(theta5_config(), Point2{ob.real(), ob.imag()}));
  bool matched = false;
  for (const auto& m : r.obstruction_matches)
    if (m.tuple.a == 1 && m.tuple.b == 1 && m.tuple.m == 2) {
      matched = true;
      CHECK(m.distance_sq == 0);
    }
  CHECK(matched);
  for (const auto& p : r.uncovered) CHECK(p.is_convex());
}

TEST_CASE("exactness audit against direct stripe evaluation") {
  const std::vector<CoveringConfig> configs = {
      theta5_config(),
      make(theta_set(1), Rational(1, 5), min_period_multiplier(1)),
      make({GaussianRational(1), gr("i"), theta13()}, Rational(1, 3), GaussianInt(2, -3)),
  };
  for (const auto& cfg : configs) {
    const CoverReport r = uncovered_region(cfg);
    int hits = 0;
    for (int trial = 0; trial < 1000; ++trial) {
      // small denominators land on stripe boundaries, large ones in the interior
      const Point2 p = random_domain_point(cfg.D, trial % 2 ? 8 : 997);
      const bool direct = point_uncovered(cfg, p);
      CHECK(in_union(r.uncovered, p) == direct);
      hits += direct;
    }
    CHECK(hits > 0);
  }
}

TEST_CASE("the polygon index agrees with a linear scan") {
  const CoveringConfig cfg = make(theta_set(1), Rational(1, 7), min_period_multiplier(1));
  const CoverReport r = uncovered_region(cfg, 0);
  const PolygonIndex index(r.uncovered);
  for (int trial = 0; trial < 2000; ++trial) {
    // include points outside the domain and on polygon vertices
    Point2 p = random_domain_point(cfg.D, trial % 2 ? 16 : 1013);
    if (trial % 5 == 0) p = {p.x * 2 - 3, p.y * 2 - 3};
    if (trial % 7 == 0) {
      const auto& poly = r.uncovered[static_cast<std::size_t>(trial) % r.uncovered.size()];
      p = poly.vertices()[static_cast<std::size_t>(trial) % poly.vertices().size()];
    }
    CHECK(index.contains(p) == in_union(r.uncovered, p));
  }
  const std::vector<ConvexPolygon> none;
  CHECK_FALSE(PolygonIndex(none).contains(Point2{0, 0}));
  const std::vector<ConvexPolygon> dot{ConvexPolygon({Point2{1, 1}})};
  CHECK(PolygonIndex(dot).contains(Point2{1, 1}));
  CHECK_FALSE(PolygonIndex(dot).contains(Point2{1, 2}));
}

TEST_CASE("area bookkeeping by inclusion-exclusion") {
  // stripe measure 2 eps |D|^2 per family; independent families intersect in (2 eps)^2 |D|^2
  for (const Rational& eps : {Rational(1, 4), Rational(1, 10), Rational(2, 5)}) {
    const GaussianInt D = min_period_multiplier(1);
    const Rational area(D.norm());
    for (const auto& t : theta_set(1)) {
      if (t == GaussianRational(1)) continue;
      const CoverReport r = uncovered_region(make({GaussianRational(1), t}, eps, D), 0);
      const Rational stripes = 2 * (2 * eps * area) - (2 * eps) * (2 * eps) * area;
      CHECK(r.total_uncovered_area + stripes == area);
    }
  }
}

TEST_CASE("the uncovered set is periodic") {
  const CoveringConfig cfg = make(theta_set(1), Rational(1, 5), min_period_multiplier(1));
  const CoverReport r = uncovered_region(cfg, 0);
  const GaussianRational D(cfg.D), iD = GaussianRational(GaussianInt(0, 1)) * D;
  for (const auto& poly : r.uncovered) {
    for (const auto& v : poly.vertices()) {
      for (const GaussianRational& shift : {D, iD, -D, D + iD}) {
        const Point2 q{v.x + shift.real(), v.y + shift.imag()};
        CHECK(point_uncovered(cfg, q));
      }
    }
  }
}

TEST_CASE("obstruction verification") {
  const ObstructionCheck a = verify_obstruction(1, 1, 2, 25, Rational(1, 4));
  CHECK(a.holds);
  CHECK(a.margin == Rational(1, 2));
  CHECK(a.candidates == 12);
  const ObstructionCheck b = verify_obstruction(1, 0, 1, 25, Rational(1, 4));
  CHECK_FALSE(b.holds);
  CHECK(b.margin == 0);
  const ObstructionCheck c = verify_obstruction(1, 1, 2, 4, Rational(1, 4));
  CHECK_FALSE(c.holds);
  CHECK(c.margin == 0);
  const ObstructionCheck d = verify_obstruction(1, 1, 2, 3, Rational(1, 4));
  CHECK(d.empty_enumeration);
  CHECK_FALSE(d.holds);
  // the parity argument covers every odd norm
  for (long n : {1L, 5L, 13L, 65L, 85L, 325L}) CHECK(verify_obstruction(1, 1, 2, n, Rational(49, 100)).margin == Rational(1, 2));
}

TEST_CASE("obstruction catalog") {
  for (long n : {5L, 25L, 65L}) {
    const auto cat = obstruction_catalog(Rational(45, 100), 2, n);
    REQUIRE(cat.size() == 1);
    CHECK(cat[0].a == 1);
    CHECK(cat[0].b == 1);
    CHECK(cat[0].m == 2);
  }
  std::size_t prev = 0;
  for (long den = 3; den <= 40; den += 3) {
    const auto cat = obstruction_catalog(Rational(1, den), 6, 65);
    CHECK(cat.size() >= prev);
    prev = cat.size();
    for (std::size_t i = 1; i < cat.size(); ++i) CHECK(cat[i - 1].margin >= cat[i].margin);
  }
  CHECK(prev > 1);
}

TEST_CASE("catalogued obstructions lie in the uncovered region") {
  const GaussianInt D = min_period_multiplier(1);
  const auto thetas = theta_set(1);
  for (int trial = 0; trial < 6; ++trial) {
    std::vector<GaussianRational> rot{GaussianRational(1)};
    for (std::size_t k = 1; k < thetas.size(); ++k)
      if (uniform(0, 1)) rot.push_back(thetas[k]);
    const Rational eps(uniform(1, 9), 20);
    const CoveringConfig cfg = make(rot, eps, D);
    const CoverReport r = uncovered_region(cfg, 4);
    CHECK(r.obstruction_matches.size() == obstruction_catalog(eps, 4, D.norm()).size());
    for (const auto& m : r.obstruction_matches) {
      CHECK(m.distance_sq == 0);
      CHECK(point_uncovered(cfg, m.point));
    }
  }
}

TEST_CASE("irrational triples") {
  const auto t1 = irrational_triple(1);
  CHECK(t1[0].real() == doctest::Approx(0.5));
  CHECK(t1[0].imag() == doctest::Approx(std::sqrt(3.0) / 2));
  const auto t2 = irrational_triple(2);
  CHECK(t2[0].imag() == doctest::Approx(std::sqrt(15.0) / 4));
  for (long n : {1L, 2L, 10L, 1000L}) {
    const auto t = irrational_triple(n);
    CHECK(std::abs(static_cast<double>(n) * (t[0] + t[1]) - t[2]) <= 1e-12);
    for (const auto& z : t) CHECK(std::fabs(std::abs(z) - 1.0) <= 1e-12);
    CHECK(t[1] == std::conj(t[0]));
  }
  CHECK(theta_prime(1, 0).size() == 3);
  CHECK(theta_prime(2, 3).size() == 48);
  for (const auto& z : theta_prime(3, 4)) CHECK(std::fabs(std::abs(z) - 1.0) <= 1e-12);
}

TEST_CASE("disk cover with two orthogonal families fails near half-integers") {
  const std::vector<std::complex<double>> rot{{1, 0}, {0, 1}};
  const DiskCoverResult r = certified_disk_cover(rot, 0.45, 3.0, 0.01);
  CHECK_FALSE(r.certified);
  REQUIRE_FALSE(r.failing.empty());
  for (const auto& c : r.failing) {
    const double cx = c.x0 + c.h / 2, cy = c.y0 + c.h / 2;
    CHECK(std::fabs(cx - std::floor(cx) - 0.5) <= 0.06);
    CHECK(std::fabs(cy - std::floor(cy) - 0.5) <= 0.06);
  }
  CHECK_THROWS_AS(certified_disk_cover(rot, 0.45, 3.0, 1.0), DomainError);
}

TEST_CASE("disk cover certificates are sound") {
  CHECK(certified_disk_cover({{1, 0}}, 0.45, 0.3, 0.01).certified);

  const double s = std::sqrt(0.5);
  const std::vector<std::complex<double>> rot{{1, 0}, {0, 1}, {s, s}};
  // the diagonal family closes the gaps at (+-1/2, +-1/2); near (5/2, 1/2) it would not
  CHECK_FALSE(certified_disk_cover(rot, 0.45, 3.0, 0.02).certified);
  const DiskCoverResult coarse = certified_disk_cover(rot, 0.45, 1.2, 0.02);
  REQUIRE(coarse.certified);
  CHECK(certified_disk_cover(rot, 0.45, 1.2, 0.002).certified);
  std::uniform_real_distribution<double> u(-3.0, 3.0);
  for (int trial = 0; trial < 20000; ++trial) {
    const std::complex<double> z(u(rng()) * 0.4, u(rng()) * 0.4);
    if (std::abs(z) > 1.2) continue;
    CHECK(min_margin(rot, z) < 0.45);
  }

  // refinement recovers cells the coarse pitch could not decide
  const auto tp = theta_prime(1, 2);
  const DiskCoverResult plain = certified_disk_cover(tp, 0.3, 5.0, 0.3);
  const DiskCoverResult refined = certified_disk_cover(tp, 0.3, 5.0, 0.3, 4);
  CHECK(refined.failing.size() <= plain.failing.size() * 4);
  if (refined.certified) {
    for (int trial = 0; trial < 5000; ++trial) {
      const std::complex<double> z(u(rng()) * 5 / 3, u(rng()) * 5 / 3);
      if (std::abs(z) <= 5.0) CHECK(min_margin(tp, z) < 0.3);
    }
  }
}

TEST_CASE("lattice snapping") {
  CHECK(snap_to_lattice(GaussianRational(0), 1, 1, Rational(1, 100)) == GaussianRational(0));
  const GaussianInt D11 = p5bar() * p13bar();
  const GaussianRational y0(D11 * GaussianInt(3, -2));
  CHECK(snap_to_lattice(y0, 1, 1, Rational(1, 1000)) == y0);

  for (int trial = 0; trial < 100; ++trial) {
    const long a = uniform(0, 2), b = uniform(0, 2);
    const GaussianInt D = p5bar().pow(static_cast<unsigned long>(a)) * p13bar().pow(static_cast<unsigned long>(b));
    const GaussianRational y(D * random_gaussian(50));
    const Rational eta(1, uniform(100, 1000));
    // noise of modulus at most eta
    const long ex = uniform(-60, 60), ey = uniform(-80, 80);
    const GaussianRational e = GaussianRational(ratio(ex, 100), ratio(ey, 100)) * GaussianRational(eta, Rational(0));
    REQUIRE(e.modulus_squared() <= eta * eta);
    CHECK(snap_to_lattice(y + e, a, b, eta) == y);
  }
  SUBCASE("a point never close to Z[i]") {
    try {
      snap_to_lattice(gr("1/2+1/2i"), 1, 1, Rational(1, 100));
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("theta5^0 theta13^0") != std::string::npos);
    }
  }
  SUBCASE("a point that drifts under rotation") {
    // close to Z[i] itself but theta5 x is far from Z[i]
    const GaussianRational x = gr("1");
    try {
      snap_to_lattice(x, 1, 0, Rational(1, 100));
      FAIL("expected a domain error");
    } catch (const DomainError& e) {
      CHECK(std::string(e.what()).find("theta5^1 theta13^0") != std::string::npos);
    }
  }
  CHECK_THROWS_AS(snap_to_lattice(GaussianRational(0), 1, 1, Rational(1, 50)), DomainError);
}

TEST_CASE("rationality check") {
  const RationalityReport f = rationality_check(theta5_config(), 2);
  const CoverReport fr = uncovered_region(theta5_config(), 0);
  const GaussianRational ob = gr("1/2+1/2i") * GaussianRational(GaussianInt(1, -2));
  REQUIRE(f.inf_distance_sq.size() == fr.uncovered.size());
  bool site_piece = false;
  for (std::size_t k = 0; k < fr.uncovered.size(); ++k)
    if (fr.uncovered[k].contains(Point2{ob.real(), ob.imag()})) site_piece = f.inf_distance_sq[k] == 0;
  CHECK(site_piece);
  // pieces cut off by the parallelogram boundary need not contain a site
  CHECK(f.max_inf_distance_sq == Rational(5, 64));
  CHECK(f.within_20);
  CHECK(f.max_sup_distance_sq <= 400);
  CHECK_FALSE(f.d_exceeds_bound);

  for (long n : {2L, 3L, 5L}) {
    const RationalityReport b = rationality_check(make({GaussianRational(1)}, Rational(1, 4), GaussianInt(1)), n);
    CHECK(b.max_inf_distance_sq == 0);
    // the band [1/4, 3/4] x [0, 1] is covered by disks of radius 1/2 around the sites
    CHECK(b.max_sup_distance_sq <= Rational(1, 4));
    for (std::size_t k = 0; k < b.inf_distance_sq.size(); ++k) CHECK(b.inf_distance_sq[k] <= b.sup_distance_sq[k]);
  }

  // nested rotation sets with a fixed period lattice shrink W
  const GaussianInt D = min_period_multiplier(1);
  const std::vector<std::vector<GaussianRational>> chain = {
      {GaussianRational(1)},
      {GaussianRational(1), theta5()},
      {GaussianRational(1), theta5(), theta13()},
      theta_set(1),
  };
  Rational prev_sup = -1, prev_area = -1;
  for (const auto& rot : chain) {
    const CoveringConfig cfg = make(rot, Rational(1, 5), D);
    const RationalityReport r = rationality_check(cfg, 2);
    const Rational area = uncovered_region(cfg, 0).total_uncovered_area;
    if (prev_sup >= 0) {
      CHECK(r.max_sup_distance_sq <= prev_sup);
      CHECK(area <= prev_area);
    }
    prev_sup = r.max_sup_distance_sq;
    prev_area = area;
  }
  CHECK_THROWS_AS(rationality_check(theta5_config(), 1), DomainError);

  // |D| > 40 n^2 + 20 n = 200 at n = 2
  const GaussianInt big = min_period_multiplier(3);
  CHECK(big.norm() > 40000);
  const RationalityReport rb = rationality_check(make({GaussianRational(1)}, Rational(1, 4), big), {}, 2);
  CHECK(rb.d_exceeds_bound);
}

}  // TEST_SUITE
