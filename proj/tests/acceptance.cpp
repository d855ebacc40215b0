// Acceptance suite: fifteen timed criteria, one PASS/FAIL line each.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <numbers>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "pyjama/approximation.hpp"
#include "pyjama/cli.hpp"
#include "pyjama/covering.hpp"
#include "pyjama/errors.hpp"
#include "pyjama/padic.hpp"
#include "pyjama/solenoid.hpp"
#include "support.hpp"

using namespace pyjama;
using testing_support::random_A;
using testing_support::random_gaussian;
using testing_support::random_nonzero;
using testing_support::uniform;

namespace {

struct Outcome {
  bool ok = false;
  std::string detail;
};

struct Criterion {
  int id;
  const char* name;
  double limit_s;
  std::function<Outcome()> body;
};

Outcome fail(const std::string& why) { return {false, why}; }

Integer pw(unsigned long p, long k) { return ipow(Integer(p), static_cast<unsigned long>(k)); }

Rational padic_distance(const GaussianRational& q, const PadicNumber& b) {
  const PadicNumber d = embed(q, b.prime(), 80) - b;
  return d.is_zero() ? d.norm_bound() : d.norm();
}

// ---------------------------------------------------------------- criteria

Outcome obstruction_reproduction() {
  long tested = 0;
  for (long n = 1; n <= 10000; n += 2) {
    for (const Rational& eps : {Rational(1, 4), Rational(49, 100)}) {
      const ObstructionCheck c = verify_obstruction(1, 1, 2, n, eps);
      if (c.empty_enumeration) continue;
      if (!c.holds || c.margin != Rational(1, 2)) return fail("normD = " + std::to_string(n));
      ++tested;
    }
  }
  return {true, std::to_string(tested) + " (normD, eps) pairs with margin 1/2"};
}

Outcome odd_denominators() {
  const auto pts = unit_circle_elements(100);
  for (const auto& q : pts)
    if (q.den() % 2 == 0) return fail("even denominator in " + q.to_string());
  return {true, std::to_string(pts.size()) + " points, all odd denominators"};
}

Outcome periodic_pipeline() {
  namespace fs = std::filesystem;
  const fs::path dir = fs::temp_directory_path() / "pyjama_acceptance_periodic";
  fs::remove_all(dir);
  fs::create_directories(dir);
  std::ofstream(dir / "periodic.ini") << "[covering]\nrotations = 1, -3/5+4/5i\nepsilon = 1/4\nD = 1-2i\naudit_points = 1000\n";
  cli::RunConfig rc;
  rc.command = cli::Command::VerifyCovering;
  rc.input_path = dir / "periodic.ini";
  rc.output_dir = dir / "out";
  std::ostringstream out, err;
  const int code = cli::run(rc, out, err);
  if (code != 1) return fail("exit " + std::to_string(code) + " " + err.str());
  if (!fs::exists(rc.output_dir / "verify-covering.svg")) return fail("no SVG emitted");
  const CoveringConfig cfg = cli::covering_config(cli::Config::load(rc.input_path));
  const CoverReport rep = uncovered_region(cfg);
  const GaussianRational ob = GaussianRational(GaussianInt(1, 1), Integer(2)) * GaussianRational(cfg.D);
  const Point2 p{ob.real(), ob.imag()};
  bool inside = false;
  for (const auto& poly : rep.uncovered) inside = inside || poly.contains(p);
  if (!inside) return fail("(1+i)/2 D not in the uncovered set");
  return {true, "exit 1, (1+i)/2 D = " + ob.to_string() + " uncovered, SVG written"};
}

Outcome kernel_identity() {
  for (int t = 0; t < 1000; ++t) {
    const GaussianRational q = random_A(1000, 4), r = random_A(1000, 4);
    const TorusValue v = evaluate(SolenoidPoint::diagonal(q), r);
    if (!v.exact || v.q != 0) return fail("q = " + q.to_string() + ", r = " + r.to_string());
  }
  return {true, "1000 pairs evaluate to 0"};
}

Outcome embedding_compatibility() {
  for (int t = 0; t < 1000; ++t) {
    const GaussianRational q = random_nonzero(1000);
    if (embed(q, 5, 16).norm() != abs_at(q, PrimeSite::P5bar)) return fail("5-adic, q = " + q.to_string());
    if (embed(q, 13, 16).norm() != abs_at(q, PrimeSite::P13bar)) return fail("13-adic, q = " + q.to_string());
  }
  return {true, "1000 values at both sites"};
}

Outcome hensel_roots() {
  for (long k = 1; k <= 8; ++k) {
    if (sqrt_neg1(5, k).digits % 5 != 3) return fail("5-adic root at k = " + std::to_string(k));
    if (sqrt_neg1(13, k).digits % 13 != 5) return fail("13-adic root at k = " + std::to_string(k));
    if (embed(GaussianRational(p5bar()), 5, k).valuation() != 1) return fail("v(1-2i) at k = " + std::to_string(k));
    if (embed(GaussianRational(p13bar()), 13, k).valuation() != 1) return fail("v(2-3i) at k = " + std::to_string(k));
  }
  return {true, "k = 1..8"};
}

Outcome periodic_dichotomy() {
  const std::vector<GaussianInt> dens = {p5(), p5bar(), p13(), p13bar(), GaussianInt(2), GaussianInt(3)};
  std::vector<std::pair<GaussianRational, GaussianRational>> powers;  // (theta5^m, theta13^m), m = 1..6
  for (long m = 1; m <= 6; ++m) powers.push_back({theta5().pow(m), theta13().pow(m)});
  long checked = 0, periodic = 0;
  for (long a = -8; a <= 8; ++a)
    for (long b = -8; b <= 8; ++b) {
      if (a * a + b * b > 50) continue;
      for (const auto& d : dens) {
        const GaussianRational q = GaussianRational(GaussianInt(a, b)) / GaussianRational(d);
        bool oracle = false;
        for (const auto& [t5, t13] : powers) oracle = oracle || (in_A(t5 * q - q) && in_A(t13 * q - q));
        if (classify_point(q).periodic != oracle) return fail("q = " + q.to_string());
        ++checked;
        periodic += oracle;
      }
    }
  return {true, std::to_string(checked) + " points, " + std::to_string(periodic) + " periodic"};
}

Outcome dense_periodic_sets() {
  const PeriodicSet s = periodic_dense_set(1);
  if (s.points.size() != 49) return fail(std::to_string(s.points.size()) + " points");
  if (48 % s.m != 0) return fail("m = " + s.m.get_str());
  const long m = s.m.get_si();
  const GaussianRational t5 = theta5().pow(m), t13 = theta13().pow(m);
  for (const auto& p : s.points) {
    if (!in_A(t5 * p.q - p.q) || !in_A(t13 * p.q - p.q)) return fail("q = " + p.q.to_string() + " not fixed");
    if (!same_point(act(t5, p.to_point()), p.to_point()) || !same_point(act(t13, p.to_point()), p.to_point()))
      return fail("point for " + p.q.to_string() + " moved");
  }
  return {true, "49 points, m = " + s.m.get_str()};
}

Outcome strong_approximation() {
  const Rational delta(1, 1000);
  for (int t = 0; t < 100; ++t) {
    const unsigned long p = t % 2 ? 5 : 13;
    const GaussianRational z(ratio(uniform(-10000, 10000), uniform(1, 997)), ratio(uniform(-10000, 10000), uniform(1, 997)));
    const PadicNumber b = PadicNumber::from_rational(ratio(uniform(-100000, 100000), uniform(1, 500)), p, 40);
    const ApproxCertificate c = strong_approx(z, b, delta);
    if (!in_A(c.q)) return fail("q outside A");
    if ((c.q - z).modulus_squared() > delta * delta) return fail("complex residual");
    if (padic_distance(c.q, b) > delta) return fail(std::to_string(p) + "-adic residual");
  }
  return {true, "100 certificates re-verified"};
}

Outcome density_lemma() {
  const DensityReport s = semigroup_density(Rational(1, 1000000), Rational(1, 10));
  if (!s.dense) return fail("semigroup gap " + std::to_string(s.max_gap));
  const DensityReport c = circle_density(theta5(), GaussianRational(1), 200);
  if (!(c.max_gap < 2 * std::numbers::pi / 20)) return fail("circle gap " + std::to_string(c.max_gap));
  char buf[128];
  std::snprintf(buf, sizeof buf, "semigroup gap %.4f over %zu points, circle gap %.4f", s.max_gap, s.sample_size,
                c.max_gap);
  return {true, buf};
}

Outcome closure_stabilization() {
  std::set<std::string> seen;
  for (long k = 2; k <= 4; ++k) {
    const PadicNumber u = embed(theta13(), 5, k);
    const ClosureIndex ci = closure_index(u, k);
    const Integer mod = pw(5, k);
    Integer x = u.residue(k), order = 1;
    while (x != 1) {
      x = (x * u.residue(k)) % mod;
      ++order;
    }
    const Integer oracle = 4 * pw(5, k - 1) / order;
    if (!ci.finite || ci.index != oracle) return fail("k = " + std::to_string(k));
    seen.insert(ci.index.get_str());
  }
  if (seen.size() != 1) return fail("index not constant");
  return {true, "index " + *seen.begin() + " for k = 2, 3, 4"};
}

Outcome snap_round_trip() {
  const GaussianInt D = p5bar().pow(2) * p13bar().pow(2);
  const Rational eta(1, 100);
  for (int t = 0; t < 1000; ++t) {
    const GaussianRational y(D * random_gaussian(1000));
    // |e| <= 1/200
    const GaussianRational e(ratio(uniform(-70, 70), 20000), ratio(uniform(-70, 70), 20000));
    if (snap_to_lattice(y + e, 2, 2, eta) != y) return fail("y = " + y.to_string());
  }
  return {true, "1000 instances recovered"};
}

Outcome oracle_equivalence() {
  long pts_uncovered = 0;
  for (int c = 0; c < 20; ++c) {
    const long N = uniform(0, 2);
    CoveringConfig cfg;
    cfg.rotations = {GaussianRational(1)};
    long r_max = 0, s_max = 0;
    for (long r = 0; r <= N; ++r)
      for (long s = 0; s <= N; ++s) {
        if ((r || s) && uniform(0, 2) == 0) {
          cfg.rotations.push_back(theta_power(r, s));
          r_max = std::max(r_max, r);
          s_max = std::max(s_max, s);
        }
      }
    cfg.epsilon = ratio(uniform(1, 49), 100);
    cfg.D = p5bar().pow(static_cast<unsigned long>(r_max)) * p13bar().pow(static_cast<unsigned long>(s_max));
    const CoverReport rep = uncovered_region(cfg, 0);
    const PolygonIndex index(rep.uncovered);
    for (int t = 0; t < 1000; ++t) {
      const long den = t % 3 == 0 ? 20 : 1009;
      const GaussianRational w(ratio(uniform(0, den - 1), den), ratio(uniform(0, den - 1), den));
      const GaussianRational z = w * GaussianRational(cfg.D);
      const Point2 p{z.real(), z.imag()};
      const bool in_poly = index.contains(p);
      const bool direct = point_uncovered(cfg, p);
      if (in_poly != direct) return fail("config " + std::to_string(c) + " at " + z.to_string());
      pts_uncovered += direct;
    }
  }
  return {true, "20000 points agree, " + std::to_string(pts_uncovered) + " uncovered"};
}

Outcome big_circles() {
  std::string detail;
  for (const char* w : {"1", "3/5+4/5i"}) {
    const double g = orbit_eval_sweep(SolenoidPoint::from_complex(ComplexCoord(GaussianRational::parse(w))), 1, 100).max_gap;
    if (!(g < 0.05)) return fail("|w| = 1 gap " + std::to_string(g));
    detail += "w=" + std::string(w) + " gap " + std::to_string(g) + "; ";
  }
  double smallest = 1.0;
  for (const char* w : {"1/4", "3/20+1/5i"})
    for (long M : {0L, 1L, 2L, 5L, 10L, 20L, 50L, 100L}) {
      const double g =
          orbit_eval_sweep(SolenoidPoint::from_complex(ComplexCoord(GaussianRational::parse(w))), 1, M).max_gap;
      if (g < 0.25) return fail("|w| = 1/4 gap " + std::to_string(g) + " at M = " + std::to_string(M));
      smallest = std::min(smallest, g);
    }
  return {true, detail + "|w|=1/4 min gap " + std::to_string(smallest)};
}

Outcome theorem_instantiation() {
  const double eps = 0.3, R = 20.0, h = 0.1;
  std::string tried;
  for (long N = 0; N <= 4; ++N)
    for (long n = 1; n <= 4; ++n) {
      const DiskCoverResult r = certified_disk_cover(theta_prime(n, N), eps, R, h, 2);
      if (r.certified) {
        std::printf("criterion 15 record: certified (n, N) = (%ld, %ld), eps = 0.3, R = 20, pitch = 0.1, %zu cells\n",
                    n, N, r.cells_checked);
        return {true, "certified at (n, N) = (" + std::to_string(n) + ", " + std::to_string(N) + ")"};
      }
      tried += "(" + std::to_string(n) + "," + std::to_string(N) + "):" + std::to_string(r.failing.size()) + " ";
    }
  return fail("no scanned pair certified; failing cells " + tried);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {1, "obstruction reproduction", 10, obstruction_reproduction},
      {2, "odd-denominator law", 1, odd_denominators},
      {3, "periodic configuration pipeline", 5, periodic_pipeline},
      {4, "solenoid kernel identity", 10, kernel_identity},
      {5, "embedding compatibility", 5, embedding_compatibility},
      {6, "Hensel canonical roots", 1, hensel_roots},
      {7, "periodic-point dichotomy", 60, periodic_dichotomy},
      {8, "dense periodic sets", 5, dense_periodic_sets},
      {9, "strong approximation certificates", 30, strong_approximation},
      {10, "density at desk scale", 10, density_lemma},
      {11, "closure-index stabilization", 10, closure_stabilization},
      {12, "snap round trip", 10, snap_round_trip},
      {13, "uncovered-region oracle equivalence", 60, oracle_equivalence},
      {14, "big-circles sweep", 30, big_circles},
      {15, "irrational triple disk cover", 600, theorem_instantiation},
  };
  int failures = 0;
  for (const auto& c : criteria) {
    const auto start = std::chrono::steady_clock::now();
    Outcome o;
    try {
      o = c.body();
    } catch (const std::exception& e) {
      o = fail(std::string("exception: ") + e.what());
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (o.ok && secs > c.limit_s) o = fail("over time limit; " + o.detail);
    failures += !o.ok;
    std::printf("%s criterion %2d %s (%.3f s, limit %g s): %s\n", o.ok ? "PASS" : "FAIL", c.id, c.name, secs,
                c.limit_s, o.detail.c_str());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failures, criteria.size());
  return failures == 0 ? 0 : 1;
}
