#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <random>
#include <sstream>

#include "pyjama/approximation.hpp"
#include "pyjama/cli.hpp"
#include "pyjama/errors.hpp"
#include "pyjama/padic.hpp"
#include "pyjama/solenoid.hpp"

namespace pyjama::cli {

namespace {

constexpr const char* kHeader = "pyjama-report v1\n";

std::string fmt_double(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.12g", v);
  return buf;
}

std::string join(const std::vector<GaussianRational>& v) {
  std::string s;
  for (const auto& q : v) s += (s.empty() ? "" : ", ") + q.to_string();
  return s;
}

const char* yes_no(bool b) { return b ? "true" : "false"; }

struct Builder {
  std::ostringstream report;
  std::ostringstream summary;

  Builder(Command c) {
    report << kHeader << "command = " << command_name(c) << "\n";
    summary << "command=" << command_name(c);
  }
  template <class T>
  void kv(const std::string& k, const T& v) {
    report << k << " = " << v << "\n";
  }
  template <class T>
  void sum(const std::string& k, const T& v) {
    summary << " " << k << "=" << v;
  }
  RunResult finish(int code) {
    RunResult r;
    r.exit_code = code;
    summary << " exit=" << code;
    r.summary = summary.str();
    report << "exit = " << code << "\n";
    r.report = report.str();
    return r;
  }
};

// Uniform rational points of the fundamental parallelogram, denominators 1..den_max.
std::vector<Point2> audit_points(const GaussianInt& D, std::size_t count, unsigned long long seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> den_dist(1, 997);
  std::vector<Point2> out;
  out.reserve(count);
  const GaussianRational d(D);
  for (std::size_t i = 0; i < count; ++i) {
    const long den = den_dist(rng);
    std::uniform_int_distribution<long> num_dist(0, den - 1);
    const GaussianRational w(ratio(num_dist(rng), den), ratio(num_dist(rng), den));
    const GaussianRational z = w * d;
    out.push_back({z.real(), z.imag()});
  }
  return out;
}

std::string point_string(const Point2& p) { return "(" + to_string(p.x) + "," + to_string(p.y) + ")"; }

RunResult verify_covering(const RunConfig& rc, const Config& cfg) {
  const CoveringConfig c = covering_config(cfg);
  const long m_max = cfg.has("covering", "obstruction_m_max") ? cfg.get_long("covering", "obstruction_m_max") : 2;
  const long audit = cfg.has("covering", "audit_points") ? cfg.get_long("covering", "audit_points") : 0;
  if (m_max < 0 || audit < 0) throw ConfigError("obstruction_m_max and audit_points must be nonnegative");
  const CoverReport rep = uncovered_region(c, m_max);

  Builder b(Command::VerifyCovering);
  b.report << cover_report_text(rep).substr(std::string(kHeader).size());
  std::size_t mismatches = 0;
  if (audit > 0) {
    const PolygonIndex index(rep.uncovered);
    for (const auto& p : audit_points(c.D, static_cast<std::size_t>(audit), rc.seed))
      if (index.contains(p) != point_uncovered(c, p)) ++mismatches;
    b.kv("audit_seed", rc.seed);
    b.kv("audit_points", audit);
    b.kv("audit_mismatches", mismatches);
  }
  if (mismatches > 0) throw Error("uncovered polygons disagree with direct stripe evaluation at " +
                                  std::to_string(mismatches) + " audit points");
  b.sum("covered", yes_no(rep.covered()));
  b.sum("polygons", rep.uncovered.size());
  b.sum("area", to_string(rep.total_uncovered_area));
  b.sum("obstructions", rep.obstruction_matches.size());
  RunResult r = b.finish(rep.covered() ? 0 : 1);
  if (rc.svg) r.svg = render_svg(rep);
  return r;
}

RunResult obstructions(const RunConfig&, const Config& cfg) {
  cfg.expect_keys("obstructions", {"epsilon", "m_max", "normD", "D"});
  const Rational eps = cfg.get_rational("obstructions", "epsilon");
  const long m_max = cfg.get_long("obstructions", "m_max");
  if (m_max < 1) throw ConfigError("obstructions.m_max must be positive");
  Integer normD;
  if (cfg.has("obstructions", "D")) {
    const GaussianRational d = cfg.get_gaussian("obstructions", "D");
    if (!d.is_gaussian_integer() || d.is_zero()) throw ConfigError("obstructions.D must be a nonzero Gaussian integer");
    normD = d.num().norm();
  } else {
    normD = cfg.get_long("obstructions", "normD");
  }
  if (normD < 1) throw ConfigError("normD must be positive");
  const auto cat = obstruction_catalog(eps, m_max, normD);
  Builder b(Command::Obstructions);
  b.kv("epsilon", to_string(eps));
  b.kv("m_max", m_max);
  b.kv("normD", normD.get_str());
  const bool empty_enum = verify_obstruction(0, 0, 1, normD, eps).empty_enumeration;
  b.kv("norm_enumeration_empty", yes_no(empty_enum));
  b.kv("tuples", cat.size());
  for (const auto& o : cat)
    b.report << "tuple (" << o.a << "," << o.b << "," << o.m << ") margin = " << to_string(o.margin) << "\n";
  b.sum("normD", normD.get_str());
  b.sum("tuples", cat.size());
  return b.finish(cat.empty() ? 1 : 0);
}

RunResult irrational_cover(const RunConfig& rc, const Config& cfg) {
  cfg.expect_keys("irrational", {"epsilon", "radius", "pitch", "n", "N", "n_max", "N_max"});
  const double eps = cfg.get_double("irrational", "epsilon");
  const double R = cfg.get_double("irrational", "radius");
  const double h = cfg.get_double("irrational", "pitch");
  std::vector<std::pair<long, long>> scan;
  if (cfg.has("irrational", "n")) {
    scan.emplace_back(cfg.get_long("irrational", "n"), cfg.get_long("irrational", "N"));
  } else {
    const long n_max = cfg.get_long("irrational", "n_max"), N_max = cfg.get_long("irrational", "N_max");
    for (long N = 0; N <= N_max; ++N)
      for (long n = 1; n <= n_max; ++n) scan.emplace_back(n, N);
  }
  Builder b(Command::IrrationalCover);
  b.kv("epsilon", fmt_double(eps));
  b.kv("radius", fmt_double(R));
  b.kv("pitch", fmt_double(h));
  b.kv("refine", rc.refine);
  bool found = false;
  for (const auto& [n, N] : scan) {
    const DiskCoverResult res = certified_disk_cover(theta_prime(n, N), eps, R, h, rc.refine);
    b.report << "scan n = " << n << " N = " << N << " certified = " << yes_no(res.certified)
             << " cells = " << res.cells_checked << " failing = " << res.failing.size() << "\n";
    if (res.certified) {
      b.kv("certified_n", n);
      b.kv("certified_N", N);
      b.sum("n", n);
      b.sum("N", N);
      found = true;
      break;
    }
  }
  b.kv("certified", yes_no(found));
  b.sum("certified", yes_no(found));
  return b.finish(found ? 0 : 1);
}

RunResult rationality(const RunConfig& rc, const Config& cfg) {
  cfg.expect_keys("rationality", {"n"});
  const CoveringConfig c = covering_config(cfg);
  const long n = cfg.get_long("rationality", "n");
  const CoverReport cover = uncovered_region(c, 2);
  const RationalityReport rep = rationality_check(c, cover.uncovered, n);
  Builder b(Command::RationalityCheck);
  b.kv("rotations", join(c.rotations));
  b.kv("epsilon", to_string(c.epsilon));
  b.kv("D", c.D.to_string());
  b.kv("n", n);
  for (std::size_t i = 0; i < rep.sup_distance_sq.size(); ++i)
    b.report << "polygon " << i << " inf_distance_sq = " << to_string(rep.inf_distance_sq[i])
             << " sup_distance_sq = " << to_string(rep.sup_distance_sq[i]) << "\n";
  b.kv("max_inf_distance_sq", to_string(rep.max_inf_distance_sq));
  b.kv("max_sup_distance_sq", to_string(rep.max_sup_distance_sq));
  b.kv("max_sup_distance", fmt_double(std::sqrt(rep.max_sup_distance_sq.get_d())));
  b.kv("within_20", yes_no(rep.within_20));
  b.kv("D_exceeds_40n2_20n", yes_no(rep.d_exceeds_bound));
  b.sum("max_inf_distance_sq", to_string(rep.max_inf_distance_sq));
  b.sum("max_sup_distance_sq", to_string(rep.max_sup_distance_sq));
  b.sum("within_20", yes_no(rep.within_20));
  RunResult r = b.finish(rep.within_20 ? 0 : 1);
  if (rc.svg) r.svg = render_svg(cover);
  return r;
}

RunResult orbit(const RunConfig&, const Config& cfg) {
  cfg.expect_keys("orbit", {"w", "m", "M", "gap_below"});
  const GaussianRational w = cfg.get_gaussian("orbit", "w");
  const long m = cfg.get_long("orbit", "m"), M = cfg.get_long("orbit", "M");
  if (m < 1 || M < 0) throw ConfigError("orbit needs m >= 1 and M >= 0");
  const SweepResult res = orbit_eval_sweep(SolenoidPoint::from_complex(ComplexCoord(w)), m, M);
  Builder b(Command::Orbit);
  b.kv("w", w.to_string());
  b.kv("m", m);
  b.kv("M", M);
  b.kv("max_gap", fmt_double(res.max_gap));
  b.sum("max_gap", fmt_double(res.max_gap));
  int code = 0;
  if (cfg.has("orbit", "gap_below")) {
    const Rational thr = cfg.get_rational("orbit", "gap_below");
    const bool ok = res.max_gap < thr.get_d();
    b.kv("gap_below", to_string(thr));
    b.kv("dense", yes_no(ok));
    code = ok ? 0 : 1;
  }
  return b.finish(code);
}

RunResult classify(const RunConfig&, const Config& cfg) {
  cfg.expect_keys("classify", {"q"});
  const GaussianRational q = cfg.get_gaussian("classify", "q");
  const Classification cl = classify_point(q);
  Builder b(Command::Classify);
  b.kv("q", q.to_string());
  b.kv("abs_p5", to_string(cl.abs_p5));
  b.kv("abs_p13", to_string(cl.abs_p13));
  std::string verdict = "torsion, not periodic";
  if (cl.periodic) {
    const Integer m = period_exponent(q);
    verdict = "torsion, periodic, m = " + m.get_str();
    b.sum("m", m.get_str());
  } else {
    const ThetaWitness wit = torsion_to_periodic(q);
    b.kv("theta_witness", "theta5^" + std::to_string(wit.r) + " theta13^" + std::to_string(wit.s));
  }
  b.kv("classification", verdict);
  b.sum("periodic", yes_no(cl.periodic));
  return b.finish(0);
}

RunResult density(const RunConfig&, const Config& cfg) {
  cfg.expect_keys("density", {"kind", "eta", "delta", "theta", "t", "M"});
  const std::string kind = cfg.get_string("density", "kind");
  Builder b(Command::Density);
  b.kv("kind", kind);
  DensityReport rep;
  if (kind == "semigroup") {
    const Rational eta = cfg.get_rational("density", "eta"), delta = cfg.get_rational("density", "delta");
    rep = semigroup_density(eta, delta);
    b.kv("eta", to_string(eta));
    b.kv("delta", to_string(delta));
    b.kv("max_gap_exact", to_string(*rep.max_gap_exact));
    b.kv("witness", to_string(rep.witness_exact->first) + " " + to_string(rep.witness_exact->second));
  } else if (kind == "circle") {
    const GaussianRational theta = cfg.get_gaussian("density", "theta");
    const GaussianRational t = cfg.has("density", "t") ? cfg.get_gaussian("density", "t") : GaussianRational(1);
    const long M = cfg.get_long("density", "M");
    rep = circle_density(theta, t, M);
    b.kv("theta", theta.to_string());
    b.kv("t", t.to_string());
    b.kv("M", M);
    if (cfg.has("density", "delta")) {
      const Rational delta = cfg.get_rational("density", "delta");
      rep.dense = rep.max_gap <= delta.get_d();
      b.kv("delta", to_string(delta));
    } else {
      rep.dense = true;
    }
  } else {
    throw ConfigError("density.kind must be 'semigroup' or 'circle'");
  }
  b.kv("sample_size", rep.sample_size);
  b.kv("max_gap", fmt_double(rep.max_gap));
  b.kv("dense", yes_no(rep.dense));
  b.sum("max_gap", fmt_double(rep.max_gap));
  b.sum("dense", yes_no(rep.dense));
  return b.finish(rep.dense ? 0 : 1);
}

// A p-adic target given either in the "p^v * u mod p^k" form or as a Gaussian rational to embed.
PadicNumber padic_target(const Config& cfg, const std::string& key, unsigned long p, long k) {
  const std::string s = cfg.get_string("approx", key);
  if (s.find("mod") != std::string::npos || s == "0") {
    PadicNumber x = PadicNumber::zero(p);
    try {
      x = PadicNumber::parse(s, p);
    } catch (const ParseError& e) {
      throw ParseError(e.what(), 0, "approx." + key);
    }
    if (x.prime() != p) throw ConfigError("approx." + key + " must be a " + std::to_string(p) + "-adic number");
    return x;
  }
  return embed(cfg.get_gaussian("approx", key), p, k);
}

RunResult approx(const RunConfig& rc, const Config& cfg) {
  cfg.expect_keys("approx", {"kind", "z", "a", "b", "p", "delta"});
  const std::string kind = cfg.has("approx", "kind") ? cfg.get_string("approx", "kind") : "two";
  const GaussianRational z = cfg.get_gaussian("approx", "z");
  const Rational delta = cfg.get_rational("approx", "delta");
  ApproxCertificate c;
  if (kind == "two") {
    const long p = cfg.has("approx", "p") ? cfg.get_long("approx", "p") : 5;
    if (p != 5 && p != 13) throw ConfigError("approx.p must be 5 or 13");
    c = strong_approx(z, padic_target(cfg, "b", static_cast<unsigned long>(p), rc.precision_k), delta);
  } else if (kind == "three") {
    c = strong_approx_3way(z, padic_target(cfg, "a", 5, rc.precision_k), padic_target(cfg, "b", 13, rc.precision_k),
                           delta);
  } else {
    throw ConfigError("approx.kind must be 'two' or 'three'");
  }
  Builder b(Command::Approx);
  b.kv("kind", kind);
  b.kv("z", z.to_string());
  b.kv("delta", to_string(delta));
  b.kv("q", c.q.to_string());
  b.kv("complex_residual_sq", to_string(c.complex_residual_sq));
  b.kv("residual_5", to_string(c.residual_5));
  b.kv("residual_13", to_string(c.residual_13));
  b.kv("denominator_exponent_7", c.denominator_exponent_7);
  b.sum("q", c.q.to_string());
  return b.finish(0);
}

RunResult closure(const RunConfig& rc, const Config& cfg) {
  cfg.expect_keys("closure", {"u", "p", "k_min", "k_max"});
  const GaussianRational u = cfg.get_gaussian("closure", "u");
  const long p = cfg.get_long("closure", "p");
  if (p != 5 && p != 13) throw ConfigError("closure.p must be 5 or 13");
  const long k_min = cfg.has("closure", "k_min") ? cfg.get_long("closure", "k_min") : 1;
  const long k_max = cfg.has("closure", "k_max") ? cfg.get_long("closure", "k_max") : std::min(rc.precision_k, 8L);
  if (k_min < 1 || k_max < k_min) throw ConfigError("closure needs 1 <= k_min <= k_max");
  Builder b(Command::ClosureIndex);
  b.kv("u", u.to_string());
  b.kv("p", p);
  bool stable = true, first = true, finite = true;
  Integer index0;
  for (long k = k_min; k <= k_max; ++k) {
    const ClosureIndex ci = closure_index(embed(u, static_cast<unsigned long>(p), k), k);
    b.report << "k = " << k << " finite = " << yes_no(ci.finite) << " index = " << ci.index.get_str()
             << " order = " << ci.order.get_str() << "\n";
    finite = finite && ci.finite;
    if (first) index0 = ci.index;
    else if (ci.index != index0) stable = false;
    first = false;
  }
  b.kv("stable", yes_no(stable && finite));
  b.sum("index", index0.get_str());
  b.sum("stable", yes_no(stable && finite));
  return b.finish(stable && finite ? 0 : 1);
}

}  // namespace

std::string cover_report_text(const CoverReport& rep) {
  std::ostringstream o;
  o << kHeader;
  o << "rotations = " << join(rep.config.rotations) << "\n";
  o << "epsilon = " << to_string(rep.config.epsilon) << "\n";
  o << "D = " << rep.config.D.to_string() << "\n";
  o << "covered = " << yes_no(rep.covered()) << "\n";
  o << "uncovered_polygons = " << rep.uncovered.size() << "\n";
  o << "total_uncovered_area = " << to_string(rep.total_uncovered_area) << "\n";
  for (std::size_t i = 0; i < rep.uncovered.size(); ++i) {
    const auto& p = rep.uncovered[i];
    const char* kind = p.vertices().size() == 1 ? "point" : (p.degenerate() ? "segment" : "polygon");
    o << "polygon " << i << " [" << kind << "] = " << p.to_string() << "\n";
  }
  for (const auto& m : rep.obstruction_matches)
    o << "obstruction (" << m.tuple.a << "," << m.tuple.b << "," << m.tuple.m << ") margin = "
      << to_string(m.tuple.margin) << " point = " << point_string(m.point)
      << " distance_sq = " << to_string(m.distance_sq) << " uncovered = " << yes_no(m.distance_sq == 0) << "\n";
  return o.str();
}

Command parse_command(const std::string& name) {
  for (Command c : {Command::VerifyCovering, Command::Obstructions, Command::IrrationalCover, Command::RationalityCheck,
                    Command::Orbit, Command::Classify, Command::Density, Command::Approx, Command::ClosureIndex})
    if (name == command_name(c)) return c;
  throw ConfigError("unknown command '" + name + "'");
}

const char* command_name(Command c) {
  switch (c) {
    case Command::VerifyCovering: return "verify-covering";
    case Command::Obstructions: return "obstructions";
    case Command::IrrationalCover: return "irrational-cover";
    case Command::RationalityCheck: return "rationality-check";
    case Command::Orbit: return "orbit";
    case Command::Classify: return "classify";
    case Command::Density: return "density";
    case Command::Approx: return "approx";
    case Command::ClosureIndex: return "closure-index";
  }
  return "?";
}

RunResult execute(const RunConfig& rc, const Config& cfg) {
  if (rc.precision_k < 1) throw ConfigError("--precision must be positive");
  switch (rc.command) {
    case Command::VerifyCovering: return verify_covering(rc, cfg);
    case Command::Obstructions: return obstructions(rc, cfg);
    case Command::IrrationalCover: return irrational_cover(rc, cfg);
    case Command::RationalityCheck: return rationality(rc, cfg);
    case Command::Orbit: return orbit(rc, cfg);
    case Command::Classify: return classify(rc, cfg);
    case Command::Density: return density(rc, cfg);
    case Command::Approx: return approx(rc, cfg);
    case Command::ClosureIndex: return closure(rc, cfg);
  }
  throw ConfigError("unknown command");
}

int run(const RunConfig& rc, std::ostream& out, std::ostream& err) {
  RunResult r;
  try {
    r = execute(rc, Config::load(rc.input_path));
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    out << "command=" << command_name(rc.command) << " exit=2\n";
    return 2;
  }
  try {
    std::filesystem::create_directories(rc.output_dir);
    const std::string stem = command_name(rc.command);
    const std::filesystem::path report = rc.output_dir / (stem + ".report");
    std::ofstream(report, std::ios::binary) << r.report;
    if (!r.svg.empty()) std::ofstream(rc.output_dir / (stem + ".svg"), std::ios::binary) << r.svg;
  } catch (const std::filesystem::filesystem_error& e) {
    err << "error: " << e.what() << "\n";
    out << "command=" << command_name(rc.command) << " exit=2\n";
    return 2;
  }
  out << r.summary << "\n";
  return r.exit_code;
}

}  // namespace pyjama::cli
