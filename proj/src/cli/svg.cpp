#include <algorithm>
#include <cstdio>
#include <set>

#include "pyjama/cli.hpp"

namespace pyjama::cli {

namespace {

std::string fmt(double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.6f", v);
  return buf;
}

struct Canvas {
  double scale;
  double size;

  std::string x(const Rational& v) const { return fmt(v.get_d() * scale); }
  std::string y(const Rational& v) const { return fmt(size - v.get_d() * scale); }

  std::string points(const ConvexPolygon& p) const {
    std::string s;
    for (const auto& v : p.vertices()) {
      if (!s.empty()) s += " ";
      s += x(v.x) + "," + y(v.y);
    }
    return s;
  }

  // Filled polygon, segment or dot depending on dimension.
  std::string shape(const ConvexPolygon& p, const std::string& fill, double dot) const {
    const auto& v = p.vertices();
    if (v.size() == 1)
      return "<circle cx=\"" + x(v[0].x) + "\" cy=\"" + y(v[0].y) + "\" r=\"" + fmt(dot) + "\" fill=\"" + fill +
             "\"/>\n";
    if (p.degenerate())
      return "<line x1=\"" + x(v.front().x) + "\" y1=\"" + y(v.front().y) + "\" x2=\"" + x(v.back().x) + "\" y2=\"" +
             y(v.back().y) + "\" stroke=\"" + fill + "\" stroke-width=\"" + fmt(dot / 2) + "\"/>\n";
    return "<polygon points=\"" + points(p) + "\" fill=\"" + fill + "\" stroke=\"" + fill + "\" stroke-width=\"0.500000\"/>\n";
  }
};

ConvexPolygon square(long side) {
  const Rational s(side);
  return ConvexPolygon({Point2{0, 0}, Point2{s, 0}, Point2{s, s}, Point2{0, s}});
}

ConvexPolygon clip_to_square(const ConvexPolygon& p, long side) {
  const Rational s(side);
  ConvexPolygon r = p.clip(1, 0, 0);
  if (!r.empty()) r = r.clip(0, 1, 0);
  if (!r.empty()) r = r.clip(-1, 0, -s);
  if (!r.empty()) r = r.clip(0, -1, -s);
  return r;
}

ConvexPolygon translate(const ConvexPolygon& p, const Point2& t) {
  std::vector<Point2> v;
  for (const auto& q : p.vertices()) v.push_back({q.x + t.x, q.y + t.y});
  return ConvexPolygon(std::move(v));
}

// Range of lattice coordinates u, v with D(u + vi) + [0,1]^2 D possibly meeting [0, side]^2.
std::pair<Integer, Integer> lattice_range(const GaussianInt& D, long side, bool imag) {
  const GaussianRational Dinv = GaussianRational(D).inverse();
  Rational lo = 0, hi = 0;
  bool first = true;
  for (long cx : {0L, side})
    for (long cy : {0L, side}) {
      const GaussianRational w = GaussianRational(GaussianInt(cx, cy)) * Dinv;
      const Rational c = imag ? w.imag() : w.real();
      if (first || c < lo) lo = c;
      if (first || c > hi) hi = c;
      first = false;
    }
  return {floor_of(lo) - 1, ceil_of(hi)};
}

long window_side(const CoverReport& report, long max_window) {
  const Integer n = report.config.D.norm();
  return n > max_window ? max_window : n.get_si();
}

}  // namespace

std::vector<Point2> obstruction_dots(const CoverReport& report, long side) {
  const GaussianInt& D = report.config.D;
  const auto [u0, u1] = lattice_range(D, side, false);
  const auto [v0, v1] = lattice_range(D, side, true);
  const Rational s(side);
  std::vector<Point2> out;
  std::set<std::pair<std::string, std::string>> seen;
  for (const auto& m : report.obstruction_matches) {
    const GaussianRational base =
        GaussianRational(GaussianInt(m.tuple.a, m.tuple.b), Integer(m.tuple.m)) * GaussianRational(D);
    for (Integer u = u0; u <= u1; ++u)
      for (Integer v = v0; v <= v1; ++v) {
        const GaussianRational z = base + GaussianRational(D * GaussianInt(u, v));
        const Point2 p{z.real(), z.imag()};
        if (p.x < 0 || p.y < 0 || p.x > s || p.y > s) continue;
        if (seen.insert({to_string(p.x), to_string(p.y)}).second) out.push_back(p);
      }
  }
  std::sort(out.begin(), out.end(), [](const Point2& a, const Point2& b) { return a.x < b.x || (a.x == b.x && a.y < b.y); });
  return out;
}

std::string render_svg(const CoverReport& report, const SvgStyle& style) {
  const long side = window_side(report, style.max_window);
  const Canvas cv{style.canvas / static_cast<double>(side), style.canvas};
  const ConvexPolygon window = square(side);
  std::string out;
  out += "<?xml version=\"1.0\" encoding=\"UTF-8\"?>\n";
  out += "<svg xmlns=\"http://www.w3.org/2000/svg\" width=\"" + fmt(style.canvas) + "\" height=\"" +
         fmt(style.canvas) + "\" viewBox=\"0 0 " + fmt(style.canvas) + " " + fmt(style.canvas) + "\">\n";
  out += "<rect x=\"0.000000\" y=\"0.000000\" width=\"" + fmt(style.canvas) + "\" height=\"" + fmt(style.canvas) +
         "\" fill=\"white\"/>\n";

  const Rational& eps = report.config.epsilon;
  static const char* grays[] = {"#c8c8c8", "#8c8c8c"};
  for (std::size_t r = 0; r < report.config.rotations.size(); ++r) {
    const GaussianRational& t = report.config.rotations[r];
    const Rational c = t.real(), s = -t.imag();
    const auto [lo, hi] = window.support(c, s);
    out += "<g fill=\"" + std::string(grays[r % 2]) + "\" fill-opacity=\"0.6\">\n";
    for (Integer k = floor_of(lo - eps); k <= ceil_of(hi + eps); ++k) {
      ConvexPolygon slab = window.clip(c, s, Rational(k) - eps);
      if (!slab.empty()) slab = slab.clip(-c, -s, -(Rational(k) + eps));
      if (slab.empty() || slab.degenerate()) continue;
      out += "<polygon points=\"" + cv.points(slab) + "\"/>\n";
    }
    out += "</g>\n";
  }

  const GaussianInt& D = report.config.D;
  const auto [u0, u1] = lattice_range(D, side, false);
  const auto [v0, v1] = lattice_range(D, side, true);
  out += "<g>\n";
  for (const auto& poly : report.uncovered)
    for (Integer u = u0; u <= u1; ++u)
      for (Integer v = v0; v <= v1; ++v) {
        const GaussianInt t = D * GaussianInt(u, v);
        const ConvexPolygon piece = clip_to_square(translate(poly, Point2{Rational(t.re()), Rational(t.im())}), side);
        // a full-dimensional piece touching the window in a corner or edge is not drawn
        if (piece.empty() || (piece.degenerate() && !poly.degenerate())) continue;
        out += cv.shape(piece, "black", style.dot_radius);
      }
  out += "</g>\n";

  out += "<g fill=\"black\" stroke=\"white\" stroke-width=\"1.000000\">\n";
  for (const auto& p : obstruction_dots(report, side))
    out += "<circle cx=\"" + cv.x(p.x) + "\" cy=\"" + cv.y(p.y) + "\" r=\"" + fmt(style.dot_radius) + "\"/>\n";
  out += "</g>\n";

  out += "<polygon points=\"" + cv.points(fundamental_domain(D)) +
         "\" fill=\"none\" stroke=\"black\" stroke-width=\"1.000000\" stroke-dasharray=\"6 4\"/>\n";
  out += "</svg>\n";
  return out;
}

}  // namespace pyjama::cli
