#include "pyjama/polygon.hpp"

#include <algorithm>

namespace pyjama {

namespace {

Rational cross(const Point2& o, const Point2& a, const Point2& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

Rational segment_distance_sq(const Point2& p, const Point2& a, const Point2& b) {
  const Rational dx = b.x - a.x, dy = b.y - a.y;
  const Rational len2 = dx * dx + dy * dy;
  if (len2 == 0) return distance_sq(p, a);
  Rational t = ((p.x - a.x) * dx + (p.y - a.y) * dy) / len2;
  if (t < 0) t = 0;
  if (t > 1) t = 1;
  return distance_sq(p, Point2{a.x + t * dx, a.y + t * dy});
}

bool on_segment(const Point2& p, const Point2& a, const Point2& b) {
  if (cross(a, b, p) != 0) return false;
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

}  // namespace

Rational distance_sq(const Point2& a, const Point2& b) {
  const Rational dx = a.x - b.x, dy = a.y - b.y;
  return dx * dx + dy * dy;
}

ConvexPolygon::ConvexPolygon(std::vector<Point2> vertices) {
  for (auto& p : vertices)
    if (v_.empty() || !(v_.back() == p)) v_.push_back(std::move(p));
  while (v_.size() > 1 && v_.front() == v_.back()) v_.pop_back();
}

bool ConvexPolygon::degenerate() const { return area() == 0; }

Rational ConvexPolygon::area() const {
  Rational s = 0;
  const std::size_t n = v_.size();
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& a = v_[i];
    const Point2& b = v_[(i + 1) % n];
    s += a.x * b.y - a.y * b.x;
  }
  return abs(s) / 2;
}

bool ConvexPolygon::contains(const Point2& p) const {
  const std::size_t n = v_.size();
  if (n == 0) return false;
  if (n == 1) return v_[0] == p;
  if (degenerate()) {
    for (std::size_t i = 0; i < n; ++i)
      if (on_segment(p, v_[i], v_[(i + 1) % n])) return true;
    return false;
  }
  for (std::size_t i = 0; i < n; ++i)
    if (cross(v_[i], v_[(i + 1) % n], p) < 0) return false;
  return true;
}

Rational ConvexPolygon::distance_sq(const Point2& p) const {
  if (contains(p)) return 0;
  const std::size_t n = v_.size();
  if (n == 1) return pyjama::distance_sq(p, v_[0]);
  Rational best = -1;
  for (std::size_t i = 0; i < n; ++i) {
    const Rational d = segment_distance_sq(p, v_[i], v_[(i + 1) % n]);
    if (best < 0 || d < best) best = d;
  }
  return best;
}

ConvexPolygon ConvexPolygon::clip(const Rational& a, const Rational& b, const Rational& c) const {
  const std::size_t n = v_.size();
  auto f = [&](const Point2& p) -> Rational { return a * p.x + b * p.y - c; };
  if (n == 1) return f(v_[0]) >= 0 ? *this : ConvexPolygon();
  std::vector<Point2> out;
  for (std::size_t i = 0; i < n; ++i) {
    const Point2& p = v_[i];
    const Point2& q = v_[(i + 1) % n];
    const Rational fp = f(p), fq = f(q);
    if (fp >= 0) out.push_back(p);
    if ((fp > 0 && fq < 0) || (fp < 0 && fq > 0)) {
      const Rational t = fp / (fp - fq);
      out.push_back({p.x + t * (q.x - p.x), p.y + t * (q.y - p.y)});
    }
  }
  ConvexPolygon r(std::move(out));
  // a segment traversed both ways can leave a repeated interior vertex
  if (r.v_.size() >= 3 && r.degenerate()) {
    auto cmp = [](const Point2& s, const Point2& t) { return s.x < t.x || (s.x == t.x && s.y < t.y); };
    const auto [lo, hi] = std::minmax_element(r.v_.begin(), r.v_.end(), cmp);
    std::vector<Point2> ends{*lo};
    if (!(*hi == *lo)) ends.push_back(*hi);
    r.v_ = std::move(ends);
  }
  return r;
}

bool ConvexPolygon::is_convex() const {
  const std::size_t n = v_.size();
  if (n < 3) return true;
  for (std::size_t i = 0; i < n; ++i)
    if (cross(v_[i], v_[(i + 1) % n], v_[(i + 2) % n]) < 0) return false;
  return true;
}

std::pair<Rational, Rational> ConvexPolygon::support(const Rational& a, const Rational& b) const {
  Rational lo = a * v_.front().x + b * v_.front().y, hi = lo;
  for (const auto& p : v_) {
    const Rational f = a * p.x + b * p.y;
    lo = std::min(lo, f);
    hi = std::max(hi, f);
  }
  return {lo, hi};
}

std::string ConvexPolygon::to_string() const {
  std::string s;
  for (std::size_t i = 0; i < v_.size(); ++i) {
    if (i) s += " ";
    s += "(" + pyjama::to_string(v_[i].x) + "," + pyjama::to_string(v_[i].y) + ")";
  }
  return s;
}

}  // namespace pyjama
