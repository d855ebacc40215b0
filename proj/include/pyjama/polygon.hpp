#pragma once

// Closed convex polygons with exact rational vertices. Points and segments are
// allowed as degenerate polygons.

#include <string>
#include <vector>

#include "pyjama/gaussian.hpp"

namespace pyjama {

struct Point2 {
  Rational x;
  Rational y;

  friend bool operator==(const Point2& a, const Point2& b) { return a.x == b.x && a.y == b.y; }
};

Rational distance_sq(const Point2& a, const Point2& b);

class ConvexPolygon {
 public:
  ConvexPolygon() = default;
  // Vertices in counterclockwise order; consecutive duplicates are dropped.
  explicit ConvexPolygon(std::vector<Point2> vertices);

  const std::vector<Point2>& vertices() const noexcept { return v_; }
  bool empty() const noexcept { return v_.empty(); }
  // Zero area: a point, a segment (or collinear vertices).
  bool degenerate() const;
  Rational area() const;  // shoelace, >= 0
  // Closed containment.
  bool contains(const Point2& p) const;
  // Squared distance from p to the closed polygon (0 inside).
  Rational distance_sq(const Point2& p) const;
  // Intersection with the closed half-plane a x + b y >= c.
  ConvexPolygon clip(const Rational& a, const Rational& b, const Rational& c) const;
  // Every cross product of consecutive edges is >= 0.
  bool is_convex() const;
  // min and max of a x + b y over the vertices.
  std::pair<Rational, Rational> support(const Rational& a, const Rational& b) const;

  std::string to_string() const;

 private:
  std::vector<Point2> v_;
};

}  // namespace pyjama
