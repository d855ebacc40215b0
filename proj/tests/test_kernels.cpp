#include <doctest.h>

#include <cmath>
#include <cstring>
#include <limits>
#include <string>
#include <vector>

#include "pyjama/kernels.hpp"
#include "support.hpp"

using namespace pyjama::kernels;
using testing_support::rng;

namespace {

std::vector<double> random_values(std::size_t n, double lo, double hi) {
  std::uniform_real_distribution<double> u(lo, hi);
  std::vector<double> v(n);
  for (auto& x : v) x = u(rng());
  return v;
}

bool same_bits(const std::vector<double>& a, const std::vector<double>& b) {
  return a.size() == b.size() && std::memcmp(a.data(), b.data(), a.size() * sizeof(double)) == 0;
}

// Values sitting exactly on rounding boundaries of the kernels.
std::vector<double> edge_values() {
  const double tiny = std::numeric_limits<double>::denorm_min();
  return {0.0, -0.0, 0.5, -0.5, 1.5, -1.5, 2.5, 1.0, -1.0, 0.25, 0.75, tiny, -tiny, 1e-300, -1e-300,
          std::nextafter(0.5, 0.0), std::nextafter(0.5, 1.0), std::nextafter(1.0, 0.0), -std::nextafter(1.0, 0.0),
          4503599627370496.5, 1e15 + 0.5, -1e15 - 0.5, 1e308, -1e308};
}

}  // namespace

TEST_SUITE("kernels") {

TEST_CASE("dispatch") {
  CHECK(isa_available(Isa::Scalar));
  CHECK(isa_available(active_isa()));
  MESSAGE("active instruction set: " << std::string(isa_name(active_isa())));
}

TEST_CASE("scalar reference values") {
  const double xs[] = {0.3, 0.5, 2.0};
  const double ys[] = {0.0, 0.0, 0.25};
  const double re[] = {1.0, 0.0};
  const double im[] = {0.0, 1.0};
  double out[3];
  min_torus_distance(xs, ys, 3, re, im, 2, out, Isa::Scalar);
  CHECK(out[0] == doctest::Approx(0.0));  // Re(i z) = -Im z = 0
  CHECK(out[1] == 0.0);
  CHECK(out[2] == 0.0);
  min_torus_distance(xs, ys, 3, re, im, 1, out, Isa::Scalar);
  CHECK(out[0] == doctest::Approx(0.3));
  CHECK(out[1] == 0.5);
  min_torus_distance(xs, ys, 3, re, im, 0, out, Isa::Scalar);
  CHECK(out[0] == 0.5);

  const double cre[] = {1.0, 0.6, -1.0};
  const double cim[] = {0.0, 0.8, 0.0};
  torus_project(cre, cim, 3, 0.25, 0.0, out, Isa::Scalar);
  CHECK(out[0] == 0.25);
  CHECK(out[1] == doctest::Approx(0.15));
  CHECK(out[2] == 0.75);
  const double neg[] = {-1e-20};
  const double zero[] = {0.0};
  torus_project(neg, zero, 1, 1.0, 0.0, out, Isa::Scalar);
  CHECK(out[0] >= 0.0);
  CHECK(out[0] < 1.0);
}

TEST_CASE("vector and scalar variants agree bit for bit") {
  if (!isa_available(Isa::Avx2)) {
    MESSAGE("AVX2 not available on this host; vector equivalence not exercised");
    return;
  }
  for (std::size_t n : {0UL, 1UL, 3UL, 4UL, 5UL, 7UL, 8UL, 13UL, 64UL, 1001UL}) {
    for (std::size_t m : {0UL, 1UL, 3UL, 48UL}) {
      const auto xs = random_values(n, -50.0, 50.0), ys = random_values(n, -50.0, 50.0);
      std::vector<double> re(m), im(m);
      for (std::size_t j = 0; j < m; ++j) {
        const double a = random_values(1, 0.0, 6.283185307179586)[0];
        re[j] = std::cos(a);
        im[j] = std::sin(a);
      }
      std::vector<double> s(n, -1.0), v(n, -2.0);
      min_torus_distance(xs.data(), ys.data(), n, re.data(), im.data(), m, s.data(), Isa::Scalar);
      min_torus_distance(xs.data(), ys.data(), n, re.data(), im.data(), m, v.data(), Isa::Avx2);
      CHECK(same_bits(s, v));

      if (m > 0) {
        std::vector<double> ps(m, -1.0), pv(m, -2.0);
        torus_project(re.data(), im.data(), m, xs.empty() ? 0.7 : xs[0], ys.empty() ? 0.2 : ys[0], ps.data(),
                      Isa::Scalar);
        torus_project(re.data(), im.data(), m, xs.empty() ? 0.7 : xs[0], ys.empty() ? 0.2 : ys[0], pv.data(),
                      Isa::Avx2);
        CHECK(same_bits(ps, pv));
      }
    }
  }
}

TEST_CASE("rounding edge cases agree") {
  if (!isa_available(Isa::Avx2)) return;
  const auto e = edge_values();
  std::vector<double> xs, ys;
  for (double a : e)
    for (double b : e) {
      xs.push_back(a);
      ys.push_back(b);
    }
  const double re[] = {1.0, 0.0, -1.0, 0.6, std::sqrt(0.5)};
  const double im[] = {0.0, 1.0, 0.0, 0.8, std::sqrt(0.5)};
  for (std::size_t m = 1; m <= 5; ++m) {
    std::vector<double> s(xs.size()), v(xs.size());
    min_torus_distance(xs.data(), ys.data(), xs.size(), re, im, m, s.data(), Isa::Scalar);
    min_torus_distance(xs.data(), ys.data(), xs.size(), re, im, m, v.data(), Isa::Avx2);
    CHECK(same_bits(s, v));
  }
  for (double wx : e) {
    std::vector<double> s(xs.size()), v(xs.size());
    torus_project(xs.data(), ys.data(), xs.size(), wx, 0.5, s.data(), Isa::Scalar);
    torus_project(xs.data(), ys.data(), xs.size(), wx, 0.5, v.data(), Isa::Avx2);
    CHECK(same_bits(s, v));
    for (double f : s)
      if (std::isfinite(f)) {
        CHECK(f >= 0.0);
        CHECK(f < 1.0);
      }
  }
}

TEST_CASE("non-finite inputs agree") {
  if (!isa_available(Isa::Avx2)) return;
  const double inf = std::numeric_limits<double>::infinity();
  const double nan = std::numeric_limits<double>::quiet_NaN();
  const std::vector<double> xs{inf, -inf, nan, 0.25, nan, 1.0, inf, 0.5};
  const std::vector<double> ys{0.0, 0.0, 0.0, nan, 0.0, inf, inf, 0.0};
  const double re[] = {1.0, 0.6};
  const double im[] = {0.0, 0.8};
  std::vector<double> s(xs.size()), v(xs.size());
  min_torus_distance(xs.data(), ys.data(), xs.size(), re, im, 2, s.data(), Isa::Scalar);
  min_torus_distance(xs.data(), ys.data(), xs.size(), re, im, 2, v.data(), Isa::Avx2);
  CHECK(same_bits(s, v));
  torus_project(xs.data(), ys.data(), xs.size(), 0.3, 0.1, s.data(), Isa::Scalar);
  torus_project(xs.data(), ys.data(), xs.size(), 0.3, 0.1, v.data(), Isa::Avx2);
  CHECK(same_bits(s, v));
}

}  // TEST_SUITE
