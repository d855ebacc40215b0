#include <cmath>

#include "pyjama/kernels.hpp"

namespace pyjama::kernels::detail {

void min_torus_distance_scalar(const double* xs, const double* ys, std::size_t n, const double* rot_re,
                               const double* rot_im, std::size_t m, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    double best = 0.5;
    for (std::size_t j = 0; j < m; ++j) {
      const double a = rot_re[j] * xs[i];
      const double b = rot_im[j] * ys[i];
      const double v = a - b;
      const double d = std::fabs(v - std::nearbyint(v));
      best = d < best ? d : best;
    }
    out[i] = best;
  }
}

void torus_project_scalar(const double* cre, const double* cim, std::size_t n, double wx, double wy, double* out) {
  for (std::size_t i = 0; i < n; ++i) {
    const double a = wx * cre[i];
    const double b = wy * cim[i];
    const double v = a - b;
    const double f = v - std::floor(v);
    // v just below an integer rounds up to 1
    out[i] = f < 1.0 ? f : 0.0;
  }
}

}  // namespace pyjama::kernels::detail
