#include <immintrin.h>

#include <cmath>

#include "pyjama/kernels.hpp"

namespace pyjama::kernels::detail {

void min_torus_distance_avx2(const double* xs, const double* ys, std::size_t n, const double* rot_re,
                             const double* rot_im, std::size_t m, double* out) {
  const __m256d sign = _mm256_set1_pd(-0.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d x = _mm256_loadu_pd(xs + i);
    const __m256d y = _mm256_loadu_pd(ys + i);
    __m256d best = _mm256_set1_pd(0.5);
    for (std::size_t j = 0; j < m; ++j) {
      const __m256d a = _mm256_mul_pd(_mm256_set1_pd(rot_re[j]), x);
      const __m256d b = _mm256_mul_pd(_mm256_set1_pd(rot_im[j]), y);
      const __m256d v = _mm256_sub_pd(a, b);
      const __m256d r = _mm256_round_pd(v, _MM_FROUND_TO_NEAREST_INT | _MM_FROUND_NO_EXC);
      const __m256d d = _mm256_andnot_pd(sign, _mm256_sub_pd(v, r));
      // keep `best` when d is not smaller, matching the scalar ternary
      best = _mm256_blendv_pd(best, d, _mm256_cmp_pd(d, best, _CMP_LT_OQ));
    }
    _mm256_storeu_pd(out + i, best);
  }
  if (i < n) min_torus_distance_scalar(xs + i, ys + i, n - i, rot_re, rot_im, m, out + i);
}

void torus_project_avx2(const double* cre, const double* cim, std::size_t n, double wx, double wy, double* out) {
  const __m256d vx = _mm256_set1_pd(wx);
  const __m256d vy = _mm256_set1_pd(wy);
  const __m256d one = _mm256_set1_pd(1.0);
  std::size_t i = 0;
  for (; i + 4 <= n; i += 4) {
    const __m256d a = _mm256_mul_pd(vx, _mm256_loadu_pd(cre + i));
    const __m256d b = _mm256_mul_pd(vy, _mm256_loadu_pd(cim + i));
    const __m256d v = _mm256_sub_pd(a, b);
    const __m256d f = _mm256_sub_pd(v, _mm256_floor_pd(v));
    _mm256_storeu_pd(out + i, _mm256_and_pd(f, _mm256_cmp_pd(f, one, _CMP_LT_OQ)));
  }
  if (i < n) torus_project_scalar(cre + i, cim + i, n - i, wx, wy, out + i);
}

}  // namespace pyjama::kernels::detail
