#include <cstdlib>
#include <string_view>

#include "pyjama/errors.hpp"
#include "pyjama/kernels.hpp"

namespace pyjama::kernels {

const char* isa_name(Isa isa) { return isa == Isa::Avx2 ? "avx2" : "scalar"; }

bool isa_available(Isa isa) {
  if (isa == Isa::Scalar) return true;
#if defined(__x86_64__) || defined(_M_X64)
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Isa active_isa() {
  static const Isa chosen = [] {
    if (const char* env = std::getenv("PYJAMA_ISA")) {
      const std::string_view want(env);
      if (want == "scalar") return Isa::Scalar;
      if (want == "avx2" && isa_available(Isa::Avx2)) return Isa::Avx2;
    }
    return isa_available(Isa::Avx2) ? Isa::Avx2 : Isa::Scalar;
  }();
  return chosen;
}

void min_torus_distance(const double* xs, const double* ys, std::size_t n, const double* rot_re,
                        const double* rot_im, std::size_t m, double* out, Isa isa) {
  if (!isa_available(isa)) throw Error(std::string("instruction set not available: ") + isa_name(isa));
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::Avx2) return detail::min_torus_distance_avx2(xs, ys, n, rot_re, rot_im, m, out);
#endif
  detail::min_torus_distance_scalar(xs, ys, n, rot_re, rot_im, m, out);
}

void min_torus_distance(const double* xs, const double* ys, std::size_t n, const double* rot_re,
                        const double* rot_im, std::size_t m, double* out) {
  min_torus_distance(xs, ys, n, rot_re, rot_im, m, out, active_isa());
}

void torus_project(const double* cre, const double* cim, std::size_t n, double wx, double wy, double* out, Isa isa) {
  if (!isa_available(isa)) throw Error(std::string("instruction set not available: ") + isa_name(isa));
#if defined(__x86_64__) || defined(_M_X64)
  if (isa == Isa::Avx2) return detail::torus_project_avx2(cre, cim, n, wx, wy, out);
#endif
  detail::torus_project_scalar(cre, cim, n, wx, wy, out);
}

void torus_project(const double* cre, const double* cim, std::size_t n, double wx, double wy, double* out) {
  torus_project(cre, cim, n, wx, wy, out, active_isa());
}

}  // namespace pyjama::kernels
