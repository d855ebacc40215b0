#pragma once

// Data-parallel floating kernels with a scalar reference and an AVX2 variant.
// Both variants avoid fused multiply-add, so their outputs agree bit for bit.

#include <cstddef>

namespace pyjama::kernels {

enum class Isa { Scalar, Avx2 };

const char* isa_name(Isa isa);
bool isa_available(Isa isa);
// Best available ISA, overridable with PYJAMA_ISA=scalar|avx2.
Isa active_isa();

// out[i] = min_j dist(rot_re[j] * xs[i] - rot_im[j] * ys[i], Z): the distance of
// Re(theta_j z_i) to the nearest integer, minimised over rotations.
void min_torus_distance(const double* xs, const double* ys, std::size_t n, const double* rot_re,
                        const double* rot_im, std::size_t m, double* out, Isa isa);
void min_torus_distance(const double* xs, const double* ys, std::size_t n, const double* rot_re,
                        const double* rot_im, std::size_t m, double* out);

// out[i] = frac(wx * cre[i] - wy * cim[i]) in [0, 1): Re(w theta_i) mod 1.
void torus_project(const double* cre, const double* cim, std::size_t n, double wx, double wy, double* out, Isa isa);
void torus_project(const double* cre, const double* cim, std::size_t n, double wx, double wy, double* out);

namespace detail {
void min_torus_distance_scalar(const double*, const double*, std::size_t, const double*, const double*, std::size_t,
                               double*);
void torus_project_scalar(const double*, const double*, std::size_t, double, double, double*);
#if defined(__x86_64__) || defined(_M_X64)
void min_torus_distance_avx2(const double*, const double*, std::size_t, const double*, const double*, std::size_t,
                             double*);
void torus_project_avx2(const double*, const double*, std::size_t, double, double, double*);
#endif
}  // namespace detail

}  // namespace pyjama::kernels
