#pragma once

#include <cstddef>

// Data-parallel inner loops used by the lattice simulator. Every kernel has a
// scalar reference implementation plus SIMD variants (AVX2 on x86-64, NEON on
// aarch64) selected once at startup. Elementwise kernels (mod_fold, axpy,
// scale) are bit-identical across variants; reductions (moments, dot,
// max_abs_diff) may differ in summation order and are equivalence-tested to
// tight relative tolerance.
namespace dirtymac::kernels {

enum class SimdLevel { Scalar, Avx2, Neon };

SimdLevel active_level();
const char* level_name(SimdLevel level);

// Overrides auto-detection (also settable via env DIRTYMAC_SIMD=scalar|avx2|neon).
// Throws std::invalid_argument if the level is unavailable on this machine.
void force_level(SimdLevel level);

// out[i] = x[i] - step * q(x[i] / step), where q rounds to nearest integer
// with ties toward -infinity. This is the modulo-lattice fold for step-sized
// scalar lattices; results lie in (-step/2, step/2].
void mod_fold(const double* x, double* out, std::size_t n, double step);

// out[i] += c * x[i]
void axpy(double c, const double* x, double* out, std::size_t n);

// out[i] = c * x[i]
void scale(double c, const double* x, double* out, std::size_t n);

struct MomentSums {
    double sum = 0.0;
    double sum_sq = 0.0;
};

MomentSums moments(const double* x, std::size_t n);
double dot(const double* a, const double* b, std::size_t n);
double max_abs_diff(const double* a, const double* b, std::size_t n);

} // namespace dirtymac::kernels
