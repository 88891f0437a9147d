#include "kernels_impl.hpp"

#if defined(__x86_64__)

#include <cmath>
#include <immintrin.h>

namespace dirtymac::kernels::detail {
namespace {

// Tails fall back to the scalar formulas, which match the vector lanes
// bit-for-bit (same div/sub/ceil/mul sequence, project built with
// -ffp-contract=off).

void mod_fold_avx2(const double* x, double* out, std::size_t n, double step) {
    const __m256d vstep = _mm256_set1_pd(step);
    const __m256d vhalf = _mm256_set1_pd(0.5);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        __m256d q = _mm256_ceil_pd(_mm256_sub_pd(_mm256_div_pd(vx, vstep), vhalf));
        _mm256_storeu_pd(out + i, _mm256_sub_pd(vx, _mm256_mul_pd(vstep, q)));
    }
    for (; i < n; ++i) {
        double q = std::ceil(x[i] / step - 0.5);
        out[i] = x[i] - step * q;
    }
}

void axpy_avx2(double c, const double* x, double* out, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d acc = _mm256_loadu_pd(out + i);
        acc = _mm256_add_pd(acc, _mm256_mul_pd(vc, _mm256_loadu_pd(x + i)));
        _mm256_storeu_pd(out + i, acc);
    }
    for (; i < n; ++i)
        out[i] += c * x[i];
}

void scale_avx2(double c, const double* x, double* out, std::size_t n) {
    const __m256d vc = _mm256_set1_pd(c);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(out + i, _mm256_mul_pd(vc, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i)
        out[i] = c * x[i];
}

double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    return _mm_cvtsd_f64(_mm_add_sd(lo, _mm_unpackhi_pd(lo, lo)));
}

MomentSums moments_avx2(const double* x, std::size_t n) {
    __m256d vsum = _mm256_setzero_pd();
    __m256d vsq = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vx = _mm256_loadu_pd(x + i);
        vsum = _mm256_add_pd(vsum, vx);
        vsq = _mm256_add_pd(vsq, _mm256_mul_pd(vx, vx));
    }
    MomentSums m{hsum(vsum), hsum(vsq)};
    for (; i < n; ++i) {
        m.sum += x[i];
        m.sum_sq += x[i] * x[i];
    }
    return m;
}

double dot_avx2(const double* a, const double* b, std::size_t n) {
    __m256d vacc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        vacc = _mm256_add_pd(vacc,
                             _mm256_mul_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i)));
    double acc = hsum(vacc);
    for (; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

double max_abs_diff_avx2(const double* a, const double* b, std::size_t n) {
    const __m256d sign_mask = _mm256_set1_pd(-0.0);
    __m256d vmax = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d d = _mm256_sub_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i));
        vmax = _mm256_max_pd(vmax, _mm256_andnot_pd(sign_mask, d));
    }
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, vmax);
    double m = lanes[0];
    for (int k = 1; k < 4; ++k)
        if (lanes[k] > m)
            m = lanes[k];
    for (; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m)
            m = d;
    }
    return m;
}

const KernelTable kAvx2 = {
        mod_fold_avx2, axpy_avx2, scale_avx2,
        moments_avx2,  dot_avx2,  max_abs_diff_avx2,
};

} // namespace

const KernelTable* avx2_table() {
    return __builtin_cpu_supports("avx2") ? &kAvx2 : nullptr;
}

const KernelTable* neon_table() {
    return nullptr;
}

} // namespace dirtymac::kernels::detail

#endif // __x86_64__
