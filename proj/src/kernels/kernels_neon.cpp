#include "kernels_impl.hpp"

#if defined(__aarch64__)

#include <arm_neon.h>
#include <cmath>

namespace dirtymac::kernels::detail {
namespace {

void mod_fold_neon(const double* x, double* out, std::size_t n, double step) {
    const float64x2_t vstep = vdupq_n_f64(step);
    const float64x2_t vhalf = vdupq_n_f64(0.5);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vx = vld1q_f64(x + i);
        // vrndpq = round toward +inf (ceil)
        float64x2_t q = vrndpq_f64(vsubq_f64(vdivq_f64(vx, vstep), vhalf));
        vst1q_f64(out + i, vsubq_f64(vx, vmulq_f64(vstep, q)));
    }
    for (; i < n; ++i) {
        double q = std::ceil(x[i] / step - 0.5);
        out[i] = x[i] - step * q;
    }
}

void axpy_neon(double c, const double* x, double* out, std::size_t n) {
    const float64x2_t vc = vdupq_n_f64(c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t acc = vld1q_f64(out + i);
        acc = vaddq_f64(acc, vmulq_f64(vc, vld1q_f64(x + i)));
        vst1q_f64(out + i, acc);
    }
    for (; i < n; ++i)
        out[i] += c * x[i];
}

void scale_neon(double c, const double* x, double* out, std::size_t n) {
    const float64x2_t vc = vdupq_n_f64(c);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vst1q_f64(out + i, vmulq_f64(vc, vld1q_f64(x + i)));
    for (; i < n; ++i)
        out[i] = c * x[i];
}

MomentSums moments_neon(const double* x, std::size_t n) {
    float64x2_t vsum = vdupq_n_f64(0.0);
    float64x2_t vsq = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t vx = vld1q_f64(x + i);
        vsum = vaddq_f64(vsum, vx);
        vsq = vaddq_f64(vsq, vmulq_f64(vx, vx));
    }
    MomentSums m{vaddvq_f64(vsum), vaddvq_f64(vsq)};
    for (; i < n; ++i) {
        m.sum += x[i];
        m.sum_sq += x[i] * x[i];
    }
    return m;
}

double dot_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t vacc = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        vacc = vaddq_f64(vacc, vmulq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
    double acc = vaddvq_f64(vacc);
    for (; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

double max_abs_diff_neon(const double* a, const double* b, std::size_t n) {
    float64x2_t vmax = vdupq_n_f64(0.0);
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        float64x2_t d = vabsq_f64(vsubq_f64(vld1q_f64(a + i), vld1q_f64(b + i)));
        vmax = vmaxq_f64(vmax, d);
    }
    double m = vmaxvq_f64(vmax);
    for (; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m)
            m = d;
    }
    return m;
}

const KernelTable kNeon = {
        mod_fold_neon, axpy_neon, scale_neon,
        moments_neon,  dot_neon,  max_abs_diff_neon,
};

} // namespace

const KernelTable* avx2_table() {
    return nullptr;
}

const KernelTable* neon_table() {
    return &kNeon;
}

} // namespace dirtymac::kernels::detail

#endif // __aarch64__
