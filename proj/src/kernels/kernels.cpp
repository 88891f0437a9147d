#include "kernels_impl.hpp"

#include <cmath>
#include <cstdlib>
#include <cstring>
#include <stdexcept>

namespace dirtymac::kernels {

namespace {

void mod_fold_scalar(const double* x, double* out, std::size_t n, double step) {
    for (std::size_t i = 0; i < n; ++i) {
        // round-half-toward-minus-infinity: q = ceil(y - 1/2)
        double q = std::ceil(x[i] / step - 0.5);
        out[i] = x[i] - step * q;
    }
}

void axpy_scalar(double c, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] += c * x[i];
}

void scale_scalar(double c, const double* x, double* out, std::size_t n) {
    for (std::size_t i = 0; i < n; ++i)
        out[i] = c * x[i];
}

MomentSums moments_scalar(const double* x, std::size_t n) {
    MomentSums m;
    for (std::size_t i = 0; i < n; ++i) {
        m.sum += x[i];
        m.sum_sq += x[i] * x[i];
    }
    return m;
}

double dot_scalar(const double* a, const double* b, std::size_t n) {
    double acc = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        acc += a[i] * b[i];
    return acc;
}

double max_abs_diff_scalar(const double* a, const double* b, std::size_t n) {
    double m = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        double d = std::fabs(a[i] - b[i]);
        if (d > m)
            m = d;
    }
    return m;
}

const detail::KernelTable kScalar = {
        mod_fold_scalar, axpy_scalar,  scale_scalar,
        moments_scalar,  dot_scalar,   max_abs_diff_scalar,
};

struct Dispatch {
    const detail::KernelTable* table;
    SimdLevel level;
};

Dispatch pick(SimdLevel level) {
    switch (level) {
    case SimdLevel::Avx2:
        if (const auto* t = detail::avx2_table())
            return {t, SimdLevel::Avx2};
        throw std::invalid_argument("AVX2 kernels unavailable on this machine");
    case SimdLevel::Neon:
        if (const auto* t = detail::neon_table())
            return {t, SimdLevel::Neon};
        throw std::invalid_argument("NEON kernels unavailable on this machine");
    case SimdLevel::Scalar:
        return {&kScalar, SimdLevel::Scalar};
    }
    throw std::invalid_argument("unknown SIMD level");
}

Dispatch auto_detect() {
    if (const char* env = std::getenv("DIRTYMAC_SIMD")) {
        if (std::strcmp(env, "scalar") == 0)
            return pick(SimdLevel::Scalar);
        if (std::strcmp(env, "avx2") == 0)
            return pick(SimdLevel::Avx2);
        if (std::strcmp(env, "neon") == 0)
            return pick(SimdLevel::Neon);
        throw std::invalid_argument("DIRTYMAC_SIMD must be scalar, avx2 or neon");
    }
    if (const auto* t = detail::avx2_table())
        return {t, SimdLevel::Avx2};
    if (const auto* t = detail::neon_table())
        return {t, SimdLevel::Neon};
    return {&kScalar, SimdLevel::Scalar};
}

Dispatch& current() {
    static Dispatch d = auto_detect();
    return d;
}

} // namespace

namespace detail {
const KernelTable& scalar_table() {
    return kScalar;
}

#if !defined(__x86_64__) && !defined(__aarch64__)
const KernelTable* avx2_table() {
    return nullptr;
}
const KernelTable* neon_table() {
    return nullptr;
}
#endif
} // namespace detail

SimdLevel active_level() {
    return current().level;
}

const char* level_name(SimdLevel level) {
    switch (level) {
    case SimdLevel::Scalar: return "scalar";
    case SimdLevel::Avx2: return "avx2";
    case SimdLevel::Neon: return "neon";
    }
    return "unknown";
}

void force_level(SimdLevel level) {
    current() = pick(level);
}

void mod_fold(const double* x, double* out, std::size_t n, double step) {
    current().table->mod_fold(x, out, n, step);
}

void axpy(double c, const double* x, double* out, std::size_t n) {
    current().table->axpy(c, x, out, n);
}

void scale(double c, const double* x, double* out, std::size_t n) {
    current().table->scale(c, x, out, n);
}

MomentSums moments(const double* x, std::size_t n) {
    return current().table->moments(x, n);
}

double dot(const double* a, const double* b, std::size_t n) {
    return current().table->dot(a, b, n);
}

double max_abs_diff(const double* a, const double* b, std::size_t n) {
    return current().table->max_abs_diff(a, b, n);
}

} // namespace dirtymac::kernels
