#include "dirtymac/stats.hpp"

#include "dirtymac/kernels.hpp"

#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

namespace dirtymac::stats {

SampleStats sample_stats(const double* x, std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("sample_stats: empty input");
    auto m = kernels::moments(x, n);
    double mean = m.sum / static_cast<double>(n);
    double var = m.sum_sq / static_cast<double>(n) - mean * mean;
    return {mean, var < 0.0 ? 0.0 : var, n};
}

PowerEstimate mean_square(const double* x, std::size_t n) {
    if (n == 0)
        throw std::invalid_argument("mean_square: empty input");
    // moments of x^2 give E[x^2] and E[x^4] for the standard error
    std::vector<double> sq(n);
    for (std::size_t i = 0; i < n; ++i)
        sq[i] = x[i] * x[i];
    auto m = kernels::moments(sq.data(), n);
    double p = m.sum / static_cast<double>(n);
    double var = m.sum_sq / static_cast<double>(n) - p * p;
    if (var < 0.0)
        var = 0.0;
    return {p, std::sqrt(var / static_cast<double>(n))};
}

double correlation(const double* a, const double* b, std::size_t n) {
    auto sa = sample_stats(a, n);
    auto sb = sample_stats(b, n);
    double cov = kernels::dot(a, b, n) / static_cast<double>(n) - sa.mean * sb.mean;
    double denom = std::sqrt(sa.variance * sb.variance);
    if (denom == 0.0)
        return 0.0;
    return cov / denom;
}

double chi_square_uniform_stat(const double* x, std::size_t n, double lo, double hi, int bins) {
    if (bins < 2 || !(hi > lo))
        throw std::invalid_argument("chi_square_uniform_stat: bad bin spec");
    if (n == 0)
        throw std::invalid_argument("chi_square_uniform_stat: empty input");
    std::vector<std::size_t> counts(static_cast<std::size_t>(bins), 0);
    double width = (hi - lo) / bins;
    for (std::size_t i = 0; i < n; ++i) {
        auto k = static_cast<long>((x[i] - lo) / width);
        if (k < 0)
            k = 0;
        if (k >= bins)
            k = bins - 1;
        ++counts[static_cast<std::size_t>(k)];
    }
    double expected = static_cast<double>(n) / bins;
    double stat = 0.0;
    for (auto c : counts) {
        double d = static_cast<double>(c) - expected;
        stat += d * d / expected;
    }
    return stat;
}

namespace {

// ln Gamma(a) via Lanczos.
double ln_gamma(double a) {
    return std::lgamma(a);
}

// Lower series for P(a, x), x < a + 1.
double gamma_p_series(double a, double x) {
    double ap = a;
    double sum = 1.0 / a;
    double del = sum;
    for (int i = 0; i < 500; ++i) {
        ap += 1.0;
        del *= x / ap;
        sum += del;
        if (std::fabs(del) < std::fabs(sum) * 1e-15)
            break;
    }
    return sum * std::exp(-x + a * std::log(x) - ln_gamma(a));
}

// Continued fraction for Q(a, x), x >= a + 1 (modified Lentz).
double gamma_q_cf(double a, double x) {
    const double tiny = std::numeric_limits<double>::min() / 1e-30;
    double b = x + 1.0 - a;
    double c = 1.0 / tiny;
    double d = 1.0 / b;
    double h = d;
    for (int i = 1; i <= 500; ++i) {
        double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
        b += 2.0;
        d = an * d + b;
        if (std::fabs(d) < tiny)
            d = tiny;
        c = b + an / c;
        if (std::fabs(c) < tiny)
            c = tiny;
        d = 1.0 / d;
        double del = d * c;
        h *= del;
        if (std::fabs(del - 1.0) < 1e-15)
            break;
    }
    return std::exp(-x + a * std::log(x) - ln_gamma(a)) * h;
}

} // namespace

double gamma_q(double a, double x) {
    if (!(a > 0.0) || x < 0.0)
        throw std::invalid_argument("gamma_q: need a > 0, x >= 0");
    if (x == 0.0)
        return 1.0;
    if (x < a + 1.0)
        return 1.0 - gamma_p_series(a, x);
    return gamma_q_cf(a, x);
}

double chi_square_pvalue(double stat, int dof) {
    if (dof < 1)
        throw std::invalid_argument("chi_square_pvalue: dof must be >= 1");
    if (stat <= 0.0)
        return 1.0;
    return gamma_q(0.5 * dof, 0.5 * stat);
}

} // namespace dirtymac::stats
