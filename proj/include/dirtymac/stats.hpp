#pragma once

#include <cstddef>

namespace dirtymac::stats {

struct SampleStats {
    double mean = 0.0;
    double variance = 0.0; // population form (divide by n)
    std::size_t n = 0;
};

SampleStats sample_stats(const double* x, std::size_t n);

// Mean of x^2 plus its Monte Carlo standard error.
struct PowerEstimate {
    double mean_square = 0.0;
    double std_error = 0.0;
};

PowerEstimate mean_square(const double* x, std::size_t n);

// Pearson correlation coefficient.
double correlation(const double* a, const double* b, std::size_t n);

// Chi-square statistic for uniformity of x over [lo, hi] on `bins` equal bins.
double chi_square_uniform_stat(const double* x, std::size_t n, double lo, double hi, int bins);

// Upper-tail p-value of a chi-square statistic with `dof` degrees of freedom.
double chi_square_pvalue(double stat, int dof);

// Regularized upper incomplete gamma Q(a, x).
double gamma_q(double a, double x);

} // namespace dirtymac::stats
