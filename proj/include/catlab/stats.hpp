#pragma once

#include <span>

namespace catlab {

double normal_cdf(double x) noexcept;

// Kolmogorov-Smirnov distance sup |F_n(x) - Phi(x)| between the empirical
// CDF of the samples and the standard normal CDF. Samples must be non-empty.
double ks_statistic(std::span<const double> samples);

double mean(std::span<const double> xs);
// Unbiased sample variance; 0 for fewer than two values.
double sample_variance(std::span<const double> xs);
double median(std::span<const double> xs);

}  // namespace catlab
