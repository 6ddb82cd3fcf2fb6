#pragma once

#include <span>

namespace gammashrink {

double mean(std::span<const double> x);
// Unbiased sample variance; 0 for fewer than two values.
double variance(std::span<const double> x);

// Effective sample size from the autocorrelation sum, truncated by Geyer's
// initial positive sequence. Returns n for a constant chain.
double effective_sample_size(std::span<const double> x);

// Monte Carlo standard error of the mean: sd / sqrt(ESS).
double mcse_mean(std::span<const double> x);

// Empirical quantile with linear interpolation between order statistics
// (Hyndman-Fan type 7). Does not require sorted input.
double quantile(std::span<const double> x, double p);

}  // namespace gammashrink
