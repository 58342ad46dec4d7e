#pragma once

#include <cstdint>
#include <vector>

namespace rotwalk {

struct Interval {
  double lo, hi;
};

/// Wilson score interval for k successes out of m trials at 99% confidence.
/// Stable near proportions 0 and 1, unlike the Wald interval.
Interval wilson99(uint64_t k, uint64_t m);

/// Standard normal CDF.
double normal_cdf(double x);

/// One-sample Kolmogorov-Smirnov distance of `sample` (unsorted ok) against
/// Normal(0, sigma^2).
double ks_normal(std::vector<double> sample, double sigma);

/// 5%-level one-sample KS critical value, 1.36/sqrt(m).
double ks_critical_5(uint64_t m);

/// KS distance against Uniform[0,1).
double ks_uniform(std::vector<double> sample);

}  // namespace rotwalk
