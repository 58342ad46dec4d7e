#include "rotwalk/stats.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace rotwalk {

namespace {
constexpr double kZ99 = 2.5758293035489004;  // Phi^{-1}(0.995)
}

Interval wilson99(uint64_t k, uint64_t m) {
  if (m == 0) throw std::invalid_argument("wilson99: m must be positive");
  if (k > m) throw std::invalid_argument("wilson99: k exceeds m");
  double n = static_cast<double>(m);
  double phat = static_cast<double>(k) / n;
  double z2 = kZ99 * kZ99;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2.0 * n)) / denom;
  double half = kZ99 * std::sqrt(phat * (1.0 - phat) / n + z2 / (4.0 * n * n)) / denom;
  // the endpoints are exact at k = 0 and k = m; rounding must not spoil that
  double lo = k == 0 ? 0.0 : std::max(0.0, center - half);
  double hi = k == m ? 1.0 : std::min(1.0, center + half);
  return {lo, hi};
}

double normal_cdf(double x) { return 0.5 * std::erfc(-x / std::sqrt(2.0)); }

double ks_normal(std::vector<double> sample, double sigma) {
  if (sample.empty()) throw std::invalid_argument("ks_normal: empty sample");
  if (!(sigma > 0)) throw std::invalid_argument("ks_normal: sigma must be positive");
  std::sort(sample.begin(), sample.end());
  double m = static_cast<double>(sample.size());
  double d = 0;
  for (size_t i = 0; i < sample.size(); ++i) {
    double f = normal_cdf(sample[i] / sigma);
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / m - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / m));
  }
  return d;
}

double ks_critical_5(uint64_t m) { return 1.36 / std::sqrt(static_cast<double>(m)); }

double ks_uniform(std::vector<double> sample) {
  if (sample.empty()) throw std::invalid_argument("ks_uniform: empty sample");
  std::sort(sample.begin(), sample.end());
  double m = static_cast<double>(sample.size());
  double d = 0;
  for (size_t i = 0; i < sample.size(); ++i) {
    double f = std::min(1.0, std::max(0.0, sample[i]));
    d = std::max(d, std::fabs(static_cast<double>(i + 1) / m - f));
    d = std::max(d, std::fabs(f - static_cast<double>(i) / m));
  }
  return d;
}

}  // namespace rotwalk
