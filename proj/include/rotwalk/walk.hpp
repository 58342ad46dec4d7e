#pragma once

#include <cstdint>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotwalk/observable.hpp"
#include "rotwalk/rng.hpp"
#include "rotwalk/stats.hpp"

namespace rotwalk {

struct WalkConfig {
  Angle angle;
  Int n;            // steps
  uint64_t m;       // trials
  double s_exp;     // scaling exponent, in (1/2, 1]
  uint64_t seed;

  void validate() const;
};

struct Trajectory {
  double start;
  std::vector<int64_t> displacements;  // W_1 = 0, |W_{i+1}-W_i| = 1
};

Trajectory sample_trajectory(const WalkConfig& cfg, uint64_t trial);

/// Precomputed tables for one (angle, series, n) triple. Positions are
/// derived from the integer displacement W and the exact angle: the table
/// entry for W holds cos/sin of 2 pi frac(q_j W alpha), computed through the
/// angle's exact representation, so no floating drift accumulates along a
/// trajectory.
class WalkKernel {
 public:
  WalkKernel(const Angle& a, const CosineSeries& s, const Int& n);

  /// S_n for one trial; a pure function of (seed, trial).
  double trial_sum(uint64_t seed, uint64_t trial) const;

  int64_t steps() const { return n_; }

 private:
  double slow_eval(int64_t w, double const* trig) const;

  struct Term {
    int64_t freq;
    double amp;
    std::vector<double> cosb, sinb;
  };
  Angle angle_;
  int64_t n_ = 0;
  int64_t wmax_ = 0;
  std::vector<Term> terms_;
  std::vector<Int> freqs_;
};

/// Per-trial sums S_n, in trial order; identical for every thread count.
std::vector<double> mc_sums(const WalkConfig& cfg, const CosineSeries& s, unsigned threads = 1);

double simulate_sum(const WalkConfig& cfg, const CosineSeries& s, uint64_t trial);

struct TailEstimate {
  double threshold;
  double phat;
  double lo, hi;    // 99% Wilson
  uint64_t m;
  uint64_t seed;
  nlohmann::json to_json() const;
};

/// Monte Carlo estimate of P(S_n / n^s > t).
TailEstimate mc_tail(const WalkConfig& cfg, const CosineSeries& s, double t, unsigned threads = 1);

struct CltReport {
  double empirical_mean;
  double empirical_var;
  double sigma;         // reference N(0, sigma^2)
  double ks_distance;
  double ks_critical;   // 1.36/sqrt(m), 5% level
  uint64_t m;
  bool degenerate;      // sample variance collapsed to ~0
  nlohmann::json to_json() const;
};

/// Distribution check of S_n / sqrt(n) against Normal(0, sigma^2).
CltReport mc_clt(const WalkConfig& cfg, const CosineSeries& s, double sigma, unsigned threads = 1);

/// Ground-truth oracle for small n: enumerates all 2^{n-1} sign paths and
/// averages the exceedance indicator over M midpoint starting points.
/// two_sided=true computes P(|S_n|/n^s > t). M = 0 picks M from the
/// quadrature error target (indicator crossings / M < 1e-3).
double exact_tail(const CosineSeries& s, const Angle& a, unsigned n, double t, double s_exp,
                  uint64_t M = 0, bool two_sided = false, unsigned threads = 1);

/// CSV rows (trial, S_n, S_n/n^s) for a run.
std::string trials_csv(const WalkConfig& cfg, const std::vector<double>& sums);

}  // namespace rotwalk
