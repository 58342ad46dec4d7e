#include "rotwalk/walk.hpp"

#include <cmath>
#include <sstream>
#include <thread>

#include <nlohmann/json.hpp>

namespace rotwalk {

void WalkConfig::validate() const {
  if (n < 1) throw std::invalid_argument("WalkConfig: n must be >= 1");
  if (m < 1) throw std::invalid_argument("WalkConfig: m must be >= 1");
  if (!(s_exp > 0.5 && s_exp <= 1.0))
    throw std::invalid_argument("WalkConfig: s must lie in (1/2, 1]");
}

namespace {

int64_t pick_wmax(int64_t n) {
  double cap = 10.0 * std::sqrt(static_cast<double>(n)) + 16.0;
  return std::min<int64_t>(n - 1, static_cast<int64_t>(cap));
}

inline int64_t step_sign(const TrialStream& st, int64_t i, uint64_t& block) {
  // one fair bit per step; bits come in blocks of 64 from counters 1, 2, ...
  int64_t idx = i - 2;
  int bit = static_cast<int>(idx & 63);
  if (bit == 0) block = st.at(1 + static_cast<uint64_t>(idx >> 6));
  return ((block >> bit) & 1) ? 1 : -1;
}

}  // namespace

Trajectory sample_trajectory(const WalkConfig& cfg, uint64_t trial) {
  cfg.validate();
  TrialStream st(cfg.seed, trial);
  Trajectory t;
  t.start = st.uniform01(0);
  int64_t n = to_int64(cfg.n);
  t.displacements.resize(n);
  t.displacements[0] = 0;
  uint64_t block = 0;
  for (int64_t i = 2; i <= n; ++i)
    t.displacements[i - 1] = t.displacements[i - 2] + step_sign(st, i, block);
  return t;
}

WalkKernel::WalkKernel(const Angle& a, const CosineSeries& s, const Int& n) : angle_(a) {
  n_ = to_int64(n);
  if (n_ < 1) throw std::invalid_argument("WalkKernel: n must be >= 1");
  wmax_ = pick_wmax(n_);
  for (const auto& [q, amp] : s.terms()) {
    Term t;
    t.freq = to_int64(q);
    t.amp = amp.value();
    t.cosb.resize(2 * wmax_ + 1);
    t.sinb.resize(2 * wmax_ + 1);
    if (a.is_rational()) {
      // frac(q W alpha) cycles mod the angle denominator; walk it incrementally
      const Rat r = a.rational();
      Int qa = den(r);
      Int step = (q * num(r)) % qa;
      if (step < 0) step += qa;
      Int cur = (Int(-wmax_) * step) % qa;
      if (cur < 0) cur += qa;
      for (int64_t w = -wmax_; w <= wmax_; ++w) {
        double f = Rat(cur, qa).convert_to<double>();
        t.cosb[w + wmax_] = std::cos(2.0 * M_PI * f);
        t.sinb[w + wmax_] = std::sin(2.0 * M_PI * f);
        cur += step;
        if (cur >= qa) cur -= qa;
      }
    } else {
      for (int64_t w = -wmax_; w <= wmax_; ++w) {
        double f = a.frac_mult(q * Int(w)).to_double();
        t.cosb[w + wmax_] = std::cos(2.0 * M_PI * f);
        t.sinb[w + wmax_] = std::sin(2.0 * M_PI * f);
      }
    }
    terms_.push_back(std::move(t));
    freqs_.push_back(q);
  }
}

double WalkKernel::slow_eval(int64_t w, double const* trig) const {
  // |W| beyond the table (vanishingly rare); fall back to the exact angle
  double acc = 0;
  for (size_t j = 0; j < terms_.size(); ++j) {
    double f = angle_.frac_mult(freqs_[j] * Int(w)).to_double();
    double cb = std::cos(2.0 * M_PI * f), sb = std::sin(2.0 * M_PI * f);
    acc += trig[2 * j] * cb - trig[2 * j + 1] * sb;
  }
  return acc;
}

double WalkKernel::trial_sum(uint64_t seed, uint64_t trial) const {
  TrialStream st(seed, trial);
  double x = st.uniform01(0);

  const size_t J = terms_.size();
  double trig[64];  // P_j, Q_j pairs
  if (2 * J > 64) throw std::invalid_argument("WalkKernel: series too long for simulation");
  for (size_t j = 0; j < J; ++j) {
    double f = frac_int_times_double(freqs_[j], x);
    trig[2 * j] = terms_[j].amp * std::cos(2.0 * M_PI * f);
    trig[2 * j + 1] = terms_[j].amp * std::sin(2.0 * M_PI * f);
  }

  int64_t w = 0;
  uint64_t block = 0;
  double s = 0;
  for (int64_t i = 1; i <= n_; ++i) {
    if (i > 1) w += step_sign(st, i, block);
    if (w >= -wmax_ && w <= wmax_) {
      size_t idx = static_cast<size_t>(w + wmax_);
      double acc = 0;
      for (size_t j = 0; j < J; ++j)
        acc += trig[2 * j] * terms_[j].cosb[idx] - trig[2 * j + 1] * terms_[j].sinb[idx];
      s += acc;
    } else {
      s += slow_eval(w, trig);
    }
  }
  return s;
}

std::vector<double> mc_sums(const WalkConfig& cfg, const CosineSeries& s, unsigned threads) {
  cfg.validate();
  WalkKernel kernel(cfg.angle, s, cfg.n);
  std::vector<double> sums(cfg.m);
  if (threads <= 1) {
    for (uint64_t t = 0; t < cfg.m; ++t) sums[t] = kernel.trial_sum(cfg.seed, t);
    return sums;
  }
  // static partition; each trial value depends only on (seed, trial)
  std::vector<std::thread> pool;
  uint64_t chunk = (cfg.m + threads - 1) / threads;
  for (unsigned k = 0; k < threads; ++k) {
    uint64_t lo = k * chunk, hi = std::min<uint64_t>(cfg.m, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&, lo, hi] {
      for (uint64_t t = lo; t < hi; ++t) sums[t] = kernel.trial_sum(cfg.seed, t);
    });
  }
  for (auto& th : pool) th.join();
  return sums;
}

double simulate_sum(const WalkConfig& cfg, const CosineSeries& s, uint64_t trial) {
  cfg.validate();
  WalkKernel kernel(cfg.angle, s, cfg.n);
  return kernel.trial_sum(cfg.seed, trial);
}

TailEstimate mc_tail(const WalkConfig& cfg, const CosineSeries& s, double t, unsigned threads) {
  cfg.validate();
  if (cfg.m < 100) throw std::invalid_argument("mc_tail: need at least 100 trials");
  std::vector<double> sums = mc_sums(cfg, s, threads);
  double scale = std::pow(cfg.n.convert_to<double>(), cfg.s_exp);
  uint64_t k = 0;
  for (double v : sums) k += (v / scale > t);
  Interval iv = wilson99(k, cfg.m);
  return TailEstimate{t, static_cast<double>(k) / static_cast<double>(cfg.m), iv.lo, iv.hi, cfg.m,
                      cfg.seed};
}

CltReport mc_clt(const WalkConfig& cfg, const CosineSeries& s, double sigma, unsigned threads) {
  cfg.validate();
  if (!(sigma > 0))
    throw std::invalid_argument(
        "mc_clt: sigma must be positive; use the spectral module's sigma2_partial (sigma > 0 iff "
        "the observable is non-constant)");
  std::vector<double> sums = mc_sums(cfg, s, threads);
  double root_n = std::sqrt(cfg.n.convert_to<double>());
  std::vector<double> vals(sums.size());
  for (size_t i = 0; i < sums.size(); ++i) vals[i] = sums[i] / root_n;
  double mean = 0;
  for (double v : vals) mean += v;
  mean /= static_cast<double>(vals.size());
  double var = 0;
  for (double v : vals) var += (v - mean) * (v - mean);
  var /= static_cast<double>(vals.size());
  CltReport rep;
  rep.empirical_mean = mean;
  rep.empirical_var = var;
  rep.sigma = sigma;
  rep.m = cfg.m;
  rep.degenerate = var < 1e-18;
  rep.ks_distance = ks_normal(vals, sigma);
  rep.ks_critical = ks_critical_5(cfg.m);
  return rep;
}

double exact_tail(const CosineSeries& s, const Angle& a, unsigned n, double t, double s_exp,
                  uint64_t M, bool two_sided, unsigned threads) {
  if (n < 1 || n > 20) throw std::invalid_argument("exact_tail: n must lie in [1, 20]");
  if (!(s_exp > 0)) throw std::invalid_argument("exact_tail: scaling exponent must be positive");
  if (s.empty()) return two_sided ? 0.0 : (t > 0 ? 0.0 : (t < 0 ? 1.0 : 0.0));
  int64_t maxf = to_int64(s.max_frequency());
  if (M == 0) {
    // S_path(x) - tau is a trig polynomial of degree max q_j, so the
    // indicator has at most 2 (one-sided) or 4 (two-sided) maxf crossings;
    // each crossing contributes at most 1/M to the midpoint rule
    uint64_t crossings = (two_sided ? 4 : 2) * static_cast<uint64_t>(maxf);
    M = std::max<uint64_t>(2048, crossings * 1250);  // error bound 8e-4 < 1e-3
  }
  if (M < 2048) throw std::invalid_argument("exact_tail: M must be >= 2048");

  double tau = t * std::pow(static_cast<double>(n), s_exp);
  int64_t wspan = 2 * static_cast<int64_t>(n) - 1;

  // rows[w][i] = phi(x_i + w alpha), x_i = (2i+1)/(2M)
  std::vector<std::vector<double>> rows(wspan, std::vector<double>(M, 0.0));
  for (const auto& [q, amp] : s.terms()) {
    double av = amp.value();
    int64_t f2m = to_int64(((q % (2 * Int(M))) + 2 * Int(M)) % (2 * Int(M)));
    for (int64_t w = -(static_cast<int64_t>(n) - 1); w <= static_cast<int64_t>(n) - 1; ++w) {
      double cw = a.frac_mult(q * Int(w)).to_double();
      auto& row = rows[w + n - 1];
      int64_t g = f2m % (2 * static_cast<int64_t>(M));  // q x_i phase numerator, step 2q
      // theta_i = 2 pi ((2i+1) q / (2M) + c_w)
      int64_t r = f2m;  // (2*0+1)*q mod 2M
      for (uint64_t i = 0; i < M; ++i) {
        row[i] += av * std::cos(2.0 * M_PI * (static_cast<double>(r) / (2.0 * M) + cw));
        r += 2 * g;
        if (r >= 2 * static_cast<int64_t>(M)) r -= 2 * static_cast<int64_t>(M);
        if (r >= 2 * static_cast<int64_t>(M)) r -= 2 * static_cast<int64_t>(M);
      }
    }
  }

  uint64_t total_paths = 1ull << (n - 1);
  auto count_slice = [&](uint64_t lo, uint64_t hi) -> uint64_t {
    uint64_t len = hi - lo;
    // acc[d] holds the partial sum over the first d+1 positions
    std::vector<std::vector<double>> acc(n, std::vector<double>(len));
    for (uint64_t i = 0; i < len; ++i) acc[0][i] = rows[n - 1][lo + i];
    uint64_t cnt = 0;
    // iterative DFS over sign choices
    struct Frame {
      unsigned depth;
      int64_t w;
      int next;  // 0: +1 branch, 1: -1 branch, 2: done
    };
    std::vector<Frame> stack;
    stack.push_back({1, 0, 0});
    while (!stack.empty()) {
      Frame& fr = stack.back();
      if (fr.depth == n) {
        const auto& av = acc[n - 1];
        if (two_sided) {
          for (uint64_t i = 0; i < len; ++i) cnt += (std::fabs(av[i]) > tau);
        } else {
          for (uint64_t i = 0; i < len; ++i) cnt += (av[i] > tau);
        }
        stack.pop_back();
        continue;
      }
      if (fr.next == 2) {
        stack.pop_back();
        continue;
      }
      int64_t w2 = fr.w + (fr.next == 0 ? 1 : -1);
      ++fr.next;
      const auto& row = rows[w2 + n - 1];
      const auto& prev = acc[fr.depth - 1];
      auto& cur = acc[fr.depth];
      for (uint64_t i = 0; i < len; ++i) cur[i] = prev[i] + row[lo + i];
      stack.push_back({fr.depth + 1, w2, 0});
    }
    return cnt;
  };

  uint64_t count = 0;
  if (threads <= 1 || M < 8192) {
    count = count_slice(0, M);
  } else {
    std::vector<uint64_t> parts(threads, 0);
    std::vector<std::thread> pool;
    uint64_t chunk = (M + threads - 1) / threads;
    for (unsigned k = 0; k < threads; ++k) {
      uint64_t lo = k * chunk, hi = std::min<uint64_t>(M, lo + chunk);
      if (lo >= hi) break;
      pool.emplace_back([&, k, lo, hi] { parts[k] = count_slice(lo, hi); });
    }
    for (auto& th : pool) th.join();
    for (uint64_t p : parts) count += p;
  }
  return static_cast<double>(count) / (static_cast<double>(total_paths) * static_cast<double>(M));
}

nlohmann::json TailEstimate::to_json() const {
  nlohmann::json j;
  j["threshold"] = threshold;
  j["phat"] = phat;
  j["wilson99"] = {lo, hi};
  j["trials"] = m;
  j["seed"] = seed;
  return j;
}

nlohmann::json CltReport::to_json() const {
  nlohmann::json j;
  j["empirical_mean"] = empirical_mean;
  j["empirical_var"] = empirical_var;
  j["sigma"] = sigma;
  j["ks_distance"] = ks_distance;
  j["ks_critical_5pct"] = ks_critical;
  j["trials"] = m;
  j["degenerate"] = degenerate;
  return j;
}

std::string trials_csv(const WalkConfig& cfg, const std::vector<double>& sums) {
  std::ostringstream os;
  os.precision(17);
  double scale = std::pow(cfg.n.convert_to<double>(), cfg.s_exp);
  os << "trial,S_n,S_n_scaled\n";
  for (size_t i = 0; i < sums.size(); ++i) os << i << "," << sums[i] << "," << sums[i] / scale << "\n";
  return os.str();
}

}  // namespace rotwalk
