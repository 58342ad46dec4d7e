#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotwalk/chain.hpp"
#include "rotwalk/observable.hpp"
#include "rotwalk/walk.hpp"

namespace rotwalk {

/// A construction step that cannot be satisfied; what() names the violated
/// inequality or bound.
class InfeasibleError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Product  coeff * prod_i base_i^{exp_i}  with positive rational bases and
/// rational exponents. Two such products compare exactly: raise both sides
/// to the lcm of the exponent denominators and compare rationals.
struct PowerProduct {
  Rat coeff{1};
  std::vector<std::pair<Rat, Rat>> factors;  // (base > 0, exponent)

  PowerProduct& mul(const Rat& base, const Rat& exp);
  double approx() const;
  nlohmann::json to_json() const;
  static PowerProduct from_json(const nlohmann::json& j);
};

/// -1, 0, +1 for lhs <,=,> rhs. Exact.
int compare_power_products(const PowerProduct& lhs, const PowerProduct& rhs);

/// One audited inequality. "power" lines carry both sides as PowerProducts;
/// "closeness" lines compare |final_angle - alpha| with delta; "witness"
/// lines check |final_angle - p/q| <= c/q^gamma.
struct Inequality {
  std::string tag;
  std::string kind;  // "power" | "closeness" | "witness"
  char rel;          // '<' or '>' ( "<=" for witness )
  PowerProduct lhs, rhs;           // kind == power
  Rat alpha{0}, delta{0};          // kind == closeness
  Int wp{0}, wq{1};                // kind == witness
  Rat wgamma{2}, wc{1};
  double lhs_approx = 0, rhs_approx = 0;

  nlohmann::json to_json() const;
  static Inequality from_json(const nlohmann::json& j);
};

/// Monte Carlo evidence slot: a seeded walk-module run referenced by the
/// ledger, never executed by the builder itself.
struct McSlot {
  std::string name;
  double threshold;
  double min_prob;
  Int n;
  uint64_t trials;
  bool feasible;    // n within desk-scale simulation reach
  bool certified;   // backed by a proof-shape bound (vs. evidence only)
  std::string note;

  nlohmann::json to_json() const;
  static McSlot from_json(const nlohmann::json& j);
};

struct LedgerLevel {
  unsigned k = 0;
  Rat alpha{0};        // alpha_k
  Int q{1};            // frequency / denominator at this level
  Rat gamma{0};        // per-level exponent (theorems 2/3); 0 when unused
  Amp amplitude;
  PowerProduct amplitude_form;
  Int N{1};
  std::vector<Inequality> inequalities;
  std::vector<McSlot> mc_slots;

  nlohmann::json to_json() const;
  static LedgerLevel from_json(const nlohmann::json& j);
};

struct ConstructionLedger {
  int theorem = 1;
  std::string mode;  // "faithful" | "toy"
  Rat s{3, 5};
  Rat c{1};
  nlohmann::json params() const;
  // builder-wide recorded constants (exact strings)
  Rat main_threshold{2};   // T
  Rat tail_budget{1};      // B in  a_j N_i^{1-s} < B 4^{-(j-1-i)}
  std::vector<LedgerLevel> levels;
  Angle final_angle = Angle::golden_conjugate();
  CosineSeries series;

  nlohmann::json to_json() const;
  static ConstructionLedger from_json(const nlohmann::json& j);
};

struct VerifyLine {
  std::string tag;
  bool pass;
  std::string detail;
};

struct VerifyReport {
  std::vector<VerifyLine> lines;
  bool all_pass = true;
  nlohmann::json to_json() const;
};

/// Re-evaluates every stored inequality in exact arithmetic, re-deriving the
/// operands from the level data rather than trusting the stored values, and
/// re-checks the structural invariants (parity, monotonicity, closeness of
/// the final angle, tail sums).
VerifyReport verify_ledger(const ConstructionLedger& l);

/// delta = 1/(12 q N): within this radius of p/q, every x in G_q^{1/12}
/// keeps its whole +-N orbit inside G_q^{1/6}.
Rat lemma1_delta(const Int& q, const Int& N);

struct Lemma1Certificate {
  Int q;
  Int N;
  Rat delta;
  Rat alpha_prime;
  Rat amplitude;
  Rat s;
  Rat threshold{2};
  size_t orbit_samples = 0;

  nlohmann::json to_json() const;
};

/// Certifies the Lemma-1 event P(S_N/N^s > threshold) > 1/6 for
/// phi = amplitude * cos(2 pi q x) at the rational angle alpha_prime:
/// (i) (amplitude/2) N^{1-s} > threshold, exactly;
/// (ii) |alpha_prime - p/q| < 1/(12 q N), exactly;
/// (iii) orbit containment for an exact-rational sample of G_q^{1/12}.
/// Throws InfeasibleError naming the failed check.
Lemma1Certificate lemma1_check(const Rat& alpha_prime, const Int& q, const Int& N, const Rat& s,
                               const Rat& amplitude, const Rat& threshold = Rat(2));

struct Lemma3Params {
  CosineSeries phi;
  Int N;
  double threshold;
  PowerProduct threshold_form;
  Int p, q;
  Rat gamma, c, s;

  nlohmann::json to_json() const;
};

/// phi = q^{-(gamma-1)(1-s)} cos(2 pi q x), N = floor(q^{gamma-1}/(16c)),
/// threshold sqrt2 / (2 (16c)^{1-s}); requires the witness
/// |alpha - p/q| <= c/q^gamma, which is re-verified exactly.
Lemma3Params lemma3_params(const Int& p, const Int& q, const Rat& c, const Rat& gamma, const Rat& s,
                           const Angle& a);

enum class BuildMode { faithful, toy };

struct Theorem1Options {
  Rat s{3, 5};
  unsigned depth = 1;
  BuildMode mode = BuildMode::faithful;
  /// toy amplitude schedule a_k; defaults to 4^{-k}
  std::optional<std::vector<Rat>> amplitudes;
  Rat toy_threshold{7, 10};  // per-level main threshold T in toy mode
};

struct BuildResult {
  Angle angle = Angle::golden_conjugate();
  CosineSeries series;
  ConstructionLedger ledger;
};

/// The Theorem-1 induction: alpha_1 = 1/3, phi_k = a_k cos(2 pi q_k x),
/// N_k from the level threshold, alpha_{k+1} an odd-denominator rational in
/// the intersection of all closeness balls, final angle the golden-tail
/// completion inside the last interval. Faithful mode (a_k = 2^{-q_k},
/// threshold 2) is desk-feasible only at depth 1; deeper requests report the
/// violated bound.
BuildResult theorem1_build(const Theorem1Options& opts);

struct Theorem2Options {
  Rat gamma{6};
  Rat c{1};
  std::optional<Rat> s;  // chosen automatically when absent or inadmissible
  unsigned depth = 1;
};

/// Theorem-2 observable over witness convergents of `a`; also records the
/// C^r certificate (r the largest integer below gamma/2 - 3/2).
BuildResult theorem2_build(const Angle& a, const Theorem2Options& opts);

struct Theorem3Options {
  Rat s{3, 5};
  unsigned depth = 1;
  /// per-level witness exponents; defaults to max(2, k)
  std::optional<std::vector<Rat>> schedule;
};

/// Theorem-3 variant: per-level exponents from the Liouville schedule,
/// amplitudes q_k^{-(e_k-1)(1-s)}, C^infinity certificate.
BuildResult theorem3_build(const Angle& a, const Theorem3Options& opts);

}  // namespace rotwalk
