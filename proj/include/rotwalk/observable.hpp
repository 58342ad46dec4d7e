#pragma once

#include <optional>
#include <variant>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotwalk/circle.hpp"
#include "rotwalk/diophantine.hpp"

namespace rotwalk {

/// Term amplitude: exact rational when available (construction and ledger
/// paths), double otherwise (irrational powers such as q^{-(gamma-1)(1-s)}).
class Amp {
 public:
  Amp() : v_(Rat(0)) {}
  explicit Amp(Rat r) : v_(std::move(r)) {}
  explicit Amp(double d) : v_(d) {}
  bool exact() const { return std::holds_alternative<Rat>(v_); }
  const Rat& rational() const { return std::get<Rat>(v_); }
  double value() const {
    return exact() ? std::get<Rat>(v_).convert_to<double>() : std::get<double>(v_);
  }
  Amp negated() const {
    if (exact()) return Amp(Rat(-std::get<Rat>(v_)));
    return Amp(-std::get<double>(v_));
  }

 private:
  std::variant<Rat, double> v_;
};

/// Mean-zero observable sum_j a_j cos(2 pi q_j x): sorted distinct positive
/// frequencies, no constant term. Amplitudes carry a sign so images under
/// the transfer operator stay representable.
class CosineSeries {
 public:
  CosineSeries() = default;
  explicit CosineSeries(std::vector<std::pair<Int, Amp>> terms, Rat tail_bound = Rat(0));

  size_t size() const { return terms_.size(); }
  bool empty() const { return terms_.empty(); }
  const std::vector<std::pair<Int, Amp>>& terms() const { return terms_; }
  const Rat& tail_bound() const { return tail_bound_; }
  Int max_frequency() const { return empty() ? Int(0) : terms_.back().first; }

  /// Sum of |a_j| (sup-norm bound of the stored truncation).
  double sup_norm_bound() const;

  nlohmann::json to_json() const;
  static CosineSeries from_json(const nlohmann::json& j);

 private:
  std::vector<std::pair<Int, Amp>> terms_;
  Rat tail_bound_{0};
};

/// Series value at x; rational arguments are reduced mod 1 exactly before
/// the trig call.
double eval(const CosineSeries& s, const CirclePoint& x);

/// Exponential-basis coefficient: a_j/2 at n = +-q_j, else 0.
double fourier_coeff(const CosineSeries& s, const Int& n);

/// sum_j |a_j| (2 pi q_j)^r, an upper bound on the sup norm of the r-th
/// derivative.
double cr_norm_bound(const CosineSeries& s, unsigned r);

/// Single term 2^{-q} cos(2 pi q x); the amplitude override serves scaled-down
/// construction runs.
CosineSeries t1_term(const Int& q, std::optional<Rat> amplitude_override = std::nullopt);

/// Single term q^{-(gamma-1)(1-s)} cos(2 pi q x).
CosineSeries t2_term(const Int& q, const Rat& gamma, const Rat& s);

}  // namespace rotwalk
