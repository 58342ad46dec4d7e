#pragma once

#include <optional>
#include <utility>
#include <vector>

#include <nlohmann/json_fwd.hpp>

#include "rotwalk/quadratic.hpp"

namespace rotwalk {

struct Convergent {
  Int p, q;
};

/// Convergents p_k/q_k of a partial-quotient list, standard recurrence,
/// starting from p_0/q_0 = a_0/1.
std::vector<Convergent> convergents(const std::vector<Int>& quotients);

/// A rotation angle in [0, 1), held through exact convergent data.
///
/// Two kinds: a rational p/q (finite continued fraction), or a constructed
/// irrational given by a finite quotient list completed with the all-ones
/// tail. The completion makes every constructed angle an exact element of
/// Q(sqrt 5), so closeness and witness inequalities are decided exactly.
class Angle {
 public:
  static Angle from_rational(const Rat& r);
  static Angle from_quotients(std::vector<Int> quotients, bool golden_tail);
  /// (sqrt5 - 1)/2 = [0; 1, 1, 1, ...].
  static Angle golden_conjugate();

  bool is_rational() const { return !golden_tail_; }
  Rat rational() const;
  Quad value() const;

  const std::vector<Int>& quotients() const { return quotients_; }
  const std::vector<Convergent>& convergent_list() const { return convergents_; }

  /// First K partial quotients (the golden tail extends with ones).
  std::vector<Int> continued_fraction(size_t K) const;

  /// n*alpha mod 1, exact.
  Quad frac_mult(const Int& n) const;
  /// Signed distance of n*alpha to the nearest integer, exact.
  Quad dist_mult(const Int& n) const;

  double to_double() const;
  unsigned precision_bits() const { return precision_bits_; }
  void set_precision_bits(unsigned b) { precision_bits_ = b; }

  nlohmann::json to_json() const;
  static Angle from_json(const nlohmann::json& j);

 private:
  Angle() = default;
  std::vector<Int> quotients_;         // a_0 = 0 always (angle in [0,1))
  std::vector<Convergent> convergents_;
  bool golden_tail_ = false;
  unsigned precision_bits_ = 4096;
};

/// Effective approximation exponent -ln|alpha - p/q| / ln q.
/// Throws std::domain_error on an exact hit (rational alpha equal to p/q).
double witness_exponent(const Angle& a, const Int& p, const Int& q);

/// A finite certificate |alpha - p/q| <= c/q^gamma.
struct ApproxWitness {
  Int p, q;
  Rat gamma;   // >= 2
  Rat c;       // > 0
  Quad gap;    // exact |alpha - p/q|
};

/// Checks |alpha - p/q| <= c/q^gamma exactly (gamma, c rational).
bool check_witness(const Angle& a, const Int& p, const Int& q, const Rat& gamma, const Rat& c);

/// Builds an angle whose k-th convergent satisfies
/// |alpha - p_k/q_k| <= 1/q_k^{e_k} for each scheduled exponent e_k,
/// by taking the minimal next partial quotient a_{k+1} >= q_k^{e_k - 2}.
/// `first_quotient` fixes a_1 (so q_1) when a specific base denominator is wanted.
Angle build_liouville(const std::vector<Rat>& exponents, const Int& first_quotient = Int(1),
                      unsigned precision_budget_bits = 4096);

}  // namespace rotwalk
