#pragma once

#include <variant>

#include "rotwalk/numeric.hpp"

namespace rotwalk {

/// A point of the unit circle, represented by its fractional part.
/// Keeps exact rational form when built from a rational, otherwise a double.
class CirclePoint {
 public:
  CirclePoint() : v_(0.0) {}
  explicit CirclePoint(double x);
  explicit CirclePoint(Rat x);

  bool exact() const { return std::holds_alternative<Rat>(v_); }
  const Rat& rational() const { return std::get<Rat>(v_); }
  double value() const;

  CirclePoint plus(const CirclePoint& o) const;

 private:
  std::variant<double, Rat> v_;
};

/// x mod 1 in [0, 1); exact for rational input.
CirclePoint reduce(double x);
CirclePoint reduce(const Rat& x);

/// min(|x-y|, 1-|x-y|), in [0, 1/2].
double circle_dist(const CirclePoint& x, const CirclePoint& y);

/// Distance from x to the grid {0, 1/q, ..., (q-1)/q}. Equals the circle
/// distance of q*x from 0, divided by q.
double grid_dist(const CirclePoint& x, const Int& q);
Rat grid_dist_exact(const Rat& x, const Int& q);

/// Resonant neighbourhood of the 1/q grid: points within eta/q of it.
struct GoodSet {
  Int q;
  Rat eta;  // in (0, 1/2)
  GoodSet(Int q_, Rat eta_);
};

/// Strict comparison grid_dist(x, q) < eta/q.
bool in_good_set(const CirclePoint& x, const GoodSet& g);
bool in_good_set_exact(const Rat& x, const GoodSet& g);

}  // namespace rotwalk
