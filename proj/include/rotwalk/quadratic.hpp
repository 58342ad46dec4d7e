#pragma once

#include "rotwalk/numeric.hpp"

namespace rotwalk {

/// Exact element of Q(sqrt 5): a + b*sqrt(5). All comparisons and the
/// floor are decided in integer arithmetic, never through floats.
class Quad {
 public:
  Quad() : a_(0), b_(0) {}
  explicit Quad(Rat a) : a_(std::move(a)), b_(0) {}
  Quad(Rat a, Rat b) : a_(std::move(a)), b_(std::move(b)) {}

  static Quad sqrt5() { return Quad(Rat(0), Rat(1)); }
  /// (sqrt5 - 1)/2, the golden-ratio conjugate.
  static Quad golden_conjugate() { return Quad(Rat(-1, 2), Rat(1, 2)); }

  const Rat& a() const { return a_; }
  const Rat& b() const { return b_; }
  bool is_rational() const { return b_ == 0; }

  Quad operator+(const Quad& o) const { return Quad(a_ + o.a_, b_ + o.b_); }
  Quad operator-(const Quad& o) const { return Quad(a_ - o.a_, b_ - o.b_); }
  Quad operator-() const { return Quad(-a_, -b_); }
  Quad operator*(const Quad& o) const {
    return Quad(a_ * o.a_ + 5 * b_ * o.b_, a_ * o.b_ + b_ * o.a_);
  }
  Quad operator*(const Rat& r) const { return Quad(a_ * r, b_ * r); }
  Quad operator+(const Rat& r) const { return Quad(a_ + r, b_); }
  Quad operator-(const Rat& r) const { return Quad(a_ - r, b_); }
  Quad inverse() const;

  /// -1, 0, +1.
  int sign() const;
  int cmp(const Quad& o) const { return (*this - o).sign(); }
  int cmp(const Rat& r) const { return (*this - r).sign(); }
  bool operator==(const Quad& o) const { return a_ == o.a_ && b_ == o.b_; }

  Quad abs() const { return sign() >= 0 ? *this : -*this; }
  Int floor() const;
  Quad frac() const { return *this - Rat(floor()); }
  /// Signed distance to the nearest integer, in [-1/2, 1/2].
  Quad dist_to_int() const;

  double to_double(unsigned bits = 192) const;

 private:
  Rat a_, b_;
};

}  // namespace rotwalk
