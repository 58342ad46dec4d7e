#include "rotwalk/quadratic.hpp"

#include <cmath>

namespace rotwalk {

int Quad::sign() const {
  int sa = a_.sign(), sb = b_.sign();
  if (sb == 0) return sa;
  if (sa == 0) return sb;
  if (sa == sb) return sa;
  // opposite signs: compare a^2 with 5 b^2
  Rat a2 = a_ * a_, b2 = 5 * b_ * b_;
  if (a2 == b2) return 0;  // only at a = b = 0, already handled, but keep exact
  bool a_dominates = a2 > b2;
  return a_dominates ? sa : sb;
}

Quad Quad::inverse() const {
  // 1/(a + b r5) = (a - b r5)/(a^2 - 5 b^2)
  Rat d = a_ * a_ - 5 * b_ * b_;
  if (d == 0) throw std::domain_error("Quad::inverse: zero norm");
  return Quad(a_ / d, -b_ / d);
}

Int Quad::floor() const {
  if (b_ == 0) return floor_rat(a_);
  // seed from a float estimate, then fix up exactly
  double est = to_double(128);
  Int m(static_cast<long long>(std::floor(est)));
  while (cmp(Rat(m)) < 0) --m;          // ensure m <= v
  while (cmp(Rat(m + 1)) >= 0) ++m;     // ensure v < m+1
  return m;
}

Quad Quad::dist_to_int() const {
  Quad f = frac();
  return (f.cmp(Rat(1, 2)) > 0) ? f - Rat(1) : f;
}

double Quad::to_double(unsigned bits) const {
  BigFloat va = BigFloat::from_rat(a_, bits);
  if (b_ == 0) return va.to_double();
  BigFloat vb = BigFloat::from_rat(b_, bits);
  return va.add(vb.mul(BigFloat::sqrt5(bits))).to_double();
}

}  // namespace rotwalk
