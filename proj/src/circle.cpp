#include "rotwalk/circle.hpp"

#include <cmath>

namespace rotwalk {

CirclePoint::CirclePoint(double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("CirclePoint: non-finite input");
  double f = x - std::floor(x);
  if (f >= 1.0) f = 0.0;  // guard against floor rounding at the seam
  v_ = f;
}

CirclePoint::CirclePoint(Rat x) { v_ = frac_rat(x); }

double CirclePoint::value() const {
  if (exact()) return std::get<Rat>(v_).convert_to<double>();
  return std::get<double>(v_);
}

CirclePoint CirclePoint::plus(const CirclePoint& o) const {
  if (exact() && o.exact()) return reduce(rational() + o.rational());
  return reduce(value() + o.value());
}

CirclePoint reduce(double x) { return CirclePoint(x); }
CirclePoint reduce(const Rat& x) { return CirclePoint(x); }

namespace {

double dist01(double d) {
  d = std::fabs(d);
  return d > 0.5 ? 1.0 - d : d;
}

}  // namespace

double circle_dist(const CirclePoint& x, const CirclePoint& y) {
  if (x.exact() && y.exact()) {
    Rat d = dist_to_int(x.rational() - y.rational());
    return boost::multiprecision::abs(d).convert_to<double>();
  }
  return dist01(x.value() - y.value());
}

double grid_dist(const CirclePoint& x, const Int& q) {
  if (q < 1) throw std::invalid_argument("grid_dist: q must be >= 1");
  if (x.exact()) return grid_dist_exact(x.rational(), q).convert_to<double>();
  double f = frac_int_times_double(q, x.value());
  return dist01(f) / q.convert_to<double>();
}

Rat grid_dist_exact(const Rat& x, const Int& q) {
  Rat d = dist_to_int(Rat(q) * x);
  return boost::multiprecision::abs(d) / q;
}

GoodSet::GoodSet(Int q_, Rat eta_) : q(std::move(q_)), eta(std::move(eta_)) {
  if (q < 1) throw std::invalid_argument("GoodSet: q must be >= 1");
  if (!(eta > 0 && 2 * eta < 1)) throw std::invalid_argument("GoodSet: eta must be in (0, 1/2)");
}

bool in_good_set(const CirclePoint& x, const GoodSet& g) {
  if (x.exact()) return in_good_set_exact(x.rational(), g);
  double e = (g.eta / g.q).convert_to<double>();
  return grid_dist(x, g.q) < e;
}

bool in_good_set_exact(const Rat& x, const GoodSet& g) {
  return grid_dist_exact(x, g.q) < g.eta / g.q;
}

}  // namespace rotwalk
