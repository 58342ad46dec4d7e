#pragma once

#include <boost/multiprecision/gmp.hpp>
#include <cstdint>
#include <stdexcept>
#include <string>

#include <mpfr.h>

namespace rotwalk {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& r) { return Int(boost::multiprecision::numerator(r)); }
inline Int den(const Rat& r) { return Int(boost::multiprecision::denominator(r)); }

/// Floor division of a rational, exact.
Int floor_rat(const Rat& r);

/// r - floor(r), in [0, 1).
Rat frac_rat(const Rat& r);

/// Signed distance from r to the nearest integer, in [-1/2, 1/2].
Rat dist_to_int(const Rat& r);

/// r^e for integer e (e may be negative; r must be nonzero then).
Rat pow_rat(const Rat& r, long e);

/// Smallest integer a with a >= x^(p/q), for x >= 1, p >= 0, q >= 1.
Int ceil_pow(const Int& x, const Int& p, const Int& q);

/// Exact fractional part of f*x where x is a double (a dyadic rational).
double frac_int_times_double(const Int& f, double x);

int64_t to_int64(const Int& v);

std::string rat_str(const Rat& r);
Rat rat_from_str(const std::string& s);

/// Thin RAII wrapper over mpfr_t for the few extended-precision
/// evaluations the exact types cannot provide (sqrt(5), cos, log).
class BigFloat {
 public:
  explicit BigFloat(unsigned bits = 128);
  BigFloat(const BigFloat& o);
  BigFloat(BigFloat&& o) noexcept;
  BigFloat& operator=(const BigFloat& o);
  ~BigFloat();

  unsigned bits() const { return static_cast<unsigned>(mpfr_get_prec(v_)); }

  static BigFloat from_rat(const Rat& r, unsigned bits, mpfr_rnd_t rnd = MPFR_RNDN);
  static BigFloat sqrt5(unsigned bits, mpfr_rnd_t rnd = MPFR_RNDN);
  static BigFloat pi(unsigned bits, mpfr_rnd_t rnd = MPFR_RNDN);

  BigFloat add(const BigFloat& o, mpfr_rnd_t rnd = MPFR_RNDN) const;
  BigFloat sub(const BigFloat& o, mpfr_rnd_t rnd = MPFR_RNDN) const;
  BigFloat mul(const BigFloat& o, mpfr_rnd_t rnd = MPFR_RNDN) const;
  BigFloat div(const BigFloat& o, mpfr_rnd_t rnd = MPFR_RNDN) const;
  BigFloat cos(mpfr_rnd_t rnd = MPFR_RNDN) const;
  BigFloat sin(mpfr_rnd_t rnd = MPFR_RNDN) const;
  BigFloat log(mpfr_rnd_t rnd = MPFR_RNDN) const;
  BigFloat abs() const;
  BigFloat pow_ui(unsigned long e, mpfr_rnd_t rnd = MPFR_RNDN) const;

  double to_double(mpfr_rnd_t rnd = MPFR_RNDN) const;
  int cmp(const BigFloat& o) const { return mpfr_cmp(v_, o.v_); }

 private:
  mpfr_t v_;
};

/// cos(2*pi*f) for an exact fractional part f in [0,1).
double cos2pi(const Rat& f);

/// sin(pi*d) for |d| <= 1/2, stable for tiny d.
double sinpi_small(double d);

}  // namespace rotwalk
