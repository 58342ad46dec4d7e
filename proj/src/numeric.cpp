#include "rotwalk/numeric.hpp"

#include <cmath>
#include <limits>

namespace rotwalk {

Int floor_rat(const Rat& r) {
  Int q, rem;
  boost::multiprecision::divide_qr(num(r), den(r), q, rem);
  if (rem != 0 && r < 0) --q;
  return q;
}

Rat frac_rat(const Rat& r) { return r - Rat(floor_rat(r)); }

Rat dist_to_int(const Rat& r) {
  Rat f = frac_rat(r);
  return (2 * f > 1) ? f - 1 : f;
}

Rat pow_rat(const Rat& r, long e) {
  if (e == 0) return Rat(1);
  bool inv = e < 0;
  unsigned long k = inv ? static_cast<unsigned long>(-e) : static_cast<unsigned long>(e);
  if (inv && r == 0) throw std::domain_error("pow_rat: zero base, negative exponent");
  Rat acc(1), base = r;
  while (k) {
    if (k & 1) acc *= base;
    base *= base;
    k >>= 1;
  }
  return inv ? Rat(1) / acc : acc;
}

Int ceil_pow(const Int& x, const Int& p, const Int& q) {
  if (x < 1 || p < 0 || q < 1) throw std::invalid_argument("ceil_pow: bad arguments");
  if (p == 0) return Int(1);
  Int xp = boost::multiprecision::pow(x, static_cast<unsigned>(p));
  if (q == 1) return xp;
  // integer q-th root of xp, rounded up
  mpz_t root;
  mpz_init(root);
  int exact = mpz_root(root, xp.backend().data(), static_cast<unsigned long>(q));
  Int r(root);
  mpz_clear(root);
  if (!exact) ++r;
  return r;
}

double frac_int_times_double(const Int& f, double x) {
  if (!std::isfinite(x)) throw std::invalid_argument("non-finite input");
  if (x == 0.0 || f == 0) return 0.0;
  int e = 0;
  double m = std::frexp(x, &e);            // x = m * 2^e, |m| in [1/2, 1)
  Int mant(static_cast<long long>(std::ldexp(m, 53)));
  int shift = e - 53;                       // x = mant * 2^shift exactly
  Int prod = f * mant;
  if (shift >= 0) return 0.0;              // f*x is an integer multiple of 2^shift>=1? no: integer
  // reduce prod * 2^shift mod 1: keep low -shift bits of prod
  Int mod = prod & ((Int(1) << static_cast<unsigned>(-shift)) - 1);
  if (mod < 0) mod += Int(1) << static_cast<unsigned>(-shift);
  // convert mod * 2^shift to double; mod has at most -shift bits
  Rat r(mod, Int(1) << static_cast<unsigned>(-shift));
  return r.convert_to<double>();
}

int64_t to_int64(const Int& v) {
  if (v > std::numeric_limits<int64_t>::max() || v < std::numeric_limits<int64_t>::min())
    throw std::overflow_error("integer too large for int64");
  return v.convert_to<int64_t>();
}

std::string rat_str(const Rat& r) {
  if (den(r) == 1) return num(r).str();
  return num(r).str() + "/" + den(r).str();
}

Rat rat_from_str(const std::string& s) {
  if (s.empty()) throw std::invalid_argument("empty rational literal");
  auto slash = s.find('/');
  if (slash != std::string::npos)
    return Rat(Int(s.substr(0, slash)), Int(s.substr(slash + 1)));
  auto dot = s.find('.');
  if (dot == std::string::npos) return Rat(Int(s));
  // decimal literal, kept exact: 0.6 -> 3/5
  std::string digits = s.substr(0, dot) + s.substr(dot + 1);
  size_t frac_len = s.size() - dot - 1;
  Int den = boost::multiprecision::pow(Int(10), static_cast<unsigned>(frac_len));
  return Rat(Int(digits), den);
}

BigFloat::BigFloat(unsigned bits) {
  mpfr_init2(v_, bits);
  mpfr_set_zero(v_, 1);
}
BigFloat::BigFloat(const BigFloat& o) {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_set(v_, o.v_, MPFR_RNDN);
}
BigFloat::BigFloat(BigFloat&& o) noexcept {
  mpfr_init2(v_, mpfr_get_prec(o.v_));
  mpfr_swap(v_, o.v_);
}
BigFloat& BigFloat::operator=(const BigFloat& o) {
  if (this != &o) {
    mpfr_set_prec(v_, mpfr_get_prec(o.v_));
    mpfr_set(v_, o.v_, MPFR_RNDN);
  }
  return *this;
}
BigFloat::~BigFloat() { mpfr_clear(v_); }

BigFloat BigFloat::from_rat(const Rat& r, unsigned bits, mpfr_rnd_t rnd) {
  BigFloat out(bits);
  mpfr_set_q(out.v_, r.backend().data(), rnd);
  return out;
}
BigFloat BigFloat::sqrt5(unsigned bits, mpfr_rnd_t rnd) {
  BigFloat out(bits);
  mpfr_sqrt_ui(out.v_, 5, rnd);
  return out;
}
BigFloat BigFloat::pi(unsigned bits, mpfr_rnd_t rnd) {
  BigFloat out(bits);
  mpfr_const_pi(out.v_, rnd);
  return out;
}

#define ROTWALK_BF_BINOP(name, fn)                                   \
  BigFloat BigFloat::name(const BigFloat& o, mpfr_rnd_t rnd) const { \
    BigFloat out(std::max(bits(), o.bits()));                        \
    fn(out.v_, v_, o.v_, rnd);                                       \
    return out;                                                      \
  }
ROTWALK_BF_BINOP(add, mpfr_add)
ROTWALK_BF_BINOP(sub, mpfr_sub)
ROTWALK_BF_BINOP(mul, mpfr_mul)
ROTWALK_BF_BINOP(div, mpfr_div)
#undef ROTWALK_BF_BINOP

BigFloat BigFloat::cos(mpfr_rnd_t rnd) const {
  BigFloat out(bits());
  mpfr_cos(out.v_, v_, rnd);
  return out;
}
BigFloat BigFloat::sin(mpfr_rnd_t rnd) const {
  BigFloat out(bits());
  mpfr_sin(out.v_, v_, rnd);
  return out;
}
BigFloat BigFloat::log(mpfr_rnd_t rnd) const {
  BigFloat out(bits());
  mpfr_log(out.v_, v_, rnd);
  return out;
}
BigFloat BigFloat::abs() const {
  BigFloat out(bits());
  mpfr_abs(out.v_, v_, MPFR_RNDN);
  return out;
}
BigFloat BigFloat::pow_ui(unsigned long e, mpfr_rnd_t rnd) const {
  BigFloat out(bits());
  mpfr_pow_ui(out.v_, v_, e, rnd);
  return out;
}
double BigFloat::to_double(mpfr_rnd_t rnd) const { return mpfr_get_d(v_, rnd); }

double cos2pi(const Rat& f) {
  // f carries an exact fractional part; the double conversion costs one
  // rounding, after which the argument is at most 2*pi.
  double d = f.convert_to<double>();
  return std::cos(2.0 * M_PI * d);
}

double sinpi_small(double d) { return std::sin(M_PI * d); }

}  // namespace rotwalk
