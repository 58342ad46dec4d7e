#include "rotwalk/chain.hpp"

#include <cmath>

namespace rotwalk {

FiniteChain::FiniteChain(Int q_, Int p_) : q(std::move(q_)), p(std::move(p_)) {
  if (q < 1) throw std::invalid_argument("FiniteChain: q must be >= 1");
  if (q % 2 == 0) throw std::invalid_argument("FiniteChain: even q gives a periodic chain");
  Int pp = ((p % q) + q) % q;
  if (q > 1 && boost::multiprecision::gcd(pp, q) != 1)
    throw std::invalid_argument("FiniteChain: p and q must be coprime");
  p = pp;
}

std::vector<double> chain_spectrum(const FiniteChain& c) {
  long q = to_int64(c.q);
  long p = to_int64(c.p);
  std::vector<double> lam(q);
  for (long k = 0; k < q; ++k) {
    long r = (k * p) % q;
    lam[k] = std::cos(2.0 * M_PI * static_cast<double>(r) / static_cast<double>(q));
  }
  return lam;
}

Rat chain_power_deviation(const FiniteChain& c, unsigned n) {
  long q = to_int64(c.q);
  long p = to_int64(c.p);
  std::vector<Rat> v(q, Rat(0));
  v[0] = 1;
  for (unsigned step = 0; step < n; ++step) {
    std::vector<Rat> w(q, Rat(0));
    for (long j = 0; j < q; ++j) {
      if (v[j] == 0) continue;
      w[(j + p) % q] += v[j] / 2;
      w[((j - p) % q + q) % q] += v[j] / 2;
    }
    v.swap(w);
  }
  Rat dev(0), uni(1, c.q);
  for (long j = 0; j < q; ++j) {
    Rat d = boost::multiprecision::abs(v[j] - uni);
    if (d > dev) dev = d;
  }
  return dev;
}

MixingBound mixing_bound(const FiniteChain& c, unsigned verify_horizon) {
  double rho = c.q == 1 ? 0.0 : std::cos(M_PI / c.q.convert_to<double>());
  MixingBound b{1.0, rho};
  // certify against exact powers: deviation <= rho^n, with rho bounded above
  // through directed rounding so the comparison never flatters the bound
  unsigned bits = 128;
  BigFloat pi_up = BigFloat::pi(bits, MPFR_RNDU);
  BigFloat qf = BigFloat::from_rat(Rat(c.q), bits);
  BigFloat rho_up = c.q == 1 ? BigFloat(bits) : pi_up.div(qf, MPFR_RNDD).cos(MPFR_RNDU);
  for (unsigned n = 1; n <= verify_horizon; ++n) {
    Rat dev = chain_power_deviation(c, n);
    BigFloat bound = rho_up.pow_ui(n, MPFR_RNDU);
    BigFloat devf = BigFloat::from_rat(dev, bits, MPFR_RNDU);
    if (devf.cmp(bound) > 0)
      throw std::logic_error("mixing_bound: exact power deviation exceeded rho^n at n=" +
                             std::to_string(n));
  }
  return b;
}

namespace {

void check_nonresonant(const CosineSeries& s, const FiniteChain& c) {
  if (s.size() != 1) throw std::invalid_argument("lemma2: a single-frequency observable is required");
  const Int& qp = s.terms()[0].first;
  if (qp % c.q == 0)
    throw std::invalid_argument("lemma2: frequency " + qp.str() + " is a multiple of q=" +
                                c.q.str() + "; the stationary mean is nonzero");
}

}  // namespace

double lemma2_bound(const CosineSeries& single_term, const FiniteChain& c, double n, double s_exp,
                    double delta) {
  check_nonresonant(single_term, c);
  if (!(s_exp > 0.5)) throw std::invalid_argument("lemma2_bound: s must exceed 1/2");
  if (!(delta > 0) || !(n >= 1)) throw std::invalid_argument("lemma2_bound: need delta > 0, n >= 1");
  double a = std::fabs(single_term.terms()[0].second.value());
  MixingBound mb{1.0, c.q == 1 ? 0.0 : std::cos(M_PI / c.q.convert_to<double>())};
  double q = c.q.convert_to<double>();
  double numer = a * a / 2.0 + 2.0 * mb.A * q * a * a / (1.0 - mb.rho);
  return numer / (delta * delta * std::pow(n, 2.0 * s_exp - 1.0));
}

Int lemma2_find_N(const CosineSeries& single_term, const FiniteChain& c, double s_exp, double delta,
                  double epsilon) {
  check_nonresonant(single_term, c);
  if (!(epsilon > 0)) throw std::invalid_argument("lemma2_find_N: epsilon must be positive");
  if (lemma2_bound(single_term, c, 1.0, s_exp, delta) < epsilon) return Int(1);
  double a = std::fabs(single_term.terms()[0].second.value());
  double q = c.q.convert_to<double>();
  double rho = c.q == 1 ? 0.0 : std::cos(M_PI / q);
  double numer = a * a / 2.0 + 2.0 * q * a * a / (1.0 - rho);
  double nstar = std::pow(numer / (delta * delta * epsilon), 1.0 / (2.0 * s_exp - 1.0));
  double n = std::ceil(nstar);
  // the closed form is accurate to a few ulps; settle the boundary by direct
  // evaluation, with a relative step once past exact double-integer range
  for (int guard = 0; lemma2_bound(single_term, c, n, s_exp, delta) >= epsilon; ++guard) {
    n += std::max(1.0, n * 1e-15);
    if (guard > 64) throw std::logic_error("lemma2_find_N: boundary search failed");
  }
  if (n < 9.0e15) {
    while (n > 1 && lemma2_bound(single_term, c, n - 1, s_exp, delta) < epsilon) --n;
  }
  return Int(n);
}

}  // namespace rotwalk
