#include "rotwalk/diophantine.hpp"

#include <nlohmann/json.hpp>

namespace rotwalk {

std::vector<Convergent> convergents(const std::vector<Int>& quotients) {
  std::vector<Convergent> out;
  out.reserve(quotients.size());
  Int pm1(1), qm1(0);  // p_{-1}, q_{-1}
  Int pm2(0), qm2(1);  // p_{-2}, q_{-2}
  for (size_t k = 0; k < quotients.size(); ++k) {
    if (k > 0 && quotients[k] < 1)
      throw std::invalid_argument("convergents: partial quotients after index 0 must be positive");
    Int p = quotients[k] * pm1 + pm2;
    Int q = quotients[k] * qm1 + qm2;
    out.push_back({p, q});
    pm2 = pm1; qm2 = qm1;
    pm1 = p; qm1 = q;
  }
  return out;
}

Angle Angle::from_rational(const Rat& r) {
  Angle a;
  Rat x = frac_rat(r);
  // Euclidean expansion of x in [0,1): a_0 = 0, then invert-and-floor.
  a.quotients_.push_back(Int(0));
  Int n = num(x), d = den(x);
  while (n != 0) {
    Int q, rem;
    boost::multiprecision::divide_qr(d, n, q, rem);
    a.quotients_.push_back(q);
    d = n;
    n = rem;
  }
  a.convergents_ = convergents(a.quotients_);
  a.golden_tail_ = false;
  return a;
}

Angle Angle::from_quotients(std::vector<Int> quotients, bool golden_tail) {
  if (quotients.empty()) throw std::invalid_argument("Angle: empty quotient list");
  if (quotients[0] != 0) throw std::invalid_argument("Angle: a_0 must be 0 (angles live in [0,1))");
  for (size_t k = 1; k < quotients.size(); ++k)
    if (quotients[k] < 1) throw std::invalid_argument("Angle: partial quotients must be positive");
  Angle a;
  a.quotients_ = std::move(quotients);
  a.convergents_ = convergents(a.quotients_);
  a.golden_tail_ = golden_tail;
  return a;
}

Angle Angle::golden_conjugate() { return from_quotients({Int(0)}, true); }

Rat Angle::rational() const {
  if (!is_rational()) throw std::domain_error("Angle: not rational");
  const Convergent& c = convergents_.back();
  return Rat(c.p, c.q);
}

Quad Angle::value() const {
  if (is_rational()) return Quad(rational());
  // alpha = (t p_m + p_{m-1}) / (t q_m + q_{m-1}) with tail t = (1+sqrt5)/2
  Int pm = convergents_.back().p, qm = convergents_.back().q;
  Int pm1(1), qm1(0);
  if (convergents_.size() >= 2) {
    pm1 = convergents_[convergents_.size() - 2].p;
    qm1 = convergents_[convergents_.size() - 2].q;
  } else {
    // single quotient a_0 = 0: previous convergent is 1/0
    pm1 = 1; qm1 = 0;
  }
  Quad t(Rat(1, 2), Rat(1, 2));
  Quad num_q = t * Rat(pm) + Rat(pm1);
  Quad den_q = t * Rat(qm) + Rat(qm1);
  return num_q * den_q.inverse();
}

std::vector<Int> Angle::continued_fraction(size_t K) const {
  std::vector<Int> out;
  out.reserve(K);
  for (size_t k = 0; k < K && k < quotients_.size(); ++k) out.push_back(quotients_[k]);
  if (golden_tail_)
    while (out.size() < K) out.push_back(Int(1));
  return out;
}

Quad Angle::frac_mult(const Int& n) const {
  if (is_rational()) {
    const Convergent& c = convergents_.back();
    Int r = (n * c.p) % c.q;
    if (r < 0) r += c.q;
    return Quad(Rat(r, c.q));
  }
  return (value() * Rat(n)).frac();
}

Quad Angle::dist_mult(const Int& n) const {
  Quad f = frac_mult(n);
  return (f.cmp(Rat(1, 2)) > 0) ? f - Rat(1) : f;
}

double Angle::to_double() const { return value().to_double(precision_bits_); }

nlohmann::json Angle::to_json() const {
  nlohmann::json j;
  j["quotients"] = nlohmann::json::array();
  for (const auto& q : quotients_) j["quotients"].push_back(q.str());
  j["convergents"] = nlohmann::json::array();
  for (const auto& c : convergents_) j["convergents"].push_back({c.p.str(), c.q.str()});
  j["irrational_tail"] = golden_tail_ ? "golden" : "none";
  j["precision_bits"] = precision_bits_;
  return j;
}

Angle Angle::from_json(const nlohmann::json& j) {
  std::vector<Int> qs;
  for (const auto& s : j.at("quotients")) qs.emplace_back(s.get<std::string>());
  bool tail = j.value("irrational_tail", "none") == std::string("golden");
  Angle a = from_quotients(std::move(qs), tail);
  if (j.contains("precision_bits")) a.precision_bits_ = j["precision_bits"].get<unsigned>();
  // cross-check stored convergents if present
  if (j.contains("convergents")) {
    const auto& cl = j["convergents"];
    if (cl.size() != a.convergents_.size())
      throw std::invalid_argument("Angle::from_json: convergent list mismatch");
    for (size_t k = 0; k < cl.size(); ++k) {
      if (Int(cl[k][0].get<std::string>()) != a.convergents_[k].p ||
          Int(cl[k][1].get<std::string>()) != a.convergents_[k].q)
        throw std::invalid_argument("Angle::from_json: convergent data inconsistent with quotients");
    }
  }
  return a;
}

double witness_exponent(const Angle& a, const Int& p, const Int& q) {
  if (q == 0) throw std::invalid_argument("witness_exponent: q must be nonzero");
  Quad gap = (a.value() - Rat(p, q)).abs();
  if (gap.sign() == 0) throw std::domain_error("witness_exponent: exact hit, p/q equals alpha");
  unsigned bits = std::max(192u, static_cast<unsigned>(msb(boost::multiprecision::abs(q)) + 96));
  BigFloat g = BigFloat::from_rat(gap.a(), bits);
  if (gap.b() != 0)
    g = g.add(BigFloat::from_rat(gap.b(), bits).mul(BigFloat::sqrt5(bits)));
  BigFloat lq = BigFloat::from_rat(Rat(boost::multiprecision::abs(q)), bits).log();
  return -g.log().to_double() / lq.to_double();
}

bool check_witness(const Angle& a, const Int& p, const Int& q, const Rat& gamma, const Rat& c) {
  if (q == 0) throw std::invalid_argument("check_witness: q must be nonzero");
  Quad gap = (a.value() - Rat(p, q)).abs();
  // gap <= c / q^gamma  <=>  (gap/c)^v <= q^{-u} with gamma = u/v
  Int u = num(gamma), v = den(gamma);
  Quad lhs(Rat(1));
  Quad base = gap * (Rat(1) / c);
  for (Int i = 0; i < v; ++i) lhs = lhs * base;
  Rat rhs = pow_rat(Rat(boost::multiprecision::abs(q)), -static_cast<long>(u.convert_to<long long>()));
  return lhs.cmp(rhs) <= 0;
}

Angle build_liouville(const std::vector<Rat>& exponents, const Int& first_quotient,
                      unsigned precision_budget_bits) {
  if (exponents.empty()) throw std::invalid_argument("build_liouville: empty schedule");
  for (size_t k = 0; k < exponents.size(); ++k) {
    if (exponents[k] < 2) throw std::invalid_argument("build_liouville: exponents must be >= 2");
    if (k > 0 && exponents[k] < exponents[k - 1])
      throw std::invalid_argument("build_liouville: schedule must be nondecreasing");
  }
  if (first_quotient < 1) throw std::invalid_argument("build_liouville: first quotient must be >= 1");

  std::vector<Int> qs{Int(0), first_quotient};
  std::vector<Convergent> cv = convergents(qs);
  for (size_t k = 1; k <= exponents.size(); ++k) {
    const Int& qk = cv[k].q;
    // |alpha - p_k/q_k| < 1/(a_{k+1} q_k^2) <= q_k^{-e_k} for a_{k+1} >= q_k^{e_k-2}
    Rat e = exponents[k - 1] - 2;
    Int a_next = e <= 0 ? Int(1) : ceil_pow(qk, num(e), den(e));
    if (a_next < 1) a_next = 1;
    qs.push_back(a_next);
    cv = convergents(qs);
    if (msb(cv.back().q) + 8 > precision_budget_bits)
      throw std::overflow_error("build_liouville: denominators exceed the precision budget");
  }
  Angle a = Angle::from_quotients(qs, true);
  a.set_precision_bits(precision_budget_bits);
  // post: every scheduled level holds exactly
  for (size_t k = 1; k <= exponents.size(); ++k) {
    const Convergent& c = a.convergent_list()[k];
    if (!check_witness(a, c.p, c.q, exponents[k - 1], Rat(1)))
      throw std::logic_error("build_liouville: schedule inequality failed post-check");
  }
  return a;
}

}  // namespace rotwalk
