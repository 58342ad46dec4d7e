#include "rotwalk/observable.hpp"

#include <algorithm>
#include <cmath>

#include <nlohmann/json.hpp>

namespace rotwalk {

CosineSeries::CosineSeries(std::vector<std::pair<Int, Amp>> terms, Rat tail_bound)
    : terms_(std::move(terms)), tail_bound_(std::move(tail_bound)) {
  std::sort(terms_.begin(), terms_.end(),
            [](const auto& a, const auto& b) { return a.first < b.first; });
  for (size_t i = 0; i < terms_.size(); ++i) {
    if (terms_[i].first < 1)
      throw std::invalid_argument("CosineSeries: frequencies must be positive (mean zero)");
    if (i > 0 && terms_[i].first == terms_[i - 1].first)
      throw std::invalid_argument("CosineSeries: duplicate frequency");
  }
  if (tail_bound_ < 0) throw std::invalid_argument("CosineSeries: negative tail bound");
}

double CosineSeries::sup_norm_bound() const {
  double s = 0;
  for (const auto& [q, a] : terms_) s += std::fabs(a.value());
  return s;
}

nlohmann::json CosineSeries::to_json() const {
  nlohmann::json j;
  j["terms"] = nlohmann::json::array();
  for (const auto& [q, a] : terms_) {
    nlohmann::json t = nlohmann::json::array();
    t.push_back(q.str());
    if (a.exact())
      t.push_back(rat_str(a.rational()));
    else
      t.push_back(a.value());
    j["terms"].push_back(t);
  }
  j["tail_bound"] = rat_str(tail_bound_);
  return j;
}

CosineSeries CosineSeries::from_json(const nlohmann::json& j) {
  std::vector<std::pair<Int, Amp>> terms;
  for (const auto& t : j.at("terms")) {
    Int q(t[0].get<std::string>());
    if (t[1].is_string())
      terms.emplace_back(q, Amp(rat_from_str(t[1].get<std::string>())));
    else
      terms.emplace_back(q, Amp(t[1].get<double>()));
  }
  Rat tail(0);
  if (j.contains("tail_bound")) tail = rat_from_str(j["tail_bound"].get<std::string>());
  return CosineSeries(std::move(terms), tail);
}

double eval(const CosineSeries& s, const CirclePoint& x) {
  double acc = 0;
  for (const auto& [q, a] : s.terms()) {
    double f;
    if (x.exact())
      f = frac_rat(Rat(q) * x.rational()).convert_to<double>();
    else
      f = frac_int_times_double(q, x.value());
    acc += a.value() * std::cos(2.0 * M_PI * f);
  }
  return acc;
}

double fourier_coeff(const CosineSeries& s, const Int& n) {
  Int m = boost::multiprecision::abs(n);
  for (const auto& [q, a] : s.terms())
    if (q == m) return a.value() / 2.0;
  return 0.0;
}

double cr_norm_bound(const CosineSeries& s, unsigned r) {
  double acc = 0;
  for (const auto& [q, a] : s.terms())
    acc += std::fabs(a.value()) * std::pow(2.0 * M_PI * q.convert_to<double>(), static_cast<double>(r));
  return acc;
}

CosineSeries t1_term(const Int& q, std::optional<Rat> amplitude_override) {
  if (q < 1) throw std::invalid_argument("t1_term: q must be >= 1");
  Rat amp;
  if (amplitude_override) {
    if (*amplitude_override <= 0) throw std::invalid_argument("t1_term: amplitude must be positive");
    amp = *amplitude_override;
  } else {
    amp = Rat(Int(1), Int(1) << static_cast<unsigned>(q.convert_to<unsigned long>()));
  }
  return CosineSeries({{q, Amp(amp)}});
}

CosineSeries t2_term(const Int& q, const Rat& gamma, const Rat& s) {
  if (q < 1) throw std::invalid_argument("t2_term: q must be >= 1");
  if (!(gamma > 1)) throw std::invalid_argument("t2_term: gamma must exceed 1");
  if (!(2 * s > 1 && s < 1)) throw std::invalid_argument("t2_term: s must lie in (1/2, 1)");
  Rat e = (gamma - 1) * (1 - s);
  // exact when the exponent is an integer, double otherwise
  if (den(e) == 1) {
    Rat amp = pow_rat(Rat(q), -e.convert_to<long>());
    return CosineSeries({{q, Amp(amp)}});
  }
  double amp = std::exp(-e.convert_to<double>() * std::log(q.convert_to<double>()));
  return CosineSeries({{q, Amp(amp)}});
}

}  // namespace rotwalk
