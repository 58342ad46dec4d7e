#include "rotwalk/spectral.hpp"

#include <cmath>
#include <sstream>

#include <nlohmann/json.hpp>

namespace rotwalk {

double eigenvalue(const Int& n, const Angle& a) {
  if (n == 0) return 0.0;
  double d;
  if (a.is_rational()) {
    Rat dist = dist_to_int(Rat(n) * a.rational());
    d = dist.convert_to<double>();
  } else {
    d = a.dist_mult(n).to_double();
  }
  double sp = sinpi_small(d);
  return 2.0 * sp * sp;
}

bool resonant(const Int& n, const Angle& a) {
  if (n == 0) return true;
  if (!a.is_rational()) return false;
  return (n * num(a.rational())) % den(a.rational()) == 0;
}

CosineSeries transfer_apply(const CosineSeries& s, const Angle& a) {
  std::vector<std::pair<Int, Amp>> out;
  out.reserve(s.size());
  for (const auto& [q, amp] : s.terms()) {
    double c = 1.0 - eigenvalue(q, a);
    out.emplace_back(q, Amp(amp.value() * c));
  }
  return CosineSeries(std::move(out));
}

CosineSeries PoissonSolution::as_series() const {
  std::vector<std::pair<Int, Amp>> terms;
  terms.reserve(psi_coeffs.size());
  for (const auto& [n, c] : psi_coeffs) terms.emplace_back(n, Amp(2.0 * c));
  return CosineSeries(std::move(terms));
}

PoissonSolution poisson_solve(const CosineSeries& s, const Angle& a, const Int& cutoff) {
  PoissonSolution sol;
  sol.cutoff = cutoff;
  for (const auto& [q, amp] : s.terms()) {
    if (q > cutoff) {
      // truncated mass: the residual of (T-I)psi + phi is bounded by the
      // dropped amplitudes plus the stored tail bound
      sol.residual_bound += std::fabs(amp.value());
      continue;
    }
    if (resonant(q, a))
      throw ResonanceError(q, "resonant frequency " + q.str() + ": Poisson equation unsolvable");
    double lam = eigenvalue(q, a);
    sol.psi_coeffs[q] = (amp.value() / 2.0) / lam;
  }
  sol.residual_bound += s.tail_bound().convert_to<double>();
  return sol;
}

namespace {

template <typename F>
double sum_terms(const CosineSeries& s, const Angle& a, const Int& N, F per_term) {
  double acc = 0;
  for (const auto& [q, amp] : s.terms()) {
    if (q > N) break;
    if (resonant(q, a))
      throw ResonanceError(q, "resonant frequency " + q.str() + " below cutoff");
    double lam = eigenvalue(q, a);
    double phi = amp.value() / 2.0;
    acc += 2.0 * per_term(phi * phi, lam);  // both n = +q and n = -q
  }
  return acc;
}

}  // namespace

double kv_partial(const CosineSeries& s, const Angle& a, const Int& N) {
  return sum_terms(s, a, N, [](double p2, double lam) { return p2 / lam; });
}

double poisson_partial(const CosineSeries& s, const Angle& a, const Int& N) {
  return sum_terms(s, a, N, [](double p2, double lam) { return p2 / (lam * lam); });
}

double sigma2_partial(const CosineSeries& s, const Angle& a, const Int& N) {
  return sum_terms(s, a, N, [](double p2, double lam) { return p2 * (2.0 - lam) / lam; });
}

Prop1Result prop1_criterion(std::optional<unsigned> r, double gamma, double c) {
  if (gamma < 2) throw std::invalid_argument("prop1_criterion: gamma must be >= 2");
  if (c <= 0) throw std::invalid_argument("prop1_criterion: c must be positive");
  if (!r) return {true, std::numeric_limits<double>::infinity()};
  bool ok = static_cast<double>(*r) > gamma - 0.5;
  double expo = 2.0 * static_cast<double>(*r) - 2.0 * (gamma - 1.0);
  return {ok, expo};
}

SpectralReport spectral_report(const CosineSeries& s, const Angle& a, const Int& cutoff) {
  SpectralReport rep{.angle = a, .series = s, .cutoff = cutoff};
  for (const auto& [q, amp] : s.terms()) {
    if (q > cutoff) break;
    if (resonant(q, a))
      throw ResonanceError(q, "resonant frequency " + q.str() + " below cutoff");
    double lam = eigenvalue(q, a);
    double p2 = amp.value() * amp.value() / 4.0;
    SpectralRow row{q, lam, 2.0 * p2 / lam, 2.0 * p2 * (2.0 - lam) / lam};
    rep.rows.push_back(row);
    rep.kv += row.kv_term;
    rep.sigma2 += row.sigma2_term;
    rep.poisson += 2.0 * p2 / (lam * lam);
  }
  return rep;
}

nlohmann::json SpectralReport::angle_json() const { return angle.to_json(); }

std::string SpectralReport::to_csv() const {
  std::ostringstream os;
  os.precision(17);
  os << "n,eigenvalue,kv_term,sigma2_term\n";
  for (const auto& r : rows)
    os << r.n.str() << "," << r.lambda << "," << r.kv_term << "," << r.sigma2_term << "\n";
  return os.str();
}

nlohmann::json SpectralReport::summary_json() const {
  nlohmann::json j;
  j["angle"] = angle.to_json();
  j["series"] = series.to_json();
  j["cutoff"] = cutoff.str();
  j["kv_partial"] = kv;
  j["poisson_partial"] = poisson;
  j["sigma2_partial"] = sigma2;
  return j;
}

}  // namespace rotwalk
