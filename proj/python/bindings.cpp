#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include <nlohmann/json.hpp>

#include "rotwalk/construct.hpp"
#include "rotwalk/spectral.hpp"
#include "rotwalk/walk.hpp"

namespace py = pybind11;
using namespace rotwalk;
using nlohmann::json;

namespace {

// values cross the boundary in the library's own JSON formats, which keeps
// the python surface identical to the file formats the CLI reads and writes
Angle angle_from(const std::string& j) { return Angle::from_json(json::parse(j)); }
CosineSeries series_from(const std::string& j) { return CosineSeries::from_json(json::parse(j)); }

std::string build_to_json(const BuildResult& r) {
  json out;
  out["ledger"] = r.ledger.to_json();
  out["angle"] = r.angle.to_json();
  out["series"] = r.series.to_json();
  return out.dump();
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "random-walk rotations on the circle: exact constructions and Monte Carlo";

  py::register_exception<ResonanceError>(m, "ResonanceError");
  py::register_exception<InfeasibleError>(m, "InfeasibleError");

  // circle
  m.def("reduce", [](double x) { return reduce(x).value(); });
  m.def("reduce_rational", [](const std::string& r) {
    return rat_str(reduce(rat_from_str(r)).rational());
  });
  m.def("circle_dist", [](double x, double y) { return circle_dist(reduce(x), reduce(y)); });
  m.def("grid_dist", [](double x, long q) { return grid_dist(reduce(x), Int(q)); });
  m.def("in_good_set", [](double x, long q, const std::string& eta) {
    return in_good_set(reduce(x), GoodSet(Int(q), rat_from_str(eta)));
  });

  // diophantine
  m.def("angle_rational", [](const std::string& r) {
    return Angle::from_rational(rat_from_str(r)).to_json().dump();
  });
  m.def("angle_golden", [] { return Angle::golden_conjugate().to_json().dump(); });
  m.def("build_liouville", [](const std::vector<std::string>& exponents, long q1) {
    std::vector<Rat> e;
    for (const auto& s : exponents) e.push_back(rat_from_str(s));
    return build_liouville(e, Int(q1)).to_json().dump();
  });
  m.def("continued_fraction", [](const std::string& angle, size_t K) {
    std::vector<std::string> out;
    for (const auto& q : angle_from(angle).continued_fraction(K)) out.push_back(q.str());
    return out;
  });
  m.def("convergents", [](const std::string& angle) {
    Angle a = angle_from(angle);
    std::vector<std::pair<std::string, std::string>> out;
    for (const auto& c : a.convergent_list()) out.emplace_back(c.p.str(), c.q.str());
    return out;
  });
  m.def("witness_exponent", [](const std::string& angle, long long p, long long q) {
    return witness_exponent(angle_from(angle), Int(p), Int(q));
  });
  m.def("angle_value", [](const std::string& angle) { return angle_from(angle).to_double(); });

  // observable
  m.def("series", [](const std::vector<std::pair<long, std::string>>& terms) {
    std::vector<std::pair<Int, Amp>> t;
    for (const auto& [q, a] : terms) t.emplace_back(Int(q), Amp(rat_from_str(a)));
    return CosineSeries(std::move(t)).to_json().dump();
  });
  m.def("t1_term", [](long q) { return t1_term(Int(q)).to_json().dump(); });
  m.def("t2_term", [](long q, const std::string& g, const std::string& s) {
    return t2_term(Int(q), rat_from_str(g), rat_from_str(s)).to_json().dump();
  });
  m.def("eval_series", [](const std::string& s, double x) {
    return eval(series_from(s), reduce(x));
  });
  m.def("fourier_coeff",
        [](const std::string& s, long long n) { return fourier_coeff(series_from(s), Int(n)); });
  m.def("cr_norm_bound",
        [](const std::string& s, unsigned r) { return cr_norm_bound(series_from(s), r); });

  // spectral
  m.def("eigenvalue",
        [](long long n, const std::string& a) { return eigenvalue(Int(n), angle_from(a)); });
  m.def("kv_partial", [](const std::string& s, const std::string& a, long long N) {
    return kv_partial(series_from(s), angle_from(a), Int(N));
  });
  m.def("poisson_partial", [](const std::string& s, const std::string& a, long long N) {
    return poisson_partial(series_from(s), angle_from(a), Int(N));
  });
  m.def("sigma2_partial", [](const std::string& s, const std::string& a, long long N) {
    return sigma2_partial(series_from(s), angle_from(a), Int(N));
  });
  m.def("spectral_report", [](const std::string& s, const std::string& a, long long N) {
    return spectral_report(series_from(s), angle_from(a), Int(N)).summary_json().dump();
  });

  // chain
  m.def("chain_spectrum", [](long q, long p) { return chain_spectrum(FiniteChain{Int(q), Int(p)}); });
  m.def("mixing_rho", [](long q, long p) { return mixing_bound(FiniteChain{Int(q), Int(p)}).rho; });
  m.def("lemma2_bound", [](long qp, const std::string& a, long q, long p, double n, double s,
                           double delta) {
    CosineSeries phi({{Int(qp), Amp(rat_from_str(a))}});
    return lemma2_bound(phi, FiniteChain{Int(q), Int(p)}, n, s, delta);
  });

  // walk
  m.def(
      "mc_tail",
      [](const std::string& a, const std::string& s, long long n, uint64_t m, double s_exp,
         double t, uint64_t seed, unsigned threads) {
        WalkConfig cfg{angle_from(a), Int(n), m, s_exp, seed};
        return mc_tail(cfg, series_from(s), t, threads).to_json().dump();
      },
      py::arg("angle"), py::arg("series"), py::arg("n"), py::arg("m"), py::arg("s"), py::arg("t"),
      py::arg("seed") = 1, py::arg("threads") = 1);
  m.def(
      "mc_clt",
      [](const std::string& a, const std::string& s, long long n, uint64_t m, double sigma,
         uint64_t seed, unsigned threads) {
        WalkConfig cfg{angle_from(a), Int(n), m, 1.0, seed};
        return mc_clt(cfg, series_from(s), sigma, threads).to_json().dump();
      },
      py::arg("angle"), py::arg("series"), py::arg("n"), py::arg("m"), py::arg("sigma"),
      py::arg("seed") = 1, py::arg("threads") = 1);
  m.def(
      "exact_tail",
      [](const std::string& s, const std::string& a, unsigned n, double t, double s_exp,
         uint64_t M, bool two_sided) {
        return exact_tail(series_from(s), angle_from(a), n, t, s_exp, M, two_sided);
      },
      py::arg("series"), py::arg("angle"), py::arg("n"), py::arg("t"), py::arg("s"),
      py::arg("M") = 0, py::arg("two_sided") = false);
  m.def("simulate_sum", [](const std::string& a, const std::string& s, long long n, double s_exp,
                           uint64_t seed, uint64_t trial) {
    WalkConfig cfg{angle_from(a), Int(n), trial + 1, s_exp, seed};
    return simulate_sum(cfg, series_from(s), trial);
  });

  // construct
  m.def("lemma1_delta",
        [](long q, long long N) { return rat_str(lemma1_delta(Int(q), Int(N))); });
  m.def("lemma1_check", [](const std::string& alpha_prime, long q, long long N,
                           const std::string& s, const std::string& amp) {
    return lemma1_check(rat_from_str(alpha_prime), Int(q), Int(N), rat_from_str(s),
                        rat_from_str(amp))
        .to_json()
        .dump();
  });
  m.def("lemma3_params", [](long long p, long long q, const std::string& c, const std::string& g,
                            const std::string& s, const std::string& angle) {
    return lemma3_params(Int(p), Int(q), rat_from_str(c), rat_from_str(g), rat_from_str(s),
                         angle_from(angle))
        .to_json()
        .dump();
  });
  m.def(
      "theorem1_build",
      [](const std::string& s, unsigned depth, bool toy) {
        Theorem1Options o;
        o.s = rat_from_str(s);
        o.depth = depth;
        o.mode = toy ? BuildMode::toy : BuildMode::faithful;
        return build_to_json(theorem1_build(o));
      },
      py::arg("s") = "3/5", py::arg("depth") = 1, py::arg("toy") = false);
  m.def(
      "theorem2_build",
      [](const std::string& angle, const std::string& gamma, const std::string& c, unsigned depth) {
        Theorem2Options o;
        o.gamma = rat_from_str(gamma);
        o.c = rat_from_str(c);
        o.depth = depth;
        return build_to_json(theorem2_build(angle_from(angle), o));
      },
      py::arg("angle"), py::arg("gamma") = "6", py::arg("c") = "1", py::arg("depth") = 1);
  m.def(
      "theorem3_build",
      [](const std::string& angle, const std::string& s, unsigned depth) {
        Theorem3Options o;
        o.s = rat_from_str(s);
        o.depth = depth;
        return build_to_json(theorem3_build(angle_from(angle), o));
      },
      py::arg("angle"), py::arg("s") = "3/5", py::arg("depth") = 1);
  m.def("verify_ledger", [](const std::string& ledger) {
    return verify_ledger(ConstructionLedger::from_json(json::parse(ledger))).to_json().dump();
  });

  // stats
  m.def("wilson99", [](uint64_t k, uint64_t m) {
    Interval iv = wilson99(k, m);
    return std::make_pair(iv.lo, iv.hi);
  });
}
