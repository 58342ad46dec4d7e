// rotwalk: numerical laboratory for +-alpha random-walk rotations on the
// circle. Subcommands wrap the library modules; every output file embeds the
// resolved configuration and master seed so runs can be reproduced exactly.

#include <fstream>
#include <iostream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "rotwalk/construct.hpp"
#include "rotwalk/spectral.hpp"
#include "rotwalk/walk.hpp"

using nlohmann::json;
using namespace rotwalk;

namespace {

constexpr int kExitUsage = 1;
constexpr int kExitMath = 2;
constexpr int kExitVerify = 3;

uint64_t fnv1a(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(uint64_t v) {
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

json load_json(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot open " + path);
  json j;
  in >> j;
  return j;
}

void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
}

/// "p/q", "golden", "liouville:q1=10,gamma=6,levels=3", or "@file.json".
Angle parse_angle(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty angle spec");
  if (spec[0] == '@') return Angle::from_json(load_json(spec.substr(1)));
  if (spec == "golden") return Angle::golden_conjugate();
  if (spec.rfind("liouville:", 0) == 0) {
    Int q1(1);
    Rat gamma(2);
    unsigned levels = 3;
    std::stringstream ss(spec.substr(10));
    std::string kv;
    while (std::getline(ss, kv, ',')) {
      auto eq = kv.find('=');
      if (eq == std::string::npos) throw std::invalid_argument("bad liouville parameter " + kv);
      std::string key = kv.substr(0, eq), val = kv.substr(eq + 1);
      if (key == "q1")
        q1 = Int(val);
      else if (key == "gamma")
        gamma = rat_from_str(val);
      else if (key == "levels")
        levels = std::stoul(val);
      else
        throw std::invalid_argument("unknown liouville parameter " + key);
    }
    return build_liouville(std::vector<Rat>(levels, gamma), q1);
  }
  return Angle::from_rational(rat_from_str(spec));
}

/// "q:amp[,q:amp...]", "t1:q", "t2:q,gamma,s", or "@file.json".
CosineSeries parse_series(const std::string& spec) {
  if (spec.empty()) throw std::invalid_argument("empty series spec");
  if (spec[0] == '@') return CosineSeries::from_json(load_json(spec.substr(1)));
  if (spec.rfind("t1:", 0) == 0) return t1_term(Int(spec.substr(3)));
  if (spec.rfind("t2:", 0) == 0) {
    std::stringstream ss(spec.substr(3));
    std::string q, g, s;
    std::getline(ss, q, ',');
    std::getline(ss, g, ',');
    std::getline(ss, s, ',');
    return t2_term(Int(q), rat_from_str(g), rat_from_str(s));
  }
  std::vector<std::pair<Int, Amp>> terms;
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    auto colon = item.find(':');
    if (colon == std::string::npos) throw std::invalid_argument("bad series term " + item);
    Int q(item.substr(0, colon));
    std::string av = item.substr(colon + 1);
    if (av.find('.') != std::string::npos || av.find('e') != std::string::npos)
      terms.emplace_back(q, Amp(std::stod(av)));
    else
      terms.emplace_back(q, Amp(rat_from_str(av)));
  }
  return CosineSeries(std::move(terms));
}

void emit(const std::string& out, const json& config, const json& results,
          const std::string& fmt, const std::string& csv = "") {
  json doc;
  doc["config"] = config;
  doc["config_hash"] = hex64(fnv1a(config.dump()));
  doc["results"] = results;
  std::string text = fmt == "csv" && !csv.empty() ? csv : doc.dump(2) + "\n";
  if (out.empty())
    std::cout << text;
  else
    write_text(out, text);
}

struct Common {
  uint64_t seed = 1;
  unsigned threads = 1;
  std::string out;
  std::string format = "json";
  void attach(CLI::App* app) {
    app->add_option("--seed", seed, "master seed");
    app->add_option("--threads", threads, "worker cap (results do not depend on it)");
    app->add_option("--out", out, "output path (stdout when absent)");
    app->add_option("--format", format, "json|csv")->check(CLI::IsMember({"json", "csv"}));
  }
};

int run(int argc, char** argv) {
  CLI::App app{"random-walk rotations on the circle: spectra, tails, constructions"};
  app.require_subcommand(1);

  // ---- spectrum ----
  auto* sp = app.add_subcommand("spectrum", "transfer-operator diagnostics for (phi, alpha)");
  std::string sp_angle, sp_series;
  std::string sp_cutoff = "64";
  Common sp_c;
  sp->add_option("--angle", sp_angle, "angle: p/q | golden | liouville:... | @file")->required();
  sp->add_option("--series", sp_series, "series: q:a,... | t1:q | t2:q,g,s | @file")->required();
  sp->add_option("--cutoff", sp_cutoff, "frequency cutoff N");
  sp_c.attach(sp);

  // ---- tail ----
  auto* ta = app.add_subcommand("tail", "Monte Carlo estimate of P(S_n/n^s > t)");
  std::string ta_angle, ta_series, ta_n = "1000", ta_s = "3/5";
  uint64_t ta_m = 10000;
  double ta_t = 1.0;
  std::string ta_dump;
  Common ta_c;
  ta->add_option("--angle", ta_angle)->required();
  ta->add_option("--series", ta_series)->required();
  ta->add_option("--n", ta_n, "steps");
  ta->add_option("--m", ta_m, "trials");
  ta->add_option("--s", ta_s, "scaling exponent (rational)");
  ta->add_option("--t", ta_t, "threshold");
  ta->add_option("--dump", ta_dump, "per-trial CSV path");
  ta_c.attach(ta);

  // ---- clt ----
  auto* cl = app.add_subcommand("clt", "distribution check of S_n/sqrt(n) vs N(0, sigma^2)");
  std::string cl_angle, cl_series, cl_n = "10000", cl_sigma = "auto";
  uint64_t cl_m = 10000;
  Common cl_c;
  cl->add_option("--angle", cl_angle)->required();
  cl->add_option("--series", cl_series)->required();
  cl->add_option("--n", cl_n);
  cl->add_option("--m", cl_m);
  cl->add_option("--sigma", cl_sigma, "reference sigma, or 'auto' from the sigma^2 formula");
  cl_c.attach(cl);

  // ---- exact ----
  auto* ex = app.add_subcommand("exact", "path-enumeration oracle for P(S_n/n^s > t), n <= 20");
  std::string ex_angle, ex_series, ex_s = "3/5";
  unsigned ex_n = 8;
  double ex_t = 0.0;
  uint64_t ex_M = 0, ex_mc = 0;
  bool ex_two = false;
  Common ex_c;
  ex->add_option("--angle", ex_angle)->required();
  ex->add_option("--series", ex_series)->required();
  ex->add_option("--n", ex_n);
  ex->add_option("--t", ex_t);
  ex->add_option("--s", ex_s);
  ex->add_option("--M", ex_M, "quadrature points (0 = automatic)");
  ex->add_flag("--two-sided", ex_two, "P(|S_n|/n^s > t)");
  ex->add_option("--compare-mc", ex_mc, "also run mc_tail with this many trials and report agreement");
  ex_c.attach(ex);

  // ---- construct ----
  auto* co = app.add_subcommand("construct", "run a counterexample builder, emit ledger/angle/series");
  int co_theorem = 1;
  std::string co_s = "3/5", co_gamma = "6", co_cc = "1", co_angle;
  unsigned co_depth = 1;
  bool co_toy = false;
  Common co_c;
  co->add_option("--theorem", co_theorem)->check(CLI::IsMember({1, 2, 3}));
  co->add_option("--s", co_s);
  co->add_option("--depth", co_depth);
  co->add_flag("--toy", co_toy, "toy amplitude schedule (theorem 1)");
  co->add_option("--gamma", co_gamma, "witness exponent (theorem 2)");
  co->add_option("--c", co_cc, "witness constant (theorems 2/3)");
  co->add_option("--angle", co_angle, "witness angle (theorems 2/3); liouville:... or @file");
  co_c.attach(co);

  // ---- verify ----
  auto* ve = app.add_subcommand("verify", "re-check every ledger inequality exactly");
  std::string ve_ledger;
  Common ve_c;
  ve->add_option("--ledger", ve_ledger, "ledger JSON path")->required();
  ve_c.attach(ve);

  // ---- chain ----
  auto* ch = app.add_subcommand("chain", "finite-chain spectrum and mixing bound for p/q");
  std::string ch_q = "3", ch_p = "1";
  unsigned ch_h = 64;
  Common ch_c;
  ch->add_option("--q", ch_q)->required();
  ch->add_option("--p", ch_p);
  ch->add_option("--horizon", ch_h, "exact power-verification horizon");
  ch_c.attach(ch);

  // ---- preset ----
  auto* pr = app.add_subcommand("preset", "canned experiments");
  std::string pr_name;
  Common pr_c;
  pr->add_option("name", pr_name, "preset name")->required();
  pr_c.attach(pr);

  CLI11_PARSE(app, argc, argv);

  if (sp->parsed()) {
    Angle a = parse_angle(sp_angle);
    CosineSeries s = parse_series(sp_series);
    SpectralReport rep = spectral_report(s, a, Int(sp_cutoff));
    json cfg{{"command", "spectrum"}, {"angle", sp_angle}, {"series", sp_series}, {"cutoff", sp_cutoff}};
    emit(sp_c.out, cfg, rep.summary_json(), sp_c.format, rep.to_csv());
    return 0;
  }

  if (ta->parsed()) {
    WalkConfig cfg{parse_angle(ta_angle), Int(ta_n), ta_m,
                   rat_from_str(ta_s).convert_to<double>(), ta_c.seed};
    CosineSeries s = parse_series(ta_series);
    std::vector<double> sums = mc_sums(cfg, s, ta_c.threads);
    double scale = std::pow(cfg.n.convert_to<double>(), cfg.s_exp);
    uint64_t hits = 0;
    for (double v : sums) hits += (v / scale > ta_t);
    Interval iv = wilson99(hits, cfg.m);
    TailEstimate est{ta_t, double(hits) / double(cfg.m), iv.lo, iv.hi, cfg.m, cfg.seed};
    if (!ta_dump.empty()) write_text(ta_dump, trials_csv(cfg, sums));
    json c{{"command", "tail"},   {"angle", ta_angle}, {"series", ta_series}, {"n", ta_n},
           {"m", ta_m},           {"s", ta_s},         {"t", ta_t},           {"seed", ta_c.seed}};
    emit(ta_c.out, c, est.to_json(), "json");
    return 0;
  }

  if (cl->parsed()) {
    Angle a = parse_angle(cl_angle);
    CosineSeries s = parse_series(cl_series);
    double sigma;
    if (cl_sigma == "auto") {
      double s2 = sigma2_partial(s, a, s.max_frequency());
      if (!(s2 > 0)) throw ResonanceError(Int(0), "sigma^2 vanishes; observable constant?");
      sigma = std::sqrt(s2);
    } else {
      sigma = std::stod(cl_sigma);
    }
    WalkConfig cfg{a, Int(cl_n), cl_m, 1.0, cl_c.seed};
    CltReport rep = mc_clt(cfg, s, sigma, cl_c.threads);
    json c{{"command", "clt"}, {"angle", cl_angle}, {"series", cl_series},
           {"n", cl_n},        {"m", cl_m},         {"sigma", cl_sigma},
           {"seed", cl_c.seed}};
    emit(cl_c.out, c, rep.to_json(), "json");
    return 0;
  }

  if (ex->parsed()) {
    Angle a = parse_angle(ex_angle);
    CosineSeries s = parse_series(ex_series);
    double sx = rat_from_str(ex_s).convert_to<double>();
    double p = exact_tail(s, a, ex_n, ex_t, sx, ex_M, ex_two, ex_c.threads);
    json res{{"exact_tail", p}};
    if (ex_mc > 0) {
      WalkConfig cfg{a, Int(ex_n), ex_mc, sx, ex_c.seed};
      TailEstimate est = mc_tail(cfg, s, ex_t, ex_c.threads);
      res["mc"] = est.to_json();
      res["mc_interval_contains_exact"] = (est.lo <= p && p <= est.hi);
    }
    json c{{"command", "exact"}, {"angle", ex_angle}, {"series", ex_series}, {"n", ex_n},
           {"t", ex_t},          {"s", ex_s},         {"two_sided", ex_two}, {"seed", ex_c.seed}};
    emit(ex_c.out, c, res, "json");
    return 0;
  }

  if (co->parsed()) {
    BuildResult res;
    if (co_theorem == 1) {
      Theorem1Options o;
      o.s = rat_from_str(co_s);
      o.depth = co_depth;
      o.mode = co_toy ? BuildMode::toy : BuildMode::faithful;
      res = theorem1_build(o);
    } else if (co_theorem == 2) {
      Theorem2Options o;
      o.gamma = rat_from_str(co_gamma);
      o.c = rat_from_str(co_cc);
      o.depth = co_depth;
      Angle a = co_angle.empty()
                    ? build_liouville(std::vector<Rat>(co_depth + 1, o.gamma), Int(10))
                    : parse_angle(co_angle);
      res = theorem2_build(a, o);
    } else {
      Theorem3Options o;
      o.s = rat_from_str(co_s);
      o.depth = co_depth;
      std::vector<Rat> sched;
      for (unsigned k = 1; k <= co_depth + 3; ++k) sched.push_back(Rat(std::max(2u, k)));
      Angle a = co_angle.empty() ? build_liouville(sched, Int(1)) : parse_angle(co_angle);
      o.schedule = sched;
      res = theorem3_build(a, o);
    }
    std::string prefix = co_c.out.empty() ? "construction" : co_c.out;
    write_text(prefix + ".ledger.json", res.ledger.to_json().dump(2) + "\n");
    write_text(prefix + ".angle.json", res.angle.to_json().dump(2) + "\n");
    write_text(prefix + ".series.json", res.series.to_json().dump(2) + "\n");
    std::cout << "wrote " << prefix << ".{ledger,angle,series}.json with "
              << res.ledger.levels.size() << " level(s)\n";
    return 0;
  }

  if (ve->parsed()) {
    ConstructionLedger l = ConstructionLedger::from_json(load_json(ve_ledger));
    VerifyReport rep = verify_ledger(l);
    json c{{"command", "verify"}, {"ledger", ve_ledger}};
    emit(ve_c.out, c, rep.to_json(), "json");
    for (const auto& ln : rep.lines)
      if (!ln.pass) std::cerr << "FAIL " << ln.tag << ": " << ln.detail << "\n";
    return rep.all_pass ? 0 : kExitVerify;
  }

  if (ch->parsed()) {
    FiniteChain c{Int(ch_q), Int(ch_p)};
    MixingBound mb = mixing_bound(c, ch_h);
    json res;
    res["eigenvalues"] = chain_spectrum(c);
    res["A"] = mb.A;
    res["rho"] = mb.rho;
    res["verified_horizon"] = ch_h;
    json cfg{{"command", "chain"}, {"q", ch_q}, {"p", ch_p}};
    emit(ch_c.out, cfg, res, "json");
    return 0;
  }

  if (pr->parsed()) {
    json cfg{{"command", "preset"}, {"name", pr_name}, {"seed", pr_c.seed}};
    if (pr_name == "golden-c1") {
      // C^1-regime probes at the golden conjugate: coefficient families
      // a_j = q_j^{-(1+eps)} over convergent denominators, KV growth scan
      Angle a = Angle::golden_conjugate();
      std::vector<Int> freqs;
      for (const auto& cvg : convergents(a.continued_fraction(16)))
        if (cvg.q > 1 && (freqs.empty() || cvg.q > freqs.back())) freqs.push_back(cvg.q);
      std::ostringstream csv;
      csv.precision(17);
      csv << "eps,N,kv_partial,sigma2_partial\n";
      json runs = json::array();
      for (double eps : {0.1, 0.5, 1.0}) {
        std::vector<std::pair<Int, Amp>> terms;
        for (const auto& q : freqs)
          terms.emplace_back(q, Amp(std::pow(q.convert_to<double>(), -(1.0 + eps))));
        CosineSeries s(std::move(terms));
        for (const auto& q : freqs) {
          double kv = kv_partial(s, a, q), s2 = sigma2_partial(s, a, q);
          csv << eps << "," << q.str() << "," << kv << "," << s2 << "\n";
        }
        WalkConfig wc{a, Int(10000), 2000, 1.0, pr_c.seed};
        double s2full = sigma2_partial(s, a, s.max_frequency());
        CltReport rep = mc_clt(wc, s, std::sqrt(s2full), pr_c.threads);
        runs.push_back({{"eps", eps}, {"clt", rep.to_json()}});
      }
      json res{{"clt_runs", runs}, {"note", "exploratory scan, no pass/fail"}};
      emit(pr_c.out, cfg, res, pr_c.format, csv.str());
      return 0;
    }
    if (pr_name == "lemma1-faithful") {
      Int q(3), N(5800);
      Rat alpha_prime(23200, 69601);
      auto cert = lemma1_check(alpha_prime, q, N, Rat(3, 5), Rat(1, 8));
      WalkConfig wc{Angle::from_rational(alpha_prime), N, 100000, 0.6, pr_c.seed};
      TailEstimate est = mc_tail(wc, t1_term(q), 2.0, pr_c.threads);
      json res{{"certificate", cert.to_json()}, {"mc", est.to_json()}};
      emit(pr_c.out, cfg, res, "json");
      return 0;
    }
    if (pr_name == "lemma3-gamma6") {
      Angle a = build_liouville({Rat(6)}, Int(10));
      auto p3 = lemma3_params(Int(1), Int(10), Rat(1), Rat(6), Rat(3, 5), a);
      WalkConfig wc{a, p3.N, 100000, 0.6, pr_c.seed};
      TailEstimate est = mc_tail(wc, p3.phi, p3.threshold, pr_c.threads);
      json res{{"params", p3.to_json()}, {"mc", est.to_json()}};
      emit(pr_c.out, cfg, res, "json");
      return 0;
    }
    std::cerr << "unknown preset '" << pr_name
              << "'; available: golden-c1, lemma1-faithful, lemma3-gamma6\n";
    return kExitUsage;
  }

  return kExitUsage;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const ResonanceError& e) {
    std::cerr << "mathematical error: " << e.what() << "\n";
    return kExitMath;
  } catch (const InfeasibleError& e) {
    std::cerr << "infeasible: " << e.what() << "\n";
    return kExitMath;
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitMath;
  }
}
