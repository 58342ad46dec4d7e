#include <doctest.h>

#include <cmath>

#include <nlohmann/json.hpp>

#include "rotwalk/rng.hpp"
#include "rotwalk/spectral.hpp"

using namespace rotwalk;

namespace {
CosineSeries single(long q, Rat a) { return CosineSeries({{Int(q), Amp(std::move(a))}}); }
const double kGolden = 0.6180339887498949;
}

TEST_CASE("eigenvalue examples") {
  CHECK(eigenvalue(Int(0), Angle::golden_conjugate()) == 0.0);
  CHECK(eigenvalue(Int(1), Angle::from_rational(Rat(1, 4))) == doctest::Approx(1.0));
  CHECK(eigenvalue(Int(2), Angle::from_rational(Rat(1, 2))) == 0.0);
  CHECK(resonant(Int(2), Angle::from_rational(Rat(1, 2))));
  CHECK_FALSE(resonant(Int(3), Angle::from_rational(Rat(1, 2))));
  CHECK_FALSE(resonant(Int(5), Angle::golden_conjugate()));
  // stable near resonance: d = 1e-9 gives 2 sin^2(pi d) without cancellation
  Angle near = Angle::from_rational(Rat(1, 1000000000));
  double lam = eigenvalue(Int(1), near);
  CHECK(lam == doctest::Approx(2.0 * std::pow(M_PI * 1e-9, 2)).epsilon(1e-10));
}

TEST_CASE("transfer_apply multiplies each term by cos(2 pi q alpha)") {
  auto r1 = transfer_apply(single(1, Rat(1)), Angle::from_rational(Rat(1, 2)));
  CHECK(r1.terms()[0].second.value() == doctest::Approx(-1.0));
  auto r2 = transfer_apply(single(3, Rat(1)), Angle::from_rational(Rat(1, 3)));
  CHECK(r2.terms()[0].second.value() == doctest::Approx(1.0));
  auto r3 = transfer_apply(single(1, Rat(1)), Angle::from_rational(Rat(1, 4)));
  CHECK(std::fabs(r3.terms()[0].second.value()) < 1e-15);
}

TEST_CASE("eigenrelation on a grid: operator route vs eigenvalue route") {
  TrialStream st(5, 0);
  for (int trial = 0; trial < 20; ++trial) {
    Int n(1 + (st.at(trial) % 50));
    Angle a = (trial % 3 == 0) ? Angle::golden_conjugate()
                               : Angle::from_rational(Rat(Int(st.at(100 + trial) % 97),
                                                          Int(1 + (st.at(200 + trial) % 96))));
    double alpha = a.to_double();
    double lam = 1.0 - eigenvalue(n, a);
    CosineSeries u = single(to_int64(n), Rat(1));
    double sup = 0;
    for (int j = 0; j < 1024; ++j) {
      double x = j / 1024.0;
      double lhs = 0.5 * (eval(u, reduce(x + alpha)) + eval(u, reduce(x - alpha)));
      double rhs = lam * eval(u, reduce(x));
      sup = std::max(sup, std::fabs(lhs - rhs));
    }
    CHECK(sup < 1e-12);
  }
}

TEST_CASE("poisson_solve: coefficients and resonance error") {
  auto sol = poisson_solve(single(1, Rat(1)), Angle::from_rational(Rat(1, 4)), Int(8));
  REQUIRE(sol.psi_coeffs.size() == 1);
  CHECK(sol.psi_coeffs[Int(1)] == doctest::Approx(0.5));

  CHECK_THROWS_AS(poisson_solve(single(2, Rat(1)), Angle::from_rational(Rat(1, 2)), Int(8)),
                  ResonanceError);
  try {
    poisson_solve(single(2, Rat(1)), Angle::from_rational(Rat(1, 2)), Int(8));
  } catch (const ResonanceError& e) {
    CHECK(e.frequency == 2);
    CHECK(std::string(e.what()).find("2") != std::string::npos);
  }
  CHECK(poisson_solve(CosineSeries(), Angle::from_rational(Rat(1, 2)), Int(8)).psi_coeffs.empty());
}

TEST_CASE("poisson residual (T - I) psi + phi vanishes on a grid") {
  TrialStream st(9, 0);
  for (int trial = 0; trial < 10; ++trial) {
    std::vector<std::pair<Int, Amp>> terms;
    long maxf = 0;
    for (int j = 0; j < 3; ++j) {
      long f = 1 + static_cast<long>(st.at(100 * trial + j) % 20);
      bool dup = false;
      for (auto& [q, a] : terms) dup |= (q == f);
      if (dup) continue;
      terms.emplace_back(Int(f), Amp(Rat(Int(1 + (st.at(500 + 100 * trial + j) % 8)), Int(4))));
      maxf = std::max(maxf, f);
    }
    CosineSeries phi(std::move(terms));
    Angle a = Angle::from_rational(Rat(Int(2 + (st.at(900 + trial) % 45)),
                                       Int(97)));  // prime denominator: no resonance below 97
    auto sol = poisson_solve(phi, a, phi.max_frequency());
    CosineSeries psi = sol.as_series();
    double alpha = a.to_double();
    long M = 2 * maxf + 3;
    double sup = 0;
    for (long i = 0; i < M; ++i) {
      double x = static_cast<double>(i) / M;
      double tpsi = 0.5 * (eval(psi, reduce(x + alpha)) + eval(psi, reduce(x - alpha)));
      sup = std::max(sup, std::fabs(tpsi - eval(psi, reduce(x)) + eval(phi, reduce(x))));
    }
    CHECK(sup < 1e-10);
  }
}

TEST_CASE("partial sums: worked example at alpha = 1/4") {
  CosineSeries s = single(1, Rat(2));
  Angle a = Angle::from_rational(Rat(1, 4));
  CHECK(kv_partial(s, a, Int(1)) == doctest::Approx(2.0));
  CHECK(sigma2_partial(s, a, Int(1)) == doctest::Approx(2.0));
  CHECK(poisson_partial(s, a, Int(1)) == doctest::Approx(2.0));
  CHECK(kv_partial(CosineSeries(), a, Int(10)) == 0.0);
}

TEST_CASE("kv partial at N=1 for the golden conjugate") {
  CosineSeries s = single(1, Rat(1));
  Angle g = Angle::golden_conjugate();
  double lam = 1.0 - std::cos(2.0 * M_PI * kGolden);
  CHECK(kv_partial(s, g, Int(1)) == doctest::Approx(0.5 / lam).epsilon(1e-12));
}

TEST_CASE("partial sums are monotone in N and obey kv <= 2 poisson") {
  CosineSeries s({{Int(1), Amp(Rat(1))}, {Int(3), Amp(Rat(1, 2))}, {Int(8), Amp(Rat(1, 4))}});
  Angle g = Angle::golden_conjugate();
  double prev = 0;
  for (long N : {1L, 2L, 3L, 8L, 20L}) {
    double kv = kv_partial(s, g, Int(N));
    CHECK(kv >= prev);
    prev = kv;
    CHECK(kv <= 2.0 * poisson_partial(s, g, Int(N)) * (1 + 1e-12));
  }
  CHECK(sigma2_partial(s, g, Int(8)) > 0.0);
  CHECK_THROWS_AS(kv_partial(single(4, Rat(1)), Angle::from_rational(Rat(1, 2)), Int(8)),
                  ResonanceError);
}

TEST_CASE("prop1_criterion") {
  auto r1 = prop1_criterion(2u, 2.0, 1.0);
  CHECK(r1.holds);
  CHECK(r1.convergence_exponent == doctest::Approx(2.0));
  auto r2 = prop1_criterion(1u, 2.0, 1.0);
  CHECK_FALSE(r2.holds);
  auto r3 = prop1_criterion(std::nullopt, 7.5, 0.3);
  CHECK(r3.holds);
  CHECK_THROWS_AS(prop1_criterion(2u, 1.5, 1.0), std::invalid_argument);
}

TEST_CASE("spectral report CSV and JSON") {
  CosineSeries s({{Int(1), Amp(Rat(1))}, {Int(2), Amp(Rat(1, 2))}});
  SpectralReport rep = spectral_report(s, Angle::golden_conjugate(), Int(5));
  CHECK(rep.rows.size() == 2);
  std::string csv = rep.to_csv();
  CHECK(csv.rfind("n,eigenvalue,kv_term,sigma2_term\n", 0) == 0);
  auto j = rep.summary_json();
  CHECK(j["kv_partial"].get<double>() == doctest::Approx(rep.kv));
  CHECK(j["cutoff"].get<std::string>() == "5");
}
