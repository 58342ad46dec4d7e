#include <doctest.h>

#include <cmath>
#include <numeric>

#include "rotwalk/chain.hpp"
#include "rotwalk/walk.hpp"

using namespace rotwalk;

namespace {
CosineSeries single(long q, Rat a) { return CosineSeries({{Int(q), Amp(std::move(a))}}); }
}

TEST_CASE("chain construction guards") {
  CHECK_THROWS_AS(FiniteChain(Int(4), Int(1)), std::invalid_argument);
  CHECK_THROWS_AS(FiniteChain(Int(9), Int(3)), std::invalid_argument);
  CHECK_NOTHROW(FiniteChain(Int(9), Int(2)));
  CHECK_NOTHROW(FiniteChain(Int(1), Int(0)));
}

TEST_CASE("chain_spectrum examples") {
  FiniteChain c3{Int(3), Int(1)};
  auto lam = chain_spectrum(c3);
  CHECK(lam[0] == doctest::Approx(1.0));
  CHECK(lam[1] == doctest::Approx(-0.5));
  CHECK(lam[2] == doctest::Approx(-0.5));

  FiniteChain c5{Int(5), Int(2)};
  auto l5 = chain_spectrum(c5);
  CHECK(l5[0] == doctest::Approx(1.0));
  CHECK(l5[1] == doctest::Approx(std::cos(4 * M_PI / 5)));
  CHECK(l5[2] == doctest::Approx(std::cos(8 * M_PI / 5)));
  CHECK(l5[3] == doctest::Approx(std::cos(2 * M_PI / 5)));
  CHECK(l5[4] == doctest::Approx(std::cos(6 * M_PI / 5)));
  double rho = 0;
  for (size_t k = 1; k < l5.size(); ++k) rho = std::max(rho, std::fabs(l5[k]));
  CHECK(rho == doctest::Approx(std::cos(M_PI / 5)));

  FiniteChain c1{Int(1), Int(0)};
  CHECK(chain_spectrum(c1) == std::vector<double>{1.0});
}

TEST_CASE("mixing bound certified by exact matrix powers") {
  FiniteChain c3{Int(3), Int(1)};
  MixingBound b3 = mixing_bound(c3, 64);
  CHECK(b3.A == 1.0);
  CHECK(b3.rho == doctest::Approx(0.5));
  CHECK(chain_power_deviation(c3, 4) <= Rat(1, 16));
  CHECK(chain_power_deviation(c3, 4) == Rat(1, 24));  // (2/3) (1/2)^4

  FiniteChain c1{Int(1), Int(0)};
  CHECK(chain_power_deviation(c1, 5) == Rat(0));

  FiniteChain c5{Int(5), Int(1)};
  MixingBound b5 = mixing_bound(c5, 64);
  CHECK(b5.rho == doctest::Approx(std::cos(M_PI / 5)));

  for (long q : {7L, 9L}) {
    FiniteChain c{Int(q), Int(2)};
    CHECK_NOTHROW(mixing_bound(c, 64));
  }
}

TEST_CASE("stationary mean of a nonresonant cosine vanishes on every orbit") {
  FiniteChain c{Int(7), Int(3)};
  for (long qp : {1L, 2L, 5L, 9L}) {
    CosineSeries phi = single(qp, Rat(1));
    for (double x : {0.0, 0.123, 0.71}) {
      double acc = 0;
      for (long i = 0; i < 7; ++i) acc += eval(phi, reduce(x + 3.0 * i / 7.0));
      CHECK(std::fabs(acc / 7) < 1e-14);
    }
  }
}

TEST_CASE("lemma2_bound: worked example and scalings") {
  FiniteChain c{Int(3), Int(1)};
  CosineSeries phi = single(1, Rat(1));
  double b = lemma2_bound(phi, c, 1e4, 0.6, 0.25);
  // (1/2 + 2*1*3*1/(1-1/2)) * 16 / 10^0.8
  double expect = (0.5 + 12.0) * 16.0 / std::pow(10.0, 0.8);
  CHECK(b == doctest::Approx(expect).epsilon(1e-12));
  CHECK(b == doctest::Approx(31.6979).epsilon(1e-4));

  // monotone decreasing in n, delta^2 scaling
  CHECK(lemma2_bound(phi, c, 2e4, 0.6, 0.25) < b);
  CHECK(lemma2_bound(phi, c, 1e4, 0.6, 0.5) == doctest::Approx(b / 4).epsilon(1e-12));

  CHECK_THROWS_AS(lemma2_bound(single(3, Rat(1)), c, 100, 0.6, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(lemma2_bound(single(6, Rat(1)), c, 100, 0.6, 0.25), std::invalid_argument);
  CHECK_THROWS_AS(lemma2_bound(phi, c, 100, 0.5, 0.25), std::invalid_argument);
}

TEST_CASE("lemma2_find_N: boundary and scaling") {
  FiniteChain c{Int(3), Int(1)};
  CosineSeries phi = single(1, Rat(1));
  Int N = lemma2_find_N(phi, c, 0.6, 0.25, 1.0);
  double nN = N.convert_to<double>();
  CHECK(lemma2_bound(phi, c, nN, 0.6, 0.25) < 1.0);
  CHECK(lemma2_bound(phi, c, nN - 1, 0.6, 0.25) >= 1.0);

  CHECK(lemma2_find_N(phi, c, 0.6, 10.0, 10.0) == 1);

  // N grows like delta^{-2/(2s-1)} = delta^{-10} at s = 0.6
  Int N2 = lemma2_find_N(phi, c, 0.6, 0.125, 1.0);
  double ratio = N2.convert_to<double>() / N.convert_to<double>();
  CHECK(ratio == doctest::Approx(1024.0).epsilon(0.01));
}

TEST_CASE("lemma2_bound dominates the exact two-sided tail on small chains") {
  TrialStream st(21, 0);
  for (int trial = 0; trial < 12; ++trial) {
    long qs[] = {3, 5, 7};
    long q = qs[st.at(trial) % 3];
    long p = 1 + static_cast<long>(st.at(50 + trial) % (q - 1));
    while (std::gcd(p, q) != 1) ++p;
    long qp = 1 + static_cast<long>(st.at(100 + trial) % 8);
    if (qp % q == 0) ++qp;
    unsigned n = 2 + static_cast<unsigned>(st.at(150 + trial) % 9);
    double delta = 0.25 * (1 + static_cast<double>(st.at(200 + trial) % 3));
    FiniteChain c{Int(q), Int(p)};
    CosineSeries phi = single(qp, Rat(1, 2));
    double bound = lemma2_bound(phi, c, n, 0.6, delta);
    double exact = exact_tail(phi, Angle::from_rational(Rat(p, q)), n, delta, 0.6, 0, true);
    CHECK(bound >= exact - 1e-3);  // 1e-3 is the oracle's quadrature budget
  }
}
