#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "rotwalk/numeric.hpp"
#include "rotwalk/rng.hpp"
#include "rotwalk/stats.hpp"

using namespace rotwalk;

TEST_CASE("rational literals: fractions, integers, exact decimals") {
  CHECK(rat_from_str("3/5") == Rat(3, 5));
  CHECK(rat_from_str("-7") == Rat(-7));
  CHECK(rat_from_str("0.6") == Rat(3, 5));
  CHECK(rat_from_str("-0.25") == Rat(-1, 4));
  CHECK(rat_from_str("1.50") == Rat(3, 2));
  CHECK(rat_str(rat_from_str("23200/69601")) == "23200/69601");
  CHECK_THROWS(rat_from_str(""));
}

TEST_CASE("TrialStream: reproducible, trial-keyed, counter-based") {
  TrialStream a(42, 7), b(42, 7), c(42, 8), d(43, 7);
  CHECK(a.at(0) == b.at(0));
  CHECK(a.at(123456) == b.at(123456));
  CHECK(a.at(0) != c.at(0));
  CHECK(a.at(0) != d.at(0));
  // counter access is random, not sequential
  uint64_t late = a.at(1000);
  CHECK(a.at(5) != late);
  CHECK(a.at(1000) == late);
  for (int i = 0; i < 1000; ++i) {
    double u = a.uniform01(i);
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
  }
}

TEST_CASE("wilson99: endpoints, ordering, 1/sqrt(m) shrink") {
  auto z = wilson99(0, 1000);
  CHECK(z.lo == 0.0);
  CHECK(z.hi > 0.0);
  CHECK(z.hi < 0.02);
  auto o = wilson99(1000, 1000);
  CHECK(o.hi == 1.0);
  CHECK(o.lo > 0.98);

  auto mid = wilson99(500, 1000);
  CHECK(mid.lo < 0.5);
  CHECK(mid.hi > 0.5);

  double h1 = wilson99(500, 1000).hi - wilson99(500, 1000).lo;
  double h2 = wilson99(2000, 4000).hi - wilson99(2000, 4000).lo;
  CHECK(h1 / h2 == doctest::Approx(2.0).epsilon(0.01));

  CHECK_THROWS_AS(wilson99(5, 4), std::invalid_argument);
  CHECK_THROWS_AS(wilson99(0, 0), std::invalid_argument);
}

TEST_CASE("normal_cdf spot values") {
  CHECK(normal_cdf(0.0) == doctest::Approx(0.5));
  CHECK(normal_cdf(1.959963984540054) == doctest::Approx(0.975).epsilon(1e-9));
  CHECK(normal_cdf(-1.959963984540054) == doctest::Approx(0.025).epsilon(1e-9));
}

TEST_CASE("ks_normal: accepts normal samples, rejects uniform ones") {
  // Box-Muller from the counter stream, pinned seed
  TrialStream st(123, 0);
  const size_t m = 4000;
  std::vector<double> normal(m), uniform(m);
  for (size_t i = 0; i < m; ++i) {
    double u1 = st.uniform01(2 * i) + 1e-12;
    double u2 = st.uniform01(2 * i + 1);
    normal[i] = 0.7 * std::sqrt(-2.0 * std::log(u1)) * std::cos(2 * M_PI * u2);
    uniform[i] = st.uniform01(100000 + i);
  }
  CHECK(ks_normal(normal, 0.7) < ks_critical_5(m));
  CHECK(ks_normal(uniform, 0.7) > 3 * ks_critical_5(m));
  CHECK(ks_uniform(uniform) < 1.63 / std::sqrt(double(m)));
  CHECK_THROWS_AS(ks_normal({}, 1.0), std::invalid_argument);
  CHECK_THROWS_AS(ks_normal({0.1}, 0.0), std::invalid_argument);
}
