#include <doctest.h>

#include "rotwalk/circle.hpp"
#include "rotwalk/rng.hpp"

using namespace rotwalk;

TEST_CASE("reduce: fractional part") {
  CHECK(reduce(1.25).value() == doctest::Approx(0.25));
  CHECK(reduce(-0.25).value() == doctest::Approx(0.75));
  CHECK(reduce(0.0).value() == 0.0);
  CHECK_THROWS_AS(reduce(std::numeric_limits<double>::infinity()), std::invalid_argument);
  CHECK_THROWS_AS(reduce(std::nan("")), std::invalid_argument);
}

TEST_CASE("reduce: exact rational path") {
  CirclePoint p = reduce(Rat(7, 3));
  REQUIRE(p.exact());
  CHECK(p.rational() == Rat(1, 3));
  CHECK(reduce(Rat(-1, 4)).rational() == Rat(3, 4));
}

TEST_CASE("reduce is idempotent") {
  TrialStream st(7, 0);
  for (int i = 0; i < 50; ++i) {
    double x = 20.0 * st.uniform01(i) - 10.0;
    CHECK(reduce(reduce(x).value()).value() == reduce(x).value());
  }
}

TEST_CASE("circle_dist examples") {
  CHECK(circle_dist(reduce(0.1), reduce(0.9)) == doctest::Approx(0.2));
  CHECK(circle_dist(reduce(0.37), reduce(0.37)) == 0.0);
  CHECK(circle_dist(reduce(0.0), reduce(0.5)) == doctest::Approx(0.5));
  CHECK(circle_dist(reduce(Rat(1, 10)), reduce(Rat(9, 10))) == doctest::Approx(0.2));
}

TEST_CASE("grid_dist examples and bound") {
  CHECK(grid_dist(reduce(0.05), Int(3)) == doctest::Approx(0.05));
  CHECK(grid_dist_exact(Rat(1, 6), Int(3)) == Rat(1, 6));
  CHECK(grid_dist(reduce(Rat(1, 3)), Int(3)) == 0.0);

  TrialStream st(11, 0);
  for (int i = 0; i < 200; ++i) {
    double x = st.uniform01(i);
    Int q(1 + (st.at(1000 + i) % 40));
    CHECK(grid_dist(reduce(x), q) <= 0.5 / q.convert_to<double>() + 1e-15);
  }
}

TEST_CASE("in_good_set examples (strict boundary)") {
  CHECK(in_good_set(reduce(0.05), GoodSet(Int(3), Rat(1, 5))));
  CHECK_FALSE(in_good_set(reduce(Rat(1, 6)), GoodSet(Int(3), Rat(49, 100))));
  CHECK(in_good_set(reduce(Rat(2, 3)), GoodSet(Int(3), Rat(1, 100))));
  // exactly on the boundary: distance eta/q is not inside
  CHECK_FALSE(in_good_set_exact(Rat(1, 24), GoodSet(Int(3), Rat(1, 8))));
}

TEST_CASE("good-set measure by quadrature") {
  // fraction of M equally spaced points (offset 9/10 avoids boundary hits)
  const long M = 100000;
  for (long q : {1L, 3L, 5L, 17L}) {
    for (auto [num_eta, den_eta] : {std::pair{1L, 16L}, {1L, 12L}, {1L, 8L}}) {
      long long count = 0;
      long long mod = 10 * M;
      long long v = (9 * q) % mod;
      long long step = (10 * q) % mod;
      for (long i = 0; i < M; ++i) {
        long long d = std::min(v, mod - v);
        if (d * den_eta < mod * num_eta) ++count;
        v += step;
        if (v >= mod) v -= mod;
      }
      double frac = static_cast<double>(count) / M;
      double target = 2.0 * num_eta / den_eta;
      CHECK(std::fabs(frac - target) <= 2.0 / M);
    }
  }
}

TEST_CASE("quadrature counter agrees with the exact membership test") {
  const long M = 1000;
  GoodSet g(Int(5), Rat(1, 12));
  for (long i = 0; i < M; i += 37) {
    Rat x(10 * i + 9, 10 * M);
    long long mod = 10 * M, v = (5 * (10 * i + 9)) % mod;
    long long d = std::min(v, mod - v);
    bool fast = d * 12 < mod * 1;
    CHECK(fast == in_good_set_exact(x, g));
  }
}

TEST_CASE("good-set rotation invariance under p/q") {
  GoodSet g(Int(7), Rat(1, 9));
  Rat alpha(3, 7);
  for (int i = 0; i < 7 * 9 * 4; ++i) {
    Rat x(i, 7 * 9 * 4);
    CHECK(in_good_set_exact(x, g) == in_good_set_exact(frac_rat(x + alpha), g));
  }
}

TEST_CASE("GoodSet validates parameters") {
  CHECK_THROWS_AS(GoodSet(Int(0), Rat(1, 8)), std::invalid_argument);
  CHECK_THROWS_AS(GoodSet(Int(3), Rat(1, 2)), std::invalid_argument);
  CHECK_THROWS_AS(GoodSet(Int(3), Rat(0)), std::invalid_argument);
}
