#include <doctest.h>

#include <cmath>
#include <complex>

#include <nlohmann/json.hpp>

#include "rotwalk/observable.hpp"

using namespace rotwalk;

namespace {
CosineSeries single(long q, Rat a) { return CosineSeries({{Int(q), Amp(std::move(a))}}); }
}

TEST_CASE("eval examples") {
  CHECK(eval(single(1, Rat(1)), reduce(0.0)) == doctest::Approx(1.0));
  // cos(2 pi * 3 * 1/6) = cos(pi) = -1, argument reduced exactly
  CHECK(eval(single(3, Rat(1)), reduce(Rat(1, 6))) == doctest::Approx(-1.0).epsilon(1e-15));
  CosineSeries two({{Int(1), Amp(Rat(1))}, {Int(2), Amp(Rat(1))}});
  CHECK(eval(two, reduce(Rat(1, 2))) == doctest::Approx(0.0).epsilon(1e-15));
}

TEST_CASE("eval reduces huge-frequency arguments exactly for rational x") {
  // q*x = 10^15 + 1/3 for x = (3*10^15+1)/(3*10^15) scaled: pick x = 1/3, q = 10^15+1
  Int q = Int("1000000000000001");  // = 2 mod 3: q*(1/3) = k + 2/3
  double v = eval(single(1, Rat(1)), reduce(Rat(2, 3)));
  CHECK(eval(CosineSeries({{q, Amp(Rat(1))}}), reduce(Rat(1, 3))) ==
        doctest::Approx(v).epsilon(1e-14));
}

TEST_CASE("fourier_coeff: cosine to exponential basis") {
  CosineSeries s = single(5, Rat(2));
  CHECK(fourier_coeff(s, Int(5)) == doctest::Approx(1.0));
  CHECK(fourier_coeff(s, Int(-5)) == doctest::Approx(1.0));
  CHECK(fourier_coeff(s, Int(3)) == 0.0);
}

TEST_CASE("cr_norm_bound") {
  CHECK(cr_norm_bound(single(1, Rat(1)), 0) == doctest::Approx(1.0));
  CHECK(cr_norm_bound(single(2, Rat(3)), 1) == doctest::Approx(12.0 * M_PI));
  CosineSeries s({{Int(1), Amp(Rat(1))}, {Int(2), Amp(Rat(1, 4))}});
  CHECK(cr_norm_bound(s, 2) == doctest::Approx(8.0 * M_PI * M_PI));
}

TEST_CASE("t1/t2 term amplitudes") {
  CHECK(t1_term(Int(3)).terms()[0].second.rational() == Rat(1, 8));
  CHECK(t1_term(Int(1)).terms()[0].second.rational() == Rat(1, 2));
  // (gamma-1)(1-s) = 5 * 2/5 = 2, exact
  auto t2 = t2_term(Int(10), Rat(6), Rat(3, 5));
  REQUIRE(t2.terms()[0].second.exact());
  CHECK(t2.terms()[0].second.rational() == Rat(1, 100));
  // non-integer exponent falls back to a double amplitude
  auto t2b = t2_term(Int(10), Rat(6), Rat(11, 20));
  CHECK_FALSE(t2b.terms()[0].second.exact());
  CHECK(t2b.terms()[0].second.value() ==
        doctest::Approx(std::pow(10.0, -5.0 * 9.0 / 20.0)).epsilon(1e-12));
  CHECK(t1_term(Int(4), Rat(1, 2)).terms()[0].second.rational() == Rat(1, 2));
}

TEST_CASE("quadrature mean vanishes (grid coprime to frequencies)") {
  CosineSeries s({{Int(3), Amp(Rat(1, 2))}, {Int(7), Amp(Rat(2, 3))}});
  const long M = 1009;  // prime, coprime to 3 and 7
  double acc = 0;
  for (long i = 0; i < M; ++i) acc += eval(s, reduce(Rat(i, M)));
  CHECK(std::fabs(acc / M) < 1e-12);
}

TEST_CASE("Parseval on a fine grid") {
  CosineSeries s({{Int(2), Amp(Rat(1, 2))}, {Int(5), Amp(Rat(1, 3))}, {Int(9), Amp(0.25)}});
  const long M = 64;  // > 2 * max frequency
  double acc = 0;
  for (long i = 0; i < M; ++i) {
    double v = eval(s, reduce(Rat(i, M)));
    acc += v * v;
  }
  double expect = (0.25 + 1.0 / 9.0 + 0.0625) / 2.0;
  CHECK(std::fabs(acc / M - expect) < 1e-10);
}

TEST_CASE("fourier_coeff agrees with a discrete Fourier transform") {
  CosineSeries s({{Int(1), Amp(Rat(3, 4))}, {Int(4), Amp(Rat(1, 5))}});
  const long M = 16;
  for (long n = -7; n <= 7; ++n) {
    std::complex<double> acc(0, 0);
    for (long i = 0; i < M; ++i) {
      double x = static_cast<double>(i) / M;
      acc += eval(s, reduce(Rat(i, M))) * std::exp(std::complex<double>(0, -2.0 * M_PI * n * x));
    }
    CHECK(std::real(acc) / M == doctest::Approx(fourier_coeff(s, Int(n))).epsilon(1e-10));
    CHECK(std::imag(acc) / M == doctest::Approx(0.0).epsilon(1e-10));
  }
}

TEST_CASE("series JSON round trip is lossless") {
  CosineSeries s({{Int(3), Amp(Rat(1, 8))}, {Int(100001), Amp(0.015)}}, Rat(1, 16));
  CosineSeries t = CosineSeries::from_json(s.to_json());
  CHECK(t.to_json().dump() == s.to_json().dump());
  CHECK(t.tail_bound() == Rat(1, 16));
  REQUIRE(t.size() == 2);
  CHECK(t.terms()[0].second.rational() == Rat(1, 8));
  CHECK(t.terms()[1].second.value() == 0.015);
}

TEST_CASE("constructor rejects constant terms and duplicates") {
  CHECK_THROWS_AS(CosineSeries({{Int(0), Amp(Rat(1))}}), std::invalid_argument);
  CHECK_THROWS_AS(CosineSeries({{Int(2), Amp(Rat(1))}, {Int(2), Amp(Rat(1, 2))}}),
                  std::invalid_argument);
  CHECK(CosineSeries().empty());
}
