#include <doctest.h>

#include <cmath>
#include <limits>

#include "fbic/model.hpp"

using namespace fbic;

TEST_CASE("base-2 logarithms") {
  CHECK(std::log2(2.0) == 1.0);
  CHECK(log2_1p(1.0) == doctest::Approx(1.0).epsilon(1e-15));
  CHECK(log2_1p(3.0) == doctest::Approx(2.0).epsilon(1e-15));
  CHECK(log2_1p(0.0) == 0.0);
}

TEST_CASE("dB conversion round-trips") {
  for (double x : {1e-9, 0.37, 1.0, 2.0, 10.0, 123.456, 1e7, 1e14}) {
    CHECK(std::abs(from_db(to_db(x)) - x) <= 1e-12 * x);
  }
  CHECK(from_db(30.0) == doctest::Approx(1000.0));
  CHECK(to_db(100.0) == doctest::Approx(20.0));
}

TEST_CASE("channel parameters validate their domain") {
  CHECK_NOTHROW(ChannelParams(0.0, 0.0));
  CHECK_THROWS_AS(ChannelParams(-1.0, 1.0), DomainError);
  CHECK_THROWS_AS(ChannelParams(1.0, -1e-300), DomainError);
  CHECK_THROWS_AS(ChannelParams(std::numeric_limits<double>::infinity(), 1.0), DomainError);
  CHECK_THROWS_AS(ChannelParams(1.0, std::nan("")), DomainError);
  const auto p = ChannelParams::from_db(20.0, 10.0);
  CHECK(p.snr() == doctest::Approx(100.0));
  CHECK(p.inr() == doctest::Approx(10.0));
}

TEST_CASE("deterministic parameters enforce the word-width guard") {
  CHECK_NOTHROW(DetParams(63, 63));
  CHECK_NOTHROW(DetParams(0, 0));
  CHECK_THROWS_AS(DetParams(64, 1), DomainError);
  CHECK_THROWS_AS(DetParams(1, -1), DomainError);
  CHECK(DetParams(2, 5).q() == 5);
  CHECK(DetParams(7, 3).q() == 7);
}

TEST_CASE("regime classification") {
  CHECK(classify(ChannelParams(1, 4)) == Regime::Strong);
  CHECK(classify(ChannelParams(4, 1)) == Regime::Weak);
  CHECK(classify(ChannelParams(2, 2)) == Regime::Strong);
  CHECK(classify(DetParams(2, 3)) == Regime::Strong);
  CHECK(classify(DetParams(2, 2)) == Regime::Strong);
  CHECK(classify(DetParams(2, 1)) == Regime::Weak);
  CHECK(to_string(Regime::Weak) == "weak");
}

TEST_CASE("Gaussian to deterministic level mapping") {
  auto check = [](double snr, double inr, int n, int m) {
    const auto d = det_from_gaussian(ChannelParams(snr, inr));
    CHECK(d.n() == n);
    CHECK(d.m() == m);
  };
  check(8, 2, 3, 1);
  check(10, 10, 3, 3);
  check(1, 1, 0, 0);
  check(1023.999, 1024, 9, 10);
  CHECK_THROWS_AS(det_from_gaussian(ChannelParams(0.5, 4)), DomainError);
}

TEST_CASE("rational formatting and rate components") {
  CHECK(to_string(Rational(3, 2)) == "3/2");
  CHECK(to_string(Rational(6, 2)) == "3");
  CHECK(to_string(Rational(0, 1)) == "0");

  RateReport r;
  r.rate = 1.0;
  r.components = {{"a", 0.25}, {"b", 0.75}};
  CHECK(r.component("b") == 0.75);
  CHECK_THROWS_AS(r.component("c"), std::out_of_range);
}
