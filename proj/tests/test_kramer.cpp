#include <doctest.h>

#include <cmath>
#include <vector>

#include "fbic/gaussian_bounds.hpp"
#include "fbic/kramer.hpp"

using namespace fbic;

namespace {

// The quartic written out with INR = SNR^a, as a polynomial in rho.
double quartic_oracle(double snr, double inr, double r) {
  const double s = std::sqrt(snr * inr);
  return 2 * inr * s * std::pow(r, 4) + inr * std::pow(r, 3) - 4 * (inr + 1) * s * r * r - (2 + snr + 2 * inr) * r +
         2 * (inr + 1) * s;
}

double rate_oracle(double snr, double inr, double r) {
  return std::log2((1 + snr + inr + 2 * r * std::sqrt(snr * inr)) / (1 + (1 - r * r) * inr));
}

}  // namespace

TEST_CASE("quartic coefficients") {
  const auto q = kramer::quartic_coefficients(ChannelParams(100, 10));
  const double s = std::sqrt(1000.0);
  CHECK(q.c4 == doctest::Approx(20 * s));
  CHECK(q.c3 == doctest::Approx(10));
  CHECK(q.c2 == doctest::Approx(-44 * s));
  CHECK(q.c1 == doctest::Approx(-122));
  CHECK(q.c0 == doctest::Approx(22 * s));
  for (double r : {0.0, 0.1, 0.5, 0.93, 1.0}) {
    CHECK(q.evaluate(r) == doctest::Approx(quartic_oracle(100, 10, r)).epsilon(1e-12));
    CHECK(q.evaluate_expanded(r) == doctest::Approx(quartic_oracle(100, 10, r)).epsilon(1e-12));
  }
}

TEST_CASE("rho* at (100, 100) is a bracketed root") {
  const ChannelParams p(100, 100);
  const double rho = kramer::rho_star(p).value();
  CHECK(rho > 0.0);
  CHECK(rho < 1.0);
  const auto q = kramer::quartic_coefficients(p);
  CHECK(std::abs(q.evaluate_expanded(rho)) <= 1e-6 * q.max_abs());
  CHECK(quartic_oracle(100, 100, rho - 1e-6) * quartic_oracle(100, 100, rho + 1e-6) < 0.0);
  CHECK(rho == doctest::Approx(0.93174).epsilon(1e-4));
}

TEST_CASE("rho* residual on an (SNR, alpha) grid") {
  for (double snr : {1e1, 1e3, 1e6, 1e10}) {
    for (double a : {0.2, 0.6, 1.0, 1.5, 3.0}) {
      const ChannelParams p(snr, std::pow(snr, a));
      const auto q = kramer::quartic_coefficients(p);
      const double rho = kramer::rho_star(p).value();
      CHECK(std::abs(q.evaluate_expanded(rho)) <= 1e-6 * q.max_abs());
      // Every other root in [0, 1] gives no larger rate.
      for (double r : kramer::rho_star_candidates(p)) {
        CHECK(rate_oracle(p.snr(), p.inr(), r) <= rate_oracle(p.snr(), p.inr(), rho) + 1e-12);
      }
    }
  }
  CHECK_THROWS_AS(kramer::rho_star(ChannelParams(0, 1)), DomainError);
  CHECK_THROWS_AS(kramer::rho_star(ChannelParams(1, 0)), DomainError);
}

TEST_CASE("rho* asymptotics at SNR = 1e10") {
  const double snr = 1e10;
  const double rho = kramer::rho_star(ChannelParams(snr, std::pow(snr, 0.2))).value();
  const double approx = 2 * std::pow(snr, (3 * 0.2 - 1) / 2);
  CHECK(std::abs(rho - approx) / approx <= 0.10);

  for (double a : {1.0, 1.5, 2.0, 3.0}) {
    auto log_gap = [&](double s) {
      const double r = kramer::rho_star(ChannelParams(s, std::pow(s, a))).value();
      return std::log10((1 - r) * (1 + r));
    };
    const double slope = (log_gap(snr * 10) - log_gap(snr / 10)) / 2;
    CHECK(std::abs(slope + (a + 1) / 4) <= 0.05);
  }
}

TEST_CASE("Kramer rate examples") {
  const ChannelParams p(100, 100);
  const auto r = kramer::rate(p);
  CHECK(r.rate > 0.0);
  CHECK(r.rate < gauss::outer_bound(p).value);
  CHECK(r.rate == doctest::Approx(rate_oracle(100, 100, r.component("rho_star"))).epsilon(1e-12));
  CHECK(r.rate == doctest::Approx(r.component("log2_numerator") - r.component("log2_denominator")).epsilon(1e-14));

  const ChannelParams ridge(100, 100 - std::sqrt(200.0));
  CHECK(std::abs(kramer::rate(ridge).rate - gauss::outer_bound(ridge).value) <= 0.2);

  const ChannelParams off(1e4, 10);
  CHECK(kramer::rate(off).rate < gauss::achievable_weak(off).rate);
}

TEST_CASE("Kramer against the two-stage scheme at SNR = 30 dB") {
  const double snr = 1000;
  // Near the ridge Kramer's scheme is capacity-approaching.
  const ChannelParams ridge(snr, snr - std::sqrt(2 * snr));
  CHECK(std::abs(kramer::rate(ridge).rate - gauss::outer_bound(ridge).value) <= 0.2);
  // At 6 dB of interference Kramer's scheme still leads; far from the
  // ridge (60 dB) the two-stage scheme wins.
  const auto low = ChannelParams::from_db(30, 6);
  CHECK(kramer::rate(low).rate > gauss::achievable(low).rate);
  const auto high = ChannelParams::from_db(30, 60);
  CHECK(gauss::achievable(high).rate > kramer::rate(high).rate);
}

TEST_CASE("Kramer never beats the outer bound") {
  for (int s = -10; s <= 70; s += 10) {
    for (int i = -10; i <= 70; i += 10) {
      const auto p = ChannelParams::from_db(s, i);
      CHECK(kramer::rate(p).rate <= gauss::outer_bound(p).value + 1e-9);
    }
  }
}

TEST_CASE("Kramer gdof") {
  CHECK(kramer::gdof(0).d == 1.0);
  CHECK(kramer::gdof(1).d == 0.5);
  CHECK(kramer::gdof(1.0 / 3.0).d == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(kramer::gdof(-1), DomainError);

  // Continuity at the breakpoints.
  for (double b : {1.0 / 3.0, 1.0}) {
    CHECK(std::abs(kramer::gdof(b - 1e-12).d - kramer::gdof(b).d) <= 1e-9);
  }

  // The two-stage scheme dominates, with equality only at alpha = 0 and 1.
  for (int k = 0; k <= 500; ++k) {
    const double a = k / 100.0;
    const double diff = gauss::gdof_feedback(a).d - kramer::gdof(a).d;
    if (k == 0 || k == 100) {
      CHECK(diff == doctest::Approx(0.0));
    } else {
      CHECK(diff > 1e-12);
    }
  }
}

TEST_CASE("numeric gdof of Kramer's rate") {
  for (double a : {0.2, 0.6, 1.5}) {
    // Least-squares slope of rate against log2 SNR over SNR = 1e8 .. 1e12.
    std::vector<double> xs, ys;
    for (int k = 8; k <= 12; ++k) {
      const double s = std::pow(10.0, k);
      xs.push_back(std::log2(s));
      ys.push_back(kramer::rate(ChannelParams(s, std::pow(s, a))).rate);
    }
    double mx = 0, my = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      mx += xs[i] / 5;
      my += ys[i] / 5;
    }
    double sxy = 0, sxx = 0;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      sxy += (xs[i] - mx) * (ys[i] - my);
      sxx += (xs[i] - mx) * (xs[i] - mx);
    }
    CHECK(std::abs(sxy / sxx - kramer::gdof(a).d) <= 0.05);
  }
}
