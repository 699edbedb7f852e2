#include "fbic/gaussian_bounds.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbic/numeric.hpp"

namespace fbic::gauss {

Rho::Rho(double value) : value_(value) {
  if (!(value >= 0.0 && value <= 1.0)) {
    throw DomainError("rho must lie in [0, 1], got " + std::to_string(value));
  }
}

RateReport achievable_strong(const ChannelParams& params) {
  if (classify(params) != Regime::Strong) {
    throw DomainError("achievable_strong requires INR >= SNR");
  }
  const double snr = params.snr();
  const double inr = params.inr();
  RateReport r;
  r.rate = 0.5 * log2_1p(inr);
  r.components = {
      {"tx_decode", 0.5 * log2_1p(inr)},
      {"rx_alamouti", 0.5 * log2_1p(snr + inr)},
  };
  r.binding = "tx_decode";
  return r;
}

RateReport achievable_weak(const ChannelParams& params) {
  if (classify(params) != Regime::Weak) {
    throw DomainError("achievable_weak requires INR < SNR");
  }
  const double snr = params.snr();
  const double inr = params.inr();

  RateReport r;
  if (inr >= 1.0) {
    r.rate = log2_1p(snr / (2.0 * inr)) + 0.5 * log2_1p(inr) - 0.5;
  } else {
    r.rate = log2_1p(snr / (inr + 1.0));
  }

  // Per-constraint breakdown from the power split.
  const double lp = inr > 1.0 ? 1.0 / inr : 1.0;
  const double lc = 1.0 - lp;
  const double s_plus_i = snr + inr;
  r.components = {
      {"private", log2_1p(lp * snr / (lp * inr + 1.0))},
      {"common_tx_decode", 0.5 * log2_1p(lc * inr / (lp * inr + 1.0))},
      {"common_rx_alamouti", 0.5 * log2_1p(lc * s_plus_i / (lp * s_plus_i + 1.0))},
      {"lambda_p", lp},
  };
  r.binding = "common_tx_decode";
  return r;
}

RateReport achievable(const ChannelParams& params) {
  return classify(params) == Regime::Strong ? achievable_strong(params) : achievable_weak(params);
}

double outer_objective(const ChannelParams& params, Rho rho) {
  const double snr = params.snr();
  const double inr = params.inr();
  const double r = rho.value();
  const double decorrelated = (1.0 - r) * (1.0 + r);
  const double conditional = log2_1p(decorrelated * snr / (1.0 + decorrelated * inr));
  const double marginal = log2_1p(snr + inr + 2.0 * r * std::sqrt(snr * inr));
  return 0.5 * (conditional + marginal);
}

OuterBound outer_bound(const ChannelParams& params) {
  auto f = [&](double r) { return outer_objective(params, Rho(std::clamp(r, 0.0, 1.0))); };
  const auto best = numeric::grid_golden_maximize(f, 0.0, 1.0, 2001, 1e-12);
  return {best.value, best.x};
}

GapCertificate gap_certificate(const ChannelParams& params) {
  GapCertificate c{params};
  c.regime = classify(params);
  c.achievable = achievable(params).rate;
  c.outer = outer_bound(params).value;
  c.gap = c.outer - c.achievable;
  c.bound = c.regime == Regime::Strong ? kStrongGapBound : kWeakGapBound;
  c.certified = c.gap >= -1e-9 && c.gap <= c.bound + 1e-6;
  return c;
}

namespace {

void check_alpha(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be finite and nonnegative, got " + std::to_string(alpha));
  }
}

}  // namespace

GdofPoint gdof_feedback(double alpha) {
  check_alpha(alpha);
  return {alpha, alpha <= 1.0 ? 1.0 - alpha / 2.0 : alpha / 2.0};
}

GdofPoint gdof_nonfeedback(double alpha) {
  check_alpha(alpha);
  if (alpha >= 2.0) return {alpha, 1.0};
  const double d = std::min({1.0, std::max(alpha / 2.0, 1.0 - alpha / 2.0), std::max(alpha, 1.0 - alpha)});
  return {alpha, d};
}

}  // namespace fbic::gauss
