#include "fbic/kramer.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "fbic/numeric.hpp"

namespace fbic::kramer {

double QuarticCoeffs::max_abs() const {
  return std::max({std::abs(c4), std::abs(c3), std::abs(c2), std::abs(c1), std::abs(c0)});
}

double QuarticCoeffs::evaluate(double rho) const {
  const double x = (1.0 - rho) * (1.0 + rho);
  return c4 * x * x + bridge * (1.0 - 2.0 * rho * rho) + c3 * rho * rho * rho + c1 * rho;
}

double QuarticCoeffs::evaluate_expanded(double rho) const {
  return (((c4 * rho + c3) * rho + c2) * rho + c1) * rho + c0;
}

QuarticCoeffs quartic_coefficients(const ChannelParams& params) {
  const double snr = params.snr();
  const double inr = params.inr();
  const double s = std::sqrt(snr * inr);
  QuarticCoeffs q;
  q.c4 = 2.0 * inr * s;
  q.c3 = inr;
  q.c2 = -4.0 * (inr + 1.0) * s;
  q.c1 = -(2.0 + snr + 2.0 * inr);
  q.c0 = 2.0 * (inr + 1.0) * s;
  q.bridge = 2.0 * s;
  return q;
}

namespace {

QuarticCoeffs normalized(QuarticCoeffs q) {
  const double scale = q.max_abs();
  for (double* c : {&q.c4, &q.c3, &q.c2, &q.c1, &q.c0, &q.bridge}) *c /= scale;
  return q;
}

double rate_at(const ChannelParams& params, double rho) {
  const double snr = params.snr();
  const double inr = params.inr();
  const double num = 1.0 + snr + inr + 2.0 * rho * std::sqrt(snr * inr);
  const double den = 1.0 + (1.0 - rho) * (1.0 + rho) * inr;
  return std::log2(num / den);
}

constexpr std::size_t kScanPoints = 10001;

}  // namespace

std::vector<double> rho_star_candidates(const ChannelParams& params) {
  if (!(params.snr() > 0.0 && params.inr() > 0.0)) {
    throw DomainError("Kramer's rho* needs snr > 0 and inr > 0");
  }
  const QuarticCoeffs q = normalized(quartic_coefficients(params));
  return numeric::scan_roots([&](double r) { return q.evaluate(r); }, 0.0, 1.0, kScanPoints);
}

gauss::Rho rho_star(const ChannelParams& params) {
  const auto roots = rho_star_candidates(params);
  if (roots.empty()) {
    const QuarticCoeffs q = normalized(quartic_coefficients(params));
    throw DomainError("no sign change of the rho* quartic in [0, 1]: p(0)=" + std::to_string(q.evaluate(0.0)) +
                      ", p(1)=" + std::to_string(q.evaluate(1.0)));
  }
  double best = roots.front();
  for (double r : roots) {
    if (rate_at(params, r) > rate_at(params, best)) best = r;
  }
  return gauss::Rho(best);
}

RateReport rate(const ChannelParams& params) {
  const double rho = rho_star(params).value();
  const double snr = params.snr();
  const double inr = params.inr();
  const double log_num = log2_1p(snr + inr + 2.0 * rho * std::sqrt(snr * inr));
  const double log_den = log2_1p((1.0 - rho) * (1.0 + rho) * inr);
  RateReport r;
  r.rate = log_num - log_den;
  r.components = {{"rho_star", rho}, {"log2_numerator", log_num}, {"log2_denominator", log_den}};
  r.binding = "rho_star";
  return r;
}

gauss::GdofPoint gdof(double alpha) {
  if (!(alpha >= 0.0) || !std::isfinite(alpha)) {
    throw DomainError("alpha must be finite and nonnegative, got " + std::to_string(alpha));
  }
  if (alpha < 1.0 / 3.0) return {alpha, 1.0 - alpha};
  if (alpha < 1.0) return {alpha, (3.0 - alpha) / 4.0};
  return {alpha, (1.0 + alpha) / 4.0};
}

}  // namespace fbic::kramer
