#include "fbic/model.hpp"

#include <limits>

namespace fbic {

std::string to_string(const Rational& r) {
  if (r.denominator() == 1) return std::to_string(r.numerator());
  return std::to_string(r.numerator()) + "/" + std::to_string(r.denominator());
}

double to_db(double linear) { return 10.0 * std::log10(linear); }

double from_db(double db) { return std::pow(10.0, db / 10.0); }

ChannelParams::ChannelParams(double snr, double inr) : snr_(snr), inr_(inr) {
  if (!std::isfinite(snr) || !std::isfinite(inr) || snr < 0.0 || inr < 0.0) {
    throw DomainError("channel parameters must be finite and nonnegative (snr=" +
                      std::to_string(snr) + ", inr=" + std::to_string(inr) + ")");
  }
}

ChannelParams ChannelParams::from_db(double snr_db, double inr_db) {
  if (!std::isfinite(snr_db) || !std::isfinite(inr_db)) {
    throw DomainError("dB values must be finite");
  }
  return {fbic::from_db(snr_db), fbic::from_db(inr_db)};
}

DetParams::DetParams(int n, int m) : n_(n), m_(m) {
  if (n < 0 || m < 0 || n > kMaxLevels || m > kMaxLevels) {
    throw DomainError("bit levels must lie in [0, " + std::to_string(kMaxLevels) +
                      "] (n=" + std::to_string(n) + ", m=" + std::to_string(m) + ")");
  }
}

std::string_view to_string(Regime r) { return r == Regime::Strong ? "strong" : "weak"; }

Regime classify(const ChannelParams& params) {
  return params.inr() >= params.snr() ? Regime::Strong : Regime::Weak;
}

Regime classify(const DetParams& params) {
  return params.m() >= params.n() ? Regime::Strong : Regime::Weak;
}

namespace {

// floor(log2 x) for x >= 1, exact: frexp gives x = f * 2^e with f in [0.5, 1).
int floor_log2(double x) {
  int e = 0;
  std::frexp(x, &e);
  return e - 1;
}

}  // namespace

DetParams det_from_gaussian(const ChannelParams& params) {
  if (params.snr() < 1.0 || params.inr() < 1.0) {
    throw DomainError("det_from_gaussian needs snr >= 1 and inr >= 1");
  }
  return {floor_log2(params.snr()), floor_log2(params.inr())};
}

double RateReport::component(std::string_view label) const {
  for (const auto& [name, value] : components) {
    if (name == label) return value;
  }
  throw std::out_of_range("no rate component named " + std::string(label));
}

}  // namespace fbic
