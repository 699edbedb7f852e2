#pragma once

#include <cmath>
#include <cstdint>
#include <numbers>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include <boost/rational.hpp>

namespace fbic {

/// Thrown when an input lies outside the mathematical domain of an operation
/// (wrong regime, negative alpha, size guard exceeded).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Thrown for malformed inputs: length mismatches, non-stochastic tables,
/// channel specs that violate injectivity.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

using Rational = boost::rational<std::int64_t>;

/// "3/2", or "3" for integers.
std::string to_string(const Rational& r);

// All rates are in bits/s/Hz; every log in the library is base 2.
inline double log2_1p(double x) { return std::log1p(x) / std::numbers::ln2; }

double to_db(double linear);
double from_db(double db);

/// Symmetric Gaussian interference channel: SNR = |g_d|^2, INR = |g_c|^2 with
/// unit input power and unit noise.
class ChannelParams {
 public:
  ChannelParams(double snr, double inr);

  static ChannelParams from_db(double snr_db, double inr_db);

  double snr() const { return snr_; }
  double inr() const { return inr_; }

 private:
  double snr_;
  double inr_;
};

/// Bit levels of the linear deterministic model.
class DetParams {
 public:
  static constexpr int kMaxLevels = 63;

  DetParams(int n, int m);

  int n() const { return n_; }
  int m() const { return m_; }
  /// Width of a transmitted word, max(n, m).
  int q() const { return n_ > m_ ? n_ : m_; }

 private:
  int n_;
  int m_;
};

enum class Regime { Weak, Strong };

std::string_view to_string(Regime r);

/// Strong iff inr >= snr.
Regime classify(const ChannelParams& params);
/// Strong iff m >= n.
Regime classify(const DetParams& params);

/// n = floor(log2 SNR), m = floor(log2 INR). Requires snr, inr >= 1.
DetParams det_from_gaussian(const ChannelParams& params);

struct RateReport {
  double rate = 0.0;
  std::vector<std::pair<std::string, double>> components;
  std::string binding;

  /// Throws std::out_of_range for an unknown label.
  double component(std::string_view label) const;
};

}  // namespace fbic
