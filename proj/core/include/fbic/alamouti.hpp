#pragma once

#include <complex>
#include <cstdint>
#include <string>

#include "fbic/model.hpp"

// Signal-level Monte-Carlo check of the two-stage Gaussian scheme.
//
// Stage 1: each transmitter sends its own symbol. Stage 2: transmitter 1
// sends conj(x2) and transmitter 2 sends -conj(x1) (common parts only in the
// weak regime, plus fresh private symbols). Receiver 1 stacks
// [y(1), conj(y(2))] and applies the combiner [conj(gd), -gc], which removes
// the other user's common symbol exactly.
namespace fbic::alamouti {

using cplx = std::complex<double>;

struct ComplexGains {
  cplx gd;
  cplx gc;

  /// |gd|^2 = SNR and |gc|^2 = INR with the given phases (radians).
  static ComplexGains from(const ChannelParams& params, double phase_d = 0.0, double phase_c = 0.0);
};

inline constexpr std::uint64_t kDefaultSeed = 0x5eed'2009'fb1cULL;
inline constexpr std::size_t kMinSamples = 1000;

struct McConfig {
  std::size_t samples = 100000;
  std::uint64_t seed = kDefaultSeed;
  ChannelParams params{1.0, 1.0};
  double phase_d = 0.0;
  double phase_c = 0.0;
  /// 0 picks std::thread::hardware_concurrency(). Results do not depend on it.
  unsigned threads = 0;
};

/// Name of the random stream construction, for output metadata.
std::string rng_description();

/// signal power / residual power over one sample stream, with a delta-method
/// standard error.
struct SinrEstimate {
  double value = 0.0;
  double std_error = 0.0;
};

struct StrongEstimates {
  /// After the orthogonal combiner; expected SNR + INR.
  SinrEstimate effective_snr;
  /// At transmitter 1, decoding x2 from feedback after stripping x1;
  /// expected INR.
  SinrEstimate tx_decode_snr;

  /// min(1/2 log2(1 + effective), 1/2 log2(1 + tx decode)).
  double reconstructed_rate() const;
};

struct WeakEstimates {
  double lambda_p = 0.0;
  /// lambda_c (SNR + INR) / (lambda_p (SNR + INR) + 1)
  SinrEstimate common_rx;
  /// lambda_c INR / (lambda_p INR + 1)
  SinrEstimate common_tx_decode;
  /// lambda_p SNR / (lambda_p INR + 1)
  SinrEstimate private_stream;

  /// log2(1 + private) + 1/2 log2(1 + min(common_tx_decode, common_rx)).
  double reconstructed_rate() const;
};

/// Throws DomainError unless INR >= SNR, InputError if samples < kMinSamples.
StrongEstimates simulate_strong_combining(const McConfig& cfg);

/// Throws DomainError unless INR < SNR, InputError if samples < kMinSamples.
WeakEstimates simulate_weak_combining(const McConfig& cfg);

/// Largest |combiner output| per unit |gd gc x2| when only x2 is transmitted
/// (no x1, no noise) over `samples` random symbols. Zero up to rounding.
double cross_term_leakage(const ComplexGains& gains, std::size_t samples, std::uint64_t seed);

}  // namespace fbic::alamouti
