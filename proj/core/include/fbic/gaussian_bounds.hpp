#pragma once

#include "fbic/model.hpp"

// Symmetric Gaussian interference channel with feedback: achievable rates of
// the two-stage scheme, the correlation-optimized outer bound, the constant
// gap certificate and generalized degrees-of-freedom curves.
namespace fbic::gauss {

/// Correlation magnitude |E[X1 X2*]| between the two inputs.
class Rho {
 public:
  explicit Rho(double value);
  double value() const { return value_; }

 private:
  double value_;
};

struct GdofPoint {
  double alpha = 0.0;
  double d = 0.0;
};

inline constexpr double kWeakGapBound = 1.7075;
inline constexpr double kStrongGapBound = 1.5;

struct GapCertificate {
  ChannelParams params;
  double achievable = 0.0;
  double outer = 0.0;
  double gap = 0.0;
  Regime regime = Regime::Weak;
  /// Per-regime bound the gap was checked against.
  double bound = 0.0;
  /// -1e-9 <= gap <= bound + 1e-6.
  bool certified = false;
};

/// 1/2 log2(1 + INR): the transmitter-decode constraint binds over the
/// receiver's Alamouti constraint 1/2 log2(1 + SNR + INR).
/// Throws DomainError unless INR >= SNR.
RateReport achievable_strong(const ChannelParams& params);

/// Two-stage common/private scheme with private power min(1/INR, 1).
/// Throws DomainError unless INR < SNR.
RateReport achievable_weak(const ChannelParams& params);

/// Dispatches on classify(params).
RateReport achievable(const ChannelParams& params);

double outer_objective(const ChannelParams& params, Rho rho);

struct OuterBound {
  double value = 0.0;
  double argmax = 0.0;
};

/// Maximum of outer_objective over rho in [0, 1]: 2001-point grid followed by
/// golden-section refinement of the best cell.
OuterBound outer_bound(const ChannelParams& params);

GapCertificate gap_certificate(const ChannelParams& params);

/// 1 - alpha/2 on [0, 1], alpha/2 beyond. Throws DomainError for alpha < 0.
GdofPoint gdof_feedback(double alpha);

/// Non-feedback "W" curve. Throws DomainError for alpha < 0.
GdofPoint gdof_nonfeedback(double alpha);

}  // namespace fbic::gauss
