#pragma once

#include <vector>

#include "fbic/gaussian_bounds.hpp"
#include "fbic/model.hpp"

// Kramer's feedback scheme as a baseline: the optimal input correlation
// rho* solves a quartic in [0, 1], and the symmetric rate follows from it.
namespace fbic::kramer {

/// Quartic in rho, highest degree first. With s = sqrt(SNR * INR):
///   c4 = 2 INR s, c3 = INR, c2 = -4 (INR + 1) s, c1 = -(2 + SNR + 2 INR),
///   c0 = 2 (INR + 1) s.
/// `bridge` = 2 s is kept separately so the polynomial can be evaluated as
///   c4 (1 - rho^2)^2 + bridge (1 - 2 rho^2) + c3 rho^3 + c1 rho
/// without cancellation near rho = 1.
struct QuarticCoeffs {
  double c4 = 0.0;
  double c3 = 0.0;
  double c2 = 0.0;
  double c1 = 0.0;
  double c0 = 0.0;
  double bridge = 0.0;

  double max_abs() const;
  /// Factored evaluation, accurate near rho = 1.
  double evaluate(double rho) const;
  /// Plain Horner evaluation of c4..c0.
  double evaluate_expanded(double rho) const;
};

QuarticCoeffs quartic_coefficients(const ChannelParams& params);

/// All roots in [0, 1] found by a 10^4-point sign-change scan plus bisection.
std::vector<double> rho_star_candidates(const ChannelParams& params);

/// The root giving the largest rate. Throws DomainError when snr or inr is
/// not positive, or when no sign change exists in [0, 1].
gauss::Rho rho_star(const ChannelParams& params);

/// log2((1 + SNR + INR + 2 rho* sqrt(SNR INR)) / (1 + (1 - rho*^2) INR)).
RateReport rate(const ChannelParams& params);

/// 1 - alpha on [0, 1/3), (3 - alpha)/4 on [1/3, 1), (1 + alpha)/4 beyond.
gauss::GdofPoint gdof(double alpha);

}  // namespace fbic::kramer
