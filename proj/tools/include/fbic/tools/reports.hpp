#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "fbic/alamouti.hpp"
#include "fbic/egc.hpp"
#include "fbic/model.hpp"

namespace fbic::tools {

/// Rendered command output. `ok` is false when a check the command ran
/// (protocol decoding, entropy identity) did not hold.
struct Report {
  std::string text;
  bool ok = true;
};

Report bounds_report(const ChannelParams& params, bool json);

struct DetOptions {
  int trials = 100;
  std::uint64_t seed = alamouti::kDefaultSeed;
  bool verify = false;
  int blocks = 2;
};

Report det_report(const DetParams& params, const DetOptions& options, bool json);

/// One simulated SINR next to its closed-form value.
struct SinrComparison {
  std::string name;
  double empirical = 0.0;
  double std_error = 0.0;
  double target = 0.0;
  double relative_error = 0.0;
};

struct McComparison {
  Regime regime = Regime::Weak;
  std::vector<SinrComparison> sinrs;
  double reconstructed_rate = 0.0;
  double closed_form_rate = 0.0;
};

/// Runs the regime's simulator and pairs each estimate with its target.
McComparison mc_comparison(const alamouti::McConfig& config);

Report mc_report(const alamouti::McConfig& config, bool json);

struct EgcOptions {
  egc::SearchConfig search;
  /// Set when the instance came from the linear deterministic model.
  bool from_ldm = false;
  int n = 0;
  int m = 0;
  std::string source;
};

Report egc_report(const egc::DetChannelSpec& spec, const EgcOptions& options, bool json);

}  // namespace fbic::tools
