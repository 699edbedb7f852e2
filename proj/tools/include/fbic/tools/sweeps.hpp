#pragma once

#include <string>
#include <vector>

#include "fbic/tools/csv.hpp"

namespace fbic::tools {

/// Closed range [min, max] sampled every `step`.
struct Axis {
  double min = 0.0;
  double max = 0.0;
  double step = 1.0;

  /// Throws std::invalid_argument for an empty range or a nonpositive step.
  void validate(const std::string& name) const;
  /// min + i * step for i = 0 .. floor((max - min) / step).
  std::vector<double> points() const;
};

struct SweepSpec {
  enum class Kind {
    Gdof,     // alpha axis: alpha, d_feedback, d_nofeedback, d_kramer
    Compare,  // INR axis (dB) at fixed SNR: inr_db, achievable, outer, kramer_rate, point
    GapGrid,  // SNR x INR axes (dB): snr_db, inr_db, regime, achievable, outer, gap, argmax_rho
  };

  Kind kind = Kind::Gdof;
  Axis axis;
  /// Second axis for GapGrid (SNR in dB; `axis` is INR).
  Axis snr_axis;
  /// Fixed SNR for Compare.
  double snr_db = 30.0;
  /// Empty means standard output.
  std::string output;
};

CsvTable gdof_table(const Axis& alpha);

/// Grid rows plus, when SNR > 2, a final `ridge` row at INR = SNR - sqrt(2 SNR).
CsvTable compare_table(double snr_db, const Axis& inr_db);

CsvTable gap_grid_table(const Axis& snr_db, const Axis& inr_db);

CsvTable run_sweep(const SweepSpec& spec);

}  // namespace fbic::tools
