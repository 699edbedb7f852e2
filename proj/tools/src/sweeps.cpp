#include "fbic/tools/sweeps.hpp"

#include <cmath>
#include <stdexcept>

#include "fbic/gaussian_bounds.hpp"
#include "fbic/kramer.hpp"
#include "fbic/model.hpp"

namespace fbic::tools {

void Axis::validate(const std::string& name) const {
  if (!std::isfinite(min) || !std::isfinite(max) || !std::isfinite(step)) {
    throw std::invalid_argument(name + " axis needs finite bounds and step");
  }
  if (!(step > 0.0)) throw std::invalid_argument(name + " step must be positive");
  if (max < min) throw std::invalid_argument(name + " range is empty (max < min)");
}

std::vector<double> Axis::points() const {
  const auto count = static_cast<std::size_t>(std::floor((max - min) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) out.push_back(min + static_cast<double>(i) * step);
  return out;
}

CsvTable gdof_table(const Axis& alpha) {
  alpha.validate("alpha");
  if (alpha.min < 0.0) throw std::invalid_argument("alpha must be nonnegative");
  CsvTable t({"alpha", "d_feedback", "d_nofeedback", "d_kramer"});
  for (double a : alpha.points()) {
    t.add_row({format_number(a), format_number(gauss::gdof_feedback(a).d),
               format_number(gauss::gdof_nonfeedback(a).d), format_number(kramer::gdof(a).d)});
  }
  return t;
}

CsvTable compare_table(double snr_db, const Axis& inr_db) {
  inr_db.validate("inr-db");
  CsvTable t({"inr_db", "achievable", "outer", "kramer_rate", "point"});
  auto row = [&](double idb, double inr, const char* kind) {
    const ChannelParams p(from_db(snr_db), inr);
    t.add_row({format_number(idb), format_number(gauss::achievable(p).rate),
               format_number(gauss::outer_bound(p).value), format_number(kramer::rate(p).rate), kind});
  };
  for (double idb : inr_db.points()) row(idb, from_db(idb), "grid");
  const double snr = from_db(snr_db);
  if (snr > 2.0) {
    const double ridge = snr - std::sqrt(2.0 * snr);
    row(to_db(ridge), ridge, "ridge");
  }
  return t;
}

CsvTable gap_grid_table(const Axis& snr_db, const Axis& inr_db) {
  snr_db.validate("snr-db");
  inr_db.validate("inr-db");
  CsvTable t({"snr_db", "inr_db", "regime", "achievable", "outer", "gap", "argmax_rho"});
  for (double sdb : snr_db.points()) {
    for (double idb : inr_db.points()) {
      const auto p = ChannelParams::from_db(sdb, idb);
      const auto cert = gauss::gap_certificate(p);
      t.add_row({format_number(sdb), format_number(idb), std::string(to_string(cert.regime)),
                 format_number(cert.achievable), format_number(cert.outer), format_number(cert.gap),
                 format_number(gauss::outer_bound(p).argmax)});
    }
  }
  return t;
}

CsvTable run_sweep(const SweepSpec& spec) {
  switch (spec.kind) {
    case SweepSpec::Kind::Gdof:
      return gdof_table(spec.axis);
    case SweepSpec::Kind::Compare:
      return compare_table(spec.snr_db, spec.axis);
    case SweepSpec::Kind::GapGrid:
      return gap_grid_table(spec.snr_axis, spec.axis);
  }
  throw std::logic_error("unknown sweep kind");
}

}  // namespace fbic::tools
