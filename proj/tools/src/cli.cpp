#include "fbic/tools/cli.hpp"

#include <algorithm>
#include <fstream>
#include <optional>
#include <sstream>

#include <CLI11.hpp>

#include "fbic/alamouti.hpp"
#include "fbic/egc.hpp"
#include "fbic/model.hpp"
#include "fbic/tools/acceptance.hpp"
#include "fbic/tools/reports.hpp"
#include "fbic/tools/sweeps.hpp"

namespace fbic::tools {

namespace {

constexpr double kMinDb = -100.0;
constexpr double kMaxDb = 200.0;

struct Options {
  double snr_db = 20.0;
  double inr_db = 10.0;
  std::optional<double> alpha;
  double alpha_min = 0.0;
  double alpha_max = 3.0;
  double step = 0.0;
  double compare_snr_db = 30.0;
  double inr_min_db = 0.0;
  double inr_max_db = 60.0;
  std::size_t samples = 100000;
  std::optional<std::uint64_t> seed;
  int restarts = 50;
  int iterations = egc::SearchConfig{}.iterations;
  unsigned threads = 0;
  std::string csv;
  bool json = false;
  bool grid = false;

  int n = 0;
  int m = 0;
  bool verify = false;
  int blocks = 2;
  int trials = 100;

  std::string spec_file;
  std::vector<int> ldm;

  std::vector<int> criteria;
};

// Writes to the declared output path, or standard output when none is given.
void emit(const CsvTable& table, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    table.write(out);
    return;
  }
  std::ofstream file(path, std::ios::binary);
  if (!file) throw InputError("cannot open output file '" + path + "'");
  table.write(file);
  if (!file.flush()) throw InputError("failed writing output file '" + path + "'");
}

int emit(const Report& report, std::ostream& out) {
  out << report.text;
  return report.ok ? kExitOk : kExitFailure;
}

CLI::Option* add_db(CLI::App* app, const std::string& name, double& target, const std::string& what) {
  return app->add_option(name, target, what + " in dB")->check(CLI::Range(kMinDb, kMaxDb))->capture_default_str();
}

}  // namespace

int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  Options o;
  CLI::App app{"Feedback interference channel toolkit: capacity bounds, deterministic-model protocol, "
               "Kramer baseline, Alamouti Monte-Carlo and El Gamal-Costa search."};
  app.name("fbic");
  app.require_subcommand(1);

  auto* bounds = app.add_subcommand("bounds", "Achievable rate, outer bound, gap and maximizing rho at one point");
  add_db(bounds, "--snr-db", o.snr_db, "SNR");
  add_db(bounds, "--inr-db", o.inr_db, "INR");
  bounds->add_flag("--grid", o.grid, "Emit the -10..70 dB (step 5) gap grid as CSV instead");
  bounds->add_option("--csv", o.csv, "CSV output path for --grid (default: stdout)");
  bounds->add_flag("--json", o.json, "Machine-readable output");

  auto* gdof = app.add_subcommand("gdof", "CSV of d_feedback, d_nofeedback, d_kramer over an alpha grid");
  gdof->add_option("--alpha", o.alpha, "Single alpha (overrides the range)")->check(CLI::NonNegativeNumber);
  gdof->add_option("--alpha-min", o.alpha_min, "Range start")->check(CLI::NonNegativeNumber)->capture_default_str();
  gdof->add_option("--alpha-max", o.alpha_max, "Range end")->check(CLI::NonNegativeNumber)->capture_default_str();
  gdof->add_option("--step", o.step, "Alpha step (default 0.01)")->check(CLI::PositiveNumber);
  gdof->add_option("--csv", o.csv, "CSV output path (default: stdout)");

  auto* compare = app.add_subcommand("compare", "CSV of achievable, outer and Kramer rates over an INR sweep");
  add_db(compare, "--snr-db", o.compare_snr_db, "Fixed SNR");
  add_db(compare, "--inr-min", o.inr_min_db, "Sweep start");
  add_db(compare, "--inr-max", o.inr_max_db, "Sweep end");
  compare->add_option("--step", o.step, "INR step in dB (default 1)")->check(CLI::PositiveNumber);
  compare->add_option("--csv", o.csv, "CSV output path (default: stdout)");

  auto* det = app.add_subcommand("det", "Deterministic-model capacity, protocol run and entropy check");
  det->add_option("n", o.n, "Direct-link bit levels")->required();
  det->add_option("m", o.m, "Cross-link bit levels")->required();
  det->add_flag("--verify", o.verify, "Run the exact entropy-identity enumeration (n, m <= 2)");
  det->add_option("--blocks", o.blocks, "Super-blocks N for --verify")->capture_default_str();
  det->add_option("--trials", o.trials, "Random message pairs")->check(CLI::PositiveNumber)->capture_default_str();
  det->add_option("--seed", o.seed, "Message RNG seed");
  det->add_flag("--json", o.json, "Machine-readable output");

  auto* mc = app.add_subcommand("mc", "Monte-Carlo SINRs of the Alamouti combiner against closed forms");
  add_db(mc, "--snr-db", o.snr_db, "SNR");
  add_db(mc, "--inr-db", o.inr_db, "INR");
  mc->add_option("--samples", o.samples, "Sample count")->capture_default_str();
  mc->add_option("--seed", o.seed, "RNG seed");
  mc->add_option("--threads", o.threads, "Worker threads (0: hardware concurrency); output does not depend on it");
  mc->add_flag("--json", o.json, "Machine-readable output");

  auto* egc_cmd = app.add_subcommand("egc", "El Gamal-Costa max-min search on a deterministic channel");
  egc_cmd->add_option("spec", o.spec_file, "Channel spec file")->check(CLI::ExistingFile);
  auto* ldm_opt = egc_cmd->add_option("--ldm", o.ldm, "Use the linear deterministic channel with n m levels")
                      ->expected(2);
  egc_cmd->add_option("--restarts", o.restarts, "Random restarts per |U|")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  egc_cmd->add_option("--iterations", o.iterations, "Local-search iterations per restart")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  egc_cmd->add_option("--seed", o.seed, "Search seed");
  egc_cmd->add_flag("--json", o.json, "Machine-readable output");
  ldm_opt->excludes("spec");

  auto* accept = app.add_subcommand("accept", "Run the acceptance suite");
  accept->add_flag("--json", o.json, "Machine-readable results");
  accept->add_option("--criterion", o.criteria, "Run only these criteria (1-8)")->check(CLI::Range(1, kCriterionCount));

  // CLI11 expects the argument vector in reverse order.
  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err) == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*bounds) {
      if (o.grid) {
        SweepSpec spec;
        spec.kind = SweepSpec::Kind::GapGrid;
        spec.axis = {-10.0, 70.0, 5.0};
        spec.snr_axis = {-10.0, 70.0, 5.0};
        emit(run_sweep(spec), o.csv, out);
        return kExitOk;
      }
      return emit(bounds_report(ChannelParams::from_db(o.snr_db, o.inr_db), o.json), out);
    }
    if (*gdof) {
      SweepSpec spec;
      spec.kind = SweepSpec::Kind::Gdof;
      spec.axis = o.alpha ? Axis{*o.alpha, *o.alpha, 1.0} : Axis{o.alpha_min, o.alpha_max, o.step > 0 ? o.step : 0.01};
      emit(run_sweep(spec), o.csv, out);
      return kExitOk;
    }
    if (*compare) {
      SweepSpec spec;
      spec.kind = SweepSpec::Kind::Compare;
      spec.snr_db = o.compare_snr_db;
      spec.axis = {o.inr_min_db, o.inr_max_db, o.step > 0 ? o.step : 1.0};
      emit(run_sweep(spec), o.csv, out);
      return kExitOk;
    }
    if (*det) {
      DetOptions d;
      d.trials = o.trials;
      d.verify = o.verify;
      d.blocks = o.blocks;
      if (o.seed) d.seed = *o.seed;
      return emit(det_report(DetParams(o.n, o.m), d, o.json), out);
    }
    if (*mc) {
      alamouti::McConfig cfg;
      cfg.params = ChannelParams::from_db(o.snr_db, o.inr_db);
      cfg.samples = o.samples;
      cfg.threads = o.threads;
      if (o.seed) cfg.seed = *o.seed;
      return emit(mc_report(cfg, o.json), out);
    }
    if (*egc_cmd) {
      EgcOptions e;
      e.search.restarts = o.restarts;
      e.search.iterations = o.iterations;
      if (o.seed) e.search.seed = *o.seed;
      egc::DetChannelSpec spec;
      if (!o.ldm.empty()) {
        const DetParams p(o.ldm[0], o.ldm[1]);
        e.from_ldm = true;
        e.n = p.n();
        e.m = p.m();
        e.source = "ldm n=" + std::to_string(p.n()) + " m=" + std::to_string(p.m());
        spec = egc::ldm_to_egc(p);
      } else if (!o.spec_file.empty()) {
        std::ifstream in(o.spec_file);
        if (!in) throw InputError("cannot read spec file '" + o.spec_file + "'");
        spec = egc::read_spec(in);
        e.source = o.spec_file;
      } else {
        throw InputError("egc needs a spec file or --ldm n m");
      }
      return emit(egc_report(spec, e, o.json), out);
    }
    if (*accept) {
      AcceptanceConfig cfg;
      cfg.only = o.criteria;
      const auto results = run_acceptance(cfg);
      out << (o.json ? format_json(results) : format_table(results));
      return all_passed(results) ? kExitOk : kExitFailure;
    }
  } catch (const DomainError& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    err << "internal error: " << e.what() << "\n";
    return kExitFailure;
  }
  return kExitUsage;
}

}  // namespace fbic::tools
