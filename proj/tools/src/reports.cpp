#include "fbic/tools/reports.hpp"

#include <algorithm>
#include <cmath>
#include <optional>
#include <random>

#include <fmt/format.h>
#include <json.hpp>

#include "fbic/gaussian_bounds.hpp"
#include "fbic/ldm.hpp"
#include "fbic/tools/csv.hpp"

namespace fbic::tools {

using nlohmann::ordered_json;

namespace {

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

ordered_json components_json(const RateReport& r) {
  ordered_json c = ordered_json::object();
  for (const auto& [label, value] : r.components) c[label] = value;
  return c;
}

}  // namespace

Report bounds_report(const ChannelParams& params, bool json) {
  const auto cert = gauss::gap_certificate(params);
  const auto ach = gauss::achievable(params);
  const auto outer = gauss::outer_bound(params);

  if (json) {
    ordered_json j;
    j["snr"] = params.snr();
    j["inr"] = params.inr();
    j["regime"] = std::string(to_string(cert.regime));
    j["achievable"] = {{"rate", ach.rate}, {"binding", ach.binding}, {"components", components_json(ach)}};
    j["outer"] = outer.value;
    j["argmax_rho"] = outer.argmax;
    j["gap"] = cert.gap;
    j["gap_bound"] = cert.bound;
    j["certified"] = cert.certified;
    return {dump(j), cert.certified};
  }

  std::string s;
  s += fmt::format("snr         {} ({} dB)\n", format_number(params.snr()), format_number(to_db(params.snr())));
  s += fmt::format("inr         {} ({} dB)\n", format_number(params.inr()), format_number(to_db(params.inr())));
  s += fmt::format("regime      {}\n", to_string(cert.regime));
  s += fmt::format("achievable  {}\n", format_number(ach.rate));
  for (const auto& [label, value] : ach.components) s += fmt::format("  {:<20} {}\n", label, format_number(value));
  s += fmt::format("  binding              {}\n", ach.binding);
  s += fmt::format("outer       {}\n", format_number(outer.value));
  s += fmt::format("argmax rho  {}\n", format_number(outer.argmax));
  s += fmt::format("gap         {} (bound {}, {})\n", format_number(cert.gap), format_number(cert.bound),
                   cert.certified ? "certified" : "NOT certified");
  return {s, cert.certified};
}

namespace {

ldm::BitVec random_bits(std::mt19937_64& gen, int length) {
  ldm::BitVec v(static_cast<std::size_t>(length));
  for (auto& b : v) b = static_cast<std::uint8_t>(gen() & 1U);
  return v;
}

}  // namespace

Report det_report(const DetParams& params, const DetOptions& options, bool json) {
  if (options.trials < 1) throw InputError("--trials must be at least 1");
  const Rational cap = ldm::capacity(params);
  const int length = ldm::message_length(params);

  std::mt19937_64 gen(options.seed);
  int decoded = 0;
  bool rate_matches = true;
  for (int t = 0; t < options.trials; ++t) {
    const auto w1 = random_bits(gen, length);
    const auto w2 = random_bits(gen, length);
    const auto run = ldm::run_two_stage_protocol(params, w1, w2);
    if (run.decoded1 == w1 && run.decoded2 == w2) ++decoded;
    rate_matches = rate_matches && run.rate == cap;
  }
  const bool protocol_ok = decoded == options.trials && rate_matches;

  std::optional<ldm::EntropyReport> entropy;
  if (options.verify) entropy = ldm::verify_entropy_identities(params, options.blocks);
  const bool entropy_ok = !entropy || (entropy->exactly_equal && entropy->encoder_reconstruction_holds);

  if (json) {
    ordered_json j;
    j["n"] = params.n();
    j["m"] = params.m();
    j["regime"] = std::string(to_string(classify(params)));
    j["capacity"] = to_string(cap);
    j["message_bits"] = length;
    j["protocol"] = {{"trials", options.trials}, {"decoded", decoded}, {"rate_matches_capacity", rate_matches},
                     {"seed", options.seed}, {"ok", protocol_ok}};
    if (entropy) {
      j["entropy"] = {{"blocks", entropy->blocks},
                      {"message_pairs", entropy->message_pairs},
                      {"h_v1_given_w2", entropy->h_v1_given_w2},
                      {"h_y2_given_w2", entropy->h_y2_given_w2},
                      {"exactly_equal", entropy->exactly_equal},
                      {"encoder_reconstruction_holds", entropy->encoder_reconstruction_holds}};
    }
    return {dump(j), protocol_ok && entropy_ok};
  }

  std::string s;
  s += fmt::format("n={} m={} ({} regime)\n", params.n(), params.m(), to_string(classify(params)));
  s += fmt::format("capacity    {}\n", to_string(cap));
  s += fmt::format("message     {} bits per user per two-slot block\n", length);
  s += fmt::format("protocol    {} ({}/{} random message pairs decoded, rate {}, seed {})\n",
                   protocol_ok ? "OK" : "FAILED", decoded, options.trials, rate_matches ? to_string(cap) : "mismatch",
                   options.seed);
  if (entropy) {
    s += fmt::format("entropy     N={} blocks, {} message pairs\n", entropy->blocks, entropy->message_pairs);
    s += fmt::format("  H(V1^N|W2) = {}\n", format_number(entropy->h_v1_given_w2));
    s += fmt::format("  H(Y2^N|W2) = {}\n", format_number(entropy->h_y2_given_w2));
    s += fmt::format("  exactly equal: {}\n", entropy->exactly_equal ? "yes" : "no");
    s += fmt::format("  encoder reconstruction from (W1, V2 history): {}\n",
                     entropy->encoder_reconstruction_holds ? "yes" : "no");
  }
  return {s, protocol_ok && entropy_ok};
}

namespace {

SinrComparison compare(std::string name, const alamouti::SinrEstimate& e, double target) {
  // A zero target (a stream switched off) is compared in absolute terms.
  const double err = std::abs(e.value - target);
  return {std::move(name), e.value, e.std_error, target, target > 0.0 ? err / target : err};
}

}  // namespace

McComparison mc_comparison(const alamouti::McConfig& config) {
  const double snr = config.params.snr();
  const double inr = config.params.inr();
  McComparison c;
  c.regime = classify(config.params);
  c.closed_form_rate = gauss::achievable(config.params).rate;
  if (c.regime == Regime::Strong) {
    const auto est = alamouti::simulate_strong_combining(config);
    c.sinrs.push_back(compare("effective_snr", est.effective_snr, snr + inr));
    c.sinrs.push_back(compare("tx_decode_snr", est.tx_decode_snr, inr));
    c.reconstructed_rate = est.reconstructed_rate();
  } else {
    const auto est = alamouti::simulate_weak_combining(config);
    const double lp = est.lambda_p;
    const double lc = 1.0 - lp;
    c.sinrs.push_back(compare("common_rx", est.common_rx, lc * (snr + inr) / (lp * (snr + inr) + 1.0)));
    c.sinrs.push_back(compare("common_tx_decode", est.common_tx_decode, lc * inr / (lp * inr + 1.0)));
    c.sinrs.push_back(compare("private", est.private_stream, lp * snr / (lp * inr + 1.0)));
    c.reconstructed_rate = est.reconstructed_rate();
  }
  return c;
}

Report mc_report(const alamouti::McConfig& config, bool json) {
  const auto c = mc_comparison(config);
  if (json) {
    ordered_json j;
    j["snr"] = config.params.snr();
    j["inr"] = config.params.inr();
    j["regime"] = std::string(to_string(c.regime));
    j["samples"] = config.samples;
    j["seed"] = config.seed;
    j["rng"] = alamouti::rng_description();
    ordered_json rows = ordered_json::array();
    for (const auto& s : c.sinrs) {
      rows.push_back({{"name", s.name},
                      {"empirical", s.empirical},
                      {"std_error", s.std_error},
                      {"target", s.target},
                      {"relative_error", s.relative_error}});
    }
    j["sinr"] = rows;
    j["reconstructed_rate"] = c.reconstructed_rate;
    j["closed_form_rate"] = c.closed_form_rate;
    return {dump(j), true};
  }

  std::string s;
  s += fmt::format("snr {} dB, inr {} dB ({} regime)\n", format_number(to_db(config.params.snr())),
                   format_number(to_db(config.params.inr())), to_string(c.regime));
  s += fmt::format("samples {}, seed {}\n", config.samples, config.seed);
  s += fmt::format("rng {}\n", alamouti::rng_description());
  s += fmt::format("{:<18} {:>15} {:>12} {:>15} {:>12}\n", "sinr", "empirical", "std_error", "target", "rel_error");
  for (const auto& r : c.sinrs) {
    s += fmt::format("{:<18} {:>15} {:>12} {:>15} {:>12}\n", r.name, format_number(r.empirical),
                     format_number(r.std_error), format_number(r.target), format_number(r.relative_error));
  }
  s += fmt::format("reconstructed rate {} (closed form {})\n", format_number(c.reconstructed_rate),
                   format_number(c.closed_form_rate));
  return {s, true};
}

Report egc_report(const egc::DetChannelSpec& spec, const EgcOptions& options, bool json) {
  const auto result = egc::egc_capacity_search(spec, options.search);
  const auto& best = result.best;
  std::optional<Rational> det_cap;
  if (options.from_ldm) det_cap = ldm::capacity(DetParams(options.n, options.m));

  auto row = [](const std::vector<double>& table, int u, int width) {
    return std::vector<double>(table.begin() + u * width, table.begin() + (u + 1) * width);
  };

  if (json) {
    ordered_json j;
    j["source"] = options.source;
    if (det_cap) j["det_capacity"] = to_string(*det_cap);
    j["value"] = result.value;
    j["best_u_size"] = best.u_size;
    j["value_by_u_size"] = result.value_by_u_size;
    j["terms"] = {{"t1", result.terms.t1}, {"t2", result.terms.t2}, {"t3", result.terms.t3}, {"t4", result.terms.t4}};
    ordered_json dist = ordered_json::array();
    for (int u = 0; u < best.u_size; ++u) {
      dist.push_back({{"p_u", best.p_u[static_cast<std::size_t>(u)]},
                      {"p_x1_given_u", row(best.p_x1_given_u, u, spec.x1_size)},
                      {"p_x2_given_u", row(best.p_x2_given_u, u, spec.x2_size)}});
    }
    j["distribution"] = dist;
    j["search"] = {{"restarts", options.search.restarts},
                   {"iterations", options.search.iterations},
                   {"seed", options.search.seed}};
    return {dump(j), true};
  }

  auto join = [](const std::vector<double>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? " " : "") + format_number(v[i]);
    return s;
  };

  std::string s;
  s += fmt::format("instance    {}\n", options.source);
  if (det_cap) s += fmt::format("det capacity {}\n", to_string(*det_cap));
  s += fmt::format("value       {} (lower estimate of the max-min)\n", format_number(result.value));
  s += fmt::format("best |U|    {}\n", best.u_size);
  s += fmt::format("by |U|      {}\n", join(result.value_by_u_size));
  s += fmt::format("terms       t1={} t2={} t3={} t4={}\n", format_number(result.terms.t1),
                   format_number(result.terms.t2), format_number(result.terms.t3), format_number(result.terms.t4));
  for (int u = 0; u < best.u_size; ++u) {
    s += fmt::format("  u={} p={}  p(x1|u)=[{}]  p(x2|u)=[{}]\n", u,
                     format_number(best.p_u[static_cast<std::size_t>(u)]), join(row(best.p_x1_given_u, u, spec.x1_size)),
                     join(row(best.p_x2_given_u, u, spec.x2_size)));
  }
  s += fmt::format("search      restarts {}, iterations {}, seed {}\n", options.search.restarts,
                   options.search.iterations, options.search.seed);
  return {s, true};
}

}  // namespace fbic::tools
