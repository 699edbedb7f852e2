#include "fbic/alamouti.hpp"

#include <algorithm>
#include <array>
#include <atomic>
#include <cmath>
#include <random>
#include <thread>
#include <vector>

namespace fbic::alamouti {

ComplexGains ComplexGains::from(const ChannelParams& params, double phase_d, double phase_c) {
  return {std::polar(std::sqrt(params.snr()), phase_d), std::polar(std::sqrt(params.inr()), phase_c)};
}

std::string rng_description() {
  return "mt19937_64 per 8192-sample block, block seed = splitmix64(seed, block); "
         "CN(0,1) from std::normal_distribution";
}

namespace {

constexpr std::size_t kBlockSize = 8192;

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t block_seed(std::uint64_t seed, std::uint64_t block) {
  return splitmix64(splitmix64(seed) ^ splitmix64(block + 0x632be59bd9b4e019ULL));
}

struct KahanSum {
  double sum = 0.0;
  double carry = 0.0;

  void add(double x) {
    const double y = x - carry;
    const double t = sum + y;
    carry = (t - sum) - y;
    sum = t;
  }
};

// Sums needed for the ratio estimator mean(s)/mean(r) and its standard error.
struct RatioAccumulator {
  KahanSum s, r, ss, rr, sr;
  std::size_t n = 0;

  void add(double signal, double residual) {
    s.add(signal);
    r.add(residual);
    ss.add(signal * signal);
    rr.add(residual * residual);
    sr.add(signal * residual);
    ++n;
  }

  void merge(const RatioAccumulator& o) {
    s.add(o.s.sum);
    r.add(o.r.sum);
    ss.add(o.ss.sum);
    rr.add(o.rr.sum);
    sr.add(o.sr.sum);
    n += o.n;
  }

  SinrEstimate estimate() const {
    const auto count = static_cast<double>(n);
    const double ms = s.sum / count;
    const double mr = r.sum / count;
    if (mr <= 0.0) return {0.0, 0.0};
    const double ratio = ms / mr;
    const double var_s = ss.sum / count - ms * ms;
    const double var_r = rr.sum / count - mr * mr;
    const double cov = sr.sum / count - ms * mr;
    const double var_ratio = (var_s - 2.0 * ratio * cov + ratio * ratio * var_r) / (count * mr * mr);
    return {ratio, std::sqrt(std::max(var_ratio, 0.0))};
  }
};

class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : gen_(seed), normal_(0.0, std::sqrt(0.5)) {}

  /// Circularly-symmetric complex Gaussian with E|x|^2 = power.
  cplx draw(double power = 1.0) {
    const double scale = std::sqrt(power);
    const double re = normal_(gen_);
    const double im = normal_(gen_);
    return {scale * re, scale * im};
  }

 private:
  std::mt19937_64 gen_;
  std::normal_distribution<double> normal_;
};

// Splits cfg.samples into fixed blocks, runs `per_sample` on each with its own
// substream, and merges block results in block order.
template <std::size_t K, class PerSample>
std::array<RatioAccumulator, K> run_blocks(const McConfig& cfg, PerSample&& per_sample) {
  const std::size_t blocks = (cfg.samples + kBlockSize - 1) / kBlockSize;
  std::vector<std::array<RatioAccumulator, K>> partial(blocks);

  auto work = [&](std::size_t b) {
    Sampler sampler(block_seed(cfg.seed, b));
    const std::size_t begin = b * kBlockSize;
    const std::size_t end = std::min(cfg.samples, begin + kBlockSize);
    for (std::size_t i = begin; i < end; ++i) per_sample(sampler, partial[b]);
  };

  unsigned threads = cfg.threads != 0 ? cfg.threads : std::max(1U, std::thread::hardware_concurrency());
  threads = static_cast<unsigned>(std::min<std::size_t>(threads, blocks));
  if (threads <= 1) {
    for (std::size_t b = 0; b < blocks; ++b) work(b);
  } else {
    std::atomic<std::size_t> next{0};
    std::vector<std::jthread> pool;
    for (unsigned t = 0; t < threads; ++t) {
      pool.emplace_back([&] {
        for (std::size_t b = next++; b < blocks; b = next++) work(b);
      });
    }
  }

  std::array<RatioAccumulator, K> total{};
  for (const auto& block : partial) {
    for (std::size_t k = 0; k < K; ++k) total[k].merge(block[k]);
  }
  return total;
}

void check_samples(const McConfig& cfg) {
  if (cfg.samples < kMinSamples) {
    throw InputError("Monte-Carlo estimates need at least " + std::to_string(kMinSamples) + " samples, got " +
                     std::to_string(cfg.samples));
  }
}

}  // namespace

double StrongEstimates::reconstructed_rate() const {
  return std::min(0.5 * log2_1p(effective_snr.value), 0.5 * log2_1p(tx_decode_snr.value));
}

double WeakEstimates::reconstructed_rate() const {
  return log2_1p(private_stream.value) + 0.5 * log2_1p(std::min(common_tx_decode.value, common_rx.value));
}

StrongEstimates simulate_strong_combining(const McConfig& cfg) {
  if (classify(cfg.params) != Regime::Strong) {
    throw DomainError("strong-regime combining needs INR >= SNR");
  }
  check_samples(cfg);
  const ComplexGains g = ComplexGains::from(cfg.params, cfg.phase_d, cfg.phase_c);
  const double gain = std::norm(g.gd) + std::norm(g.gc);

  const auto acc = run_blocks<2>(cfg, [&](Sampler& rng, std::array<RatioAccumulator, 2>& out) {
    const cplx x1 = rng.draw();
    const cplx x2 = rng.draw();
    const cplx z_first = rng.draw();
    const cplx z_second = rng.draw();

    const cplx y_first = g.gd * x1 + g.gc * x2 + z_first;
    // Transmitter 1 strips its own codeword from the fed-back output.
    const cplx at_tx = y_first - g.gd * x1;
    const cplx tx_signal = g.gc * x2;
    out[1].add(std::norm(tx_signal), std::norm(at_tx - tx_signal));

    const cplx y_second = g.gd * std::conj(x2) - g.gc * std::conj(x1) + z_second;
    const cplx combined = std::conj(g.gd) * y_first - g.gc * std::conj(y_second);
    const cplx signal = gain * x1;
    out[0].add(std::norm(signal), std::norm(combined - signal));
  });
  return {acc[0].estimate(), acc[1].estimate()};
}

WeakEstimates simulate_weak_combining(const McConfig& cfg) {
  if (classify(cfg.params) != Regime::Weak) {
    throw DomainError("weak-regime combining needs INR < SNR");
  }
  check_samples(cfg);
  const ComplexGains g = ComplexGains::from(cfg.params, cfg.phase_d, cfg.phase_c);
  const double gain = std::norm(g.gd) + std::norm(g.gc);
  const double inr = cfg.params.inr();
  const double lp = inr > 1.0 ? 1.0 / inr : 1.0;
  const double lc = 1.0 - lp;

  // 0: common at receiver, 1: common at transmitter, 2: private.
  const auto acc = run_blocks<3>(cfg, [&](Sampler& rng, std::array<RatioAccumulator, 3>& out) {
    const cplx x1c = rng.draw(lc);
    const cplx x2c = rng.draw(lc);
    const cplx x1p_first = rng.draw(lp);
    const cplx x2p_first = rng.draw(lp);
    const cplx x1p_second = rng.draw(lp);
    const cplx x2p_second = rng.draw(lp);
    const cplx z_first = rng.draw();
    const cplx z_second = rng.draw();

    const cplx y_first = g.gd * (x1c + x1p_first) + g.gc * (x2c + x2p_first) + z_first;

    const cplx at_tx = y_first - g.gd * (x1c + x1p_first);
    const cplx tx_signal = g.gc * x2c;
    out[1].add(std::norm(tx_signal), std::norm(at_tx - tx_signal));

    const cplx y_second = g.gd * (std::conj(x2c) + x1p_second) + g.gc * (-std::conj(x1c) + x2p_second) + z_second;
    const cplx combined = std::conj(g.gd) * y_first - g.gc * std::conj(y_second);
    const cplx common_signal = gain * x1c;
    out[0].add(std::norm(common_signal), std::norm(combined - common_signal));

    // Private symbols of both stages once both common codewords are removed.
    const cplx private_first = y_first - g.gd * x1c - g.gc * x2c;
    const cplx private_second = y_second - g.gd * std::conj(x2c) + g.gc * std::conj(x1c);
    const cplx sig_first = g.gd * x1p_first;
    const cplx sig_second = g.gd * x1p_second;
    out[2].add(std::norm(sig_first), std::norm(private_first - sig_first));
    out[2].add(std::norm(sig_second), std::norm(private_second - sig_second));
  });

  WeakEstimates w;
  w.lambda_p = lp;
  w.common_rx = acc[0].estimate();
  w.common_tx_decode = acc[1].estimate();
  w.private_stream = acc[2].estimate();
  return w;
}

double cross_term_leakage(const ComplexGains& gains, std::size_t samples, std::uint64_t seed) {
  Sampler rng(seed);
  const double scale = std::abs(gains.gd) * std::abs(gains.gc);
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const cplx x2 = rng.draw();
    const cplx y_first = gains.gc * x2;
    const cplx y_second = gains.gd * std::conj(x2);
    const cplx combined = std::conj(gains.gd) * y_first - gains.gc * std::conj(y_second);
    const double denom = scale * std::abs(x2);
    if (denom > 0.0) worst = std::max(worst, std::abs(combined) / denom);
  }
  return worst;
}

}  // namespace fbic::alamouti
