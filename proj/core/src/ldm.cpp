#include "fbic/ldm.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <string>

#include <boost/dynamic_bitset.hpp>

namespace fbic::ldm {

namespace {

// A GF(2) linear form over the message bits of both users: bit i < L is w1[i],
// bit L + j is w2[j]. Running the encoders on forms instead of bits yields the
// receivers' observation matrices.
using Form = boost::dynamic_bitset<>;

inline std::uint8_t add(std::uint8_t a, std::uint8_t b) { return static_cast<std::uint8_t>(a ^ b); }
inline Form add(const Form& a, const Form& b) { return a ^ b; }

template <class Level>
using Word = std::vector<Level>;

// Length-q word whose bottom `keep` levels carry the top `keep` levels of src.
template <class Level>
Word<Level> place_low(const Word<Level>& src, int keep, int q, const Level& zero) {
  Word<Level> out(static_cast<std::size_t>(q), zero);
  for (int i = 0; i < keep; ++i) out[static_cast<std::size_t>(q - keep + i)] = src[static_cast<std::size_t>(i)];
  return out;
}

template <class Level>
Word<Level> xor_words(const Word<Level>& a, const Word<Level>& b) {
  Word<Level> out(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) out[i] = add(a[i], b[i]);
  return out;
}

template <class Level>
Word<Level> top_levels(const Word<Level>& x, int m) {
  return Word<Level>(x.begin(), x.begin() + m);
}

template <class Level>
struct Slot {
  Word<Level> x1, x2, v1, v2, y1, y2;
};

template <class Level>
Slot<Level> transmit(const DetParams& p, Word<Level> x1, Word<Level> x2, const Level& zero) {
  Slot<Level> s;
  s.v1 = top_levels(x1, p.m());
  s.v2 = top_levels(x2, p.m());
  s.y1 = xor_words(place_low(x1, p.n(), p.q(), zero), place_low(s.v2, p.m(), p.q(), zero));
  s.y2 = xor_words(place_low(x2, p.n(), p.q(), zero), place_low(s.v1, p.m(), p.q(), zero));
  s.x1 = std::move(x1);
  s.x2 = std::move(x2);
  return s;
}

// Stage 1 puts the first q message bits on the wire: the whole m-bit common
// word when m >= n, common (top m) plus private (bottom n - m) otherwise.
template <class Level>
Word<Level> stage1_word(const DetParams& p, const Word<Level>& w) {
  return Word<Level>(w.begin(), w.begin() + p.q());
}

// Stage 2 relays the other user's common word on the top m levels; the weak
// regime adds the fresh private bits w[n, 2n - m) on the bottom n - m levels.
template <class Level>
Word<Level> stage2_word(const DetParams& p, const Word<Level>& w, const Word<Level>& v_other, bool silent,
                        const Level& zero) {
  Word<Level> x(static_cast<std::size_t>(p.q()), zero);
  if (silent) return x;
  std::copy(v_other.begin(), v_other.end(), x.begin());
  if (p.m() < p.n()) {
    const int fresh = p.n() - p.m();
    for (int i = 0; i < fresh; ++i) {
      x[static_cast<std::size_t>(p.m() + i)] = w[static_cast<std::size_t>(p.n() + i)];
    }
  }
  return x;
}

// Feedback decoding at a transmitter: strip its own direct contribution from
// the received word; what remains is the other user's interference image.
template <class Level>
Word<Level> image_from_feedback(const DetParams& p, const Word<Level>& y, const Word<Level>& own_x,
                                const Level& zero) {
  const Word<Level> residue = xor_words(y, place_low(own_x, p.n(), p.q(), zero));
  return Word<Level>(residue.end() - p.m(), residue.end());
}

bool tx2_silent_in_stage2(const DetParams& p) { return p.n() == p.m(); }

template <class Level>
std::array<Slot<Level>, 2> run_block(const DetParams& p, const Word<Level>& w1, const Word<Level>& w2,
                                     const Level& zero) {
  Slot<Level> first = transmit(p, stage1_word(p, w1), stage1_word(p, w2), zero);
  const Word<Level> v2_at_tx1 = image_from_feedback(p, first.y1, first.x1, zero);
  const Word<Level> v1_at_tx2 = image_from_feedback(p, first.y2, first.x2, zero);
  Slot<Level> second = transmit(p, stage2_word(p, w1, v2_at_tx1, false, zero),
                                stage2_word(p, w2, v1_at_tx2, tx2_silent_in_stage2(p), zero), zero);
  return {std::move(first), std::move(second)};
}

// Linear decoder for one receiver: for each wanted message bit, the set of
// observed output levels whose XOR equals that bit.
class LinearDecoder {
 public:
  LinearDecoder(const std::vector<Form>& observations, std::size_t first_target, std::size_t targets) {
    struct Row {
      Form form;
      Form taps;
      std::size_t pivot;
    };
    std::vector<Row> basis;
    const std::size_t obs = observations.size();
    for (std::size_t j = 0; j < obs; ++j) {
      Form form = observations[j];
      Form taps(obs);
      taps.set(j);
      for (const Row& r : basis) {
        if (form.test(r.pivot)) {
          form ^= r.form;
          taps ^= r.taps;
        }
      }
      if (form.none()) continue;
      basis.push_back({std::move(form), std::move(taps), 0});
      basis.back().pivot = basis.back().form.find_first();
    }

    const std::size_t width = observations.empty() ? 0 : observations.front().size();
    taps_.reserve(targets);
    for (std::size_t t = 0; t < targets; ++t) {
      Form want(width);
      want.set(first_target + t);
      Form taps(obs);
      for (const Row& r : basis) {
        if (want.test(r.pivot)) {
          want ^= r.form;
          taps ^= r.taps;
        }
      }
      if (want.any()) {
        throw std::logic_error("two-stage protocol leaves message bit " + std::to_string(t) +
                               " undetermined at the receiver");
      }
      std::vector<std::size_t> idx;
      for (auto k = taps.find_first(); k != Form::npos; k = taps.find_next(k)) idx.push_back(k);
      taps_.push_back(std::move(idx));
    }
  }

  BitVec decode(const BitVec& observed) const {
    BitVec out;
    out.reserve(taps_.size());
    for (const auto& idx : taps_) {
      std::uint8_t bit = 0;
      for (std::size_t k : idx) bit ^= observed[k];
      out.push_back(bit);
    }
    return out;
  }

 private:
  std::vector<std::vector<std::size_t>> taps_;
};

std::array<LinearDecoder, 2> build_decoders(const DetParams& p) {
  const auto len = static_cast<std::size_t>(message_length(p));
  const Form zero(2 * len);
  Word<Form> w1(len, zero);
  Word<Form> w2(len, zero);
  for (std::size_t i = 0; i < len; ++i) {
    w1[i].set(i);
    w2[i].set(len + i);
  }
  const auto slots = run_block(p, w1, w2, zero);
  std::vector<Form> obs1;
  std::vector<Form> obs2;
  for (const auto& s : slots) {
    obs1.insert(obs1.end(), s.y1.begin(), s.y1.end());
    obs2.insert(obs2.end(), s.y2.begin(), s.y2.end());
  }
  return {LinearDecoder(obs1, 0, len), LinearDecoder(obs2, len, len)};
}

void check_word(const BitVec& x, const DetParams& p, const char* name) {
  if (x.size() != static_cast<std::size_t>(p.q())) {
    throw InputError(std::string(name) + " has " + std::to_string(x.size()) + " levels, expected q = " +
                     std::to_string(p.q()));
  }
}

}  // namespace

BitVec interference_image(const BitVec& x, const DetParams& p) {
  check_word(x, p, "x");
  return top_levels(x, p.m());
}

Outputs transfer(const BitVec& x1, const BitVec& x2, const DetParams& p) {
  check_word(x1, p, "x1");
  check_word(x2, p, "x2");
  auto s = transmit<std::uint8_t>(p, x1, x2, 0);
  return {std::move(s.y1), std::move(s.y2)};
}

Rational capacity(const DetParams& p) {
  const int excess = p.n() > p.m() ? p.n() - p.m() : 0;
  return Rational(p.q() + excess, 2);
}

int message_length(const DetParams& p) {
  return classify(p) == Regime::Strong ? p.m() : 2 * p.n() - p.m();
}

ProtocolRun run_two_stage_protocol(const DetParams& p, const BitVec& w1, const BitVec& w2) {
  const auto len = static_cast<std::size_t>(message_length(p));
  if (w1.size() != len || w2.size() != len) {
    throw InputError("messages must carry " + std::to_string(len) + " bits each for (n=" +
                     std::to_string(p.n()) + ", m=" + std::to_string(p.m()) + "), got " +
                     std::to_string(w1.size()) + " and " + std::to_string(w2.size()));
  }
  const auto slots = run_block<std::uint8_t>(p, w1, w2, 0);

  ProtocolRun run;
  BitVec obs1;
  BitVec obs2;
  for (int stage = 0; stage < 2; ++stage) {
    const auto& s = slots[static_cast<std::size_t>(stage)];
    run.trace.push_back({stage + 1, s.x1, s.x2, s.v1, s.v2, s.y1, s.y2});
    obs1.insert(obs1.end(), s.y1.begin(), s.y1.end());
    obs2.insert(obs2.end(), s.y2.begin(), s.y2.end());
  }
  const auto decoders = build_decoders(p);
  run.decoded1 = decoders[0].decode(obs1);
  run.decoded2 = decoders[1].decode(obs2);
  run.rate = Rational(static_cast<std::int64_t>(len), 2);
  return run;
}

namespace {

std::uint64_t pack(std::uint64_t acc, const BitVec& bits) {
  for (std::uint8_t b : bits) acc = (acc << 1) | b;
  return acc;
}

BitVec unpack(std::uint64_t value, std::size_t width) {
  BitVec out(width);
  for (std::size_t i = 0; i < width; ++i) out[width - 1 - i] = static_cast<std::uint8_t>((value >> i) & 1U);
  return out;
}

// Per super-block outcome for one (w1, w2) block pair.
struct BlockOutcome {
  std::uint64_t v1 = 0;  // both slots' V1, packed
  std::uint64_t y2 = 0;  // both slots' Y2, packed
  bool reconstruction_ok = true;
};

double sum_c_log_c(const std::vector<std::uint32_t>& counts) {
  double acc = 0.0;
  for (std::uint32_t c : counts) {
    if (c > 1) acc += static_cast<double>(c) * std::log2(static_cast<double>(c));
  }
  return acc;
}

std::vector<std::uint32_t> profile(std::vector<std::uint32_t> counts) {
  std::erase(counts, 0U);
  std::sort(counts.begin(), counts.end());
  return counts;
}

}  // namespace

EntropyReport verify_entropy_identities(const DetParams& p, int blocks) {
  if (p.n() > kMaxEntropyLevels || p.m() > kMaxEntropyLevels || blocks < 1 || blocks > kMaxEntropyBlocks) {
    throw DomainError("entropy enumeration is limited to n, m <= " + std::to_string(kMaxEntropyLevels) +
                      " and 1 <= blocks <= " + std::to_string(kMaxEntropyBlocks) + " (got n=" +
                      std::to_string(p.n()) + ", m=" + std::to_string(p.m()) +
                      ", blocks=" + std::to_string(blocks) + ")");
  }
  const auto len = static_cast<std::size_t>(message_length(p));
  const std::uint64_t per_block = std::uint64_t{1} << len;
  const unsigned v1_bits = 2U * static_cast<unsigned>(p.m());
  const unsigned y2_bits = 2U * static_cast<unsigned>(p.q());

  std::vector<BlockOutcome> table(per_block * per_block);
  for (std::uint64_t a = 0; a < per_block; ++a) {
    for (std::uint64_t b = 0; b < per_block; ++b) {
      const BitVec w1 = unpack(a, len);
      const BitVec w2 = unpack(b, len);
      const auto slots = run_block<std::uint8_t>(p, w1, w2, 0);
      BlockOutcome& out = table[a * per_block + b];
      out.v1 = pack(pack(0, slots[0].v1), slots[1].v1);
      out.y2 = pack(pack(0, slots[0].y2), slots[1].y2);
      // Re-derive each transmitter's words from its own message and the
      // interference image it saw in stage 1.
      const BitVec x1_again = stage2_word<std::uint8_t>(p, w1, slots[0].v2, false, 0);
      const BitVec x2_again = stage2_word<std::uint8_t>(p, w2, slots[0].v1, tx2_silent_in_stage2(p), 0);
      out.reconstruction_ok = stage1_word(p, w1) == slots[0].x1 && stage1_word(p, w2) == slots[0].x2 &&
                              x1_again == slots[1].x1 && x2_again == slots[1].x2;
    }
  }

  const std::uint64_t messages = std::uint64_t{1} << (len * static_cast<std::size_t>(blocks));
  const std::uint64_t block_mask = per_block - 1;
  EntropyReport report;
  report.blocks = blocks;
  report.message_pairs = messages * messages;
  report.exactly_equal = true;
  report.encoder_reconstruction_holds = true;
  for (const BlockOutcome& o : table) report.encoder_reconstruction_holds &= o.reconstruction_ok;

  std::vector<std::uint32_t> v1_counts(std::size_t{1} << (v1_bits * static_cast<unsigned>(blocks)));
  std::vector<std::uint32_t> y2_counts(std::size_t{1} << (y2_bits * static_cast<unsigned>(blocks)));
  double v1_sum = 0.0;
  double y2_sum = 0.0;
  for (std::uint64_t w2 = 0; w2 < messages; ++w2) {
    std::fill(v1_counts.begin(), v1_counts.end(), 0U);
    std::fill(y2_counts.begin(), y2_counts.end(), 0U);
    for (std::uint64_t w1 = 0; w1 < messages; ++w1) {
      std::uint64_t v1_key = 0;
      std::uint64_t y2_key = 0;
      for (int k = blocks - 1; k >= 0; --k) {
        const unsigned shift = static_cast<unsigned>(k) * static_cast<unsigned>(len);
        const BlockOutcome& o = table[((w1 >> shift) & block_mask) * per_block + ((w2 >> shift) & block_mask)];
        v1_key = (v1_key << v1_bits) | o.v1;
        y2_key = (y2_key << y2_bits) | o.y2;
      }
      ++v1_counts[v1_key];
      ++y2_counts[y2_key];
    }
    v1_sum += sum_c_log_c(v1_counts);
    y2_sum += sum_c_log_c(y2_counts);
    report.exactly_equal &= profile(v1_counts) == profile(y2_counts);
  }
  // H(X | W2) = log2 |W1| - E_w2[ sum_c c log2 c ] / |W1|.
  const double log_messages = static_cast<double>(len) * blocks;
  const auto total = static_cast<double>(messages) * static_cast<double>(messages);
  report.h_v1_given_w2 = log_messages - v1_sum / total;
  report.h_y2_given_w2 = log_messages - y2_sum / total;
  return report;
}

}  // namespace fbic::ldm
