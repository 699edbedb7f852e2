#pragma once

#include <cstdint>
#include <vector>

#include "fbic/model.hpp"

// Linear deterministic interference channel with feedback.
//
// A transmitted word has q = max(n, m) bit levels, most significant first.
// Receiver k sees its own word shifted down by q - n levels and the other
// word's top m levels (the interference image v) shifted down by q - m,
// combined level-wise by XOR.
namespace fbic::ldm {

using BitVec = std::vector<std::uint8_t>;

struct Outputs {
  BitVec y1;
  BitVec y2;
};

/// Top-m levels of a transmitted word: what the other receiver gets to see.
BitVec interference_image(const BitVec& x, const DetParams& p);

/// Throws InputError unless |x1| = |x2| = q.
Outputs transfer(const BitVec& x1, const BitVec& x2, const DetParams& p);

/// (max(n, m) + (n - m)^+) / 2, exact.
Rational capacity(const DetParams& p);

/// Message bits per user carried by one two-slot super-block:
/// m in the strong regime, n + (n - m) in the weak regime.
int message_length(const DetParams& p);

struct SlotRecord {
  int stage = 1;
  BitVec x1, x2;
  BitVec v1, v2;
  BitVec y1, y2;
};

using DetTrace = std::vector<SlotRecord>;

struct ProtocolRun {
  BitVec decoded1;
  BitVec decoded2;
  DetTrace trace;
  /// Decoded bits per user per slot.
  Rational rate;
};

/// One super-block of the two-stage feedback scheme.
///
/// Stage 1: each transmitter sends its common word on the top m levels and,
/// in the weak regime, n - m private bits underneath. Stage 2: each
/// transmitter recovers the other user's common word from its feedback and
/// re-sends it on the top levels, with n - m fresh private bits at the bottom
/// in the weak regime. When m = n the swapped words would cancel, so only
/// transmitter 1 relays and transmitter 2 stays silent. Receivers decode
/// after stage 2.
///
/// Throws InputError when |w1| or |w2| differs from message_length(p).
ProtocolRun run_two_stage_protocol(const DetParams& p, const BitVec& w1, const BitVec& w2);

struct EntropyReport {
  int blocks = 0;
  std::uint64_t message_pairs = 0;
  /// H(V1^N | W2) and H(Y2^N | W2) in bits.
  double h_v1_given_w2 = 0.0;
  double h_y2_given_w2 = 0.0;
  /// The conditional class-size profiles of V1^N and Y2^N coincide for every
  /// w2, which makes the two entropies equal exactly.
  bool exactly_equal = false;
  /// Transmitter 1's stage words, re-derived from (W1, V2 history) alone,
  /// match the feedback encoder for every message pair (and symmetrically
  /// for transmitter 2).
  bool encoder_reconstruction_holds = false;
};

inline constexpr int kMaxEntropyLevels = 2;
inline constexpr int kMaxEntropyBlocks = 3;

/// Enumerates every equiprobable message pair over `blocks` super-blocks.
/// Throws DomainError when n or m exceeds kMaxEntropyLevels or blocks is
/// outside [1, kMaxEntropyBlocks].
EntropyReport verify_entropy_identities(const DetParams& p, int blocks);

}  // namespace fbic::ldm
