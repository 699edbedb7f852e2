#pragma once

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "fbic/model.hpp"

// Symmetric feedback capacity of El Gamal-Costa deterministic interference
// channels: V_k = g_k(X_k), Y_1 = f_1(X_1, V_2), Y_2 = f_2(X_2, V_1), with
// v2 -> f1(x1, v2) injective for every x1 (and symmetrically), so that the
// interference image is recoverable from (Y_k, X_k).
namespace fbic::egc {

struct DetChannelSpec {
  int x1_size = 0;
  int x2_size = 0;
  int v1_size = 0;
  int v2_size = 0;
  int y1_size = 0;
  int y2_size = 0;
  std::vector<int> g1;  // [x1] -> v1
  std::vector<int> g2;  // [x2] -> v2
  std::vector<int> f1;  // [x1 * v2_size + v2] -> y1
  std::vector<int> f2;  // [x2 * v1_size + v1] -> y2

  int f1_at(int x1, int v2) const { return f1[static_cast<std::size_t>(x1 * v2_size + v2)]; }
  int f2_at(int x2, int v1) const { return f2[static_cast<std::size_t>(x2 * v1_size + v1)]; }

  /// min(|V1| |V2|, |Y1|, |Y2|).
  int max_auxiliary_size() const;

  /// Throws InputError naming the first malformed table entry or the first
  /// pair of cells that breaks injectivity.
  void validate() const;
};

/// p(u) p(x1|u) p(x2|u), rows stored contiguously per u.
struct CondDistU {
  int u_size = 1;
  std::vector<double> p_u;
  std::vector<double> p_x1_given_u;  // [u * |X1| + x1]
  std::vector<double> p_x2_given_u;  // [u * |X2| + x2]

  /// Throws InputError for negative entries, rows off the simplex by more
  /// than 1e-12, wrong table sizes, or |U| above the cardinality bound.
  void validate(const DetChannelSpec& spec) const;
};

struct EgcObjective {
  double t1 = 0.0;  // I(U;Y1) + H(Y1|V2,U)
  double t2 = 0.0;  // H(Y2|X2,U) + H(Y1|V1,V2,U)
  double t3 = 0.0;  // (H(Y2) + H(Y1|V1,V2,U)) / 2
  double t4 = 0.0;  // I(U;Y1) + H(Y1|V1,U)
  double min = 0.0;
};

EgcObjective egc_objective(const DetChannelSpec& spec, const CondDistU& dist);

/// Entropy report used by the injectivity identity H(Y1|X1) = H(V2), which
/// holds exactly for independent inputs (|U| = 1).
struct ConditionalEntropies {
  double h_y1_given_x1 = 0.0;
  double h_v2 = 0.0;
  double h_y2_given_x2 = 0.0;
  double h_v1 = 0.0;
};

ConditionalEntropies injectivity_entropies(const DetChannelSpec& spec, const CondDistU& dist);

struct SearchConfig {
  int restarts = 50;
  int iterations = 1500;
  /// Local search stops once its step size falls below this.
  double tolerance = 1e-9;
  std::uint64_t seed = 0x9e3779b97f4a7c15ULL;
};

struct SearchResult {
  /// Best objective found: a lower estimate of the max-min.
  double value = 0.0;
  CondDistU best;
  EgcObjective terms;
  /// Best value per |U| = 1 .. max_auxiliary_size().
  std::vector<double> value_by_u_size;
};

inline constexpr int kMaxJointStates = 4096;

/// Random restarts followed by adaptive pattern search on the simplex, for
/// every |U| up to the cardinality bound. Throws DomainError when
/// |U| |X1| |X2| exceeds kMaxJointStates.
SearchResult egc_capacity_search(const DetChannelSpec& spec, const SearchConfig& config);

/// The linear deterministic channel as an El Gamal-Costa instance, inputs
/// encoded as q-bit integers (most significant level first). n, m <= 3.
DetChannelSpec ldm_to_egc(const DetParams& p);

// Plain-text format:
//
//   egc <|X1|> <|X2|> <|V1|> <|V2|> <|Y1|> <|Y2|>
//   g1 <x1> <v1>
//   g2 <x2> <v2>
//   f1 <x1> <v2> <y1>
//   f2 <x2> <v1> <y2>
//
// one line per table entry, '#' starts a comment. Every entry must be given
// exactly once; the channel is validated on load.
DetChannelSpec read_spec(std::istream& in);
void write_spec(std::ostream& out, const DetChannelSpec& spec);

}  // namespace fbic::egc
