#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clar/corpus.hpp"
#include "clar/label.hpp"

namespace clar {

// Requested pair count. Unset means the default: ceil(min(k_s, k_t)/2)
// pairs in one-to-one mode, every frequent target label when the source
// capacity exceeds one.
struct Cardinality {
  enum class Kind { Default, All, Exact };
  Kind kind = Kind::Default;
  std::size_t value = 0;  // used when kind == Exact

  static Cardinality all() { return {Kind::All, 0}; }
  static Cardinality exact(std::size_t k) { return {Kind::Exact, k}; }
};

struct MatchConfig {
  double frequency_threshold = 0.01;
  Cardinality cardinality;
  std::size_t source_capacity = 1;  // M: max pairs per source label
};

struct Pair {
  LabelId source;
  LabelId target;
  double sq_distance = 0.0;
};

struct Pairing {
  std::vector<Pair> pairs;
};

struct IndexPair {
  std::size_t source = 0;
  std::size_t target = 0;
  bool operator==(const IndexPair&) const = default;
  auto operator<=>(const IndexPair&) const = default;
};

struct IndexPairing {
  std::vector<IndexPair> pairs;  // sorted by (source, target)
  double total_cost = 0.0;
};

// Squared Euclidean distances between every source row and target row.
// Entry (i, j) = ||U[i] - V[j]||^2.
Mat build_cost_matrix(const LabeledMatrix& u, const LabeledMatrix& v);

// Exact minimum-cost matching of exactly k_prime (source, target) pairs:
// each target used at most once, each source at most capacity times.
// Successive-shortest-path min-cost flow; among equal-cost optima the
// lexicographically smallest pair list by (source, target) is returned.
IndexPairing solve_matching(const Mat& cost, std::size_t k_prime,
                            std::size_t capacity);

// Exhaustive enumeration oracle, guarded to rows*cols <= 36. Same
// tie-breaking rule as solve_matching.
IndexPairing brute_force_matching(const Mat& cost, std::size_t k_prime,
                                  std::size_t capacity);

// Full pipeline: frequency-filter both label sets, build the cost matrix
// over survivors, solve, and map indices back to labels.
Pairing match_labels(const LabeledMatrix& u, const LabeledMatrix& v,
                     const FrequencyTable& freq_s, const FrequencyTable& freq_t,
                     const MatchConfig& cfg);

// Pairing TSV: source_lang, source_label, target_lang, target_label,
// sq_distance; rows ascending by distance (ties by label names).
std::string pairing_to_tsv(const Pairing& p);
Pairing pairing_from_tsv(const std::string& text);

}  // namespace clar
