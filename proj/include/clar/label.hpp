#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "clar/error.hpp"
#include "clar/matrix.hpp"

namespace clar {

// A label namespaced by its language tag, e.g. ("en", "AM-TMP").
// Namespacing keeps the two label spaces of a bilingual run from colliding
// in one table.
struct LabelId {
  std::string language;
  std::string name;

  bool operator==(const LabelId&) const = default;
  auto operator<=>(const LabelId&) const = default;
};

inline std::string to_string(const LabelId& id) {
  return id.language + ":" + id.name;
}

// Occurrence counts of argument labels. Null ("_") argument cells are not
// labels and never enter the table.
struct FrequencyTable {
  std::map<LabelId, std::uint64_t> counts;
  std::uint64_t total = 0;

  void add(const LabelId& id, std::uint64_t n = 1) {
    counts[id] += n;
    total += n;
  }
};

// Per-label weight vectors: one row of dimension d per label, in a fixed
// label order. This is the carrier for softmax-head rows.
struct LabeledMatrix {
  std::vector<LabelId> labels;
  Mat rows;

  std::size_t size() const { return labels.size(); }
  std::size_t dim() const { return rows.cols; }

  // Index of a label, or npos.
  static constexpr std::size_t npos = static_cast<std::size_t>(-1);
  std::size_t find(const LabelId& id) const {
    for (std::size_t i = 0; i < labels.size(); ++i)
      if (labels[i] == id) return i;
    return npos;
  }

  void validate() const {
    if (labels.size() != rows.rows)
      fail(ErrorCategory::ParseFormat,
           "labeled matrix: row count does not match label count");
    for (std::size_t i = 0; i < labels.size(); ++i) {
      if (labels[i].name.empty())
        fail(ErrorCategory::ParseFormat, "labeled matrix: empty label name");
      for (std::size_t j = i + 1; j < labels.size(); ++j)
        if (labels[i] == labels[j])
          fail(ErrorCategory::ParseFormat,
               "labeled matrix: duplicate label " + to_string(labels[i]));
    }
  }
};

}  // namespace clar
