#pragma once

#include <optional>
#include <string>
#include <vector>

#include "clar/label.hpp"

namespace clar {

// One predicate frame: tokens, the marked predicate position, and one
// argument label (or none) per token. Multi-predicate input sentences are
// unrolled into one Sentence per predicate.
struct Sentence {
  std::vector<std::string> tokens;
  std::size_t predicate_index = 0;
  std::vector<std::optional<LabelId>> labels;  // one per token
};

struct Corpus {
  std::string language;
  std::vector<Sentence> sentences;
};

// Parses CoNLL-2009-style column text:
//   column 1   running token index (1-based, contiguous per sentence)
//   column 2   surface form
//   column 13  "Y" iff the token fills a predicate
//   column 14  predicate sense, or "_"
//   column 15+ one argument column per predicate, in sentence order
// Token lines carry >= 14 tab-separated columns; blank lines separate
// sentences. Yields one Sentence per (input sentence x predicate).
std::vector<Sentence> parse_conll(const std::string& text,
                                  const std::string& language);

Corpus load_conll_file(const std::string& path, const std::string& language);

// Writes single-predicate frames back out in the same column layout.
std::string to_conll(const std::vector<Sentence>& sentences);
void save_conll_file(const std::string& path,
                     const std::vector<Sentence>& sentences);

// Counts every non-null token label; total = number of occurrences counted.
FrequencyTable count_label_frequencies(const Corpus& corpus);

// Labels whose share of the total strictly exceeds `threshold`.
// Errors on an empty table.
std::vector<LabelId> filter_frequent_labels(const FrequencyTable& freqs,
                                            double threshold = 0.01);

// Frequency table text format: `language<TAB>name<TAB>count` lines, count
// descending (ties by language then name), then `TOTAL<TAB><n>`.
std::string frequency_table_to_text(const FrequencyTable& t);
FrequencyTable frequency_table_from_text(const std::string& text);

}  // namespace clar
