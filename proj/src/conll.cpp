#include "clar/corpus.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "clar/io_util.hpp"

namespace clar {

namespace {

std::vector<std::string> split_tabs(const std::string& line) {
  std::vector<std::string> out;
  std::size_t start = 0;
  while (true) {
    std::size_t pos = line.find('\t', start);
    if (pos == std::string::npos) {
      out.push_back(line.substr(start));
      return out;
    }
    out.push_back(line.substr(start, pos - start));
    start = pos + 1;
  }
}

struct RawSentence {
  std::size_t first_line = 0;
  std::vector<std::vector<std::string>> rows;
};

void flush_sentence(const RawSentence& raw, const std::string& language,
                    std::vector<Sentence>& out) {
  const std::size_t n = raw.rows.size();
  const std::size_t ncols = raw.rows.front().size();
  for (std::size_t i = 0; i < n; ++i) {
    if (raw.rows[i].size() != ncols)
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(raw.first_line + i) +
               ": inconsistent column count within sentence");
    unsigned long idx = 0;
    try {
      idx = std::stoul(raw.rows[i][0]);
    } catch (const std::exception&) {
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(raw.first_line + i) +
               ": token index is not a number");
    }
    if (idx != i + 1)
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(raw.first_line + i) +
               ": non-contiguous token index");
  }

  std::vector<std::size_t> predicate_positions;
  for (std::size_t i = 0; i < n; ++i)
    if (raw.rows[i][12] == "Y") predicate_positions.push_back(i);

  const std::size_t arg_columns = ncols - 14;
  if (predicate_positions.size() != arg_columns)
    fail(ErrorCategory::ParseFormat,
         "line " + std::to_string(raw.first_line) + ": sentence has " +
             std::to_string(predicate_positions.size()) +
             " predicates but " + std::to_string(arg_columns) +
             " argument columns");

  for (std::size_t p = 0; p < predicate_positions.size(); ++p) {
    Sentence s;
    s.predicate_index = predicate_positions[p];
    s.tokens.reserve(n);
    s.labels.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
      s.tokens.push_back(raw.rows[i][1]);
      const std::string& cell = raw.rows[i][14 + p];
      if (cell == "_")
        s.labels.push_back(std::nullopt);
      else
        s.labels.push_back(LabelId{language, cell});
    }
    out.push_back(std::move(s));
  }
}

}  // namespace

std::vector<Sentence> parse_conll(const std::string& text,
                                  const std::string& language) {
  std::vector<Sentence> out;
  RawSentence raw;
  std::size_t line_no = 0;
  std::istringstream in(text);
  std::string line;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) {
      if (!raw.rows.empty()) {
        flush_sentence(raw, language, out);
        raw = RawSentence{};
      }
      continue;
    }
    auto cols = split_tabs(line);
    if (cols.size() < 14)
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) + ": expected >= 14 columns, got " +
               std::to_string(cols.size()));
    if (raw.rows.empty()) raw.first_line = line_no;
    raw.rows.push_back(std::move(cols));
  }
  if (!raw.rows.empty()) flush_sentence(raw, language, out);
  return out;
}

Corpus load_conll_file(const std::string& path, const std::string& language) {
  Corpus c;
  c.language = language;
  c.sentences = parse_conll(read_file(path), language);
  return c;
}

std::string to_conll(const std::vector<Sentence>& sentences) {
  std::string out;
  for (const auto& s : sentences) {
    for (std::size_t i = 0; i < s.tokens.size(); ++i) {
      out += std::to_string(i + 1);
      out += '\t';
      out += s.tokens[i];
      for (int k = 0; k < 10; ++k) out += "\t_";
      if (i == s.predicate_index) {
        out += "\tY\t";
        out += s.tokens[i];
        out += ".01";
      } else {
        out += "\t_\t_";
      }
      out += '\t';
      out += s.labels[i] ? s.labels[i]->name : std::string("_");
      out += '\n';
    }
    out += '\n';
  }
  return out;
}

void save_conll_file(const std::string& path,
                     const std::vector<Sentence>& sentences) {
  write_file(path, to_conll(sentences));
}

FrequencyTable count_label_frequencies(const Corpus& corpus) {
  FrequencyTable t;
  for (const auto& s : corpus.sentences)
    for (const auto& l : s.labels)
      if (l) t.add(*l);
  return t;
}

std::vector<LabelId> filter_frequent_labels(const FrequencyTable& freqs,
                                            double threshold) {
  if (freqs.total == 0)
    fail(ErrorCategory::ParseFormat,
         "frequency filter: table has no occurrences");
  std::vector<LabelId> out;
  const double cut = threshold * static_cast<double>(freqs.total);
  for (const auto& [id, count] : freqs.counts)
    if (static_cast<double>(count) > cut) out.push_back(id);
  return out;
}

std::string frequency_table_to_text(const FrequencyTable& t) {
  std::vector<std::pair<LabelId, std::uint64_t>> rows(t.counts.begin(),
                                                      t.counts.end());
  std::sort(rows.begin(), rows.end(), [](const auto& a, const auto& b) {
    if (a.second != b.second) return a.second > b.second;
    return a.first < b.first;
  });
  std::string out;
  for (const auto& [id, count] : rows) {
    out += id.language;
    out += '\t';
    out += id.name;
    out += '\t';
    out += std::to_string(count);
    out += '\n';
  }
  out += "TOTAL\t" + std::to_string(t.total) + "\n";
  return out;
}

FrequencyTable frequency_table_from_text(const std::string& text) {
  FrequencyTable t;
  std::uint64_t declared_total = 0;
  bool saw_total = false;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    auto cols = split_tabs(line);
    if (cols[0] == "TOTAL") {
      if (cols.size() != 2)
        fail(ErrorCategory::ParseFormat,
             "line " + std::to_string(line_no) + ": malformed TOTAL line");
      declared_total = std::stoull(cols[1]);
      saw_total = true;
      continue;
    }
    if (cols.size() != 3)
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) +
               ": expected language<TAB>name<TAB>count");
    std::uint64_t count = 0;
    try {
      count = std::stoull(cols[2]);
    } catch (const std::exception&) {
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) + ": count is not a number");
    }
    LabelId id{cols[0], cols[1]};
    if (t.counts.count(id))
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) + ": duplicate label " +
               to_string(id));
    t.add(id, count);
  }
  if (!saw_total)
    fail(ErrorCategory::ParseFormat, "frequency table: missing TOTAL line");
  if (declared_total != t.total)
    fail(ErrorCategory::ParseFormat,
         "frequency table: TOTAL " + std::to_string(declared_total) +
             " does not match sum " + std::to_string(t.total));
  return t;
}

}  // namespace clar
