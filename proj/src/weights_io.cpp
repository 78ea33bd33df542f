#include "clar/weights_io.hpp"

#include <set>
#include <sstream>

#include "clar/io_util.hpp"

namespace clar {

std::string save_weight_matrix(const LabeledMatrix& m) {
  m.validate();
  std::string out;
  for (std::size_t i = 0; i < m.size(); ++i) {
    const auto& id = m.labels[i];
    if (id.language.find('\t') != std::string::npos ||
        id.name.find('\t') != std::string::npos ||
        id.language.find('\n') != std::string::npos ||
        id.name.find('\n') != std::string::npos)
      fail(ErrorCategory::ParseFormat,
           "label contains tab/newline: " + to_string(id));
    out += id.language;
    out += '\t';
    out += id.name;
    for (double v : m.rows.row(i)) {
      out += '\t';
      out += format_double(v);
    }
    out += '\n';
  }
  return out;
}

LabeledMatrix load_weight_matrix(const std::string& text) {
  std::vector<LabelId> labels;
  std::vector<std::vector<double>> rows;
  std::set<LabelId> seen;
  std::istringstream in(text);
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    std::vector<std::string> cols;
    std::size_t start = 0;
    while (true) {
      std::size_t pos = line.find('\t', start);
      if (pos == std::string::npos) {
        cols.push_back(line.substr(start));
        break;
      }
      cols.push_back(line.substr(start, pos - start));
      start = pos + 1;
    }
    if (cols.size() < 3)
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) +
               ": expected language<TAB>name<TAB>values");
    if (cols[1].empty())
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) + ": empty label name");
    LabelId id{cols[0], cols[1]};
    if (!seen.insert(id).second)
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) + ": duplicate label " +
               to_string(id));
    std::vector<double> row;
    row.reserve(cols.size() - 2);
    for (std::size_t i = 2; i < cols.size(); ++i)
      row.push_back(parse_double(cols[i], line_no));
    if (!rows.empty() && row.size() != rows.front().size())
      fail(ErrorCategory::ParseFormat,
           "line " + std::to_string(line_no) + ": inconsistent dimension " +
               std::to_string(row.size()) + " (expected " +
               std::to_string(rows.front().size()) + ")");
    labels.push_back(std::move(id));
    rows.push_back(std::move(row));
  }
  LabeledMatrix m;
  m.labels = std::move(labels);
  m.rows = Mat(rows.size(), rows.empty() ? 0 : rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      m.rows.at(i, j) = rows[i][j];
  return m;
}

LabeledMatrix load_weight_matrix_file(const std::string& path) {
  return load_weight_matrix(read_file(path));
}

void save_weight_matrix_file(const std::string& path, const LabeledMatrix& m) {
  write_file(path, save_weight_matrix(m));
}

}  // namespace clar
