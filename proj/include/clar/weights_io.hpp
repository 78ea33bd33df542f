#pragma once

#include <string>

#include "clar/label.hpp"

namespace clar {

// Weight-matrix text format: one line per label,
//   language<TAB>name<TAB>v1<TAB>...<TAB>vd
// with a consistent dimension d across lines. Values print at 17
// significant digits, so load(save(m)) == m exactly.
std::string save_weight_matrix(const LabeledMatrix& m);
LabeledMatrix load_weight_matrix(const std::string& text);

LabeledMatrix load_weight_matrix_file(const std::string& path);
void save_weight_matrix_file(const std::string& path, const LabeledMatrix& m);

}  // namespace clar
