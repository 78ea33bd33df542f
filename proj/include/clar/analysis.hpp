#pragma once

#include <string>
#include <vector>

#include "clar/label.hpp"

namespace clar {

struct ProjectionResult {
  std::vector<LabelId> labels;
  Mat coordinates;                      // one k-dim point per label
  std::vector<double> singular_values;  // top-k, descending
};

struct ManifoldReport {
  Mat dist_source;  // K x K Euclidean distances among source rows
  Mat dist_target;
  double pearson = 0.0;            // over strict upper triangles
  double frobenius_sq_diff = 0.0;  // sum of squared entry differences
};

// Mean-centers the rows and projects onto the top-k right singular vectors,
// computed by orthogonal iteration on the d x d Gram matrix (tolerance
// 1e-10, at most 10000 sweeps). Sign convention: in each singular vector the
// first component of largest magnitude is positive.
ProjectionResult svd_project(const LabeledMatrix& m, std::size_t k = 2);

// Entry (i, j) = ||row_i - row_j||_2.
Mat pairwise_distances(const Mat& rows);

// Distance-structure comparison of two paired row sets (K >= 3).
ManifoldReport manifold_report(const Mat& u_p, const Mat& v_p);

// TSV emission used by the CLI: `language<TAB>label<TAB>x<TAB>y...` rows.
std::string projection_to_tsv(const ProjectionResult& p);

}  // namespace clar
