#include "clar/regularizer.hpp"

#include <string>
#include <vector>

#include "clar/label.hpp"
#include "clar/weights_io.hpp"

namespace clar {

namespace {

void check_shapes(const Mat& u_p, const Mat& v_p, const AffineTransform& t) {
  if (!u_p.same_shape(v_p))
    fail(ErrorCategory::Numeric, "clar penalty: U/V shape mismatch");
  if (t.psi.rows != t.psi.cols || t.psi.rows != u_p.cols ||
      t.b.size() != u_p.cols)
    fail(ErrorCategory::Numeric, "clar penalty: transform dimension mismatch");
}

// r_i = u_i - Psi v_i - b
void residual_row(const Mat& u_p, const Mat& v_p, const AffineTransform& t,
                  std::size_t i, std::vector<double>& r) {
  const std::size_t d = u_p.cols;
  r.resize(d);
  matvec(t.psi, v_p.row(i), r);
  auto u = u_p.row(i);
  for (std::size_t c = 0; c < d; ++c) r[c] = u[c] - r[c] - t.b[c];
}

}  // namespace

double clar_penalty(const Mat& u_p, const Mat& v_p, const AffineTransform& t) {
  check_shapes(u_p, v_p, t);
  std::vector<double> r;
  double total = 0.0;
  for (std::size_t i = 0; i < u_p.rows; ++i) {
    residual_row(u_p, v_p, t, i, r);
    for (double x : r) total += x * x;
  }
  return total;
}

PenaltyGradients clar_gradients(const Mat& u_p, const Mat& v_p,
                                const AffineTransform& t) {
  check_shapes(u_p, v_p, t);
  const std::size_t k = u_p.rows, d = u_p.cols;
  PenaltyGradients g;
  g.d_psi = Mat(d, d);
  g.d_b.assign(d, 0.0);
  g.d_u = Mat(k, d);
  g.d_v = Mat(k, d);
  std::vector<double> r, psi_t_r(d);
  for (std::size_t i = 0; i < k; ++i) {
    residual_row(u_p, v_p, t, i, r);
    auto du = g.d_u.row(i);
    for (std::size_t c = 0; c < d; ++c) {
      du[c] = 2.0 * r[c];
      g.d_b[c] -= 2.0 * r[c];
    }
    matvec_transposed(t.psi, r, psi_t_r);
    auto dv = g.d_v.row(i);
    for (std::size_t c = 0; c < d; ++c) dv[c] = -2.0 * psi_t_r[c];
    add_outer(g.d_psi, -2.0, r, v_p.row(i));
  }
  return g;
}

AffineTransform fit_affine_least_squares(const Mat& u_p, const Mat& v_p,
                                         double ridge) {
  if (!u_p.same_shape(v_p) || u_p.rows == 0)
    fail(ErrorCategory::Numeric, "affine fit: bad shapes");
  const std::size_t k = u_p.rows, d = u_p.cols;

  // Augmented design z_i = (v_i, 1); W = [Psi b] minimizes
  // sum ||u_i - W z_i||^2 + ridge ||Psi||_F^2, from the normal equations
  // W (Z^T Z + ridge D) = U^T Z with D = diag(1,...,1,0).
  Mat a(d + 1, d + 1);
  Mat bt(d + 1, d);  // (U^T Z)^T, i.e. right-hand sides as columns
  for (std::size_t i = 0; i < k; ++i) {
    auto v = v_p.row(i);
    auto u = u_p.row(i);
    for (std::size_t p = 0; p < d; ++p) {
      for (std::size_t q = 0; q < d; ++q) a.at(p, q) += v[p] * v[q];
      a.at(p, d) += v[p];
      a.at(d, p) += v[p];
      for (std::size_t q = 0; q < d; ++q) bt.at(p, q) += v[p] * u[q];
    }
    a.at(d, d) += 1.0;
    for (std::size_t q = 0; q < d; ++q) bt.at(d, q) += u[q];
  }
  for (std::size_t p = 0; p < d; ++p) a.at(p, p) += ridge;

  Mat w_t = solve_linear(std::move(a), std::move(bt));  // (d+1) x d

  AffineTransform t;
  t.psi = Mat(d, d);
  t.b.assign(d, 0.0);
  for (std::size_t r = 0; r < d; ++r)
    for (std::size_t c = 0; c < d; ++c) t.psi.at(r, c) = w_t.at(c, r);
  for (std::size_t r = 0; r < d; ++r) t.b[r] = w_t.at(d, r);
  return t;
}

std::string affine_to_text(const AffineTransform& t) {
  LabeledMatrix m;
  const std::size_t d = t.dim();
  m.rows = Mat(d + 1, d);
  for (std::size_t i = 0; i < d; ++i) {
    m.labels.push_back({"transform", "PSI/" + std::to_string(i)});
    auto dst = m.rows.row(i);
    auto src = t.psi.row(i);
    std::copy(src.begin(), src.end(), dst.begin());
  }
  m.labels.push_back({"transform", "B/0"});
  std::copy(t.b.begin(), t.b.end(), m.rows.row(d).begin());
  return save_weight_matrix(m);
}

AffineTransform affine_from_text(const std::string& text) {
  LabeledMatrix m = load_weight_matrix(text);
  if (m.size() < 2 || m.size() != m.dim() + 1)
    fail(ErrorCategory::ParseFormat,
         "affine transform: expected d PSI rows plus one B row");
  const std::size_t d = m.dim();
  AffineTransform t;
  t.psi = Mat(d, d);
  t.b.assign(d, 0.0);
  for (std::size_t i = 0; i < d; ++i) {
    if (m.labels[i].name != "PSI/" + std::to_string(i))
      fail(ErrorCategory::ParseFormat,
           "affine transform: unexpected row label " + m.labels[i].name);
    auto src = m.rows.row(i);
    std::copy(src.begin(), src.end(), t.psi.row(i).begin());
  }
  if (m.labels[d].name != "B/0")
    fail(ErrorCategory::ParseFormat, "affine transform: missing B/0 row");
  auto src = m.rows.row(d);
  std::copy(src.begin(), src.end(), t.b.begin());
  return t;
}

}  // namespace clar
