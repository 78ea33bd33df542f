#include "clar/analysis.hpp"

#include <algorithm>
#include <cmath>

#include "clar/io_util.hpp"
#include "clar/rng.hpp"

namespace clar {

namespace {

// Modified Gram-Schmidt with one re-orthogonalization pass. Columns of q
// are orthonormalized in place.
void orthonormalize_columns(Mat& q) {
  for (std::size_t j = 0; j < q.cols; ++j) {
    for (int pass = 0; pass < 2; ++pass) {
      for (std::size_t p = 0; p < j; ++p) {
        double proj = 0.0;
        for (std::size_t r = 0; r < q.rows; ++r)
          proj += q.at(r, j) * q.at(r, p);
        for (std::size_t r = 0; r < q.rows; ++r)
          q.at(r, j) -= proj * q.at(r, p);
      }
    }
    double n = 0.0;
    for (std::size_t r = 0; r < q.rows; ++r) n += q.at(r, j) * q.at(r, j);
    n = std::sqrt(n);
    if (n < 1e-300)
      fail(ErrorCategory::Numeric, "svd: degenerate iteration basis");
    for (std::size_t r = 0; r < q.rows; ++r) q.at(r, j) /= n;
  }
}

}  // namespace

ProjectionResult svd_project(const LabeledMatrix& m, std::size_t k) {
  const std::size_t n = m.size(), d = m.dim();
  if (n < 1) fail(ErrorCategory::Numeric, "svd: empty matrix");
  if (k > std::min(n, d))
    fail(ErrorCategory::Numeric, "svd: k exceeds min(rows, dim)");

  // Center rows.
  Mat x = m.rows;
  std::vector<double> mean(d, 0.0);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) mean[j] += x.at(i, j);
  for (std::size_t j = 0; j < d; ++j) mean[j] /= static_cast<double>(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < d; ++j) x.at(i, j) -= mean[j];

  // Gram matrix G = X^T X (d x d).
  Mat g(d, d);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t p = 0; p < d; ++p) {
      const double xp = x.at(i, p);
      if (xp == 0.0) continue;
      for (std::size_t q = 0; q < d; ++q) g.at(p, q) += xp * x.at(i, q);
    }
  double g_scale = 0.0;
  for (double v : g.data) g_scale = std::max(g_scale, std::abs(v));

  // Orthogonal iteration for the top-k eigenvectors of G. Fixed-seed
  // random start so no eigenvector can be missed by unlucky alignment.
  Rng rng(0x5eed5eedULL);
  Mat q(d, k);
  for (double& v : q.data) v = rng.next_double(-1.0, 1.0);
  orthonormalize_columns(q);

  std::vector<double> eigs(k, 0.0);
  const std::size_t max_iter = 10000;
  bool converged = (g_scale == 0.0);
  std::vector<double> gq(d);
  for (std::size_t it = 0; it < max_iter && !converged; ++it) {
    Mat z(d, k);
    for (std::size_t p = 0; p < d; ++p)
      for (std::size_t c = 0; c < k; ++c) {
        double s = 0.0;
        for (std::size_t q2 = 0; q2 < d; ++q2)
          s += g.at(p, q2) * q.at(q2, c);
        z.at(p, c) = s;
      }
    orthonormalize_columns(z);
    q = z;
    // Ritz values and residuals ||G q - lam q|| gauge convergence.
    double worst = 0.0;
    for (std::size_t c = 0; c < k; ++c) {
      for (std::size_t p = 0; p < d; ++p) {
        double s = 0.0;
        for (std::size_t q2 = 0; q2 < d; ++q2)
          s += g.at(p, q2) * q.at(q2, c);
        gq[p] = s;
      }
      double lam = 0.0;
      for (std::size_t p = 0; p < d; ++p) lam += q.at(p, c) * gq[p];
      double res = 0.0;
      for (std::size_t p = 0; p < d; ++p) {
        const double r = gq[p] - lam * q.at(p, c);
        res += r * r;
      }
      worst = std::max(worst, std::sqrt(res));
      eigs[c] = lam;
    }
    if (worst <= 1e-10 * (1.0 + g_scale)) converged = true;
  }
  if (!converged)
    fail(ErrorCategory::Numeric,
         "svd: orthogonal iteration did not converge in 10000 sweeps");

  // Order columns by eigenvalue descending, apply the sign convention.
  std::vector<std::size_t> order(k);
  for (std::size_t c = 0; c < k; ++c) order[c] = c;
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return eigs[a] > eigs[b]; });

  ProjectionResult out;
  out.labels = m.labels;
  out.coordinates = Mat(n, k);
  out.singular_values.resize(k);
  for (std::size_t c = 0; c < k; ++c) {
    const std::size_t src = order[c];
    out.singular_values[c] = std::sqrt(std::max(0.0, eigs[src]));
    // Sign: first largest-magnitude component positive.
    std::size_t arg = 0;
    double best = -1.0;
    for (std::size_t p = 0; p < d; ++p)
      if (std::abs(q.at(p, src)) > best) {
        best = std::abs(q.at(p, src));
        arg = p;
      }
    const double sign = q.at(arg, src) < 0.0 ? -1.0 : 1.0;
    for (std::size_t i = 0; i < n; ++i) {
      double s = 0.0;
      for (std::size_t p = 0; p < d; ++p) s += x.at(i, p) * q.at(p, src);
      out.coordinates.at(i, c) = s * sign;
    }
  }
  return out;
}

Mat pairwise_distances(const Mat& rows) {
  const std::size_t n = rows.rows;
  Mat d(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      const double v = std::sqrt(squared_distance(rows.row(i), rows.row(j)));
      d.at(i, j) = v;
      d.at(j, i) = v;
    }
  return d;
}

ManifoldReport manifold_report(const Mat& u_p, const Mat& v_p) {
  if (!u_p.same_shape(v_p))
    fail(ErrorCategory::Numeric, "manifold report: shape mismatch");
  if (u_p.rows < 3)
    fail(ErrorCategory::Numeric,
         "manifold report: need at least 3 paired rows");
  ManifoldReport rep;
  rep.dist_source = pairwise_distances(u_p);
  rep.dist_target = pairwise_distances(v_p);

  const std::size_t n = u_p.rows;
  std::vector<double> xs, ys;
  xs.reserve(n * (n - 1) / 2);
  ys.reserve(n * (n - 1) / 2);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) {
      xs.push_back(rep.dist_source.at(i, j));
      ys.push_back(rep.dist_target.at(i, j));
    }
  const double m = static_cast<double>(xs.size());
  double mx = 0.0, my = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    mx += xs[i];
    my += ys[i];
  }
  mx /= m;
  my /= m;
  double sxy = 0.0, sxx = 0.0, syy = 0.0;
  for (std::size_t i = 0; i < xs.size(); ++i) {
    const double dx = xs[i] - mx, dy = ys[i] - my;
    sxy += dx * dy;
    sxx += dx * dx;
    syy += dy * dy;
  }
  if (sxx <= 0.0 || syy <= 0.0)
    fail(ErrorCategory::Numeric,
         "manifold report: zero variance in a distance triangle, "
         "correlation undefined");
  rep.pearson = sxy / std::sqrt(sxx * syy);

  double fro = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      const double dd = rep.dist_source.at(i, j) - rep.dist_target.at(i, j);
      fro += dd * dd;
    }
  rep.frobenius_sq_diff = fro;
  return rep;
}

std::string projection_to_tsv(const ProjectionResult& p) {
  std::string out;
  for (std::size_t i = 0; i < p.labels.size(); ++i) {
    out += p.labels[i].language;
    out += '\t';
    out += p.labels[i].name;
    for (std::size_t c = 0; c < p.coordinates.cols; ++c) {
      out += '\t';
      out += format_double(p.coordinates.at(i, c));
    }
    out += '\n';
  }
  return out;
}

}  // namespace clar
