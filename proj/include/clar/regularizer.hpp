#pragma once

#include <string>

#include "clar/matrix.hpp"

namespace clar {

// Affine map Psi v + b over head-row space; learned during training to pull
// paired target rows toward their source counterparts.
struct AffineTransform {
  Mat psi;                 // d x d
  std::vector<double> b;   // d

  static AffineTransform identity(std::size_t d) {
    AffineTransform t;
    t.psi = Mat::identity(d);
    t.b.assign(d, 0.0);
    return t;
  }

  std::size_t dim() const { return b.size(); }
};

struct PenaltyConfig {
  double lambda = 0.1;
  double ridge = 1e-8;
};

struct PenaltyGradients {
  Mat d_psi;   // d x d
  std::vector<double> d_b;  // d
  Mat d_u;     // K x d
  Mat d_v;     // K x d
};

// Sum over pairs of ||u_i - (Psi v_i + b)||^2. Rows of u_p / v_p are
// aligned with the pairing: row i of each is pair i.
double clar_penalty(const Mat& u_p, const Mat& v_p, const AffineTransform& t);

// Exact gradients of clar_penalty. With r_i = u_i - Psi v_i - b:
//   dU_i = 2 r_i,  dV_i = -2 Psi^T r_i,
//   dPsi = -2 sum_i r_i v_i^T,  db = -2 sum_i r_i.
PenaltyGradients clar_gradients(const Mat& u_p, const Mat& v_p,
                                const AffineTransform& t);

// Closed-form minimizer of clar_penalty + ridge * ||Psi||_F^2, solved as
// linear least squares on (v_i, 1). Verification oracle for the transform
// the training loop learns by gradient descent.
AffineTransform fit_affine_least_squares(const Mat& u_p, const Mat& v_p,
                                         double ridge);

// Serialized in the weight-matrix text format: d rows PSI/0..d-1, then B/0.
std::string affine_to_text(const AffineTransform& t);
AffineTransform affine_from_text(const std::string& text);

}  // namespace clar
