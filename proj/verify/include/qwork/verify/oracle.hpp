#pragma once

#include <complex>
#include <vector>

#include "qwork/types.hpp"

// Brute-force reference enumerations. These deliberately avoid the library's
// spectral helpers, context caches and merging code: eigenbases come straight
// from Eigen and every amplitude is an explicit inner product.
namespace qwork::verify::oracle {

struct Point {
  double x = 0.0;
  double weight = 0.0;
};

struct JointPoint {
  double w = 0.0;
  double c = 0.0;
  double weight = 0.0;
};

/// Raw (unmerged) triple-loop atoms of p_q(w). H(0) must be non-degenerate.
std::vector<Point> quasiprob_atoms(const Matrix& h0, const Matrix& h1, const Matrix& u, const Matrix& rho, double q);

/// Raw quadruple-loop atoms of p_{q,q'}(w, C). H(0) must be non-degenerate and
/// rho full rank with non-zero energy populations.
std::vector<JointPoint> joint_atoms(const Matrix& h0, const Matrix& h1, const Matrix& u, const Matrix& rho, double q,
                                    double q_prime);

/// Clusters sorted points within `tol` and sums weights.
std::vector<Point> merge(std::vector<Point> points, double tol);
std::vector<JointPoint> merge(std::vector<JointPoint> points, double tol_w, double tol_c);

/// Largest weight mismatch after clustering the union of both lists.
double discrepancy(const std::vector<Point>& a, const std::vector<Point>& b, double tol);
double discrepancy(const std::vector<JointPoint>& a, const std::vector<JointPoint>& b, double tol_w, double tol_c);

/// Product of exact short-time exponentials exp(-i H(t_m) dt) over `steps`
/// midpoints, each exponential from a fresh eigendecomposition.
template <typename Eval>
Matrix fine_step_propagator(Eval&& h_of_t, Eigen::Index dim, double t_end, int steps);

Matrix exp_minus_i(const Matrix& h, double dt);

}  // namespace qwork::verify::oracle

template <typename Eval>
qwork::Matrix qwork::verify::oracle::fine_step_propagator(Eval&& h_of_t, Eigen::Index dim, double t_end, int steps) {
  Matrix u = Matrix::Identity(dim, dim);
  const double dt = t_end / steps;
  for (int m = 0; m < steps; ++m) u = exp_minus_i(h_of_t((m + 0.5) * dt), dt) * u;
  return u;
}
