#pragma once

#include <complex>
#include <vector>

#include "qwork/types.hpp"

namespace qt {

using qwork::Complex;
using qwork::Matrix;

inline Matrix sx() {
  Matrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}

inline Matrix sy() {
  Matrix m(2, 2);
  m << 0, Complex(0, -1), Complex(0, 1), 0;
  return m;
}

inline Matrix sz() {
  Matrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}

inline Matrix id(Eigen::Index n) { return Matrix::Identity(n, n); }

inline Matrix diag(std::initializer_list<double> values) {
  Matrix m = Matrix::Zero(static_cast<Eigen::Index>(values.size()), static_cast<Eigen::Index>(values.size()));
  Eigen::Index k = 0;
  for (double v : values) m(k, k) = v, ++k;
  return m;
}

inline double dist(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

inline std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  return out;
}

}  // namespace qt
