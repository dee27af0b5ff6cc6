#include "qwork/types.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwork {

namespace {

void require_square(const Matrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols()) {
    std::ostringstream os;
    os << what << ": expected a non-empty square matrix, got " << m.rows() << "x" << m.cols();
    throw ValidationError(os.str());
  }
}

}  // namespace

double frobenius_distance(const Matrix& a, const Matrix& b) { return (a - b).norm(); }

double hermiticity_defect(const Matrix& m) { return (m - m.adjoint()).norm(); }

Matrix commutator(const Matrix& a, const Matrix& b) { return a * b - b * a; }

HermitianOperator::HermitianOperator(Matrix m, double tolerance) {
  require_square(m, "HermitianOperator");
  if (!m.allFinite()) throw ValidationError("HermitianOperator: non-finite entry");
  const double defect = hermiticity_defect(m);
  const double scale = std::max(1.0, m.norm());
  if (defect > tolerance * scale) {
    std::ostringstream os;
    os << "HermitianOperator: ||A - A^dagger||_F = " << defect << " exceeds " << tolerance * scale;
    throw ValidationError(os.str());
  }
  m_ = 0.5 * (m + m.adjoint());
}

HermitianOperator HermitianOperator::zero(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(Matrix::Zero(n, n));
}

HermitianOperator HermitianOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return HermitianOperator(Matrix::Identity(n, n));
}

DensityMatrix::DensityMatrix(Matrix m) {
  HermitianOperator h(std::move(m));
  const Matrix& a = h.matrix();
  const double tr = a.trace().real();
  if (std::abs(tr - 1.0) > tol::trace) {
    std::ostringstream os;
    os << "DensityMatrix: |Tr rho - 1| = " << std::abs(tr - 1.0) << " exceeds " << tol::trace;
    throw ValidationError(os.str());
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(a, Eigen::EigenvaluesOnly);
  const double lowest = es.eigenvalues().minCoeff();
  if (lowest < -tol::psd) {
    std::ostringstream os;
    os << "DensityMatrix: smallest eigenvalue " << lowest << " below -" << tol::psd;
    throw ValidationError(os.str());
  }
  m_ = a;
}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return DensityMatrix(Matrix::Identity(n, n) / static_cast<double>(dim));
}

DensityMatrix DensityMatrix::pure(const Vector& psi) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw ValidationError("DensityMatrix::pure: zero vector");
  const Vector v = psi / nrm;
  return DensityMatrix(v * v.adjoint());
}

UnitaryOperator::UnitaryOperator(Matrix m, double tolerance) {
  require_square(m, "UnitaryOperator");
  const auto n = m.rows();
  const double defect = (m.adjoint() * m - Matrix::Identity(n, n)).norm();
  if (!(defect <= tolerance)) {
    std::ostringstream os;
    os << "UnitaryOperator: ||U^dagger U - I||_F = " << defect << " exceeds " << tolerance;
    throw ValidationError(os.str());
  }
  m_ = std::move(m);
}

UnitaryOperator UnitaryOperator::identity(std::size_t dim) {
  const auto n = static_cast<Eigen::Index>(dim);
  return UnitaryOperator(Matrix::Identity(n, n));
}

UnitaryOperator UnitaryOperator::adjoint() const { return UnitaryOperator(m_.adjoint()); }

Matrix SpectralDecomposition::reconstruct() const {
  return eigenvectors * eigenvalues.cast<Complex>().asDiagonal() * eigenvectors.adjoint();
}

}  // namespace qwork
