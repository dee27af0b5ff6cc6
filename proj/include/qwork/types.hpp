#pragma once

#include <complex>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

#include <Eigen/Dense>

namespace qwork {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

namespace tol {
inline constexpr double herm = 1e-10;
inline constexpr double trace = 1e-10;
inline constexpr double unitary = 1e-10;
inline constexpr double recon = 1e-10;
inline constexpr double psd = 1e-10;
inline constexpr double entropy = 1e-10;
inline constexpr double prop = 1e-9;
// relative; multiplied by the spectral scale of the operator
inline constexpr double degen_rel = 1e-9;
// spectral weights at or below this are treated as outside the support
inline constexpr double support = 1e-12;
// relative deviation allowed when gating on thermal populations
inline constexpr double thermal = 1e-9;
}  // namespace tol

/// Input fails a structural invariant (Hermiticity, trace, dimensions, ...).
class ValidationError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// An identity's precondition does not hold for the supplied state/process.
class PreconditionError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// Adaptive refinement did not converge.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}
  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

/// Complex square matrix equal to its adjoint.
class HermitianOperator {
 public:
  HermitianOperator() = default;
  explicit HermitianOperator(Matrix m, double tolerance = tol::herm);

  static HermitianOperator zero(std::size_t dim);
  static HermitianOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }

 private:
  Matrix m_;
};

/// Hermitian, unit trace, positive semidefinite.
class DensityMatrix {
 public:
  DensityMatrix() = default;
  explicit DensityMatrix(Matrix m);

  static DensityMatrix maximally_mixed(std::size_t dim);
  static DensityMatrix pure(const Vector& psi);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  HermitianOperator as_operator() const { return HermitianOperator(m_); }

 private:
  Matrix m_;
};

class UnitaryOperator {
 public:
  UnitaryOperator() = default;
  explicit UnitaryOperator(Matrix m, double tolerance = tol::unitary);

  static UnitaryOperator identity(std::size_t dim);

  std::size_t dim() const noexcept { return static_cast<std::size_t>(m_.rows()); }
  const Matrix& matrix() const noexcept { return m_; }
  UnitaryOperator adjoint() const;

 private:
  Matrix m_;
};

/// Eigenvalues ascending, eigenvectors as orthonormal columns, and a partition
/// of the indices into groups of numerically equal eigenvalues.
struct SpectralDecomposition {
  RealVector eigenvalues;
  Matrix eigenvectors;
  std::vector<std::vector<std::size_t>> degeneracy_groups;

  std::size_t dim() const noexcept { return static_cast<std::size_t>(eigenvalues.size()); }
  Vector vector(std::size_t k) const { return eigenvectors.col(static_cast<Eigen::Index>(k)); }
  Matrix reconstruct() const;
};

double frobenius_distance(const Matrix& a, const Matrix& b);
double hermiticity_defect(const Matrix& m);
Matrix commutator(const Matrix& a, const Matrix& b);

}  // namespace qwork
