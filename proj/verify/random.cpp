#include "qwork/verify/random.hpp"

#include <cmath>
#include <numbers>

namespace qwork::verify {

Matrix ginibre(Rng& rng, std::size_t rows, std::size_t cols) {
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(cols));
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    for (Eigen::Index c = 0; c < m.cols(); ++c) m(r, c) = rng.complex_normal() / std::sqrt(2.0);
  }
  return m;
}

HermitianOperator random_hermitian(Rng& rng, std::size_t dim, double scale) {
  const Matrix g = ginibre(rng, dim, dim);
  return HermitianOperator(0.5 * scale * (g + g.adjoint()));
}

UnitaryOperator random_unitary(Rng& rng, std::size_t dim) {
  const Matrix g = ginibre(rng, dim, dim);
  Eigen::HouseholderQR<Matrix> qr(g);
  Matrix q = qr.householderQ();
  const Matrix r = qr.matrixQR();
  for (Eigen::Index k = 0; k < q.cols(); ++k) {
    const Complex d = r(k, k);
    if (std::abs(d) > 0.0) q.col(k) *= d / std::abs(d);
  }
  return UnitaryOperator(q);
}

HermitianOperator random_hermitian_with_spectrum(Rng& rng, const RealVector& spectrum) {
  const UnitaryOperator v = random_unitary(rng, static_cast<std::size_t>(spectrum.size()));
  return HermitianOperator(v.matrix() * spectrum.cast<Complex>().asDiagonal() * v.matrix().adjoint());
}

DensityMatrix random_density_matrix(Rng& rng, std::size_t dim, std::size_t rank) {
  if (rank == 0 || rank > dim) rank = dim;
  const Matrix g = ginibre(rng, dim, rank);
  const Matrix m = g * g.adjoint();
  return DensityMatrix(m / m.trace().real());
}

DensityMatrix random_pure_state(Rng& rng, std::size_t dim) {
  return DensityMatrix::pure(ginibre(rng, dim, 1).col(0));
}

DensityMatrix random_incoherent_state(Rng& rng, const SpectralDecomposition& basis) {
  RealVector pops(basis.eigenvalues.size());
  for (Eigen::Index k = 0; k < pops.size(); ++k) pops[k] = rng.uniform(0.05, 1.0);
  pops /= pops.sum();
  return DensityMatrix(basis.eigenvectors * pops.cast<Complex>().asDiagonal() * basis.eigenvectors.adjoint());
}

DensityMatrix thermal_population_state(Rng& rng, const HermitianOperator& h0, double beta, double coherence) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h0.matrix());
  const RealVector& e = es.eigenvalues();
  const auto d = e.size();
  RealVector pops(d);
  for (Eigen::Index k = 0; k < d; ++k) pops[k] = std::exp(-beta * (e[k] - e.minCoeff()));
  pops /= pops.sum();
  // correlation matrix (unit diagonal, PSD) mixed toward the identity
  const Matrix g = ginibre(rng, static_cast<std::size_t>(d), static_cast<std::size_t>(d));
  Matrix corr = g * g.adjoint();
  for (Eigen::Index r = 0; r < d; ++r) {
    for (Eigen::Index c = 0; c < d; ++c) {
      if (r != c) corr(r, c) *= coherence / std::sqrt(corr(r, r).real() * corr(c, c).real());
    }
  }
  for (Eigen::Index r = 0; r < d; ++r) corr(r, r) = 1.0;
  const RealVector root = pops.array().sqrt().matrix();
  const Matrix energy = root.cast<Complex>().asDiagonal() * corr * root.cast<Complex>().asDiagonal();
  const Matrix& v = es.eigenvectors();
  return DensityMatrix(v * energy * v.adjoint());
}

Process random_process(Rng& rng, std::size_t dim) {
  return Process::from_unitary(random_hermitian(rng, dim), random_hermitian(rng, dim), random_unitary(rng, dim));
}

Process random_driven_process(Rng& rng, std::size_t dim, double tau) {
  const Matrix a = random_hermitian(rng, dim).matrix();
  const Matrix b = random_hermitian(rng, dim).matrix();
  const Matrix c = random_hermitian(rng, dim, 0.5).matrix();
  HamiltonianSchedule sched{dim, tau,
                            [a, b, c, tau](double t) -> Matrix {
                              const double s = t / tau;
                              return (1.0 - s) * a + s * b + std::sin(std::numbers::pi * s) * c;
                            },
                            false};
  return Process::from_schedule(sched);
}

HermitianOperator random_degenerate_hamiltonian(Rng& rng, std::size_t dim) {
  RealVector spectrum(static_cast<Eigen::Index>(dim));
  for (Eigen::Index k = 0; k < spectrum.size(); ++k) spectrum[k] = static_cast<double>(k) + rng.uniform(0.1, 0.6);
  spectrum[1] = spectrum[0];
  return random_hermitian_with_spectrum(rng, spectrum);
}

}  // namespace qwork::verify
