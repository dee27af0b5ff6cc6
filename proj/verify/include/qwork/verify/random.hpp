#pragma once

#include <cstdint>
#include <random>

#include "qwork/coherence_stats.hpp"
#include "qwork/work_stats.hpp"

namespace qwork::verify {

/// Seeded generator for random test systems.
class Rng {
 public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}

  double normal() { return normal_(engine_); }
  double uniform(double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(engine_); }
  int uniform_int(int lo, int hi) { return std::uniform_int_distribution<int>(lo, hi)(engine_); }
  Complex complex_normal() { return {normal(), normal()}; }
  std::mt19937_64& engine() { return engine_; }

 private:
  std::mt19937_64 engine_;
  std::normal_distribution<double> normal_{0.0, 1.0};
};

Matrix ginibre(Rng& rng, std::size_t rows, std::size_t cols);

HermitianOperator random_hermitian(Rng& rng, std::size_t dim, double scale = 1.0);
/// V diag(spectrum) V^dagger with Haar-random V.
HermitianOperator random_hermitian_with_spectrum(Rng& rng, const RealVector& spectrum);
UnitaryOperator random_unitary(Rng& rng, std::size_t dim);
/// Full rank unless `rank` < dim.
DensityMatrix random_density_matrix(Rng& rng, std::size_t dim, std::size_t rank = 0);
DensityMatrix random_pure_state(Rng& rng, std::size_t dim);

/// Random populations in `basis`, no coherence.
DensityMatrix random_incoherent_state(Rng& rng, const SpectralDecomposition& basis);

/// Populations exp(-beta e_i)/Z_0 in the eigenbasis of `h0`, random coherences
/// (full rank). `coherence` in [0, 1) scales the correlation strength.
DensityMatrix thermal_population_state(Rng& rng, const HermitianOperator& h0, double beta, double coherence = 0.9);

Process random_process(Rng& rng, std::size_t dim);

/// Piecewise-linear drive H(t) = (1 - s) A + s B + sin(pi s) C, s = t/tau,
/// propagated numerically.
Process random_driven_process(Rng& rng, std::size_t dim, double tau);

/// H(0) with one doubly degenerate level (dim >= 3).
HermitianOperator random_degenerate_hamiltonian(Rng& rng, std::size_t dim);

}  // namespace qwork::verify
