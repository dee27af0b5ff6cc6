#pragma once

#include <cstddef>
#include <functional>

#include "qwork/parallel.hpp"
#include "qwork/types.hpp"

namespace qwork {

/// Driving protocol t -> H(t) on [0, duration] (hbar = 1).
///
/// A sudden quench is represented explicitly: the propagator is the identity
/// and the Hamiltonian jumps from at(0) to at(duration).
struct HamiltonianSchedule {
  std::size_t dim = 0;
  double duration = 0.0;
  std::function<Matrix(double)> evaluator;
  bool sudden_quench = false;

  HermitianOperator at(double t) const;
  HermitianOperator initial() const { return at(0.0); }
  HermitianOperator final() const { return at(duration); }

  static HamiltonianSchedule constant(const HermitianOperator& h, double duration);
  static HamiltonianSchedule sudden(const HermitianOperator& h_initial,
                                    const HermitianOperator& h_final);
};

struct ThermalParams {
  double beta = 1.0;
  explicit ThermalParams(double b);
};

struct GibbsState {
  DensityMatrix state;
  double partition_function = 0.0;
  double log_partition_function = 0.0;
};

/// Time-ordering discretization knobs for `propagator`.
struct PropagatorOptions {
  std::size_t initial_steps = 64;
  std::size_t max_refinements = 20;
  double tolerance = tol::prop;
  Execution execution = Execution::parallel;
};

SpectralDecomposition spectral_decompose(const HermitianOperator& a);

/// Eigenbasis of `h0` which, inside every degenerate eigenspace, also
/// diagonalizes the restriction of `rho0`. Degenerate vectors are ordered by
/// descending restricted population.
SpectralDecomposition degeneracy_adapted_basis(const HermitianOperator& h0, const DensityMatrix& rho0);

/// sum_i |e_i><e_i| rho |e_i><e_i|
DensityMatrix dephase(const DensityMatrix& rho, const SpectralDecomposition& basis);

/// Matrix element <basis_i| A |basis_j> table.
Matrix in_basis(const Matrix& a, const SpectralDecomposition& basis);

/// exp(i * s * A) for Hermitian A and real s.
Matrix hermitian_exp_i(const HermitianOperator& a, double s);
Matrix hermitian_exp_i(const SpectralDecomposition& spectrum, double s);

/// exp(s * A) for Hermitian A and real s (real spectrum scaling).
Matrix hermitian_exp_real(const SpectralDecomposition& spectrum, double s);

/// ln A restricted to eigenvalues above `support_floor`; zero on the kernel.
Matrix matrix_log_on_support(const SpectralDecomposition& spectrum, double support_floor = tol::support);

/// Midpoint-rule product of exact exponentials with one fixed step count.
/// The parallel path multiplies fixed chunks, so its result does not depend
/// on the thread count.
UnitaryOperator midpoint_product(const HamiltonianSchedule& sched, double t_end, std::size_t steps,
                                 Execution exec = Execution::parallel);

/// U_{t_end,0}, refined by step halving until successive levels agree.
/// Throws ConvergenceError carrying the last residual.
UnitaryOperator propagator(const HamiltonianSchedule& sched, double t_end, const PropagatorOptions& options = {});

/// U^dagger H(tau) U with U = U_{tau,0}.
HermitianOperator heisenberg_operator(const HermitianOperator& a, const UnitaryOperator& u);
HermitianOperator heisenberg_final_hamiltonian(const HamiltonianSchedule& sched,
                                               const PropagatorOptions& options = {});

GibbsState gibbs_state(const HermitianOperator& h, double beta);

/// ln Tr exp(-beta H), evaluated with a shifted exponent.
double log_partition_function(const RealVector& energies, double beta);

double von_neumann_entropy(const DensityMatrix& rho);

/// S(rho || eta); +infinity when rho has weight outside the support of eta.
double quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& eta);

/// S(Delta(rho)) - S(rho) in the given basis.
double relative_entropy_of_coherence(const DensityMatrix& rho0, const SpectralDecomposition& basis);

}  // namespace qwork
