#pragma once

#include <complex>
#include <cstddef>
#include <optional>
#include <vector>

#include "qwork/distribution.hpp"
#include "qwork/quantum_core.hpp"

namespace qwork {

/// Endpoints and evolution of a driven process: H(0), H(tau), U_{tau,0}.
struct Process {
  HermitianOperator h_initial;
  HermitianOperator h_final;
  UnitaryOperator evolution;

  std::size_t dim() const noexcept { return h_initial.dim(); }

  static Process from_schedule(const HamiltonianSchedule& sched, const PropagatorOptions& options = {});
  static Process from_unitary(HermitianOperator h_initial, HermitianOperator h_final, UnitaryOperator u);
};

/// Everything the work statistics need for one (process, initial state) pair.
///
/// `basis0` is the degeneracy-adapted eigenbasis of H(0) for `rho0`;
/// `rho_energy(i, j)` = <e_i|rho0|e_j> and `transition(k, i)` = <e'_k|U|e_i>.
class WorkContext {
 public:
  WorkContext(Process process, DensityMatrix rho0);

  const Process& process() const noexcept { return process_; }
  const DensityMatrix& rho0() const noexcept { return rho0_; }
  const SpectralDecomposition& basis0() const noexcept { return basis0_; }
  const SpectralDecomposition& basis_tau() const noexcept { return basis_tau_; }
  const UnitaryOperator& evolution() const noexcept { return process_.evolution; }
  const HermitianOperator& heisenberg_final() const noexcept { return heisenberg_final_; }
  const Matrix& rho_energy() const noexcept { return rho_energy_; }
  const Matrix& transition() const noexcept { return transition_; }
  std::size_t dim() const noexcept { return process_.dim(); }

  /// merge_tol for work positions.
  double work_merge_tol() const;

  /// Same process, different initial state.
  WorkContext with_state(DensityMatrix rho) const;

 private:
  Process process_;
  DensityMatrix rho0_;
  SpectralDecomposition basis0_;
  SpectralDecomposition basis_tau_;
  HermitianOperator heisenberg_final_;
  Matrix rho_energy_;
  Matrix transition_;
};

struct CharFnValue {
  double u = 0.0;
  std::complex<double> value{1.0, 0.0};
};

struct FluctuationRatio {
  double lhs = 0.0;
  double rhs = 0.0;
};

struct ThermoOffsets {
  double log_z_initial = 0.0;
  double log_z_final = 0.0;
  double free_energy_change = 0.0;  // -ln(Z_tau / Z_0) / beta
};

ThermoOffsets thermo_offsets(const WorkContext& ctx, double beta);

/// <e'_k|U|e_i> conj(<e'_k|U|e_j>); for i == j exactly |<e'_k|U|e_i>|^2.
std::complex<double> transition_product(const WorkContext& ctx, std::size_t k, std::size_t i, std::size_t j);

/// e'_k - q e_i - (1-q) e_j, evaluated as e'_k - e_i when i == j.
double work_position(const WorkContext& ctx, double q, std::size_t k, std::size_t i, std::size_t j);

DeltaDistribution tpm_distribution(const WorkContext& ctx);
DeltaDistribution quasiprob_distribution(const WorkContext& ctx, double q);

double work_moment_numeric(const DeltaDistribution& dist, int n);
double work_moment_analytic(const WorkContext& ctx, double q, int n);

CharFnValue char_fn_q(const WorkContext& ctx, double q, double u);
CharFnValue char_fn_tpm(const WorkContext& ctx, double u);
std::complex<double> coherence_correction(const WorkContext& ctx, double q, double u);

FluctuationRatio fluctuation_ratio(const WorkContext& ctx, double q, double beta);

/// Re Tr[e^{beta q H(0)} A e^{-beta q H(0)} rho_{beta,0}^{-1} rho^{(H)}_{beta,tau}] with A given
/// in the H(0) eigenbasis. Evaluated termwise in that basis so the large and
/// small exponentials never meet in separate matrix products.
double tilted_gibbs_trace(const WorkContext& ctx, const Matrix& a_energy, double q, double beta);

/// X_ijk with Tr[X_ijk rho] = Re{<e_i|rho|e_j><e_j|U^dagger|e'_k><e'_k|U|e_i>}.
HermitianOperator negativity_operator(const WorkContext& ctx, std::size_t i, std::size_t j, std::size_t k);

struct NegativityEntry {
  double q = 0.0;
  double negative_weight = 0.0;
  double positive_weight = 0.0;
  std::optional<Atom> most_negative;
  bool has_negativity = false;
};

struct NegativityReport {
  std::vector<NegativityEntry> entries;
  double min_operator_eigenvalue = 0.0;
  double max_operator_eigenvalue = 0.0;
};

/// Atoms with weight below -threshold count as negative.
inline constexpr double negativity_threshold = 1e-12;

NegativityEntry negativity_entry(const WorkContext& ctx, double q);
NegativityReport negativity_report(const WorkContext& ctx, const std::vector<double>& q_grid,
                                   Execution exec = Execution::parallel);

}  // namespace qwork
