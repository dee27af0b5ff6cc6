#pragma once

#include <array>
#include <complex>
#include <vector>

#include "qwork/work_stats.hpp"

namespace qwork::qubit {

/// H(t) = w(t) (sx cos phi(t) + sy sin phi(t)), phi(t) = pi t / (2 tau),
/// w(t) = omega0 (1 - t/tau) + omega_tau t/tau, and
/// rho0 = I/2 + (2p - 1) sx / 2 + c sz.
struct QubitProcessParams {
  double omega0 = 1.0;
  double omega_tau = 2.0;
  double tau = 1.0;
  double p = 0.5;
  double c = 0.0;
  double beta = 1.0;
  bool sudden = false;

  /// Throws ValidationError on non-physical values, including an initial
  /// state outside the Bloch ball: (p - 1/2)^2 + c^2 <= 1/4.
  void validate() const;
};

using Axis = std::array<double, 3>;

const Matrix& sigma_x();
const Matrix& sigma_y();
const Matrix& sigma_z();

/// exp(-beta omega0) / Z_{beta,0}
double thermal_population(double beta, double omega0);

/// Default configuration: omega_tau = 2 omega0, beta omega0 = 1, thermal p,
/// maximal coherence c = sqrt(p (1 - p)).
QubitProcessParams coherent_gibbs_params(double tau, double omega0 = 1.0, double omega_tau = 2.0, double beta = 1.0);

HamiltonianSchedule qubit_schedule(const QubitProcessParams& params);
DensityMatrix initial_state(const QubitProcessParams& params);
Process qubit_process(const QubitProcessParams& params, const PropagatorOptions& options = {});

/// n_a = Tr[sigma^a U^dagger sy U] / 2.
Axis rotation_axis(const UnitaryOperator& u);
Axis rotation_axis(const QubitProcessParams& params, const PropagatorOptions& options = {});

struct ABValues {
  std::complex<double> a;
  std::complex<double> b;
};

/// a(u), b(u) from their trace definitions on the propagated process.
ABValues ab_functions(const Process& process, const QubitProcessParams& params, double u);
/// a(u) = 2i n_z cos(u w0) sin(u w_tau), b(u) = -2i n_z sin(u w0) sin(u w_tau).
ABValues ab_closed_form(const Axis& n, const QubitProcessParams& params, double u);

/// chi(u) for the dephased state written in terms of the rotation axis.
std::complex<double> closed_form_tpm_char_fn(const Axis& n, const QubitProcessParams& params, double u);

/// chi(u) + 2 i c n_z cos(2u(q - 1/2) w0) sin(u w_tau).
CharFnValue closed_form_char_fn(const Axis& n, const QubitProcessParams& params, double q, double u);

/// chi(u) + c (cos(2uq w0) a(u) - sin(2uq w0) b(u)) with a, b supplied.
CharFnValue intermediate_char_fn(std::complex<double> chi, const ABValues& ab, const QubitProcessParams& params,
                                 double q, double u);

struct Fig1Row {
  double tau_omega0 = 0.0;  // 0 for the sudden quench row
  bool sudden = false;
  double q = 0.0;
  double value = 0.0;  // <exp(-beta (w - dF))> over p_q
  double rhs = 0.0;    // trace side of the fluctuation relation
};

struct Fig1Column {
  double tau_omega0 = 0.0;
  bool sudden = false;
  Axis axis{};
};

struct Fig1Sweep {
  std::vector<Fig1Row> rows;
  std::vector<Fig1Column> columns;
};

/// Sweeps <exp(-beta (w - dF))> over q for each tau omega0 in `tau_grid`
/// (entries <= 0 denote the sudden quench). Requires thermal p.
Fig1Sweep fig1_sweep(const QubitProcessParams& base, const std::vector<double>& q_grid,
                     const std::vector<double>& tau_grid, Execution exec = Execution::parallel);

std::vector<double> fig1_default_tau_grid();
std::vector<double> default_q_grid();

}  // namespace qwork::qubit
