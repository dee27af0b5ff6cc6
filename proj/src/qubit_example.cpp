#include "qwork/qubit_example.hpp"

#include <cmath>
#include <numbers>
#include <sstream>

namespace qwork::qubit {

namespace {

Matrix pauli(int which) {
  Matrix m = Matrix::Zero(2, 2);
  const Complex i(0.0, 1.0);
  switch (which) {
    case 0:
      m(0, 1) = 1.0;
      m(1, 0) = 1.0;
      break;
    case 1:
      m(0, 1) = -i;
      m(1, 0) = i;
      break;
    default:
      m(0, 0) = 1.0;
      m(1, 1) = -1.0;
  }
  return m;
}

}  // namespace

const Matrix& sigma_x() {
  static const Matrix m = pauli(0);
  return m;
}
const Matrix& sigma_y() {
  static const Matrix m = pauli(1);
  return m;
}
const Matrix& sigma_z() {
  static const Matrix m = pauli(2);
  return m;
}

void QubitProcessParams::validate() const {
  std::ostringstream os;
  if (!(omega0 > 0.0)) os << "omega0 must be positive; ";
  if (!(omega_tau > 0.0)) os << "omega_tau must be positive; ";
  if (!(tau >= 0.0)) os << "tau must be non-negative; ";
  if (!(p >= 0.0 && p <= 1.0)) os << "p must lie in [0, 1]; ";
  if (!(beta > 0.0 && std::isfinite(beta))) os << "beta must be finite and positive; ";
  if ((p - 0.5) * (p - 0.5) + c * c > 0.25 + 1e-12) os << "(p - 1/2)^2 + c^2 exceeds 1/4 (state not PSD); ";
  const std::string msg = os.str();
  if (!msg.empty()) throw ValidationError("QubitProcessParams: " + msg.substr(0, msg.size() - 2));
}

double thermal_population(double beta, double omega0) {
  // e^{-b w} / (e^{-b w} + e^{b w})
  return 1.0 / (1.0 + std::exp(2.0 * beta * omega0));
}

QubitProcessParams coherent_gibbs_params(double tau, double omega0, double omega_tau, double beta) {
  QubitProcessParams params;
  params.omega0 = omega0;
  params.omega_tau = omega_tau;
  params.tau = tau;
  params.beta = beta;
  params.p = thermal_population(beta, omega0);
  params.c = std::sqrt(params.p * (1.0 - params.p));
  params.sudden = tau <= 0.0;
  return params;
}

HamiltonianSchedule qubit_schedule(const QubitProcessParams& params) {
  params.validate();
  if (params.sudden || params.tau == 0.0) {
    return HamiltonianSchedule::sudden(HermitianOperator(params.omega0 * sigma_x()),
                                       HermitianOperator(params.omega_tau * sigma_y()));
  }
  const double w0 = params.omega0;
  const double wt = params.omega_tau;
  const double tau = params.tau;
  auto evaluator = [w0, wt, tau](double t) -> Matrix {
    const double s = t / tau;
    const double phi = 0.5 * std::numbers::pi * s;
    const double w = w0 * (1.0 - s) + wt * s;
    return w * (std::cos(phi) * sigma_x() + std::sin(phi) * sigma_y());
  };
  return HamiltonianSchedule{2, tau, evaluator, false};
}

DensityMatrix initial_state(const QubitProcessParams& params) {
  params.validate();
  const Matrix id = Matrix::Identity(2, 2);
  return DensityMatrix(0.5 * id + (2.0 * params.p - 1.0) * 0.5 * sigma_x() + params.c * sigma_z());
}

Process qubit_process(const QubitProcessParams& params, const PropagatorOptions& options) {
  return Process::from_schedule(qubit_schedule(params), options);
}

Axis rotation_axis(const UnitaryOperator& u) {
  if (u.dim() != 2) throw ValidationError("rotation_axis: qubit propagator required");
  const Matrix& U = u.matrix();
  const Matrix rotated = U.adjoint() * sigma_y() * U;
  return {0.5 * (sigma_x() * rotated).trace().real(), 0.5 * (sigma_y() * rotated).trace().real(),
          0.5 * (sigma_z() * rotated).trace().real()};
}

Axis rotation_axis(const QubitProcessParams& params, const PropagatorOptions& options) {
  return rotation_axis(qubit_process(params, options).evolution);
}

ABValues ab_functions(const Process& process, const QubitProcessParams& params, double u) {
  const Matrix& U = process.evolution.matrix();
  const Matrix left = hermitian_exp_i(HermitianOperator(sigma_x()), -u * params.omega0);
  const Matrix right = U.adjoint() * hermitian_exp_i(HermitianOperator(sigma_y()), u * params.omega_tau) * U;
  const Matrix anti = left * right + right * left;
  const Matrix comm = left * right - right * left;
  return {0.5 * (sigma_z() * anti).trace(), 0.5 * (sigma_y() * comm).trace()};
}

ABValues ab_closed_form(const Axis& n, const QubitProcessParams& params, double u) {
  const Complex i(0.0, 1.0);
  const double s_tau = std::sin(u * params.omega_tau);
  return {2.0 * i * n[2] * std::cos(u * params.omega0) * s_tau,
          -2.0 * i * n[2] * std::sin(u * params.omega0) * s_tau};
}

std::complex<double> closed_form_tpm_char_fn(const Axis& n, const QubitProcessParams& params, double u) {
  // Tr[Delta(rho0) (c0 - i s0 sx)(ct + i st n.sigma)]
  const Complex i(0.0, 1.0);
  const double c0 = std::cos(u * params.omega0);
  const double s0 = std::sin(u * params.omega0);
  const double ct = std::cos(u * params.omega_tau);
  const double st = std::sin(u * params.omega_tau);
  const Complex scalar = c0 * ct + s0 * st * n[0];
  const Complex along_x = i * (c0 * st * n[0] - s0 * ct);
  return scalar + (2.0 * params.p - 1.0) * along_x;
}

CharFnValue closed_form_char_fn(const Axis& n, const QubitProcessParams& params, double q, double u) {
  const Complex i(0.0, 1.0);
  const Complex correction = 2.0 * i * params.c * n[2] * std::cos(2.0 * u * (q - 0.5) * params.omega0) *
                             std::sin(u * params.omega_tau);
  return {u, closed_form_tpm_char_fn(n, params, u) + correction};
}

CharFnValue intermediate_char_fn(std::complex<double> chi, const ABValues& ab, const QubitProcessParams& params,
                                 double q, double u) {
  const double phase = 2.0 * u * q * params.omega0;
  return {u, chi + params.c * (std::cos(phase) * ab.a - std::sin(phase) * ab.b)};
}

Fig1Sweep fig1_sweep(const QubitProcessParams& base, const std::vector<double>& q_grid,
                     const std::vector<double>& tau_grid, Execution exec) {
  base.validate();
  const double thermal = thermal_population(base.beta, base.omega0);
  if (std::abs(base.p - thermal) > tol::thermal * thermal) {
    std::ostringstream os;
    os << "fig1_sweep: thermal populations required (p = " << base.p << ", expected " << thermal << ")";
    throw PreconditionError(os.str());
  }
  if (q_grid.empty() || tau_grid.empty()) throw ValidationError("fig1_sweep: empty grid");

  const std::size_t nq = q_grid.size();
  Fig1Sweep out;
  out.rows.resize(nq * tau_grid.size());
  out.columns.resize(tau_grid.size());
  // parallelism lives in the outer loop; propagation per column is serial
  PropagatorOptions inner;
  inner.execution = Execution::serial;
  for_each_index(tau_grid.size(), exec, [&](std::size_t col) {
    QubitProcessParams params = base;
    const double tau_omega0 = tau_grid[col];
    params.sudden = tau_omega0 <= 0.0;
    params.tau = params.sudden ? 0.0 : tau_omega0 / base.omega0;
    const Process process = qubit_process(params, inner);
    const WorkContext ctx(process, initial_state(params));
    out.columns[col] = {params.sudden ? 0.0 : tau_omega0, params.sudden, rotation_axis(process.evolution)};
    for (std::size_t k = 0; k < nq; ++k) {
      const FluctuationRatio fr = fluctuation_ratio(ctx, q_grid[k], params.beta);
      out.rows[col * nq + k] = {params.sudden ? 0.0 : tau_omega0, params.sudden, q_grid[k], fr.lhs, fr.rhs};
    }
  });
  return out;
}

std::vector<double> fig1_default_tau_grid() {
  std::vector<double> grid;
  for (int k = 1; k <= 10; ++k) grid.push_back(0.2 * k);
  return grid;
}

std::vector<double> default_q_grid() {
  std::vector<double> grid;
  for (int k = 0; k <= 20; ++k) grid.push_back(0.05 * k);
  return grid;
}

}  // namespace qwork::qubit
