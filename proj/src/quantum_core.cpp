#include "qwork/quantum_core.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

namespace qwork {

namespace {

// Largest-magnitude component made real positive; first index wins ties.
void fix_phase(Eigen::Ref<Vector> v) {
  Eigen::Index best = 0;
  double best_mag = -1.0;
  for (Eigen::Index r = 0; r < v.size(); ++r) {
    const double mag = std::abs(v[r]);
    if (mag > best_mag * (1.0 + 1e-12)) {
      best_mag = mag;
      best = r;
    }
  }
  if (best_mag > 0.0) v *= std::conj(v[best]) / best_mag;
}

double degeneracy_tolerance(const RealVector& ev) {
  if (ev.size() == 0) return 0.0;
  const double range = ev.maxCoeff() - ev.minCoeff();
  const double scale = std::max(range, ev.cwiseAbs().maxCoeff());
  return tol::degen_rel * scale;
}

// Groups ascending eigenvalues into runs closer than `tol` to the run's first
// member, and replaces each run by its mean.
std::vector<std::vector<std::size_t>> group_and_flatten(RealVector& ev, double tol) {
  std::vector<std::vector<std::size_t>> groups;
  const auto n = static_cast<std::size_t>(ev.size());
  std::size_t start = 0;
  while (start < n) {
    std::size_t end = start + 1;
    while (end < n && ev[static_cast<Eigen::Index>(end)] - ev[static_cast<Eigen::Index>(start)] <= tol) ++end;
    std::vector<std::size_t> g(end - start);
    std::iota(g.begin(), g.end(), start);
    if (g.size() > 1) {
      double mean = 0.0;
      for (auto k : g) mean += ev[static_cast<Eigen::Index>(k)];
      mean /= static_cast<double>(g.size());
      for (auto k : g) ev[static_cast<Eigen::Index>(k)] = mean;
    }
    groups.push_back(std::move(g));
    start = end;
  }
  return groups;
}

// exp(-i h dt) for one midpoint step.
Matrix step_exponential(const Matrix& h, double dt) {
  if (h.rows() == 2) {
    // h = a0 I + a . sigma
    const double a0 = 0.5 * (h(0, 0).real() + h(1, 1).real());
    const double az = 0.5 * (h(0, 0).real() - h(1, 1).real());
    const double ax = h(1, 0).real();
    const double ay = h(1, 0).imag();
    const double norm = std::sqrt(ax * ax + ay * ay + az * az);
    const double c = std::cos(norm * dt);
    const double s = norm > 0.0 ? std::sin(norm * dt) / norm : dt;
    const Complex phase = std::polar(1.0, -a0 * dt);
    const Complex i(0.0, 1.0);
    Matrix e(2, 2);
    e(0, 0) = phase * (c - i * s * az);
    e(1, 1) = phase * (c + i * s * az);
    e(0, 1) = phase * (-i * s * Complex(ax, -ay));
    e(1, 0) = phase * (-i * s * Complex(ax, ay));
    return e;
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (h + h.adjoint()));
  const Vector phases = (es.eigenvalues() * (-dt)).unaryExpr([](double x) { return std::polar(1.0, x); });
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

Matrix chunk_product(const HamiltonianSchedule& sched, double dt, std::size_t begin, std::size_t end) {
  const auto n = static_cast<Eigen::Index>(sched.dim);
  Matrix u = Matrix::Identity(n, n);
  for (std::size_t k = begin; k < end; ++k) {
    const double t_mid = (static_cast<double>(k) + 0.5) * dt;
    u = step_exponential(sched.evaluator(t_mid), dt) * u;
  }
  return u;
}

// Nearest unitary (polar factor); removes roundoff drift of long products.
Matrix polar_unitary(const Matrix& m) {
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
  return svd.matrixU() * svd.matrixV().adjoint();
}

}  // namespace

HermitianOperator HamiltonianSchedule::at(double t) const {
  if (!evaluator) throw ValidationError("HamiltonianSchedule: no evaluator");
  if (t < 0.0 || t > duration) {
    std::ostringstream os;
    os << "HamiltonianSchedule: t = " << t << " outside [0, " << duration << "]";
    throw ValidationError(os.str());
  }
  HermitianOperator h(evaluator(t));
  if (h.dim() != dim) throw ValidationError("HamiltonianSchedule: evaluator returned wrong dimension");
  return h;
}

HamiltonianSchedule HamiltonianSchedule::constant(const HermitianOperator& h, double duration) {
  if (!(duration >= 0.0)) throw ValidationError("HamiltonianSchedule::constant: negative duration");
  Matrix m = h.matrix();
  return HamiltonianSchedule{h.dim(), duration, [m](double) { return m; }, false};
}

HamiltonianSchedule HamiltonianSchedule::sudden(const HermitianOperator& h_initial,
                                                const HermitianOperator& h_final) {
  if (h_initial.dim() != h_final.dim()) throw ValidationError("HamiltonianSchedule::sudden: dimension mismatch");
  Matrix a = h_initial.matrix();
  Matrix b = h_final.matrix();
  // nominal unit duration: at(0) = H(0), at(1) = H(tau)
  return HamiltonianSchedule{h_initial.dim(), 1.0, [a, b](double t) { return t < 1.0 ? a : b; }, true};
}

ThermalParams::ThermalParams(double b) : beta(b) {
  if (!(std::isfinite(b) && b > 0.0)) throw ValidationError("ThermalParams: beta must be finite and positive");
}

SpectralDecomposition spectral_decompose(const HermitianOperator& a) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(a.matrix());
  if (es.info() != Eigen::Success) throw ValidationError("spectral_decompose: eigensolver failed");
  SpectralDecomposition sd;
  sd.eigenvalues = es.eigenvalues();
  sd.eigenvectors = es.eigenvectors();
  for (Eigen::Index k = 0; k < sd.eigenvectors.cols(); ++k) fix_phase(sd.eigenvectors.col(k));
  sd.degeneracy_groups = group_and_flatten(sd.eigenvalues, degeneracy_tolerance(sd.eigenvalues));
  return sd;
}

SpectralDecomposition degeneracy_adapted_basis(const HermitianOperator& h0, const DensityMatrix& rho0) {
  if (h0.dim() != rho0.dim()) throw ValidationError("degeneracy_adapted_basis: dimension mismatch");
  SpectralDecomposition sd = spectral_decompose(h0);
  for (const auto& group : sd.degeneracy_groups) {
    if (group.size() < 2) continue;
    const auto first = static_cast<Eigen::Index>(group.front());
    const auto size = static_cast<Eigen::Index>(group.size());
    const Matrix block_vecs = sd.eigenvectors.middleCols(first, size);
    const Matrix restricted = block_vecs.adjoint() * rho0.matrix() * block_vecs;
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (restricted + restricted.adjoint()));
    // SelfAdjointEigenSolver sorts ascending; reverse for descending population
    Matrix rotated = block_vecs * es.eigenvectors().rowwise().reverse();
    for (Eigen::Index k = 0; k < size; ++k) fix_phase(rotated.col(k));
    sd.eigenvectors.middleCols(first, size) = rotated;
  }
  return sd;
}

Matrix in_basis(const Matrix& a, const SpectralDecomposition& basis) {
  return basis.eigenvectors.adjoint() * a * basis.eigenvectors;
}

DensityMatrix dephase(const DensityMatrix& rho, const SpectralDecomposition& basis) {
  if (rho.dim() != basis.dim()) throw ValidationError("dephase: dimension mismatch");
  const Matrix& v = basis.eigenvectors;
  RealVector pops(v.cols());
  for (Eigen::Index i = 0; i < v.cols(); ++i) pops[i] = (v.col(i).adjoint() * rho.matrix() * v.col(i))(0, 0).real();
  return DensityMatrix(v * pops.cast<Complex>().asDiagonal() * v.adjoint());
}

Matrix hermitian_exp_i(const SpectralDecomposition& spectrum, double s) {
  const Vector phases = (spectrum.eigenvalues * s).unaryExpr([](double x) { return std::polar(1.0, x); });
  return spectrum.eigenvectors * phases.asDiagonal() * spectrum.eigenvectors.adjoint();
}

Matrix hermitian_exp_i(const HermitianOperator& a, double s) { return hermitian_exp_i(spectral_decompose(a), s); }

Matrix hermitian_exp_real(const SpectralDecomposition& spectrum, double s) {
  const RealVector scaled = (spectrum.eigenvalues * s).array().exp().matrix();
  return spectrum.eigenvectors * scaled.cast<Complex>().asDiagonal() * spectrum.eigenvectors.adjoint();
}

Matrix matrix_log_on_support(const SpectralDecomposition& spectrum, double support_floor) {
  RealVector logs(spectrum.eigenvalues.size());
  for (Eigen::Index k = 0; k < logs.size(); ++k) {
    const double r = spectrum.eigenvalues[k];
    logs[k] = r > support_floor ? std::log(r) : 0.0;
  }
  return spectrum.eigenvectors * logs.cast<Complex>().asDiagonal() * spectrum.eigenvectors.adjoint();
}

UnitaryOperator midpoint_product(const HamiltonianSchedule& sched, double t_end, std::size_t steps, Execution exec) {
  if (steps == 0) throw ValidationError("midpoint_product: zero steps");
  const double dt = t_end / static_cast<double>(steps);
  const auto n = static_cast<Eigen::Index>(sched.dim);
  Matrix u;
  // The chunk layout depends only on `steps`, so the parallel result is the
  // same for every thread count.
  constexpr std::size_t chunks = 32;
  if (exec == Execution::serial || steps < 2 * chunks) {
    u = chunk_product(sched, dt, 0, steps);
  } else {
    // Factors are ordered latest-left, so chunk c's partial product multiplies
    // from the left onto chunks 0..c-1.
    std::vector<Matrix> partial(chunks);
    for_each_index(chunks, Execution::parallel, [&](std::size_t c) {
      partial[c] = chunk_product(sched, dt, steps * c / chunks, steps * (c + 1) / chunks);
    });
    u = Matrix::Identity(n, n);
    for (const auto& p : partial) u = p * u;
  }
  return UnitaryOperator(polar_unitary(u));
}

UnitaryOperator propagator(const HamiltonianSchedule& sched, double t_end, const PropagatorOptions& options) {
  const Execution exec = options.execution;
  if (t_end < 0.0 || t_end > sched.duration) {
    std::ostringstream os;
    os << "propagator: t_end = " << t_end << " outside [0, " << sched.duration << "]";
    throw ValidationError(os.str());
  }
  if (sched.sudden_quench || t_end == 0.0) return UnitaryOperator::identity(sched.dim);
  std::size_t steps = options.initial_steps;
  UnitaryOperator previous = midpoint_product(sched, t_end, steps, exec);
  double residual = std::numeric_limits<double>::infinity();
  for (std::size_t r = 0; r < options.max_refinements; ++r) {
    steps *= 2;
    UnitaryOperator current = midpoint_product(sched, t_end, steps, exec);
    residual = frobenius_distance(current.matrix(), previous.matrix());
    if (residual < options.tolerance) return current;
    previous = std::move(current);
  }
  std::ostringstream os;
  os << "propagator: no convergence after " << options.max_refinements << " refinements (residual " << residual
     << ")";
  throw ConvergenceError(os.str(), residual);
}

HermitianOperator heisenberg_operator(const HermitianOperator& a, const UnitaryOperator& u) {
  if (a.dim() != u.dim()) throw ValidationError("heisenberg_operator: dimension mismatch");
  return HermitianOperator(u.matrix().adjoint() * a.matrix() * u.matrix());
}

HermitianOperator heisenberg_final_hamiltonian(const HamiltonianSchedule& sched, const PropagatorOptions& options) {
  return heisenberg_operator(sched.final(), propagator(sched, sched.duration, options));
}

double log_partition_function(const RealVector& energies, double beta) {
  ThermalParams checked(beta);
  const double lowest = energies.minCoeff();
  double sum = 0.0;
  for (Eigen::Index k = 0; k < energies.size(); ++k) sum += std::exp(-checked.beta * (energies[k] - lowest));
  return -checked.beta * lowest + std::log(sum);
}

GibbsState gibbs_state(const HermitianOperator& h, double beta) {
  ThermalParams checked(beta);
  const SpectralDecomposition sd = spectral_decompose(h);
  const double lowest = sd.eigenvalues.minCoeff();
  RealVector w(sd.eigenvalues.size());
  for (Eigen::Index k = 0; k < w.size(); ++k) w[k] = std::exp(-checked.beta * (sd.eigenvalues[k] - lowest));
  const double sum = w.sum();
  w /= sum;
  GibbsState g;
  g.state = DensityMatrix(sd.eigenvectors * w.cast<Complex>().asDiagonal() * sd.eigenvectors.adjoint());
  g.log_partition_function = -checked.beta * lowest + std::log(sum);
  g.partition_function = std::exp(g.log_partition_function);
  return g;
}

double von_neumann_entropy(const DensityMatrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho.matrix(), Eigen::EigenvaluesOnly);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double r = es.eigenvalues()[k];
    if (r > 0.0) s -= r * std::log(r);
  }
  return s;
}

double quantum_relative_entropy(const DensityMatrix& rho, const DensityMatrix& eta) {
  if (rho.dim() != eta.dim()) throw ValidationError("quantum_relative_entropy: dimension mismatch");
  const SpectralDecomposition es = spectral_decompose(eta.as_operator());
  const Matrix overlaps = in_basis(rho.matrix(), es);
  double cross = 0.0;
  double outside = 0.0;
  for (Eigen::Index m = 0; m < overlaps.rows(); ++m) {
    const double eta_m = es.eigenvalues[m];
    const double weight = overlaps(m, m).real();
    if (eta_m > tol::support) {
      cross += weight * std::log(eta_m);
    } else {
      outside += weight;
    }
  }
  if (outside > tol::psd) return std::numeric_limits<double>::infinity();
  return -von_neumann_entropy(rho) - cross;
}

double relative_entropy_of_coherence(const DensityMatrix& rho0, const SpectralDecomposition& basis) {
  return von_neumann_entropy(dephase(rho0, basis)) - von_neumann_entropy(rho0);
}

}  // namespace qwork
