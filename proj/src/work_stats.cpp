#include "qwork/work_stats.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace qwork {

namespace {

std::size_t checked_index(std::size_t idx, std::size_t dim, const char* name) {
  if (idx >= dim) {
    std::ostringstream os;
    os << "negativity_operator: index " << name << " = " << idx << " out of range [0, " << dim << ")";
    throw ValidationError(os.str());
  }
  return idx;
}

Eigen::Index ix(std::size_t k) { return static_cast<Eigen::Index>(k); }

// exp(i s H(0)) built from the work context's adapted basis.
Matrix initial_exp_i(const WorkContext& ctx, double s) { return hermitian_exp_i(ctx.basis0(), s); }

// exp(i u H^(H)(tau)) = U^dagger exp(i u H(tau)) U
Matrix heisenberg_exp_i(const WorkContext& ctx, double u) {
  const Matrix& U = ctx.evolution().matrix();
  return U.adjoint() * hermitian_exp_i(ctx.basis_tau(), u) * U;
}

}  // namespace

Process Process::from_schedule(const HamiltonianSchedule& sched, const PropagatorOptions& options) {
  return from_unitary(sched.initial(), sched.final(), propagator(sched, sched.duration, options));
}

Process Process::from_unitary(HermitianOperator h_initial, HermitianOperator h_final, UnitaryOperator u) {
  if (h_initial.dim() != h_final.dim() || h_initial.dim() != u.dim()) {
    throw ValidationError("Process: dimension mismatch between H(0), H(tau) and U");
  }
  return Process{std::move(h_initial), std::move(h_final), std::move(u)};
}

WorkContext::WorkContext(Process process, DensityMatrix rho0) : process_(std::move(process)), rho0_(std::move(rho0)) {
  if (rho0_.dim() != process_.dim()) throw ValidationError("WorkContext: rho0 dimension differs from the process");
  basis0_ = degeneracy_adapted_basis(process_.h_initial, rho0_);
  basis_tau_ = spectral_decompose(process_.h_final);
  heisenberg_final_ = heisenberg_operator(process_.h_final, process_.evolution);
  rho_energy_ = in_basis(rho0_.matrix(), basis0_);
  // coherences at rounding level from the basis change are exact zeros
  const double flush = 32.0 * std::numeric_limits<double>::epsilon() * static_cast<double>(dim());
  for (Eigen::Index r = 0; r < rho_energy_.rows(); ++r) {
    for (Eigen::Index c = 0; c < rho_energy_.cols(); ++c) {
      if (r != c && std::abs(rho_energy_(r, c)) <= flush) rho_energy_(r, c) = 0.0;
    }
  }
  transition_ = basis_tau_.eigenvectors.adjoint() * process_.evolution.matrix() * basis0_.eigenvectors;
}

double WorkContext::work_merge_tol() const {
  return relative_merge_tol(basis_tau_.eigenvalues.cwiseAbs().maxCoeff(), basis0_.eigenvalues.cwiseAbs().maxCoeff());
}

WorkContext WorkContext::with_state(DensityMatrix rho) const { return WorkContext(process_, std::move(rho)); }

ThermoOffsets thermo_offsets(const WorkContext& ctx, double beta) {
  ThermoOffsets t;
  t.log_z_initial = log_partition_function(ctx.basis0().eigenvalues, beta);
  t.log_z_final = log_partition_function(ctx.basis_tau().eigenvalues, beta);
  t.free_energy_change = -(t.log_z_final - t.log_z_initial) / beta;
  return t;
}

double work_position(const WorkContext& ctx, double q, std::size_t k, std::size_t i, std::size_t j) {
  const double ek = ctx.basis_tau().eigenvalues[ix(k)];
  const double ei = ctx.basis0().eigenvalues[ix(i)];
  if (i == j) return ek - ei;
  const double ej = ctx.basis0().eigenvalues[ix(j)];
  return ek - q * ei - (1.0 - q) * ej;
}

std::complex<double> transition_product(const WorkContext& ctx, std::size_t k, std::size_t i, std::size_t j) {
  const Matrix& T = ctx.transition();
  if (i == j) return {std::norm(T(ix(k), ix(i))), 0.0};
  return T(ix(k), ix(i)) * std::conj(T(ix(k), ix(j)));
}

DeltaDistribution tpm_distribution(const WorkContext& ctx) {
  const std::size_t d = ctx.dim();
  std::vector<Atom> raw;
  raw.reserve(d * d);
  for (std::size_t j = 0; j < d; ++j) {
    const double pop = ctx.rho_energy()(ix(j), ix(j)).real();
    for (std::size_t k = 0; k < d; ++k) {
      double w = pop * transition_product(ctx, k, j, j).real();
      if (w < 0.0 && w > -1e-12) w = 0.0;
      raw.push_back({work_position(ctx, 0.0, k, j, j), w});
    }
  }
  return DeltaDistribution(std::move(raw), ctx.work_merge_tol());
}

DeltaDistribution quasiprob_distribution(const WorkContext& ctx, double q) {
  const std::size_t d = ctx.dim();
  std::vector<Atom> raw;
  raw.reserve(d * d * d);
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const Complex rho_ij = ctx.rho_energy()(ix(i), ix(j));
      if (i != j && rho_ij == 0.0) continue;
      for (std::size_t k = 0; k < d; ++k) {
        const double w = i == j ? rho_ij.real() * transition_product(ctx, k, i, i).real()
                                : (rho_ij * transition_product(ctx, k, i, j)).real();
        raw.push_back({work_position(ctx, q, k, i, j), w});
      }
    }
  }
  return DeltaDistribution(std::move(raw), ctx.work_merge_tol());
}

double work_moment_numeric(const DeltaDistribution& dist, int n) {
  if (n < 0) throw ValidationError("work_moment_numeric: negative order");
  if (n == 0) return dist.total_weight();
  return dist.moment(n);
}

double work_moment_analytic(const WorkContext& ctx, double q, int n) {
  const Matrix& h0 = ctx.process().h_initial.matrix();
  const Matrix& hh = ctx.heisenberg_final().matrix();
  const Matrix& rho = ctx.rho0().matrix();
  const Matrix delta = hh - h0;
  switch (n) {
    case 1:
      return (delta * rho).trace().real();
    case 2:
      return (delta * delta * rho).trace().real();
    case 3: {
      const Matrix inner = commutator(hh, h0);
      const double cubic = (delta * delta * delta * rho).trace().real();
      const double sym = (commutator(hh + h0, inner) * rho).trace().real();
      const double coh = (commutator(h0, inner) * rho).trace().real();
      return cubic - 0.5 * sym + 3.0 * q * (1.0 - q) * coh;
    }
    default: {
      std::ostringstream os;
      os << "work_moment_analytic: order " << n << " not in {1, 2, 3}";
      throw ValidationError(os.str());
    }
  }
}

CharFnValue char_fn_q(const WorkContext& ctx, double q, double u) {
  if (u == 0.0) return {u, 1.0};
  const Matrix a = initial_exp_i(ctx, -u * q);
  const Matrix b = initial_exp_i(ctx, -u * (1.0 - q));
  const Matrix e = heisenberg_exp_i(ctx, u);
  const Matrix& rho = ctx.rho0().matrix();
  const Complex first = (a * rho * b * e).trace();
  const Complex second = (b * rho * a * e).trace();
  return {u, 0.5 * (first + second)};
}

CharFnValue char_fn_tpm(const WorkContext& ctx, double u) {
  if (u == 0.0) return {u, 1.0};
  const DensityMatrix dephased = dephase(ctx.rho0(), ctx.basis0());
  return {u, (dephased.matrix() * initial_exp_i(ctx, -u) * heisenberg_exp_i(ctx, u)).trace()};
}

std::complex<double> coherence_correction(const WorkContext& ctx, double q, double u) {
  const std::size_t d = ctx.dim();
  const Matrix e = in_basis(heisenberg_exp_i(ctx, u), ctx.basis0());
  const RealVector& eps = ctx.basis0().eigenvalues;
  Complex sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      if (i == j) continue;
      const double ei = eps[ix(i)];
      const double ej = eps[ix(j)];
      const Complex phases =
          std::polar(1.0, -u * (q * ei + (1.0 - q) * ej)) + std::polar(1.0, -u * ((1.0 - q) * ei + q * ej));
      sum += phases * ctx.rho_energy()(ix(i), ix(j)) * e(ix(j), ix(i));
    }
  }
  return 0.5 * sum;
}

FluctuationRatio fluctuation_ratio(const WorkContext& ctx, double q, double beta) {
  const ThermoOffsets th = thermo_offsets(ctx, beta);
  const DeltaDistribution dist = quasiprob_distribution(ctx, q);
  FluctuationRatio out;
  out.lhs = dist.expectation([&](double w) { return std::exp(-beta * (w - th.free_energy_change)); });

  out.rhs = tilted_gibbs_trace(ctx, ctx.rho_energy(), q, beta);
  return out;
}

double tilted_gibbs_trace(const WorkContext& ctx, const Matrix& a_energy, double q, double beta) {
  const std::size_t d = ctx.dim();
  if (static_cast<std::size_t>(a_energy.rows()) != d || static_cast<std::size_t>(a_energy.cols()) != d) {
    throw ValidationError("tilted_gibbs_trace: operator dimension differs from the context");
  }
  const ThermoOffsets th = thermo_offsets(ctx, beta);
  const RealVector& e0 = ctx.basis0().eigenvalues;
  const RealVector& e1 = ctx.basis_tau().eigenvalues;
  const Matrix& T = ctx.transition();
  // rho^{(H)}_{beta,tau} in the H(0) eigenbasis: T^dagger diag(e^{-beta e'_k} / Z_tau) T
  RealVector gibbs_tau(e1.size());
  for (Eigen::Index k = 0; k < e1.size(); ++k) gibbs_tau[k] = std::exp(-beta * e1[k] - th.log_z_final);
  const Matrix reversed = T.adjoint() * gibbs_tau.cast<Complex>().asDiagonal() * T;
  double sum = 0.0;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      const double expo = beta * q * (e0[ix(i)] - e0[ix(j)]) + beta * e0[ix(j)] + th.log_z_initial;
      sum += std::exp(expo) * (a_energy(ix(i), ix(j)) * reversed(ix(j), ix(i))).real();
    }
  }
  return sum;
}

HermitianOperator negativity_operator(const WorkContext& ctx, std::size_t i, std::size_t j, std::size_t k) {
  const std::size_t d = ctx.dim();
  checked_index(i, d, "i");
  checked_index(j, d, "j");
  checked_index(k, d, "k");
  const Vector ei = ctx.basis0().vector(i);
  const Vector ej = ctx.basis0().vector(j);
  const Matrix a = transition_product(ctx, k, i, j) * (ej * ei.adjoint());
  return HermitianOperator(0.5 * (a + a.adjoint()));
}

NegativityEntry negativity_entry(const WorkContext& ctx, double q) {
  const DeltaDistribution dist = quasiprob_distribution(ctx, q);
  NegativityEntry e;
  e.q = q;
  e.negative_weight = dist.negative_weight();
  e.positive_weight = dist.positive_weight();
  for (const auto& atom : dist.atoms()) {
    if (!e.most_negative || atom.weight < e.most_negative->weight) e.most_negative = atom;
  }
  e.has_negativity = e.most_negative && e.most_negative->weight < -negativity_threshold;
  if (!e.has_negativity) e.most_negative.reset();
  return e;
}

NegativityReport negativity_report(const WorkContext& ctx, const std::vector<double>& q_grid, Execution exec) {
  if (q_grid.empty()) throw ValidationError("negativity_report: empty q grid");
  NegativityReport report;
  report.entries.resize(q_grid.size());
  for_each_index(q_grid.size(), exec,
                 [&](std::size_t k) { report.entries[k] = negativity_entry(ctx, q_grid[k]); });

  const std::size_t d = ctx.dim();
  double lo = 0.0;
  double hi = 0.0;
  bool first = true;
  for (std::size_t i = 0; i < d; ++i) {
    for (std::size_t j = 0; j < d; ++j) {
      for (std::size_t k = 0; k < d; ++k) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(negativity_operator(ctx, i, j, k).matrix(), Eigen::EigenvaluesOnly);
        const double emin = es.eigenvalues().minCoeff();
        const double emax = es.eigenvalues().maxCoeff();
        lo = first ? emin : std::min(lo, emin);
        hi = first ? emax : std::max(hi, emax);
        first = false;
      }
    }
  }
  report.min_operator_eigenvalue = lo;
  report.max_operator_eigenvalue = hi;
  return report;
}

}  // namespace qwork
