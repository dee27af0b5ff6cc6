#include "qwork/coherence_stats.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace qwork {

namespace {

Eigen::Index ix(std::size_t k) { return static_cast<Eigen::Index>(k); }

bool population_usable(const CoherenceContext& cctx, std::size_t i) {
  return cctx.populations()[ix(i)] > tol::support;
}

double max_abs_log(const RealVector& values, double floor) {
  double m = 0.0;
  for (Eigen::Index k = 0; k < values.size(); ++k) {
    if (values[k] > floor) m = std::max(m, std::abs(std::log(values[k])));
  }
  return m;
}

}  // namespace

CoherenceContext::CoherenceContext(WorkContext ctx) : work_(std::move(ctx)) {
  rho_spectrum_ = spectral_decompose(work_.rho0().as_operator());
  populations_ = work_.rho_energy().diagonal().real();
  overlap_ = work_.basis0().eigenvectors.adjoint() * rho_spectrum_.eigenvectors;
  const std::size_t d = dim();
  for (std::size_t n = 0; n < d; ++n) {
    if (!in_support(n)) continue;
    for (std::size_t i = 0; i < d; ++i) {
      const double w = rho_spectrum_.eigenvalues[ix(n)] * std::norm(overlap_(ix(i), ix(n)));
      if (w > tol::support && populations_[ix(i)] <= 0.0) {
        std::ostringstream os;
        os << "CoherenceContext: level " << i << " has zero population but overlaps the support of rho0";
        throw PreconditionError(os.str());
      }
    }
  }
}

bool CoherenceContext::in_support(std::size_t n) const { return rho_spectrum_.eigenvalues[ix(n)] > tol::support; }

bool CoherenceContext::full_rank() const {
  for (std::size_t n = 0; n < dim(); ++n) {
    if (!in_support(n)) return false;
  }
  return true;
}

double CoherenceContext::coherence_merge_tol() const {
  return relative_merge_tol(max_abs_log(rho_spectrum_.eigenvalues, tol::support),
                            max_abs_log(populations_, tol::support));
}

double max_thermal_population_deviation(const CoherenceContext& cctx, double beta) {
  const RealVector& eps = cctx.work().basis0().eigenvalues;
  const double log_z = log_partition_function(eps, beta);
  double worst = 0.0;
  for (std::size_t i = 0; i < cctx.dim(); ++i) {
    const double thermal = std::exp(-beta * eps[ix(i)] - log_z);
    worst = std::max(worst, std::abs(cctx.populations()[ix(i)] - thermal) / thermal);
  }
  return worst;
}

void require_thermal_populations(const CoherenceContext& cctx, double beta) {
  const RealVector& eps = cctx.work().basis0().eigenvalues;
  const double log_z = log_partition_function(eps, beta);
  for (std::size_t i = 0; i < cctx.dim(); ++i) {
    const double thermal = std::exp(-beta * eps[ix(i)] - log_z);
    const double dev = std::abs(cctx.populations()[ix(i)] - thermal) / thermal;
    if (dev > tol::thermal) {
      std::ostringstream os;
      os << "thermal populations required: level " << i << " (energy " << eps[ix(i)] << ") has population "
         << cctx.populations()[ix(i)] << ", expected " << thermal << " (relative deviation " << dev << ")";
      throw PreconditionError(os.str());
    }
  }
}

DeltaDistribution coherence_distribution(const CoherenceContext& cctx) {
  const std::size_t d = cctx.dim();
  const RealVector& r = cctx.rho_spectrum().eigenvalues;
  std::vector<Atom> raw;
  for (std::size_t n = 0; n < d; ++n) {
    if (!cctx.in_support(n)) continue;
    for (std::size_t i = 0; i < d; ++i) {
      if (!population_usable(cctx, i)) continue;
      const double w = r[ix(n)] * std::norm(cctx.overlap()(ix(i), ix(n)));
      raw.push_back({std::log(r[ix(n)]) - std::log(cctx.populations()[ix(i)]), w});
    }
  }
  return DeltaDistribution(std::move(raw), cctx.coherence_merge_tol());
}

std::complex<double> coherence_char_fn(const CoherenceContext& cctx, double t) {
  if (t == 0.0) return 1.0;
  const std::size_t d = cctx.dim();
  const SpectralDecomposition& rs = cctx.rho_spectrum();
  Vector rho_phase(ix(d));
  for (std::size_t n = 0; n < d; ++n) {
    const double r = rs.eigenvalues[ix(n)];
    rho_phase[ix(n)] = cctx.in_support(n) ? r * std::polar(1.0, t * std::log(r)) : Complex(0.0);
  }
  Vector deph_phase(ix(d));
  for (std::size_t i = 0; i < d; ++i) {
    deph_phase[ix(i)] =
        population_usable(cctx, i) ? std::polar(1.0, -t * std::log(cctx.populations()[ix(i)])) : Complex(1.0);
  }
  // rho e^{it ln rho} and e^{-it ln Delta(rho)}
  const Matrix a = rs.eigenvectors * rho_phase.asDiagonal() * rs.eigenvectors.adjoint();
  const Matrix& v0 = cctx.work().basis0().eigenvectors;
  const Matrix b = v0 * deph_phase.asDiagonal() * v0.adjoint();
  return (a * b).trace();
}

JointDeltaDistribution joint_distribution(const CoherenceContext& cctx, double q, double q_prime) {
  const WorkContext& ctx = cctx.work();
  const std::size_t d = cctx.dim();
  const RealVector& r = cctx.rho_spectrum().eigenvalues;
  const RealVector& pops = cctx.populations();
  const Matrix& ov = cctx.overlap();
  std::vector<JointAtom> raw;
  raw.reserve(d * d * d * d);
  for (std::size_t n = 0; n < d; ++n) {
    if (!cctx.in_support(n)) continue;
    const double log_r = std::log(r[ix(n)]);
    for (std::size_t i = 0; i < d; ++i) {
      for (std::size_t j = 0; j < d; ++j) {
        const Complex amp = r[ix(n)] * ov(ix(i), ix(n)) * std::conj(ov(ix(j), ix(n)));
        if (!population_usable(cctx, i) || !population_usable(cctx, j)) {
          if (std::abs(amp) > tol::support) {
            std::ostringstream os;
            os << "joint_distribution: vanishing population at level " << (population_usable(cctx, i) ? j : i)
               << " with non-negligible amplitude " << std::abs(amp);
            throw PreconditionError(os.str());
          }
          continue;
        }
        const double coherence = i == j ? log_r - std::log(pops[ix(i)])
                                        : log_r - q_prime * std::log(pops[ix(i)]) -
                                              (1.0 - q_prime) * std::log(pops[ix(j)]);
        for (std::size_t k = 0; k < d; ++k) {
          const double w = i == j ? amp.real() * transition_product(ctx, k, i, i).real()
                                  : (amp * transition_product(ctx, k, i, j)).real();
          raw.push_back({work_position(ctx, q, k, i, j), coherence, w});
        }
      }
    }
  }
  return JointDeltaDistribution(std::move(raw), ctx.work_merge_tol(), cctx.coherence_merge_tol());
}

DeltaDistribution tilted_marginal(const JointDeltaDistribution& joint) {
  std::vector<Atom> raw;
  raw.reserve(joint.size());
  for (const auto& a : joint.atoms()) raw.push_back({a.work, a.weight * std::exp(-a.coherence)});
  return DeltaDistribution(std::move(raw), joint.work_tol());
}

FluctuationRatio coherence_fluctuation_ratio(const CoherenceContext& cctx, double q, double q_prime, double beta) {
  const WorkContext& ctx = cctx.work();
  const ThermoOffsets th = thermo_offsets(ctx, beta);
  const JointDeltaDistribution joint = joint_distribution(cctx, q, q_prime);
  FluctuationRatio out;
  out.lhs = joint.expectation(
      [&](double w, double c) { return std::exp(-beta * (w - th.free_energy_change) - c); });
  const Matrix dephased = cctx.populations().cast<Complex>().asDiagonal();
  out.rhs = tilted_gibbs_trace(ctx, dephased, 0.0, beta);
  return out;
}

SecondLawGap second_law_gap(const CoherenceContext& cctx, double beta) {
  ThermalParams checked(beta);
  require_thermal_populations(cctx, beta);
  const WorkContext& ctx = cctx.work();
  const ThermoOffsets th = thermo_offsets(ctx, beta);
  SecondLawGap gap;
  gap.lhs = beta * (work_moment_analytic(ctx, 0.0, 1) - th.free_energy_change) +
            relative_entropy_of_coherence(ctx.rho0(), ctx.basis0());
  const Matrix& U = ctx.evolution().matrix();
  const DensityMatrix rho_tau(U * ctx.rho0().matrix() * U.adjoint());
  gap.relative_entropy = quantum_relative_entropy(rho_tau, gibbs_state(ctx.process().h_final, beta).state);
  return gap;
}

DeltaDistribution entropy_production_distribution(const CoherenceContext& cctx, double beta) {
  ThermalParams checked(beta);
  const WorkContext& ctx = cctx.work();
  const std::size_t d = cctx.dim();
  const ThermoOffsets th = thermo_offsets(ctx, beta);
  const SpectralDecomposition& rs = cctx.rho_spectrum();
  const RealVector& eps_tau = ctx.basis_tau().eigenvalues;
  // <e'_k|U|r_n>
  const Matrix amp = ctx.basis_tau().eigenvectors.adjoint() * ctx.evolution().matrix() * rs.eigenvectors;
  std::vector<Atom> raw;
  raw.reserve(d * d);
  for (std::size_t n = 0; n < d; ++n) {
    if (!cctx.in_support(n)) continue;
    const double r = rs.eigenvalues[ix(n)];
    for (std::size_t k = 0; k < d; ++k) {
      raw.push_back({std::log(r) + beta * eps_tau[ix(k)] + th.log_z_final, r * std::norm(amp(ix(k), ix(n)))});
    }
  }
  const double tol = relative_merge_tol(max_abs_log(rs.eigenvalues, tol::support),
                                        beta * eps_tau.cwiseAbs().maxCoeff() + std::abs(th.log_z_final));
  return DeltaDistribution(std::move(raw), tol);
}

ChangeOfVariable change_of_variable_check(const CoherenceContext& cctx, double q, double beta) {
  ThermalParams checked(beta);
  require_thermal_populations(cctx, beta);
  const ThermoOffsets th = thermo_offsets(cctx.work(), beta);
  DeltaDistribution ps = entropy_production_distribution(cctx, beta);
  const JointDeltaDistribution joint = joint_distribution(cctx, q, q);
  std::vector<Atom> raw;
  raw.reserve(joint.size());
  for (const auto& a : joint.atoms()) raw.push_back({beta * (a.work - th.free_energy_change) + a.coherence, a.weight});
  const double tol = std::max(ps.merge_tol(), beta * joint.work_tol() + joint.coherence_tol());
  return {DeltaDistribution(std::move(raw), tol), std::move(ps)};
}

}  // namespace qwork
