#pragma once

#include <complex>
#include <vector>

#include "qwork/distribution.hpp"
#include "qwork/work_stats.hpp"

namespace qwork {

/// A WorkContext plus the spectrum of rho0 and its energy populations.
///
/// `overlap(i, n)` = <e_i|r_n>. Spectral weights r_n at or below
/// tol::support are flagged as outside the support.
class CoherenceContext {
 public:
  explicit CoherenceContext(WorkContext ctx);

  const WorkContext& work() const noexcept { return work_; }
  const SpectralDecomposition& rho_spectrum() const noexcept { return rho_spectrum_; }
  const RealVector& populations() const noexcept { return populations_; }
  const Matrix& overlap() const noexcept { return overlap_; }
  std::size_t dim() const noexcept { return work_.dim(); }

  bool in_support(std::size_t n) const;
  bool full_rank() const;
  double coherence_merge_tol() const;

 private:
  WorkContext work_;
  SpectralDecomposition rho_spectrum_;
  RealVector populations_;
  Matrix overlap_;
};

struct SecondLawGap {
  double lhs = 0.0;               // beta(<w> - dF) + <C>
  double relative_entropy = 0.0;  // S(rho_tau || rho_{beta,tau})
};

struct ChangeOfVariable {
  DeltaDistribution transformed;  // law of beta(w - dF) + C under p_{q,q}
  DeltaDistribution entropy_production;
};

/// Throws PreconditionError naming the first level whose population deviates
/// from exp(-beta e_i)/Z_0 by more than tol::thermal (relative).
void require_thermal_populations(const CoherenceContext& cctx, double beta);
double max_thermal_population_deviation(const CoherenceContext& cctx, double beta);

DeltaDistribution coherence_distribution(const CoherenceContext& cctx);
std::complex<double> coherence_char_fn(const CoherenceContext& cctx, double t);

JointDeltaDistribution joint_distribution(const CoherenceContext& cctx, double q, double q_prime);

/// Sum over C of e^{-C} p(w, C) at each w.
DeltaDistribution tilted_marginal(const JointDeltaDistribution& joint);

FluctuationRatio coherence_fluctuation_ratio(const CoherenceContext& cctx, double q, double q_prime, double beta);

SecondLawGap second_law_gap(const CoherenceContext& cctx, double beta);

DeltaDistribution entropy_production_distribution(const CoherenceContext& cctx, double beta);

ChangeOfVariable change_of_variable_check(const CoherenceContext& cctx, double q, double beta);

}  // namespace qwork
