#pragma once

#include <span>
#include <vector>

#include "qwork/coherence_stats.hpp"
#include "qwork/detector.hpp"
#include "qwork/work_stats.hpp"

// Grid kernels. Each takes an Execution policy: `serial` is the reference
// loop, `parallel` distributes grid points over OpenMP threads. Both produce
// results in grid order.
namespace qwork::sweep {

struct CharFnSample {
  double q = 0.0;
  double u = 0.0;
  std::complex<double> trace;       // symmetrized trace formula
  std::complex<double> atoms;       // Fourier sum over p_q atoms
  std::complex<double> tpm;         // chi(u)
  std::complex<double> correction;  // coherence correction term
};

/// Every (q, u) pair, q-major.
std::vector<CharFnSample> char_fn_grid(const WorkContext& ctx, std::span<const double> q_grid,
                                       std::span<const double> u_grid, Execution exec = Execution::parallel);

struct DetectorSample {
  double q = 0.0;
  double u = 0.0;
  std::complex<double> measured;
  std::complex<double> direct;
};

std::vector<DetectorSample> detector_grid(const WorkContext& ctx, std::span<const double> q_grid,
                                          std::span<const double> u_grid, Execution exec = Execution::parallel);

std::vector<FluctuationRatio> fluctuation_grid(const WorkContext& ctx, std::span<const double> q_grid, double beta,
                                               Execution exec = Execution::parallel);

struct JointSample {
  double q = 0.0;
  double q_prime = 0.0;
  FluctuationRatio ratio;
};

std::vector<JointSample> coherence_fluctuation_grid(const CoherenceContext& cctx, std::span<const double> q_grid,
                                                    std::span<const double> q_prime_grid, double beta,
                                                    Execution exec = Execution::parallel);

}  // namespace qwork::sweep
