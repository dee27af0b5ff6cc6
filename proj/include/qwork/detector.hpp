#pragma once

#include <complex>

#include "qwork/work_stats.hpp"

namespace qwork {

/// Two-level detector: Lambda = diag(lambda1, lambda2) in its eigenbasis
/// {|0>, |1>}, prepared in `rho_d0`.
struct DetectorSpec {
  double lambda1 = 0.0;
  double lambda2 = 0.0;
  DensityMatrix rho_d0 = default_state();

  /// |+><+| in the Lambda basis.
  static DensityMatrix default_state();

  HermitianOperator observable() const;
  /// Throws if |<lambda1|rho_d0|lambda2>| <= 1e-12.
  void validate() const;
};

/// exp(+i Lambda (x) H(tau)) (I (x) U) exp(-i Lambda (x) H(0)) on detector (x) system
/// (detector is the slow index).
UnitaryOperator kicked_propagator(const Process& process, const DetectorSpec& spec);

/// Detector state after the protocol, system traced out.
DensityMatrix detector_final_state(const Process& process, const DetectorSpec& spec, const DensityMatrix& rho0);

/// <lambda1|rho_D(tau)|lambda2> / <lambda1|rho_D(0)|lambda2>
std::complex<double> detector_coherence_ratio(const Process& process, const DetectorSpec& spec,
                                              const DensityMatrix& rho0);

/// Tr[e^{-i l1 H(0)} rho0 e^{i l2 H(0)} e^{i(l1 - l2) H^(H)(tau)}], evaluated directly.
std::complex<double> coherence_ratio_trace(const Process& process, double lambda1, double lambda2,
                                           const DensityMatrix& rho0);

/// chi_q(u) recovered from two detector runs at (uq, u(q-1)) and (u(1-q), -uq).
CharFnValue measure_char_fn(const Process& process, const DensityMatrix& rho0, double q, double u,
                            const DensityMatrix& rho_d0 = DetectorSpec::default_state());

}  // namespace qwork
