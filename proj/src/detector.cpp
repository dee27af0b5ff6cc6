#include "qwork/detector.hpp"

#include <cmath>
#include <sstream>

namespace qwork {

namespace {

Matrix kron(const Matrix& a, const Matrix& b) {
  Matrix out(a.rows() * b.rows(), a.cols() * b.cols());
  for (Eigen::Index r = 0; r < a.rows(); ++r) {
    for (Eigen::Index c = 0; c < a.cols(); ++c) {
      out.block(r * b.rows(), c * b.cols(), b.rows(), b.cols()) = a(r, c) * b;
    }
  }
  return out;
}

// Tr over the system factor of a (2 x d) x (2 x d) operator.
Matrix trace_system(const Matrix& m, Eigen::Index d) {
  Matrix out(2, 2);
  for (Eigen::Index a = 0; a < 2; ++a) {
    for (Eigen::Index b = 0; b < 2; ++b) out(a, b) = m.block(a * d, b * d, d, d).trace();
  }
  return out;
}

}  // namespace

DensityMatrix DetectorSpec::default_state() {
  Vector plus(2);
  plus << 1.0, 1.0;
  return DensityMatrix::pure(plus);
}

HermitianOperator DetectorSpec::observable() const {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = lambda1;
  m(1, 1) = lambda2;
  return HermitianOperator(m);
}

void DetectorSpec::validate() const {
  if (rho_d0.dim() != 2) throw ValidationError("DetectorSpec: detector state must be 2x2");
  const double coh = std::abs(rho_d0.matrix()(0, 1));
  if (!(coh > 1e-12)) {
    std::ostringstream os;
    os << "DetectorSpec: initial detector coherence |<l1|rho_D|l2>| = " << coh << " too small";
    throw ValidationError(os.str());
  }
}

UnitaryOperator kicked_propagator(const Process& process, const DetectorSpec& spec) {
  const Matrix lambda = spec.observable().matrix();
  const HermitianOperator kick0(kron(lambda, process.h_initial.matrix()));
  const HermitianOperator kick_tau(kron(lambda, process.h_final.matrix()));
  const Matrix evolve = kron(Matrix::Identity(2, 2), process.evolution.matrix());
  return UnitaryOperator(hermitian_exp_i(kick_tau, 1.0) * evolve * hermitian_exp_i(kick0, -1.0));
}

DensityMatrix detector_final_state(const Process& process, const DetectorSpec& spec, const DensityMatrix& rho0) {
  if (rho0.dim() != process.dim()) throw ValidationError("detector_final_state: dimension mismatch");
  const Matrix v = kicked_propagator(process, spec).matrix();
  const Matrix total = v * kron(spec.rho_d0.matrix(), rho0.matrix()) * v.adjoint();
  return DensityMatrix(trace_system(total, static_cast<Eigen::Index>(process.dim())));
}

std::complex<double> detector_coherence_ratio(const Process& process, const DetectorSpec& spec,
                                              const DensityMatrix& rho0) {
  spec.validate();
  const DensityMatrix final_state = detector_final_state(process, spec, rho0);
  return final_state.matrix()(0, 1) / spec.rho_d0.matrix()(0, 1);
}

std::complex<double> coherence_ratio_trace(const Process& process, double lambda1, double lambda2,
                                           const DensityMatrix& rho0) {
  const Matrix& U = process.evolution.matrix();
  const SpectralDecomposition s0 = spectral_decompose(process.h_initial);
  const Matrix heis = U.adjoint() * hermitian_exp_i(process.h_final, lambda1 - lambda2) * U;
  return (hermitian_exp_i(s0, -lambda1) * rho0.matrix() * hermitian_exp_i(s0, lambda2) * heis).trace();
}

CharFnValue measure_char_fn(const Process& process, const DensityMatrix& rho0, double q, double u,
                            const DensityMatrix& rho_d0) {
  if (u == 0.0) return {u, 1.0};
  const DetectorSpec first{u * q, u * (q - 1.0), rho_d0};
  const DetectorSpec second{u * (1.0 - q), -u * q, rho_d0};
  const Complex value =
      0.5 * (detector_coherence_ratio(process, first, rho0) + detector_coherence_ratio(process, second, rho0));
  return {u, value};
}

}  // namespace qwork
