#include "qwork/verify/oracle.hpp"

#include <algorithm>
#include <cmath>

namespace qwork::verify::oracle {

namespace {

Complex braket(const Vector& bra, const Matrix& op, const Vector& ket) { return bra.dot(op * ket); }
Complex braket(const Vector& bra, const Vector& ket) { return bra.dot(ket); }

}  // namespace

Matrix exp_minus_i(const Matrix& h, double dt) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h);
  Vector phases(h.rows());
  for (Eigen::Index k = 0; k < h.rows(); ++k) phases[k] = std::polar(1.0, -es.eigenvalues()[k] * dt);
  return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

std::vector<Point> quasiprob_atoms(const Matrix& h0, const Matrix& h1, const Matrix& u, const Matrix& rho,
                                   double q) {
  Eigen::SelfAdjointEigenSolver<Matrix> s0(h0);
  Eigen::SelfAdjointEigenSolver<Matrix> s1(h1);
  const auto d = h0.rows();
  std::vector<Point> out;
  for (Eigen::Index i = 0; i < d; ++i) {
    const Vector ei = s0.eigenvectors().col(i);
    for (Eigen::Index j = 0; j < d; ++j) {
      const Vector ej = s0.eigenvectors().col(j);
      const Complex rho_ij = braket(ei, rho, ej);
      for (Eigen::Index k = 0; k < d; ++k) {
        const Vector ek = s1.eigenvectors().col(k);
        const Complex forward = braket(ek, u, ei);
        const Complex backward = std::conj(braket(ek, u, ej));
        const double w = s1.eigenvalues()[k] - q * s0.eigenvalues()[i] - (1.0 - q) * s0.eigenvalues()[j];
        out.push_back({w, (rho_ij * backward * forward).real()});
      }
    }
  }
  return out;
}

std::vector<JointPoint> joint_atoms(const Matrix& h0, const Matrix& h1, const Matrix& u, const Matrix& rho, double q,
                                    double q_prime) {
  Eigen::SelfAdjointEigenSolver<Matrix> s0(h0);
  Eigen::SelfAdjointEigenSolver<Matrix> s1(h1);
  Eigen::SelfAdjointEigenSolver<Matrix> sr(rho);
  const auto d = h0.rows();
  std::vector<double> pop(static_cast<std::size_t>(d));
  for (Eigen::Index i = 0; i < d; ++i) {
    const Vector ei = s0.eigenvectors().col(i);
    pop[static_cast<std::size_t>(i)] = braket(ei, rho, ei).real();
  }
  std::vector<JointPoint> out;
  for (Eigen::Index n = 0; n < d; ++n) {
    const double r = sr.eigenvalues()[n];
    const Vector rn = sr.eigenvectors().col(n);
    for (Eigen::Index i = 0; i < d; ++i) {
      const Vector ei = s0.eigenvectors().col(i);
      for (Eigen::Index j = 0; j < d; ++j) {
        const Vector ej = s0.eigenvectors().col(j);
        const Complex proj = braket(ei, rn) * braket(rn, ej);
        const double c = std::log(r) - q_prime * std::log(pop[static_cast<std::size_t>(i)]) -
                         (1.0 - q_prime) * std::log(pop[static_cast<std::size_t>(j)]);
        for (Eigen::Index k = 0; k < d; ++k) {
          const Vector ek = s1.eigenvectors().col(k);
          const Complex amp = std::conj(braket(ek, u, ej)) * braket(ek, u, ei);
          const double w = s1.eigenvalues()[k] - q * s0.eigenvalues()[i] - (1.0 - q) * s0.eigenvalues()[j];
          out.push_back({w, c, r * (proj * amp).real()});
        }
      }
    }
  }
  return out;
}

std::vector<Point> merge(std::vector<Point> points, double tol) {
  std::sort(points.begin(), points.end(), [](const Point& a, const Point& b) { return a.x < b.x; });
  std::vector<Point> out;
  for (const Point& p : points) {
    if (!out.empty() && p.x - out.back().x <= tol) {
      out.back().weight += p.weight;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

std::vector<JointPoint> merge(std::vector<JointPoint> points, double tol_w, double tol_c) {
  // greedy clustering against cluster representatives; O(n^2) is fine here
  std::vector<JointPoint> out;
  for (const JointPoint& p : points) {
    auto hit = std::find_if(out.begin(), out.end(), [&](const JointPoint& c) {
      return std::abs(c.w - p.w) <= tol_w && std::abs(c.c - p.c) <= tol_c;
    });
    if (hit != out.end()) {
      hit->weight += p.weight;
    } else {
      out.push_back(p);
    }
  }
  return out;
}

double discrepancy(const std::vector<Point>& a, const std::vector<Point>& b, double tol) {
  std::vector<Point> all = a;
  for (const Point& p : b) all.push_back({p.x, -p.weight});
  double worst = 0.0;
  for (const Point& p : merge(all, tol)) worst = std::max(worst, std::abs(p.weight));
  return worst;
}

double discrepancy(const std::vector<JointPoint>& a, const std::vector<JointPoint>& b, double tol_w, double tol_c) {
  std::vector<JointPoint> all = a;
  for (const JointPoint& p : b) all.push_back({p.w, p.c, -p.weight});
  double worst = 0.0;
  for (const JointPoint& p : merge(all, tol_w, tol_c)) worst = std::max(worst, std::abs(p.weight));
  return worst;
}

}  // namespace qwork::verify::oracle
