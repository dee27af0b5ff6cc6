#pragma once

#include <complex>
#include <functional>
#include <vector>

namespace qwork {

struct Atom {
  double position = 0.0;
  double weight = 0.0;
};

struct JointAtom {
  double work = 0.0;
  double coherence = 0.0;
  double weight = 0.0;
};

/// Sum_i weight_i delta(x - position_i). Weights are real and may be negative.
///
/// Construction merges atoms whose positions lie within `merge_tol` of the
/// first atom of a run (sorted ascending), sums their weights, and drops
/// merged weights with magnitude at or below `prune_tol`. Atoms are kept
/// sorted by position, then weight.
class DeltaDistribution {
 public:
  static constexpr double default_prune_tol = 1e-15;

  DeltaDistribution() = default;
  DeltaDistribution(std::vector<Atom> raw, double merge_tol, double prune_tol = default_prune_tol);

  const std::vector<Atom>& atoms() const noexcept { return atoms_; }
  double merge_tol() const noexcept { return merge_tol_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double total_weight() const;
  double negative_weight() const;
  double positive_weight() const;

  /// Sum_i w_i f(x_i)
  double expectation(const std::function<double(double)>& f) const;
  double moment(int n) const;
  std::complex<double> fourier(double u) const;

 private:
  std::vector<Atom> atoms_;
  double merge_tol_ = 0.0;
};

/// Two-dimensional counterpart over (w, C); merging is componentwise.
class JointDeltaDistribution {
 public:
  JointDeltaDistribution() = default;
  JointDeltaDistribution(std::vector<JointAtom> raw, double work_tol, double coherence_tol,
                         double prune_tol = DeltaDistribution::default_prune_tol);

  const std::vector<JointAtom>& atoms() const noexcept { return atoms_; }
  double work_tol() const noexcept { return work_tol_; }
  double coherence_tol() const noexcept { return coherence_tol_; }
  std::size_t size() const noexcept { return atoms_.size(); }

  double total_weight() const;
  double expectation(const std::function<double(double, double)>& f) const;

  DeltaDistribution work_marginal() const;
  DeltaDistribution coherence_marginal() const;

 private:
  std::vector<JointAtom> atoms_;
  double work_tol_ = 0.0;
  double coherence_tol_ = 0.0;
};

/// Largest |weight_a - weight_b| over merged positions, with an atom absent on
/// one side counting as weight zero. Positions merge within the larger of the
/// two merge tolerances.
double max_weight_discrepancy(const DeltaDistribution& a, const DeltaDistribution& b);
double max_weight_discrepancy(const JointDeltaDistribution& a, const JointDeltaDistribution& b);

/// merge_tol rule for sums of eigenvalues: 1e-9 (max|a| + max|b| + 1).
double relative_merge_tol(double max_abs_a, double max_abs_b);

}  // namespace qwork
