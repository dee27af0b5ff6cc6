#include "qwork/distribution.hpp"

#include <algorithm>
#include <cmath>

namespace qwork {

namespace {

template <typename T, typename Key>
std::vector<std::pair<std::size_t, std::size_t>> runs(const std::vector<T>& sorted, Key key, double tol) {
  std::vector<std::pair<std::size_t, std::size_t>> out;
  std::size_t start = 0;
  while (start < sorted.size()) {
    std::size_t end = start + 1;
    while (end < sorted.size() && key(sorted[end]) - key(sorted[start]) <= tol) ++end;
    out.emplace_back(start, end);
    start = end;
  }
  return out;
}

}  // namespace

double relative_merge_tol(double max_abs_a, double max_abs_b) { return 1e-9 * (max_abs_a + max_abs_b + 1.0); }

DeltaDistribution::DeltaDistribution(std::vector<Atom> raw, double merge_tol, double prune_tol)
    : merge_tol_(merge_tol) {
  std::sort(raw.begin(), raw.end(), [](const Atom& a, const Atom& b) {
    return a.position < b.position || (a.position == b.position && a.weight < b.weight);
  });
  for (auto [begin, end] : runs(raw, [](const Atom& a) { return a.position; }, merge_tol)) {
    double w = 0.0;
    for (std::size_t k = begin; k < end; ++k) w += raw[k].weight;
    if (std::abs(w) > prune_tol) atoms_.push_back({raw[begin].position, w});
  }
}

double DeltaDistribution::total_weight() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

double DeltaDistribution::negative_weight() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::min(a.weight, 0.0);
  return s;
}

double DeltaDistribution::positive_weight() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += std::max(a.weight, 0.0);
  return s;
}

double DeltaDistribution::expectation(const std::function<double(double)>& f) const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight * f(a.position);
  return s;
}

double DeltaDistribution::moment(int n) const {
  return expectation([n](double x) { return std::pow(x, n); });
}

std::complex<double> DeltaDistribution::fourier(double u) const {
  std::complex<double> s = 0.0;
  for (const auto& a : atoms_) s += a.weight * std::polar(1.0, u * a.position);
  return s;
}

JointDeltaDistribution::JointDeltaDistribution(std::vector<JointAtom> raw, double work_tol, double coherence_tol,
                                               double prune_tol)
    : work_tol_(work_tol), coherence_tol_(coherence_tol) {
  std::sort(raw.begin(), raw.end(), [](const JointAtom& a, const JointAtom& b) {
    if (a.work != b.work) return a.work < b.work;
    if (a.coherence != b.coherence) return a.coherence < b.coherence;
    return a.weight < b.weight;
  });
  for (auto [wb, we] : runs(raw, [](const JointAtom& a) { return a.work; }, work_tol)) {
    std::vector<JointAtom> column(raw.begin() + static_cast<std::ptrdiff_t>(wb),
                                  raw.begin() + static_cast<std::ptrdiff_t>(we));
    std::stable_sort(column.begin(), column.end(),
                     [](const JointAtom& a, const JointAtom& b) { return a.coherence < b.coherence; });
    const double work = column.front().work;
    for (auto [cb, ce] : runs(column, [](const JointAtom& a) { return a.coherence; }, coherence_tol)) {
      double w = 0.0;
      for (std::size_t k = cb; k < ce; ++k) w += column[k].weight;
      if (std::abs(w) > prune_tol) atoms_.push_back({work, column[cb].coherence, w});
    }
  }
}

double JointDeltaDistribution::total_weight() const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight;
  return s;
}

double JointDeltaDistribution::expectation(const std::function<double(double, double)>& f) const {
  double s = 0.0;
  for (const auto& a : atoms_) s += a.weight * f(a.work, a.coherence);
  return s;
}

DeltaDistribution JointDeltaDistribution::work_marginal() const {
  std::vector<Atom> raw;
  raw.reserve(atoms_.size());
  for (const auto& a : atoms_) raw.push_back({a.work, a.weight});
  return DeltaDistribution(std::move(raw), work_tol_);
}

DeltaDistribution JointDeltaDistribution::coherence_marginal() const {
  std::vector<Atom> raw;
  raw.reserve(atoms_.size());
  for (const auto& a : atoms_) raw.push_back({a.coherence, a.weight});
  return DeltaDistribution(std::move(raw), coherence_tol_);
}

double max_weight_discrepancy(const DeltaDistribution& a, const DeltaDistribution& b) {
  std::vector<Atom> combined = a.atoms();
  for (const auto& atom : b.atoms()) combined.push_back({atom.position, -atom.weight});
  const DeltaDistribution diff(std::move(combined), std::max(a.merge_tol(), b.merge_tol()), 0.0);
  double worst = 0.0;
  for (const auto& atom : diff.atoms()) worst = std::max(worst, std::abs(atom.weight));
  return worst;
}

double max_weight_discrepancy(const JointDeltaDistribution& a, const JointDeltaDistribution& b) {
  std::vector<JointAtom> combined = a.atoms();
  for (const auto& atom : b.atoms()) combined.push_back({atom.work, atom.coherence, -atom.weight});
  const JointDeltaDistribution diff(std::move(combined), std::max(a.work_tol(), b.work_tol()),
                                    std::max(a.coherence_tol(), b.coherence_tol()), 0.0);
  double worst = 0.0;
  for (const auto& atom : diff.atoms()) worst = std::max(worst, std::abs(atom.weight));
  return worst;
}

}  // namespace qwork
