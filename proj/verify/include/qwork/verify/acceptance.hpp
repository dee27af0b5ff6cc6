#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

namespace qwork::verify {

/// Accumulates tolerance checks and remembers the tightest one.
class Tally {
 public:
  /// Passes when error <= tol (NaN fails).
  void check(std::string_view label, double error, double tol);
  void require(std::string_view label, bool ok);

  bool passed() const noexcept { return failures_ == 0; }
  std::size_t count() const noexcept { return count_; }
  std::size_t failures() const noexcept { return failures_; }
  std::string summary() const;

 private:
  std::size_t count_ = 0;
  std::size_t failures_ = 0;
  double worst_ratio_ = -1.0;
  std::string worst_;
  std::string first_failure_;
};

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double seconds = 0.0;
  double budget_seconds = 0.0;
  std::size_t checks = 0;
  std::string detail;
};

inline constexpr std::uint64_t default_seed = 20231017;
inline constexpr int criterion_count = 10;

CriterionResult run_criterion(int id, std::uint64_t seed = default_seed);
std::vector<CriterionResult> run_acceptance(std::uint64_t seed = default_seed);

/// "PASS [3] title (1.23 s / 20 s): detail"
std::string format_result(const CriterionResult& r);

}  // namespace qwork::verify
