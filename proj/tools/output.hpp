#pragma once

#include <filesystem>
#include <string>
#include <utility>
#include <vector>

#include "json.hpp"
#include "qwork/distribution.hpp"

namespace qwork::cli {

/// %.17g
std::string fmt(double x);

/// CSV table with a fixed header; numbers formatted with `fmt`.
class Csv {
 public:
  explicit Csv(std::vector<std::string> columns);
  void row(const std::vector<double>& values);
  std::string str() const { return text_; }

 private:
  std::size_t width_;
  std::string text_;
};

std::string atoms_csv(const DeltaDistribution& d, const std::string& position_column);
std::string joint_atoms_csv(const JointDeltaDistribution& d);

/// Files staged in memory and written only once every result is ready.
class OutputSet {
 public:
  void add(std::string name, std::string content);
  void add_json(std::string name, const nlohmann::ordered_json& j);
  /// Each file goes to a temporary sibling and is renamed into place.
  void commit(const std::filesystem::path& dir) const;
  const std::vector<std::pair<std::string, std::string>>& files() const { return files_; }

 private:
  std::vector<std::pair<std::string, std::string>> files_;
};

}  // namespace qwork::cli
