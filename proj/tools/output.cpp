#include "output.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <stdexcept>

namespace qwork::cli {

std::string fmt(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

Csv::Csv(std::vector<std::string> columns) : width_(columns.size()) {
  for (std::size_t k = 0; k < columns.size(); ++k) text_ += (k ? "," : "") + columns[k];
  text_ += '\n';
}

void Csv::row(const std::vector<double>& values) {
  if (values.size() != width_) throw std::logic_error("Csv::row: wrong column count");
  for (std::size_t k = 0; k < values.size(); ++k) text_ += (k ? "," : "") + fmt(values[k]);
  text_ += '\n';
}

std::string atoms_csv(const DeltaDistribution& d, const std::string& position_column) {
  Csv csv({position_column, "weight"});
  for (const Atom& a : d.atoms()) csv.row({a.position, a.weight});
  return csv.str();
}

std::string joint_atoms_csv(const JointDeltaDistribution& d) {
  std::vector<JointAtom> atoms = d.atoms();
  std::sort(atoms.begin(), atoms.end(), [](const JointAtom& a, const JointAtom& b) {
    if (a.work != b.work) return a.work < b.work;
    if (a.coherence != b.coherence) return a.coherence < b.coherence;
    return a.weight < b.weight;
  });
  Csv csv({"w", "C", "weight"});
  for (const JointAtom& a : atoms) csv.row({a.work, a.coherence, a.weight});
  return csv.str();
}

void OutputSet::add(std::string name, std::string content) { files_.emplace_back(std::move(name), std::move(content)); }

void OutputSet::add_json(std::string name, const nlohmann::ordered_json& j) { add(std::move(name), j.dump(2) + "\n"); }

void OutputSet::commit(const std::filesystem::path& dir) const {
  std::filesystem::create_directories(dir);
  for (const auto& [name, content] : files_) {
    const std::filesystem::path target = dir / name;
    std::filesystem::path tmp = target;
    tmp += ".tmp";
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      out << content;
      if (!out) throw std::runtime_error("cannot write " + tmp.string());
    }
    std::filesystem::rename(tmp, target);
  }
}

}  // namespace qwork::cli
