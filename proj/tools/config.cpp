#include "config.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

namespace qwork::cli {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("field '" + path + "': " + what);
}

class Node {
 public:
  Node(const json& j, std::string path) : j_(j), path_(std::move(path)) {}

  const std::string& path() const { return path_; }
  const json& raw() const { return j_; }
  bool has(const std::string& key) const { return j_.is_object() && j_.contains(key); }

  Node at(const std::string& key) const {
    if (!has(key)) fail(child_path(key), "missing");
    return Node(j_.at(key), child_path(key));
  }
  Node at(std::size_t k) const { return Node(j_.at(k), path_ + "[" + std::to_string(k) + "]"); }

  void require_object() const {
    if (!j_.is_object()) fail(path_, "expected an object");
  }
  std::size_t array_size() const {
    if (!j_.is_array()) fail(path_, "expected an array");
    return j_.size();
  }

  /// Rejects keys outside `allowed` so that typos are reported.
  void only(std::initializer_list<const char*> allowed) const {
    require_object();
    const std::set<std::string> keys(allowed.begin(), allowed.end());
    for (const auto& item : j_.items()) {
      if (!keys.count(item.key())) fail(child_path(item.key()), "unknown field");
    }
  }

  double number() const {
    if (!j_.is_number()) fail(path_, "expected a number");
    const double v = j_.get<double>();
    if (!std::isfinite(v)) fail(path_, "must be finite");
    return v;
  }
  std::size_t count() const {
    if (!j_.is_number_integer() || j_.get<long long>() < 1) fail(path_, "expected a positive integer");
    return static_cast<std::size_t>(j_.get<long long>());
  }
  bool boolean() const {
    if (!j_.is_boolean()) fail(path_, "expected true or false");
    return j_.get<bool>();
  }
  std::string string() const {
    if (!j_.is_string()) fail(path_, "expected a string");
    return j_.get<std::string>();
  }

  double number_or(const std::string& key, double fallback) const { return has(key) ? at(key).number() : fallback; }
  bool boolean_or(const std::string& key, bool fallback) const { return has(key) ? at(key).boolean() : fallback; }

 private:
  std::string child_path(const std::string& key) const { return path_.empty() ? key : path_ + "." + key; }

  const json& j_;
  std::string path_;
};

Complex entry(const Node& n) {
  if (n.raw().is_number()) return {n.number(), 0.0};
  if (n.raw().is_array() && n.raw().size() == 2) return {n.at(0).number(), n.at(1).number()};
  fail(n.path(), "expected a number or an [re, im] pair");
}

Matrix matrix(const Node& n) {
  const std::size_t rows = n.array_size();
  if (rows == 0) fail(n.path(), "empty matrix");
  Matrix m(static_cast<Eigen::Index>(rows), static_cast<Eigen::Index>(rows));
  for (std::size_t r = 0; r < rows; ++r) {
    const Node row = n.at(r);
    if (row.array_size() != rows) {
      fail(row.path(), "expected " + std::to_string(rows) + " entries (matrices must be square)");
    }
    for (std::size_t c = 0; c < rows; ++c) m(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = entry(row.at(c));
  }
  return m;
}

template <typename T, typename Fn>
T validated(const Node& n, Fn&& make) {
  try {
    return make();
  } catch (const ValidationError& e) {
    fail(n.path(), e.what());
  }
}

HermitianOperator hermitian(const Node& n) {
  return validated<HermitianOperator>(n, [&] { return HermitianOperator(matrix(n)); });
}

/// A list, a single number, or {"from", "to", "count"}.
std::vector<double> grid(const Node& n) {
  if (n.raw().is_number()) return {n.number()};
  if (n.raw().is_object()) {
    n.only({"from", "to", "count"});
    const double a = n.at("from").number();
    const double b = n.at("to").number();
    const std::size_t k = n.at("count").count();
    if (k == 1) return {a};
    std::vector<double> out(k);
    for (std::size_t i = 0; i < k; ++i) out[i] = a + (b - a) * static_cast<double>(i) / static_cast<double>(k - 1);
    return out;
  }
  const std::size_t size = n.array_size();
  if (size == 0) fail(n.path(), "empty grid");
  std::vector<double> out;
  for (std::size_t i = 0; i < size; ++i) out.push_back(n.at(i).number());
  return out;
}

std::vector<double> default_u_grid() {
  std::vector<double> out(64);
  for (std::size_t k = 0; k < out.size(); ++k) out[k] = -4.0 + 8.0 * static_cast<double>(k) / 63.0;
  return out;
}

PropagatorOptions propagator_options(const Node& root) {
  PropagatorOptions opt;
  if (!root.has("propagator")) return opt;
  const Node n = root.at("propagator");
  n.only({"initial_steps", "max_refinements", "tolerance"});
  if (n.has("initial_steps")) opt.initial_steps = n.at("initial_steps").count();
  if (n.has("max_refinements")) opt.max_refinements = n.at("max_refinements").count();
  if (n.has("tolerance")) {
    opt.tolerance = n.at("tolerance").number();
    if (!(opt.tolerance > 0.0)) fail(n.at("tolerance").path(), "must be positive");
  }
  return opt;
}

struct ScheduleResult {
  std::string type;
  Process process;
  std::optional<qubit::QubitProcessParams> qubit;
};

ScheduleResult schedule(const Node& root, const PropagatorOptions& opt, double beta) {
  const Node n = root.at("schedule");
  n.require_object();
  const std::string type = n.at("type").string();
  const bool sudden_default = root.boolean_or("sudden", false);
  ScheduleResult out{type, {}, std::nullopt};

  if (type == "qubit_example") {
    n.only({"type", "omega0", "omega_tau", "tau", "sudden"});
    qubit::QubitProcessParams p;
    p.omega0 = n.number_or("omega0", p.omega0);
    p.omega_tau = n.number_or("omega_tau", p.omega_tau);
    p.tau = n.number_or("tau", root.number_or("tau", p.tau));
    p.sudden = n.boolean_or("sudden", sudden_default);
    p.beta = beta;
    p.validate();
    out.qubit = p;
    out.process = qubit::qubit_process(p, opt);
  } else if (type == "constant") {
    n.only({"type", "H", "duration"});
    const HermitianOperator h = hermitian(n.at("H"));
    const double duration = n.number_or("duration", 1.0);
    if (!(duration > 0.0)) fail(n.at("duration").path(), "must be positive");
    out.process = Process::from_schedule(HamiltonianSchedule::constant(h, duration), opt);
  } else if (type == "piecewise") {
    n.only({"type", "nodes", "interpolation", "sudden"});
    const Node nodes = n.at("nodes");
    const std::size_t count = nodes.array_size();
    if (count < 2) fail(nodes.path(), "need at least two nodes");
    std::vector<double> times;
    std::vector<Matrix> hs;
    for (std::size_t k = 0; k < count; ++k) {
      const Node node = nodes.at(k);
      node.only({"t", "H"});
      times.push_back(node.at("t").number());
      hs.push_back(hermitian(node.at("H")).matrix());
      if (k == 0 && times[0] != 0.0) fail(node.at("t").path(), "first node must be at t = 0");
      if (k > 0 && !(times[k] > times[k - 1])) fail(node.at("t").path(), "node times must increase");
      if (hs[k].rows() != hs[0].rows()) fail(node.at("H").path(), "dimension differs from the first node");
    }
    const std::string interp = n.has("interpolation") ? n.at("interpolation").string() : "linear";
    if (interp != "linear" && interp != "previous") {
      fail(n.at("interpolation").path(), "expected \"linear\" or \"previous\"");
    }
    const bool sudden = n.boolean_or("sudden", sudden_default);
    if (sudden) {
      out.process = Process::from_schedule(
          HamiltonianSchedule::sudden(HermitianOperator(hs.front()), HermitianOperator(hs.back())), opt);
    } else {
      HamiltonianSchedule s;
      s.dim = static_cast<std::size_t>(hs[0].rows());
      s.duration = times.back();
      const bool linear = interp == "linear";
      s.evaluator = [times, hs, linear](double t) -> Matrix {
        std::size_t k = 0;
        while (k + 2 < times.size() && t > times[k + 1]) ++k;
        if (!linear) return t >= times[k + 1] ? hs[k + 1] : hs[k];
        const double s = std::clamp((t - times[k]) / (times[k + 1] - times[k]), 0.0, 1.0);
        return (1.0 - s) * hs[k] + s * hs[k + 1];
      };
      out.process = Process::from_schedule(s, opt);
    }
  } else if (type == "sudden") {
    n.only({"type", "H0", "H1"});
    out.process = Process::from_schedule(HamiltonianSchedule::sudden(hermitian(n.at("H0")), hermitian(n.at("H1"))), opt);
  } else if (type == "unitary") {
    n.only({"type", "H0", "H1", "U"});
    const HermitianOperator h0 = hermitian(n.at("H0"));
    const HermitianOperator h1 = hermitian(n.at("H1"));
    const Node un = n.at("U");
    const UnitaryOperator u = validated<UnitaryOperator>(un, [&] { return UnitaryOperator(matrix(un)); });
    if (h1.dim() != h0.dim()) fail(n.at("H1").path(), "dimension differs from H0");
    if (u.dim() != h0.dim()) fail(un.path(), "dimension differs from H0");
    out.process = Process::from_unitary(h0, h1, u);
  } else {
    fail(n.at("type").path(), "unknown schedule type \"" + type +
                                  "\" (expected qubit_example, constant, piecewise, sudden or unitary)");
  }
  return out;
}

DensityMatrix state(const Node& root, ScheduleResult& sched, double beta) {
  const Node n = root.at("state");
  n.require_object();
  const std::string type = n.at("type").string();
  const std::size_t d = sched.process.dim();
  DensityMatrix rho;
  if (type == "matrix") {
    n.only({"type", "rho", "dephase"});
    const Node r = n.at("rho");
    rho = validated<DensityMatrix>(r, [&] { return DensityMatrix(matrix(r)); });
    if (rho.dim() != d) fail(r.path(), "dimension " + std::to_string(rho.dim()) + " differs from the Hamiltonian's " + std::to_string(d));
  } else if (type == "gibbs") {
    n.only({"type", "beta", "dephase"});
    const double b = n.number_or("beta", beta);
    if (!(b > 0.0)) fail(n.path() + ".beta", "must be positive");
    rho = gibbs_state(sched.process.h_initial, b).state;
    if (sched.qubit) {
      sched.qubit->p = qubit::thermal_population(b, sched.qubit->omega0);
      sched.qubit->c = 0.0;
    }
  } else if (type == "coherent_gibbs" || type == "qubit") {
    if (!sched.qubit) fail(n.at("type").path(), "\"" + type + "\" requires the qubit_example schedule");
    qubit::QubitProcessParams& p = *sched.qubit;
    if (type == "coherent_gibbs") {
      n.only({"type", "dephase"});
      p.p = qubit::thermal_population(beta, p.omega0);
      p.c = std::sqrt(p.p * (1.0 - p.p));
    } else {
      n.only({"type", "p", "c", "dephase"});
      p.p = n.at("p").number();
      p.c = n.number_or("c", 0.0);
      validated<int>(n, [&] { p.validate(); return 0; });
    }
    rho = qubit::initial_state(p);
  } else {
    fail(n.at("type").path(), "unknown state type \"" + type + "\" (expected matrix, gibbs, coherent_gibbs or qubit)");
  }
  if (n.boolean_or("dephase", false)) {
    rho = dephase(rho, degeneracy_adapted_basis(sched.process.h_initial, rho));
    if (sched.qubit) sched.qubit->c = 0.0;
  }
  return rho;
}

std::size_t json_line(const std::string& text, std::size_t byte) {
  const auto end = text.begin() + static_cast<std::ptrdiff_t>(std::min(byte, text.size()));
  return static_cast<std::size_t>(std::count(text.begin(), end, '\n')) + 1;
}

}  // namespace

CliConfig parse_config(const std::string& text, const std::string& source, const Overrides& overrides) {
  json doc;
  try {
    doc = json::parse(text, nullptr, true, true);
  } catch (const json::parse_error& e) {
    std::ostringstream os;
    os << source << ": line " << json_line(text, e.byte) << ": " << e.what();
    throw ConfigError(os.str());
  }
  const Node root(doc, "");
  root.only({"dim", "beta", "tau", "sudden", "q", "q_prime", "u", "tau_grid", "schedule", "state", "propagator"});

  CliConfig cfg;
  cfg.beta = overrides.beta ? *overrides.beta : root.number_or("beta", 1.0);
  if (!(cfg.beta > 0.0)) fail("beta", "must be positive");
  cfg.propagator = propagator_options(root);

  ScheduleResult sched;
  try {
    sched = schedule(root, cfg.propagator, cfg.beta);
  } catch (const ValidationError& e) {
    fail("schedule", e.what());
  }
  if (root.has("dim") && root.at("dim").count() != sched.process.dim()) {
    fail("dim", "is " + std::to_string(root.at("dim").count()) + " but the schedule has dimension " +
                    std::to_string(sched.process.dim()));
  }
  cfg.rho0 = state(root, sched, cfg.beta);
  cfg.schedule_type = sched.type;
  cfg.process = sched.process;
  cfg.qubit = sched.qubit;

  cfg.q_grid = overrides.q ? *overrides.q : root.has("q") ? grid(root.at("q")) : qubit::default_q_grid();
  cfg.q_prime_grid = root.has("q_prime") ? grid(root.at("q_prime")) : std::vector<double>{0.0, 0.5, 1.0};
  cfg.u_grid = overrides.u ? *overrides.u : root.has("u") ? grid(root.at("u")) : default_u_grid();
  cfg.tau_grid = root.has("tau_grid") ? grid(root.at("tau_grid")) : qubit::fig1_default_tau_grid();
  if (cfg.q_grid.empty()) fail("q", "empty grid");
  if (cfg.u_grid.empty()) fail("u", "empty grid");
  return cfg;
}

CliConfig load_config(const std::optional<std::filesystem::path>& path, const Overrides& overrides) {
  if (!path) {
    return parse_config(R"({"schedule": {"type": "qubit_example"}, "state": {"type": "coherent_gibbs"}})",
                        "<default>", overrides);
  }
  std::ifstream in(*path, std::ios::binary);
  if (!in) throw ConfigError(path->string() + ": cannot open file");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str(), path->string(), overrides);
}

nlohmann::ordered_json matrix_to_json(const Matrix& m) {
  nlohmann::ordered_json rows = nlohmann::ordered_json::array();
  for (Eigen::Index r = 0; r < m.rows(); ++r) {
    nlohmann::ordered_json row = nlohmann::ordered_json::array();
    for (Eigen::Index c = 0; c < m.cols(); ++c) row.push_back({m(r, c).real(), m(r, c).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

nlohmann::ordered_json resolved_config(const CliConfig& cfg) {
  nlohmann::ordered_json j;
  j["dim"] = cfg.process.dim();
  j["beta"] = cfg.beta;
  j["q"] = cfg.q_grid;
  j["q_prime"] = cfg.q_prime_grid;
  j["u"] = cfg.u_grid;
  j["schedule"] = {{"type", "unitary"},
                   {"H0", matrix_to_json(cfg.process.h_initial.matrix())},
                   {"H1", matrix_to_json(cfg.process.h_final.matrix())},
                   {"U", matrix_to_json(cfg.process.evolution.matrix())}};
  j["state"] = {{"type", "matrix"}, {"rho", matrix_to_json(cfg.rho0.matrix())}};
  return j;
}

}  // namespace qwork::cli
