#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <map>

#include "CLI11.hpp"
#include "config.hpp"
#include "output.hpp"
#include "qwork/coherence_stats.hpp"
#include "qwork/sweep.hpp"
#include "qwork/verify/acceptance.hpp"

using namespace qwork;
using namespace qwork::cli;
using nlohmann::ordered_json;

namespace {

enum Exit { ok = 0, failure = 1, config_error = 2, precondition_error = 3, convergence_error = 4 };

struct Run {
  const CliConfig& cfg;
  OutputSet& out;
  ordered_json& results;
};

using Command = std::function<void(Run&)>;

WorkContext work_context(const CliConfig& cfg) { return WorkContext(cfg.process, cfg.rho0); }

DensityMatrix final_state(const CliConfig& cfg) {
  const Matrix& u = cfg.process.evolution.matrix();
  return DensityMatrix(u * cfg.rho0.matrix() * u.adjoint());
}

ordered_json distribution_summary(const DeltaDistribution& d) {
  return {{"atoms", d.size()},
          {"total_weight", d.total_weight()},
          {"negative_weight", d.negative_weight()},
          {"mean", d.moment(1)},
          {"second_moment", d.moment(2)}};
}

std::string indexed(const std::string& stem, std::size_t k) { return stem + "_" + std::to_string(k) + ".csv"; }

void cmd_tpm(Run& r) {
  const DeltaDistribution d = tpm_distribution(work_context(r.cfg));
  r.out.add("tpm.csv", atoms_csv(d, "w"));
  r.results = distribution_summary(d);
}

void cmd_quasiprob(Run& r) {
  const WorkContext ctx = work_context(r.cfg);
  r.results = ordered_json::array();
  for (std::size_t k = 0; k < r.cfg.q_grid.size(); ++k) {
    const double q = r.cfg.q_grid[k];
    const DeltaDistribution d = quasiprob_distribution(ctx, q);
    r.out.add(indexed("quasiprob", k), atoms_csv(d, "w"));
    ordered_json entry = {{"q", q}, {"file", indexed("quasiprob", k)}};
    entry.update(distribution_summary(d));
    entry["third_moment"] = d.moment(3);
    entry["third_moment_trace"] = work_moment_analytic(ctx, q, 3);
    r.results.push_back(std::move(entry));
  }
}

void cmd_charfn(Run& r) {
  const auto grid = sweep::char_fn_grid(work_context(r.cfg), r.cfg.q_grid, r.cfg.u_grid);
  Csv csv({"q", "u", "re", "im", "tpm_re", "tpm_im", "correction_re", "correction_im", "atoms_re", "atoms_im"});
  double worst = 0.0;
  for (const auto& s : grid) {
    csv.row({s.q, s.u, s.trace.real(), s.trace.imag(), s.tpm.real(), s.tpm.imag(), s.correction.real(),
             s.correction.imag(), s.atoms.real(), s.atoms.imag()});
    worst = std::max(worst, std::abs(s.trace - s.atoms));
  }
  r.out.add("charfn.csv", csv.str());
  r.results = {{"points", grid.size()}, {"max_trace_vs_atoms", worst}};
}

void cmd_joint(Run& r) {
  const CoherenceContext cctx(work_context(r.cfg));
  r.results = ordered_json::array();
  std::size_t k = 0;
  for (double q : r.cfg.q_grid) {
    for (double qp : r.cfg.q_prime_grid) {
      const JointDeltaDistribution j = joint_distribution(cctx, q, qp);
      r.out.add(indexed("joint", k), joint_atoms_csv(j));
      r.results.push_back({{"q", q},
                           {"q_prime", qp},
                           {"file", indexed("joint", k)},
                           {"atoms", j.size()},
                           {"total_weight", j.total_weight()},
                           {"mean_w", j.expectation([](double w, double) { return w; })},
                           {"mean_C", j.expectation([](double, double c) { return c; })}});
      ++k;
    }
  }
}

void cmd_coherence(Run& r) {
  const CoherenceContext cctx(work_context(r.cfg));
  const DeltaDistribution d = coherence_distribution(cctx);
  r.out.add("coherence.csv", atoms_csv(d, "C"));
  Csv chi({"t", "re", "im"});
  for (double t : r.cfg.u_grid) {
    const std::complex<double> v = coherence_char_fn(cctx, t);
    chi.row({t, v.real(), v.imag()});
  }
  r.out.add("coherence_charfn.csv", chi.str());
  r.results = distribution_summary(d);
  r.results["full_rank"] = cctx.full_rank();
  r.results["mean_exp_minus_C"] = d.expectation([](double c) { return std::exp(-c); });
  r.results["relative_entropy_of_coherence"] =
      relative_entropy_of_coherence(r.cfg.rho0, cctx.work().basis0());
}

void cmd_entropy_production(Run& r) {
  const CoherenceContext cctx(work_context(r.cfg));
  const DeltaDistribution d = entropy_production_distribution(cctx, r.cfg.beta);
  r.out.add("entropy_production.csv", atoms_csv(d, "sigma"));
  r.results = distribution_summary(d);
  r.results["mean_exp_minus_sigma"] = d.expectation([](double s) { return std::exp(-s); });
  r.results["relative_entropy"] =
      quantum_relative_entropy(final_state(r.cfg), gibbs_state(r.cfg.process.h_final, r.cfg.beta).state);
}

void cmd_fluctuation(Run& r) {
  const WorkContext ctx = work_context(r.cfg);
  const auto plain = sweep::fluctuation_grid(ctx, r.cfg.q_grid, r.cfg.beta);
  Csv csv({"q", "lhs", "rhs"});
  double worst = 0.0;
  for (std::size_t k = 0; k < plain.size(); ++k) {
    csv.row({r.cfg.q_grid[k], plain[k].lhs, plain[k].rhs});
    worst = std::max(worst, std::abs(plain[k].lhs - plain[k].rhs));
  }
  r.out.add("fluctuation.csv", csv.str());
  r.results = {{"beta", r.cfg.beta}, {"max_lhs_minus_rhs", worst}};

  const CoherenceContext cctx(ctx);
  if (!cctx.full_rank()) {
    r.results["coherence_relation"] = "skipped: initial state is not full rank";
    return;
  }
  const auto joint = sweep::coherence_fluctuation_grid(cctx, r.cfg.q_grid, r.cfg.q_prime_grid, r.cfg.beta);
  Csv jcsv({"q", "q_prime", "lhs", "rhs"});
  double jworst = 0.0;
  for (const auto& s : joint) {
    jcsv.row({s.q, s.q_prime, s.ratio.lhs, s.ratio.rhs});
    jworst = std::max(jworst, std::abs(s.ratio.lhs - s.ratio.rhs));
  }
  r.out.add("fluctuation_coherence.csv", jcsv.str());
  r.results["coherence_max_lhs_minus_rhs"] = jworst;
}

void cmd_second_law(Run& r) {
  const CoherenceContext cctx(work_context(r.cfg));
  const SecondLawGap g = second_law_gap(cctx, r.cfg.beta);
  Csv csv({"beta", "lhs", "relative_entropy", "gap"});
  csv.row({r.cfg.beta, g.lhs, g.relative_entropy, g.lhs - g.relative_entropy});
  r.out.add("second_law.csv", csv.str());
  r.results = {{"beta", r.cfg.beta},
               {"lhs", g.lhs},
               {"relative_entropy", g.relative_entropy},
               {"gap", g.lhs - g.relative_entropy}};
}

void cmd_detector(Run& r) {
  const auto grid = sweep::detector_grid(work_context(r.cfg), r.cfg.q_grid, r.cfg.u_grid);
  Csv csv({"q", "u", "measured_re", "measured_im", "direct_re", "direct_im"});
  double worst = 0.0;
  for (const auto& s : grid) {
    csv.row({s.q, s.u, s.measured.real(), s.measured.imag(), s.direct.real(), s.direct.imag()});
    worst = std::max(worst, std::abs(s.measured - s.direct));
  }
  r.out.add("detector.csv", csv.str());
  r.results = {{"points", grid.size()}, {"max_measured_vs_direct", worst}};
}

void cmd_negativity(Run& r) {
  const NegativityReport rep = negativity_report(work_context(r.cfg), r.cfg.q_grid);
  Csv csv({"q", "negative_weight", "positive_weight", "has_negativity", "most_negative_w", "most_negative_weight"});
  bool any = false;
  for (const NegativityEntry& e : rep.entries) {
    const Atom worst = e.most_negative.value_or(Atom{0.0, 0.0});
    csv.row({e.q, e.negative_weight, e.positive_weight, e.has_negativity ? 1.0 : 0.0, worst.position, worst.weight});
    any = any || e.has_negativity;
  }
  r.out.add("negativity.csv", csv.str());
  r.results = {{"any_negativity", any},
               {"min_operator_eigenvalue", rep.min_operator_eigenvalue},
               {"max_operator_eigenvalue", rep.max_operator_eigenvalue}};
}

void cmd_qubit_demo(Run& r) {
  if (!r.cfg.qubit) throw ConfigError("field 'schedule.type': qubit-demo requires the qubit_example schedule");
  const qubit::Fig1Sweep sw = qubit::fig1_sweep(*r.cfg.qubit, r.cfg.q_grid, r.cfg.tau_grid);
  Csv table({"tau_omega0", "sudden", "q", "value", "rhs"});
  for (const auto& row : sw.rows) table.row({row.tau_omega0, row.sudden ? 1.0 : 0.0, row.q, row.value, row.rhs});
  r.out.add("fig1.csv", table.str());
  Csv axes({"tau_omega0", "sudden", "n_x", "n_y", "n_z"});
  r.results = ordered_json::array();
  const std::size_t nq = r.cfg.q_grid.size();
  for (std::size_t c = 0; c < sw.columns.size(); ++c) {
    const auto& col = sw.columns[c];
    axes.row({col.tau_omega0, col.sudden ? 1.0 : 0.0, col.axis[0], col.axis[1], col.axis[2]});
    double lo = INFINITY, hi = -INFINITY, sum = 0.0, q_min_dev = 0.0, min_dev = INFINITY;
    for (std::size_t k = 0; k < nq; ++k) {
      const auto& row = sw.rows[c * nq + k];
      lo = std::min(lo, row.value);
      hi = std::max(hi, row.value);
      sum += row.value;
      if (std::abs(row.value - 1.0) < min_dev) min_dev = std::abs(row.value - 1.0), q_min_dev = row.q;
    }
    r.results.push_back({{"tau_omega0", col.tau_omega0},
                         {"sudden", col.sudden},
                         {"n_z", col.axis[2]},
                         {"min", lo},
                         {"max", hi},
                         {"mean", sum / static_cast<double>(nq)},
                         {"q_closest_to_one", q_min_dev}});
  }
  r.out.add("fig1_axes.csv", axes.str());
}

const std::map<std::string, std::pair<Command, std::string>>& commands() {
  static const std::map<std::string, std::pair<Command, std::string>> table = {
      {"tpm", {cmd_tpm, "two-point-measurement work distribution"}},
      {"quasiprob", {cmd_quasiprob, "work quasiprobability p_q for each q"}},
      {"charfn", {cmd_charfn, "characteristic functions on the (q, u) grid"}},
      {"joint", {cmd_joint, "joint work and coherence quasiprobability for each (q, q')"}},
      {"coherence", {cmd_coherence, "coherence distribution and its characteristic function"}},
      {"entropy-production", {cmd_entropy_production, "entropy production distribution"}},
      {"fluctuation", {cmd_fluctuation, "fluctuation relations over the q (and q') grids"}},
      {"second-law", {cmd_second_law, "second-law gap (thermal populations required)"}},
      {"detector", {cmd_detector, "detector-based measurement of chi_q"}},
      {"negativity", {cmd_negativity, "negativity of p_q over the q grid"}},
      {"qubit-demo", {cmd_qubit_demo, "driven qubit sweep over tau omega0 and q"}},
  };
  return table;
}

std::string file_stem(const std::string& name) {
  std::string s = name;
  std::replace(s.begin(), s.end(), '-', '_');
  return s;
}

int run_command(const std::string& name, const std::optional<std::filesystem::path>& config_path,
                const std::filesystem::path& out_dir, const Overrides& overrides) {
  const CliConfig cfg = load_config(config_path, overrides);
  OutputSet out;
  ordered_json results;
  Run r{cfg, out, results};
  commands().at(name).first(r);

  ordered_json summary;
  summary["command"] = name;
  summary["beta"] = cfg.beta;
  summary["schedule"] = cfg.schedule_type;
  ordered_json files = ordered_json::array();
  for (const auto& f : out.files()) files.push_back(f.first);
  summary["files"] = files;
  summary["results"] = results;
  summary["resolved_config"] = resolved_config(cfg);
  out.add_json(file_stem(name) + ".json", summary);
  out.commit(out_dir);
  std::cout << name << ": wrote " << out.files().size() << " files to " << out_dir.string() << "\n";
  return ok;
}

int run_selftest(std::uint64_t seed, const std::filesystem::path& out_dir) {
  const auto results = verify::run_acceptance(seed);
  std::size_t passed = 0;
  ordered_json list = ordered_json::array();
  for (const auto& r : results) {
    std::cout << verify::format_result(r) << "\n";
    passed += r.passed ? 1 : 0;
    list.push_back({{"id", r.id}, {"title", r.title}, {"passed", r.passed}, {"checks", r.checks}, {"detail", r.detail}});
  }
  std::cout << passed << "/" << results.size() << " criteria passed\n";
  OutputSet out;
  out.add_json("selftest.json", {{"seed", seed},
                                 {"passed", passed},
                                 {"failed", results.size() - passed},
                                 {"criteria", list}});
  out.commit(out_dir);
  return passed == results.size() ? ok : failure;
}

template <typename Fn>
int guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const ConfigError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const ValidationError& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return config_error;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition not met: " << e.what() << "\n";
    return precondition_error;
  } catch (const ConvergenceError& e) {
    std::cerr << "no convergence: " << e.what() << " (residual " << e.residual() << ")\n";
    return convergence_error;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return failure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  apply_thread_env();
  CLI::App app{"Work and coherence statistics of driven finite-dimensional quantum systems"};
  app.require_subcommand(1);

  std::optional<std::string> config_path;
  std::string out_dir = ".";
  std::vector<double> q_override, u_override;
  std::optional<double> beta_override;
  std::uint64_t seed = verify::default_seed;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--out", out_dir, "output directory")->capture_default_str();
  };
  for (const auto& [name, entry] : commands()) {
    CLI::App* sub = app.add_subcommand(name, entry.second);
    sub->add_option("--config", config_path, "JSON process description (default: driven qubit example)");
    add_common(sub);
    sub->add_option("--q", q_override, "comma-separated q grid")->delimiter(',');
    sub->add_option("--u", u_override, "comma-separated u grid")->delimiter(',');
    sub->add_option("--beta", beta_override, "inverse temperature");
  }
  CLI::App* self = app.add_subcommand("selftest", "run the acceptance suite");
  add_common(self);
  self->add_option("--seed", seed, "random seed")->capture_default_str();

  try {
    app.parse(argc, argv);
  } catch (const CLI::Success& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return config_error;
  }

  CLI::App* chosen = app.get_subcommands().front();
  if (chosen == self) return guarded([&] { return run_selftest(seed, out_dir); });

  Overrides overrides;
  if (!q_override.empty()) overrides.q = q_override;
  if (!u_override.empty()) overrides.u = u_override;
  overrides.beta = beta_override;
  std::optional<std::filesystem::path> path;
  if (config_path) path = *config_path;
  return guarded([&] { return run_command(chosen->get_name(), path, out_dir, overrides); });
}
