#include <chrono>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "qwork/qubit_example.hpp"
#include "qwork/sweep.hpp"
#include "qwork/verify/random.hpp"

using namespace qwork;

namespace {

using Clock = std::chrono::steady_clock;

template <typename Fn>
double best_ms(int repeat, Fn&& fn) {
  double best = 1e300;
  for (int r = 0; r < repeat; ++r) {
    const auto t0 = Clock::now();
    fn();
    best = std::min(best, std::chrono::duration<double, std::milli>(Clock::now() - t0).count());
  }
  return best;
}

struct Kernel {
  std::string name;
  // runs the kernel and returns a scalar digest for cross-checking
  std::function<double(Execution)> run;
};

void report(const Kernel& k, int repeat) {
  double serial_digest = 0.0, parallel_digest = 0.0;
  const double ts = best_ms(repeat, [&] { serial_digest = k.run(Execution::serial); });
  const double tp = best_ms(repeat, [&] { parallel_digest = k.run(Execution::parallel); });
  std::printf("%-28s %12.2f %12.2f %9.2fx %12.3g\n", k.name.c_str(), ts, tp, ts / tp,
              std::abs(serial_digest - parallel_digest));
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"serial vs parallel timings of the grid kernels"};
  int threads = 0;
  int repeat = 3;
  std::size_t dim = 6;
  app.add_option("--threads", threads, "OpenMP thread cap (default: QWORK_THREADS or runtime default)");
  app.add_option("--repeat", repeat, "repetitions; the best time is reported")->capture_default_str();
  app.add_option("--dim", dim, "system dimension for the random process")->capture_default_str();
  CLI11_PARSE(app, argc, argv);

  apply_thread_env();
  if (threads > 0) set_thread_cap(threads);

  verify::Rng rng(7);
  const WorkContext ctx(verify::random_process(rng, dim), verify::random_density_matrix(rng, dim));
  const CoherenceContext cctx(ctx);
  const std::vector<double> qs = qubit::default_q_grid();
  std::vector<double> us(64);
  for (std::size_t k = 0; k < us.size(); ++k) us[k] = -4.0 + 8.0 * static_cast<double>(k) / 63.0;

  const qubit::QubitProcessParams slow = qubit::coherent_gibbs_params(50.0);
  const HamiltonianSchedule sched = qubit::qubit_schedule(slow);

  const std::vector<Kernel> kernels = {
      {"midpoint_product (2^16)",
       [&](Execution e) { return midpoint_product(sched, sched.duration, 1u << 16, e).matrix().trace().real(); }},
      {"propagator (tau w0 = 50)",
       [&](Execution e) {
         PropagatorOptions opt;
         opt.execution = e;
         return propagator(sched, sched.duration, opt).matrix().trace().real();
       }},
      {"char_fn_grid (21 x 64)",
       [&](Execution e) {
         double s = 0.0;
         for (const auto& p : sweep::char_fn_grid(ctx, qs, us, e)) s += std::abs(p.trace);
         return s;
       }},
      {"detector_grid (21 x 64)",
       [&](Execution e) {
         double s = 0.0;
         for (const auto& p : sweep::detector_grid(ctx, qs, us, e)) s += std::abs(p.measured);
         return s;
       }},
      {"coherence_fluct (21 x 21)",
       [&](Execution e) {
         double s = 0.0;
         for (const auto& p : sweep::coherence_fluctuation_grid(cctx, qs, qs, 1.0, e)) s += p.ratio.lhs;
         return s;
       }},
      {"fig1_sweep (default grids)",
       [&](Execution e) {
         double s = 0.0;
         const auto sw = qubit::fig1_sweep(qubit::coherent_gibbs_params(1.0), qs, qubit::fig1_default_tau_grid(), e);
         for (const auto& r : sw.rows) s += r.value;
         return s;
       }},
  };

  std::printf("threads %d, dim %zu, best of %d\n", max_threads(), dim, repeat);
  std::printf("%-28s %12s %12s %10s %12s\n", "kernel", "serial ms", "parallel ms", "speedup", "|diff|");
  for (const auto& k : kernels) report(k, repeat);
  return 0;
}
