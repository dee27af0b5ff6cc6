#include "qwork/sweep.hpp"

#include "qwork/parallel.hpp"

namespace qwork::sweep {

std::vector<CharFnSample> char_fn_grid(const WorkContext& ctx, std::span<const double> q_grid,
                                       std::span<const double> u_grid, Execution exec) {
  std::vector<DeltaDistribution> dists(q_grid.size());
  for (std::size_t a = 0; a < q_grid.size(); ++a) dists[a] = quasiprob_distribution(ctx, q_grid[a]);

  const std::size_t nu = u_grid.size();
  std::vector<CharFnSample> out(q_grid.size() * nu);
  for_each_index(out.size(), exec, [&](std::size_t k) {
    const double q = q_grid[k / nu];
    const double u = u_grid[k % nu];
    out[k] = {q,
              u,
              char_fn_q(ctx, q, u).value,
              dists[k / nu].fourier(u),
              char_fn_tpm(ctx, u).value,
              coherence_correction(ctx, q, u)};
  });
  return out;
}

std::vector<DetectorSample> detector_grid(const WorkContext& ctx, std::span<const double> q_grid,
                                          std::span<const double> u_grid, Execution exec) {
  const std::size_t nu = u_grid.size();
  std::vector<DetectorSample> out(q_grid.size() * nu);
  for_each_index(out.size(), exec, [&](std::size_t k) {
    const double q = q_grid[k / nu];
    const double u = u_grid[k % nu];
    out[k] = {q, u, measure_char_fn(ctx.process(), ctx.rho0(), q, u).value, char_fn_q(ctx, q, u).value};
  });
  return out;
}

std::vector<FluctuationRatio> fluctuation_grid(const WorkContext& ctx, std::span<const double> q_grid, double beta,
                                               Execution exec) {
  std::vector<FluctuationRatio> out(q_grid.size());
  for_each_index(out.size(), exec, [&](std::size_t k) {
    out[k] = fluctuation_ratio(ctx, q_grid[k], beta);
  });
  return out;
}

std::vector<JointSample> coherence_fluctuation_grid(const CoherenceContext& cctx, std::span<const double> q_grid,
                                                    std::span<const double> q_prime_grid, double beta,
                                                    Execution exec) {
  const std::size_t np = q_prime_grid.size();
  std::vector<JointSample> out(q_grid.size() * np);
  for_each_index(out.size(), exec, [&](std::size_t k) {
    const double q = q_grid[k / np];
    const double qp = q_prime_grid[k % np];
    out[k] = {q, qp, coherence_fluctuation_ratio(cctx, q, qp, beta)};
  });
  return out;
}

}  // namespace qwork::sweep
