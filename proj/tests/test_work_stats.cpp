#include <cmath>
#include <complex>

#include "doctest.h"
#include "qwork/qubit_example.hpp"
#include "qwork/verify/oracle.hpp"
#include "qwork/verify/random.hpp"
#include "qwork/work_stats.hpp"
#include "support.hpp"

using namespace qwork;

namespace {

WorkContext random_context(verify::Rng& rng, std::size_t d) {
  return WorkContext(verify::random_process(rng, d), verify::random_density_matrix(rng, d));
}

WorkContext coherent_gibbs_qubit(double tau = 1.0) {
  const qubit::QubitProcessParams p = qubit::coherent_gibbs_params(tau);
  return WorkContext(qubit::qubit_process(p), qubit::initial_state(p));
}

WorkContext incoherent(const WorkContext& ctx) { return ctx.with_state(dephase(ctx.rho0(), ctx.basis0())); }

// [H^H, H0] = 0: diagonal endpoints, diagonal-phase evolution, coherent state
WorkContext commuting_context(verify::Rng& rng) {
  const Matrix h0 = qt::diag({0.0, 0.7, 1.9});
  const Matrix h1 = qt::diag({-0.4, 1.1, 2.5});
  Matrix u = Matrix::Zero(3, 3);
  for (int k = 0; k < 3; ++k) u(k, k) = std::polar(1.0, 0.3 + k);
  return WorkContext(Process::from_unitary(HermitianOperator(h0), HermitianOperator(h1), UnitaryOperator(u)),
                     verify::random_density_matrix(rng, 3));
}

std::vector<verify::oracle::Point> points(const DeltaDistribution& d) {
  std::vector<verify::oracle::Point> out;
  for (const Atom& a : d.atoms()) out.push_back({a.position, a.weight});
  return out;
}

}  // namespace

TEST_SUITE("work_stats") {
  TEST_CASE("no driving, no work") {
    verify::Rng rng(1);
    const HermitianOperator h = verify::random_hermitian(rng, 3);
    const WorkContext ctx(Process::from_unitary(h, h, UnitaryOperator::identity(3)),
                          verify::random_density_matrix(rng, 3));
    const DeltaDistribution p = tpm_distribution(ctx);
    REQUIRE(p.size() == 1);
    CHECK(std::abs(p.atoms()[0].position) < 1e-14);
    CHECK(p.atoms()[0].weight == doctest::Approx(1.0));
  }

  TEST_CASE("sudden quench of an incoherent qubit has four product atoms") {
    const double p = 0.3;
    const HermitianOperator h0(qt::sx());
    const HermitianOperator h1(2.0 * qt::sy());
    const Matrix rho = 0.5 * qt::id(2) + (2.0 * p - 1.0) * qt::sx() / 2.0;
    const WorkContext ctx(Process::from_unitary(h0, h1, UnitaryOperator::identity(2)), DensityMatrix(rho));
    const DeltaDistribution d = tpm_distribution(ctx);
    REQUIRE(d.size() == 4);
    const double positions[] = {-3.0, -1.0, 1.0, 3.0};
    const double weights[] = {p / 2, (1 - p) / 2, p / 2, (1 - p) / 2};
    for (int k = 0; k < 4; ++k) {
      CHECK(d.atoms()[k].position == doctest::Approx(positions[k]));
      CHECK(d.atoms()[k].weight == doctest::Approx(weights[k]));
    }
  }

  TEST_CASE("normalization and TPM positivity") {
    verify::Rng rng(2);
    for (std::size_t d = 2; d <= 6; ++d) {
      const WorkContext ctx = random_context(rng, d);
      const DeltaDistribution tpm = tpm_distribution(ctx);
      CHECK(std::abs(tpm.total_weight() - 1.0) < 1e-10);
      for (const Atom& a : tpm.atoms()) CHECK(a.weight >= -1e-12);
      CHECK(tpm.moment(1) == doctest::Approx(work_moment_analytic(incoherent(ctx), 0.0, 1)).epsilon(1e-10));
      for (double q : {-0.5, 0.0, 0.25, 0.5, 1.0, 1.5}) {
        CHECK(std::abs(quasiprob_distribution(ctx, q).total_weight() - 1.0) < 1e-10);
      }
    }
  }

  TEST_CASE("incoherent reduction and q symmetry") {
    verify::Rng rng(3);
    const WorkContext ctx = random_context(rng, 4);
    const WorkContext inc = incoherent(ctx);
    for (double q : {-0.5, 0.0, 0.3, 0.5, 1.2}) {
      CHECK(max_weight_discrepancy(quasiprob_distribution(inc, q), tpm_distribution(inc)) < 1e-10);
      CHECK(max_weight_discrepancy(quasiprob_distribution(ctx, q), quasiprob_distribution(ctx, 1.0 - q)) < 1e-10);
    }
  }

  TEST_CASE("dephased input gives TPM atoms bit for bit") {
    verify::Rng rng(13);
    const WorkContext inc = incoherent(random_context(rng, 4));
    const DeltaDistribution tpm = tpm_distribution(inc);
    for (double q : {0.0, 0.3, 1.0}) {
      const DeltaDistribution p = quasiprob_distribution(inc, q);
      REQUIRE(p.size() == tpm.size());
      for (std::size_t k = 0; k < p.size(); ++k) {
        CHECK(p.atoms()[k].position == tpm.atoms()[k].position);
        CHECK(p.atoms()[k].weight == tpm.atoms()[k].weight);
      }
    }
  }

  TEST_CASE("coherent Gibbs qubit at q = 0 matches the triple loop") {
    const WorkContext ctx = coherent_gibbs_qubit();
    const auto ref = verify::oracle::quasiprob_atoms(ctx.process().h_initial.matrix(), ctx.process().h_final.matrix(),
                                                     ctx.evolution().matrix(), ctx.rho0().matrix(), 0.0);
    CHECK(verify::oracle::discrepancy(points(quasiprob_distribution(ctx, 0.0)), ref, ctx.work_merge_tol()) < 1e-10);
    CHECK(quasiprob_distribution(ctx, 0.0).negative_weight() < -1e-6);
  }

  TEST_CASE("degenerate H(0): TPM uses eigenspace projectors") {
    verify::Rng rng(4);
    const HermitianOperator h0 = verify::random_degenerate_hamiltonian(rng, 4);
    const WorkContext ctx(Process::from_unitary(h0, verify::random_hermitian(rng, 4), verify::random_unitary(rng, 4)),
                          verify::random_density_matrix(rng, 4));
    // oracle: sum_b sum_k Tr[P'_k U P_b rho P_b U^dagger] at e'_k - e_b
    const SpectralDecomposition& b0 = ctx.basis0();
    const SpectralDecomposition& b1 = ctx.basis_tau();
    const Matrix& u = ctx.evolution().matrix();
    std::vector<verify::oracle::Point> ref;
    for (const auto& g : b0.degeneracy_groups) {
      Matrix proj = Matrix::Zero(4, 4);
      for (std::size_t i : g) proj += b0.vector(i) * b0.vector(i).adjoint();
      const Matrix evolved = u * proj * ctx.rho0().matrix() * proj * u.adjoint();
      for (Eigen::Index k = 0; k < 4; ++k) {
        const Vector ek = b1.eigenvectors.col(k);
        ref.push_back({b1.eigenvalues[k] - b0.eigenvalues[static_cast<Eigen::Index>(g[0])],
                       ek.dot(evolved * ek).real()});
      }
    }
    CHECK(b0.degeneracy_groups.size() == 3);
    CHECK(verify::oracle::discrepancy(points(tpm_distribution(ctx)), ref, ctx.work_merge_tol()) < 1e-12);
    // quasiprobability is symmetric and matches the brute force even here
    for (double q : {0.0, 0.4}) {
      const auto brute = verify::oracle::quasiprob_atoms(ctx.process().h_initial.matrix(),
                                                         ctx.process().h_final.matrix(), u, ctx.rho0().matrix(), q);
      CHECK(verify::oracle::discrepancy(points(quasiprob_distribution(ctx, q)), brute, 1e-8) < 1e-10);
    }
  }

  TEST_CASE("degenerate H(tau) is basis independent after merging") {
    verify::Rng rng(5);
    const HermitianOperator h1 = verify::random_degenerate_hamiltonian(rng, 3);
    const WorkContext ctx(Process::from_unitary(verify::random_hermitian(rng, 3), h1, verify::random_unitary(rng, 3)),
                          verify::random_density_matrix(rng, 3));
    const auto brute =
        verify::oracle::quasiprob_atoms(ctx.process().h_initial.matrix(), h1.matrix(), ctx.evolution().matrix(),
                                        ctx.rho0().matrix(), 0.3);
    CHECK(verify::oracle::discrepancy(points(quasiprob_distribution(ctx, 0.3)), brute, 1e-8) < 1e-10);
  }

  TEST_CASE("moments") {
    const DeltaDistribution point({{0.0, 1.0}}, 1e-9);
    CHECK(work_moment_numeric(point, 0) == 1.0);
    for (int n = 1; n <= 4; ++n) CHECK(work_moment_numeric(point, n) == 0.0);
    CHECK_THROWS_AS(work_moment_numeric(point, -1), ValidationError);

    verify::Rng rng(6);
    const WorkContext ctx = random_context(rng, 4);
    CHECK(work_moment_numeric(quasiprob_distribution(ctx, 0.3), 3) ==
          doctest::Approx(work_moment_analytic(ctx, 0.3, 3)).epsilon(1e-10));
    CHECK(work_moment_analytic(ctx, 0.0, 3) == doctest::Approx(work_moment_analytic(ctx, 1.0, 3)));
    CHECK(work_moment_numeric(quasiprob_distribution(ctx, 0.7), 1) ==
          doctest::Approx(work_moment_analytic(ctx, 0.7, 1)).epsilon(1e-10));
    CHECK_THROWS_AS(work_moment_analytic(ctx, 0.5, 4), ValidationError);
    CHECK_THROWS_AS(work_moment_analytic(ctx, 0.5, 0), ValidationError);
  }

  TEST_CASE("commuting case reduces to the dephased trace") {
    verify::Rng rng(7);
    const WorkContext ctx = commuting_context(rng);
    const Matrix delta = ctx.heisenberg_final().matrix() - ctx.process().h_initial.matrix();
    const Matrix dephased = dephase(ctx.rho0(), ctx.basis0()).matrix();
    CHECK(work_moment_analytic(ctx, 0.3, 3) ==
          doctest::Approx((delta * delta * delta * dephased).trace().real()).epsilon(1e-12));
    for (double u : qt::linspace(-3.0, 3.0, 9)) {
      CHECK(std::abs(coherence_correction(ctx, 0.3, u)) < 1e-12);
      CHECK(std::abs(char_fn_q(ctx, 0.3, u).value - char_fn_tpm(ctx, u).value) < 1e-9);
    }
  }

  TEST_CASE("characteristic functions") {
    verify::Rng rng(8);
    const WorkContext ctx = random_context(rng, 3);
    CHECK(char_fn_q(ctx, 0.4, 0.0).value == std::complex<double>(1.0, 0.0));
    CHECK(char_fn_tpm(ctx, 0.0).value == std::complex<double>(1.0, 0.0));
    const DeltaDistribution p = quasiprob_distribution(ctx, 0.4);
    const DeltaDistribution tpm = tpm_distribution(ctx);
    const WorkContext inc = incoherent(ctx);
    for (double u : qt::linspace(-5.0, 5.0, 32)) {
      CHECK(std::abs(char_fn_q(ctx, 0.4, u).value - p.fourier(u)) < 1e-9);
      CHECK(std::abs(char_fn_tpm(ctx, u).value - tpm.fourier(u)) < 1e-9);
      CHECK(std::abs(char_fn_tpm(ctx, u).value - char_fn_tpm(inc, u).value) < 1e-12);
      CHECK(std::abs(char_fn_q(inc, 0.4, u).value - char_fn_tpm(inc, u).value) < 1e-9);
      CHECK(std::abs(coherence_correction(inc, 0.4, u)) < 1e-15);
    }
  }

  TEST_CASE("coherence correction on the coherent Gibbs qubit") {
    const WorkContext ctx = coherent_gibbs_qubit();
    const std::complex<double> direct = char_fn_q(ctx, 0.5, 1.0).value - char_fn_tpm(ctx, 1.0).value;
    CHECK(std::abs(coherence_correction(ctx, 0.5, 1.0) - direct) < 1e-12);
    CHECK(std::abs(direct) > 1e-3);
  }

  TEST_CASE("fluctuation relation special cases") {
    verify::Rng rng(9);
    const Process process = verify::random_process(rng, 4);
    for (double beta : {0.5, 1.0, 2.0}) {
      const WorkContext gibbs(process, gibbs_state(process.h_initial, beta).state);
      for (double q : {-0.5, 0.0, 0.5, 1.0}) {
        const FluctuationRatio fr = fluctuation_ratio(gibbs, q, beta);
        CHECK(fr.lhs == doctest::Approx(1.0).epsilon(1e-9));
        CHECK(fr.rhs == doctest::Approx(1.0).epsilon(1e-9));
      }
      const WorkContext thermal_inc = incoherent(WorkContext(process, verify::thermal_population_state(
                                                                          rng, process.h_initial, beta)));
      CHECK(fluctuation_ratio(thermal_inc, 0.3, beta).rhs == doctest::Approx(1.0).epsilon(1e-9));
    }
    CHECK_THROWS_AS(fluctuation_ratio(WorkContext(process, DensityMatrix::maximally_mixed(4)), 0.5, 0.0),
                    ValidationError);
  }

  TEST_CASE("coherent Gibbs qubit q sweep is closest to one at q = 1/2") {
    const WorkContext ctx = coherent_gibbs_qubit();
    const std::vector<double> grid = qubit::default_q_grid();
    std::vector<double> dev;
    for (double q : grid) {
      const FluctuationRatio fr = fluctuation_ratio(ctx, q, 1.0);
      CHECK(std::abs(fr.lhs - fr.rhs) < 1e-8);
      dev.push_back(std::abs(fr.lhs - 1.0));
    }
    const auto lo = std::min_element(dev.begin(), dev.end()) - dev.begin();
    const auto hi = std::max_element(dev.begin(), dev.end()) - dev.begin();
    CHECK(grid[static_cast<std::size_t>(lo)] == doctest::Approx(0.5));
    CHECK((hi == 0 || hi == static_cast<long>(grid.size()) - 1));
    CHECK(dev.front() == doctest::Approx(dev.back()).epsilon(1e-10));
  }

  TEST_CASE("negativity operator") {
    verify::Rng rng(10);
    const WorkContext ctx = random_context(rng, 3);
    const Matrix& T = ctx.transition();
    for (std::size_t i = 0; i < 3; ++i) {
      for (std::size_t j = 0; j < 3; ++j) {
        for (std::size_t k = 0; k < 3; ++k) {
          const HermitianOperator x = negativity_operator(ctx, i, j, k);
          const DensityMatrix probe = verify::random_density_matrix(rng, 3);
          const Matrix r = in_basis(probe.matrix(), ctx.basis0());
          const auto I = static_cast<Eigen::Index>(i), J = static_cast<Eigen::Index>(j),
                     K = static_cast<Eigen::Index>(k);
          const double expected = (r(I, J) * std::conj(T(K, J)) * T(K, I)).real();
          CHECK((x.matrix() * probe.matrix()).trace().real() == doctest::Approx(expected).epsilon(1e-12));
          Eigen::SelfAdjointEigenSolver<Matrix> es(x.matrix());
          if (i == j) {
            const Matrix expect = std::norm(T(K, I)) * ctx.basis0().vector(i) * ctx.basis0().vector(i).adjoint();
            CHECK(qt::dist(x.matrix(), expect) < 1e-14);
            CHECK(es.eigenvalues().minCoeff() >= -1e-14);
            CHECK(es.eigenvalues().maxCoeff() <= 1.0 + 1e-14);
          } else {
            const double half = std::abs(std::conj(T(K, J)) * T(K, I)) / 2.0;
            CHECK(std::abs(x.matrix().trace()) < 1e-14);
            CHECK(es.eigenvalues().minCoeff() == doctest::Approx(-half).epsilon(1e-12));
            CHECK(es.eigenvalues().maxCoeff() == doctest::Approx(half).epsilon(1e-12));
            CHECK(half <= 0.25 + 1e-14);
          }
        }
      }
    }
    CHECK_THROWS_AS(negativity_operator(ctx, 3, 0, 0), ValidationError);
    CHECK_THROWS_AS(negativity_operator(ctx, 0, 0, 7), ValidationError);
  }

  TEST_CASE("negativity operators regroup into quasiprobability weights") {
    verify::Rng rng(11);
    const WorkContext ctx = random_context(rng, 3);
    for (double q : {0.0, 0.3, 1.4}) {
      std::vector<Atom> raw;
      for (std::size_t i = 0; i < 3; ++i) {
        for (std::size_t j = 0; j < 3; ++j) {
          for (std::size_t k = 0; k < 3; ++k) {
            const double w = (negativity_operator(ctx, i, j, k).matrix() * ctx.rho0().matrix()).trace().real();
            raw.push_back({work_position(ctx, q, k, i, j), w});
          }
        }
      }
      CHECK(max_weight_discrepancy(DeltaDistribution(raw, ctx.work_merge_tol()), quasiprob_distribution(ctx, q)) <
            1e-12);
    }
  }

  TEST_CASE("negativity report") {
    verify::Rng rng(12);
    const std::vector<double> grid = qubit::default_q_grid();
    const WorkContext inc = incoherent(random_context(rng, 3));
    for (const NegativityEntry& e : negativity_report(inc, grid).entries) {
      CHECK(e.negative_weight == 0.0);
      CHECK_FALSE(e.has_negativity);
      CHECK_FALSE(e.most_negative.has_value());
    }
    const NegativityReport r = negativity_report(coherent_gibbs_qubit(), grid);
    bool any = false;
    for (const NegativityEntry& e : r.entries) {
      any = any || e.has_negativity;
      CHECK(e.negative_weight + e.positive_weight == doctest::Approx(1.0).epsilon(1e-10));
      if (e.has_negativity) {
        REQUIRE(e.most_negative.has_value());
        CHECK(e.most_negative->weight < 0.0);
      }
    }
    CHECK(any);
    CHECK(r.min_operator_eigenvalue >= -0.25 - 1e-10);
    CHECK(r.max_operator_eigenvalue <= 1.0 + 1e-10);
    CHECK_THROWS_AS(negativity_report(inc, {}), ValidationError);
  }
}
