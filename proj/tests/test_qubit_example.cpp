#include <cmath>
#include <numbers>

#include "doctest.h"
#include "qwork/qubit_example.hpp"
#include "support.hpp"

using namespace qwork;
using namespace qwork::qubit;

namespace {

double axis_norm(const Axis& n) { return std::sqrt(n[0] * n[0] + n[1] * n[1] + n[2] * n[2]); }

}  // namespace

TEST_SUITE("qubit_example") {
  TEST_CASE("schedule endpoints and midpoint") {
    QubitProcessParams p;
    p.tau = 2.0;
    const HamiltonianSchedule s = qubit_schedule(p);
    CHECK(qt::dist(s.at(0.0).matrix(), p.omega0 * qt::sx()) < 1e-15);
    CHECK(qt::dist(s.at(2.0).matrix(), p.omega_tau * qt::sy()) < 1e-14);
    const double w = 0.5 * (p.omega0 + p.omega_tau);
    const double phi = std::numbers::pi / 4.0;
    CHECK(qt::dist(s.at(1.0).matrix(), w * (std::cos(phi) * qt::sx() + std::sin(phi) * qt::sy())) < 1e-14);
  }

  TEST_CASE("initial state and thermal population") {
    CHECK(thermal_population(1.0, 1.0) == doctest::Approx(1.0 / (1.0 + std::exp(2.0))));
    const QubitProcessParams p = coherent_gibbs_params(1.0);
    CHECK(p.p == doctest::Approx(thermal_population(1.0, 1.0)));
    CHECK(p.c == doctest::Approx(std::sqrt(p.p * (1.0 - p.p))));
    const DensityMatrix rho = initial_state(p);
    // maximal coherence: the state is pure
    CHECK((rho.matrix() * rho.matrix()).trace().real() == doctest::Approx(1.0));
    CHECK(((rho.matrix() * qt::sx()).trace().real()) == doctest::Approx(2.0 * p.p - 1.0));
  }

  TEST_CASE("parameter validation") {
    QubitProcessParams p;
    CHECK_NOTHROW(p.validate());
    p.c = 0.6;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = QubitProcessParams{};
    p.p = 1.2;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = QubitProcessParams{};
    p.tau = -1.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
    p = QubitProcessParams{};
    p.beta = 0.0;
    CHECK_THROWS_AS(p.validate(), ValidationError);
  }

  TEST_CASE("rotation axis") {
    QubitProcessParams p = coherent_gibbs_params(1.0);
    p.sudden = true;
    const Axis sudden = rotation_axis(p);
    CHECK(sudden[0] == 0.0);
    CHECK(sudden[1] == 1.0);
    CHECK(sudden[2] == 0.0);

    const Axis mid = rotation_axis(coherent_gibbs_params(1.0));
    CHECK(axis_norm(mid) == doctest::Approx(1.0).epsilon(1e-10));
    CHECK(std::abs(mid[2]) > 1e-2);

    const Axis slow = rotation_axis(coherent_gibbs_params(50.0));
    CHECK(slow[0] > 0.99);
    CHECK(std::abs(slow[2]) < 0.02);
  }

  TEST_CASE("a and b functions") {
    const QubitProcessParams p = coherent_gibbs_params(0.7);
    const Process process = qubit_process(p);
    const Axis n = rotation_axis(process.evolution);
    for (double u : qt::linspace(-3.0, 3.0, 11)) {
      const ABValues num = ab_functions(process, p, u);
      const ABValues cf = ab_closed_form(n, p, u);
      CHECK(std::abs(num.a - cf.a) < 1e-10);
      CHECK(std::abs(num.b - cf.b) < 1e-10);
    }
  }

  TEST_CASE("closed forms agree with the general pipeline") {
    for (double tau : {0.3, 1.0, 1.7}) {
      const QubitProcessParams p = coherent_gibbs_params(tau);
      const Process process = qubit_process(p);
      const WorkContext ctx(process, initial_state(p));
      const Axis n = rotation_axis(process.evolution);
      for (double u : qt::linspace(-2.5, 2.5, 9)) {
        const std::complex<double> chi = closed_form_tpm_char_fn(n, p, u);
        CHECK(std::abs(chi - char_fn_tpm(ctx, u).value) < 1e-9);
        for (double q : {0.0, 0.25, 0.5, 1.0}) {
          const std::complex<double> general = char_fn_q(ctx, q, u).value;
          CHECK(std::abs(closed_form_char_fn(n, p, q, u).value - general) < 1e-9);
          CHECK(std::abs(intermediate_char_fn(chi, ab_functions(process, p, u), p, q, u).value - general) < 1e-9);
        }
      }
    }
  }

  TEST_CASE("fluctuation sweep") {
    const QubitProcessParams base = coherent_gibbs_params(1.0);
    const std::vector<double> q_grid = default_q_grid();
    const Fig1Sweep sw = fig1_sweep(base, q_grid, {0.0, 1.0, 10.0, 20.0, 50.0});
    REQUIRE(sw.columns.size() == 5);
    REQUIRE(sw.rows.size() == 5 * q_grid.size());
    CHECK(sw.columns[0].sudden);
    auto max_dev = [&](std::size_t col) {
      double m = 0.0;
      for (std::size_t k = 0; k < q_grid.size(); ++k) {
        const Fig1Row& r = sw.rows[col * q_grid.size() + k];
        CHECK(r.q == q_grid[k]);
        CHECK(std::abs(r.value - r.rhs) < 1e-8);
        m = std::max(m, std::abs(r.value - 1.0));
      }
      return m;
    };
    CHECK(max_dev(0) < 1e-9);
    CHECK(max_dev(1) > 0.1);
    const double d10 = max_dev(2), d20 = max_dev(3), d50 = max_dev(4);
    CHECK(d10 > d20);
    CHECK(d20 > d50);
    CHECK(d50 < 2e-2);
  }

  TEST_CASE("sweep defaults and errors") {
    const std::vector<double> taus = fig1_default_tau_grid();
    REQUIRE_FALSE(taus.empty());
    CHECK(taus.front() == doctest::Approx(0.2));
    CHECK(taus.back() == doctest::Approx(2.0));
    const std::vector<double> qs = default_q_grid();
    CHECK(qs.front() == 0.0);
    CHECK(qs.back() == doctest::Approx(1.0));

    QubitProcessParams base = coherent_gibbs_params(1.0);
    CHECK_THROWS_AS(fig1_sweep(base, {}, taus), ValidationError);
    CHECK_THROWS_AS(fig1_sweep(base, qs, {}), ValidationError);
    base.p = 0.3;
    base.c = 0.0;
    CHECK_THROWS_AS(fig1_sweep(base, qs, taus), PreconditionError);
  }
}
