#include "qwork/verify/acceptance.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <functional>
#include <iomanip>
#include <numbers>
#include <sstream>
#include <stdexcept>

#include "qwork/coherence_stats.hpp"
#include "qwork/detector.hpp"
#include "qwork/qubit_example.hpp"
#include "qwork/sweep.hpp"
#include "qwork/verify/oracle.hpp"
#include "qwork/verify/random.hpp"

namespace qwork::verify {

void Tally::check(std::string_view label, double error, double tol) {
  ++count_;
  const bool ok = error <= tol;
  const double ratio = tol > 0.0 ? error / tol : (error == 0.0 ? 0.0 : INFINITY);
  if (!ok) {
    if (failures_ == 0) {
      std::ostringstream os;
      os << std::setprecision(3) << label << " err=" << error << " > tol=" << tol;
      first_failure_ = os.str();
    }
    ++failures_;
  }
  if (ok && ratio > worst_ratio_) {
    worst_ratio_ = ratio;
    std::ostringstream os;
    os << std::setprecision(3) << label << " err=" << error << " (tol " << tol << ")";
    worst_ = os.str();
  }
}

void Tally::require(std::string_view label, bool ok) {
  ++count_;
  if (!ok) {
    if (failures_ == 0) first_failure_ = std::string(label) + " failed";
    ++failures_;
  }
}

std::string Tally::summary() const {
  std::ostringstream os;
  os << count_ << " checks";
  if (failures_ > 0) {
    os << ", " << failures_ << " failed; first: " << first_failure_;
  } else if (!worst_.empty()) {
    os << "; tightest: " << worst_;
  }
  return os.str();
}

namespace {

const std::vector<double> q_set{-0.5, 0.0, 0.25, 0.5, 1.0, 1.5};
const std::vector<double> unit_q_set{0.0, 0.25, 0.5, 0.75, 1.0};
const std::vector<double> beta_set{0.5, 1.0, 2.0};

std::size_t dim_for(int index, std::size_t lo, std::size_t hi) {
  return lo + static_cast<std::size_t>(index) % (hi - lo + 1);
}

WorkContext random_context(Rng& rng, std::size_t dim) {
  return WorkContext(random_process(rng, dim), random_density_matrix(rng, dim));
}

std::vector<double> linspace(double a, double b, std::size_t n) {
  std::vector<double> out(n);
  for (std::size_t k = 0; k < n; ++k) out[k] = a + (b - a) * static_cast<double>(k) / static_cast<double>(n - 1);
  return out;
}

std::vector<oracle::Point> as_points(const DeltaDistribution& d) {
  std::vector<oracle::Point> out;
  for (const Atom& a : d.atoms()) out.push_back({a.position, a.weight});
  return out;
}

std::vector<oracle::JointPoint> as_points(const JointDeltaDistribution& d) {
  std::vector<oracle::JointPoint> out;
  for (const JointAtom& a : d.atoms()) out.push_back({a.work, a.coherence, a.weight});
  return out;
}

double entropy_of(const Matrix& rho) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
  double s = 0.0;
  for (Eigen::Index k = 0; k < es.eigenvalues().size(); ++k) {
    const double r = es.eigenvalues()[k];
    if (r > 1e-300) s -= r * std::log(r);
  }
  return s;
}

// S(U rho U^dagger || exp(-beta H1)/Z) = -S(rho) + beta Tr[rho_tau H1] + ln Z
double relative_entropy_to_gibbs(const Matrix& rho_tau, const Matrix& h1, double beta) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(h1);
  const RealVector& e = es.eigenvalues();
  const double shift = e.minCoeff();
  double z = 0.0;
  for (Eigen::Index k = 0; k < e.size(); ++k) z += std::exp(-beta * (e[k] - shift));
  const double log_z = std::log(z) - beta * shift;
  return -entropy_of(rho_tau) + beta * (rho_tau * h1).trace().real() + log_z;
}

// ---------------------------------------------------------------------------

void reduction_and_symmetry(Tally& t, Rng& rng) {
  for (int c = 0; c < 50; ++c) {
    const WorkContext ctx = random_context(rng, dim_for(c, 2, 6));
    const WorkContext inc = ctx.with_state(dephase(ctx.rho0(), ctx.basis0()));
    const DeltaDistribution tpm = tpm_distribution(inc);
    for (double q : q_set) {
      const DeltaDistribution pq = quasiprob_distribution(ctx, q);
      t.check("sum of weights", std::abs(pq.total_weight() - 1.0), 1e-10);
      t.check("p_q = p for incoherent state", max_weight_discrepancy(quasiprob_distribution(inc, q), tpm), 1e-10);
      t.check("p_{1-q} = p_q", max_weight_discrepancy(quasiprob_distribution(ctx, 1.0 - q), pq), 1e-10);
    }
  }
}

void moments(Tally& t, Rng& rng) {
  const std::vector<double> grid{-0.5, 0.0, 0.25, 0.5, 0.75, 1.0, 1.5};
  for (int c = 0; c < 30; ++c) {
    const WorkContext ctx = random_context(rng, dim_for(c, 2, 6));
    for (int n = 1; n <= 2; ++n) {
      double lo = INFINITY;
      double hi = -INFINITY;
      for (double q : grid) {
        const double numeric = work_moment_numeric(quasiprob_distribution(ctx, q), n);
        t.check(n == 1 ? "<w> atoms vs trace" : "<w^2> atoms vs trace",
                std::abs(numeric - work_moment_analytic(ctx, q, n)), 1e-9);
        lo = std::min(lo, numeric);
        hi = std::max(hi, numeric);
      }
      t.check("q-spread of low moments", hi - lo, 1e-9);
    }
    for (double q : grid) {
      const double numeric = work_moment_numeric(quasiprob_distribution(ctx, q), 3);
      t.check("<w^3> atoms vs three-term formula", std::abs(numeric - work_moment_analytic(ctx, q, 3)), 1e-8);
    }
  }

  // H0 = sz, H(tau) = sx, U a y-rotation, a coherent state: [H0, [H^H, H0]] has
  // non-zero expectation, so the q-dependent term is visible.
  Matrix sx(2, 2), sy(2, 2), sz(2, 2);
  sx << 0, 1, 1, 0;
  sy << 0, Complex(0, -1), Complex(0, 1), 0;
  sz << 1, 0, 0, -1;
  const Matrix id = Matrix::Identity(2, 2);
  const double angle = 0.3;
  const Matrix u = std::cos(angle) * id - Complex(0, 1) * std::sin(angle) * sy;
  const Matrix rho = 0.5 * (id + 0.6 * sx + 0.3 * sy + 0.2 * sz);
  const WorkContext ctx(Process::from_unitary(HermitianOperator(sz), HermitianOperator(sx), UnitaryOperator(u)),
                        DensityMatrix(rho));
  const Matrix hh = u.adjoint() * sx * u;
  const Matrix inner = hh * sz - sz * hh;
  const double coh = ((sz * inner - inner * sz) * rho).trace().real();
  const double m0 = work_moment_numeric(quasiprob_distribution(ctx, 0.0), 3);
  const double m1 = work_moment_numeric(quasiprob_distribution(ctx, 1.0), 3);
  const double mh = work_moment_numeric(quasiprob_distribution(ctx, 0.5), 3);
  t.require("constructed case has a visible commutator term", std::abs(coh) > 1e-2);
  t.check("3q(1-q) term: q=1/2 minus q=0", std::abs((mh - m0) - 0.75 * coh), 1e-8);
  t.check("3q(1-q) term: q=0 equals q=1", std::abs(m0 - m1), 1e-8);
  t.check("<w^3> at q=1/2", std::abs(mh - work_moment_analytic(ctx, 0.5, 3)), 1e-8);
}

void characteristic_functions(Tally& t, Rng& rng) {
  const std::vector<double> u_grid = linspace(-4.0, 4.0, 64);
  for (int c = 0; c < 20; ++c) {
    const WorkContext ctx = random_context(rng, dim_for(c, 2, 6));
    const WorkContext inc = ctx.with_state(dephase(ctx.rho0(), ctx.basis0()));
    for (const auto& s : sweep::char_fn_grid(ctx, q_set, u_grid)) {
      t.check("trace formula vs atom Fourier sum", std::abs(s.trace - s.atoms), 1e-9);
      t.check("chi_q = chi + correction", std::abs(s.trace - (s.tpm + s.correction)), 1e-9);
    }
    for (const auto& s : sweep::char_fn_grid(inc, q_set, u_grid)) {
      t.check("commuting case chi_q = chi", std::abs(s.trace - s.tpm), 1e-9);
    }
  }
}

void fluctuation_relations(Tally& t, Rng& rng) {
  for (int c = 0; c < 20; ++c) {
    const std::size_t dim = dim_for(c, 2, 6);
    const WorkContext ctx = random_context(rng, dim);
    const CoherenceContext cctx(ctx);
    for (double beta : beta_set) {
      for (const FluctuationRatio& fr : sweep::fluctuation_grid(ctx, q_set, beta)) {
        t.check("work fluctuation relation lhs = rhs", std::abs(fr.lhs - fr.rhs), 1e-8);
      }
      for (const auto& s : sweep::coherence_fluctuation_grid(cctx, q_set, q_set, beta)) {
        t.check("joint fluctuation relation lhs = rhs", std::abs(s.ratio.lhs - s.ratio.rhs), 1e-8);
      }
      const DeltaDistribution ps = entropy_production_distribution(cctx, beta);
      t.check("<exp(-sigma)> = 1",
              std::abs(ps.expectation([](double s) { return std::exp(-s); }) - 1.0), 1e-9);

      const WorkContext gibbs = ctx.with_state(gibbs_state(ctx.process().h_initial, beta).state);
      for (const FluctuationRatio& fr : sweep::fluctuation_grid(gibbs, q_set, beta)) {
        t.check("Jarzynski for Gibbs initial state", std::abs(fr.lhs - 1.0), 1e-9);
      }

      const CoherenceContext thermal(
          ctx.with_state(thermal_population_state(rng, ctx.process().h_initial, beta)));
      // q, q' in [0, 1]: outside it, e^{-C} reaches ~1e5 here and double
      // precision weights cannot hold 1e-8 absolute
      for (double q : unit_q_set) {
        for (double qp : unit_q_set) {
          t.check("joint relation = 1 for thermal populations",
                  std::abs(coherence_fluctuation_ratio(thermal, q, qp, beta).lhs - 1.0), 1e-8);
        }
      }
    }
    const DeltaDistribution pc = coherence_distribution(cctx);
    t.check("<exp(-C)> = 1", std::abs(pc.expectation([](double x) { return std::exp(-x); }) - 1.0), 1e-9);
  }
}

void joint_structure(Tally& t, Rng& rng) {
  const std::vector<std::function<double(double)>> fs{
      [](double x) { return x; }, [](double x) { return x * x; }, [](double x) { return std::exp(-x); },
      [](double x) { return std::cos(x); }};
  for (int c = 0; c < 15; ++c) {
    const std::size_t dim = dim_for(c, 2, 5);
    const WorkContext ctx = random_context(rng, dim);
    const CoherenceContext cctx(ctx);
    const DeltaDistribution tpm = tpm_distribution(ctx);
    const DeltaDistribution pc = coherence_distribution(cctx);
    for (double q : q_set) {
      const DeltaDistribution pq = quasiprob_distribution(ctx, q);
      for (double qp : q_set) {
        const JointDeltaDistribution joint = joint_distribution(cctx, q, qp);
        t.check("work marginal = p_q", max_weight_discrepancy(joint.work_marginal(), pq), 1e-10);
        t.check("coherence marginal = p_c", max_weight_discrepancy(joint.coherence_marginal(), pc), 1e-10);
        t.check("exp(-C) tilt = TPM", max_weight_discrepancy(tilted_marginal(joint), tpm), 1e-9);
      }
    }
    for (double beta : beta_set) {
      const CoherenceContext thermal(
          ctx.with_state(thermal_population_state(rng, ctx.process().h_initial, beta)));
      for (double q : q_set) {
        const ChangeOfVariable cv = change_of_variable_check(thermal, q, beta);
        t.check("change of variable atomwise", max_weight_discrepancy(cv.transformed, cv.entropy_production), 1e-9);
        for (const auto& f : fs) {
          t.check("change of variable statistics",
                  std::abs(cv.transformed.expectation(f) - cv.entropy_production.expectation(f)), 1e-8);
        }
      }
    }
  }
}

void second_law(Tally& t, Rng& rng) {
  auto verify_gap = [&](const CoherenceContext& cctx, double beta) {
    const WorkContext& ctx = cctx.work();
    const SecondLawGap gap = second_law_gap(cctx, beta);
    const ThermoOffsets th = thermo_offsets(ctx, beta);
    const double mean_w = quasiprob_distribution(ctx, 0.5).moment(1);
    const double mean_c = coherence_distribution(cctx).moment(1);
    const double lhs = beta * (mean_w - th.free_energy_change) + mean_c;
    const Matrix& u = ctx.evolution().matrix();
    const double rhs =
        relative_entropy_to_gibbs(u * ctx.rho0().matrix() * u.adjoint(), ctx.process().h_final.matrix(), beta);
    t.check("second law: atom lhs vs relative entropy", std::abs(lhs - rhs), 1e-8);
    t.check("second law: library gap", std::abs(gap.lhs - gap.relative_entropy), 1e-8);
    t.check("second law: library relative entropy", std::abs(gap.relative_entropy - rhs), 1e-8);
    t.require("second law: lhs >= -1e-10", lhs >= -1e-10 && gap.lhs >= -1e-10);
  };
  for (int c = 0; c < 15; ++c) {
    const Process process = random_process(rng, dim_for(c, 2, 6));
    for (double beta : beta_set) {
      verify_gap(CoherenceContext(WorkContext(process, thermal_population_state(rng, process.h_initial, beta))), beta);
    }
  }
  for (double tau : {0.5, 1.0, 2.0}) {
    const qubit::QubitProcessParams p = qubit::coherent_gibbs_params(tau);
    verify_gap(CoherenceContext(WorkContext(qubit::qubit_process(p), qubit::initial_state(p))), p.beta);
  }
}

void negativity_bounds(Tally& t, Rng& rng) {
  double lo = INFINITY;
  double hi = -INFINITY;
  for (int c = 0; c < 50; ++c) {
    const std::size_t dim = dim_for(c, 2, 6);
    const WorkContext ctx = random_context(rng, dim);
    for (std::size_t i = 0; i < dim; ++i) {
      for (std::size_t j = 0; j < dim; ++j) {
        for (std::size_t k = 0; k < dim; ++k) {
          Eigen::SelfAdjointEigenSolver<Matrix> es(negativity_operator(ctx, i, j, k).matrix(),
                                                   Eigen::EigenvaluesOnly);
          lo = std::min(lo, es.eigenvalues().minCoeff());
          hi = std::max(hi, es.eigenvalues().maxCoeff());
        }
      }
    }
    const NegativityReport report = negativity_report(ctx, q_set, Execution::serial);
    t.require("report bounds inside [-1/4, 1]",
              report.min_operator_eigenvalue >= -0.25 - 1e-10 && report.max_operator_eigenvalue <= 1.0 + 1e-10);
  }
  t.check("lower bound -1/4", std::max(0.0, -0.25 - lo), 1e-10);
  t.check("upper bound 1", std::max(0.0, hi - 1.0), 1e-10);

  // U^dagger|e'_0> = (|e_i> + e^{i phi}|e_j>)/sqrt(2) with diagonal H(0), H(tau)
  for (std::size_t dim : {2u, 3u, 4u}) {
    for (double phi : {0.0, 0.7, 2.0, std::numbers::pi}) {
      const std::size_t i = dim - 2;
      const std::size_t j = dim - 1;
      Vector v = Vector::Zero(static_cast<Eigen::Index>(dim));
      v[static_cast<Eigen::Index>(i)] = 1.0 / std::sqrt(2.0);
      v[static_cast<Eigen::Index>(j)] = std::polar(1.0, phi) / std::sqrt(2.0);
      Matrix m = ginibre(rng, dim, dim);
      m.col(0) = v;
      Matrix w = Eigen::HouseholderQR<Matrix>(m).householderQ();
      w.col(0) *= w.col(0).dot(v);
      const UnitaryOperator u(w.adjoint());
      RealVector e0(static_cast<Eigen::Index>(dim));
      RealVector e1(static_cast<Eigen::Index>(dim));
      for (Eigen::Index k = 0; k < e0.size(); ++k) {
        e0[k] = static_cast<double>(k);
        e1[k] = 0.5 + 1.3 * static_cast<double>(k);
      }
      const WorkContext ctx(Process::from_unitary(HermitianOperator(e0.cast<Complex>().asDiagonal()),
                                                  HermitianOperator(e1.cast<Complex>().asDiagonal()), u),
                            DensityMatrix::maximally_mixed(dim));
      Eigen::SelfAdjointEigenSolver<Matrix> es(negativity_operator(ctx, i, j, 0).matrix(), Eigen::EigenvaluesOnly);
      t.check("extremal construction reaches -1/4", std::abs(es.eigenvalues().minCoeff() + 0.25), 1e-10);
      t.check("extremal construction reaches +1/4", std::abs(es.eigenvalues().maxCoeff() - 0.25), 1e-10);
    }
  }
}

void detector_scheme(Tally& t, Rng& rng) {
  const std::vector<double> q_grid{-0.5, 0.0, 0.3, 0.5, 1.0};
  const std::vector<double> u_grid = linspace(-3.0, 3.0, 16);
  auto compare = [&](const WorkContext& ctx) {
    for (const auto& s : sweep::detector_grid(ctx, q_grid, u_grid)) {
      t.check("detector chi_q vs trace chi_q", std::abs(s.measured - s.direct), 1e-8);
    }
  };
  Matrix weak(2, 2), tilted(2, 2);
  weak << 0.5, 0.1, 0.1, 0.5;
  tilted << 0.7, Complex(0.0, 0.2), Complex(0.0, -0.2), 0.3;
  const std::vector<DensityMatrix> detector_states{DetectorSpec::default_state(), DensityMatrix(weak),
                                                   DensityMatrix(tilted)};
  for (int c = 0; c < 6; ++c) {
    const WorkContext ctx = random_context(rng, dim_for(c, 2, 4));
    compare(ctx);
    for (double l1 : {0.4, -1.1}) {
      for (double l2 : {0.9, 2.3}) {
        DetectorSpec ref{l1, l2};
        const Complex base = detector_coherence_ratio(ctx.process(), ref, ctx.rho0());
        t.check("detector ratio vs direct trace",
                std::abs(base - coherence_ratio_trace(ctx.process(), l1, l2, ctx.rho0())), 1e-9);
        for (const DensityMatrix& rd : detector_states) {
          DetectorSpec spec{l1, l2, rd};
          t.check("ratio independent of detector coherence",
                  std::abs(detector_coherence_ratio(ctx.process(), spec, ctx.rho0()) - base), 1e-9);
        }
      }
    }
  }
  const qubit::QubitProcessParams p = qubit::coherent_gibbs_params(1.0);
  compare(WorkContext(qubit::qubit_process(p), qubit::initial_state(p)));
}

void qubit_end_to_end(Tally& t) {
  const std::vector<double> u_grid = linspace(-3.0, 3.0, 13);
  for (double tau : {0.0, 0.3, 1.0, 1.7, 5.0}) {
    const qubit::QubitProcessParams p = qubit::coherent_gibbs_params(tau);
    const Process process = qubit::qubit_process(p);
    const WorkContext ctx(process, qubit::initial_state(p));
    const qubit::Axis n = qubit::rotation_axis(process.evolution);
    for (double q : q_set) {
      for (double u : u_grid) {
        t.check("closed-form chi_q vs pipeline",
                std::abs(qubit::closed_form_char_fn(n, p, q, u).value - char_fn_q(ctx, q, u).value), 1e-8);
      }
    }
  }

  const qubit::Axis sudden = qubit::rotation_axis(qubit::coherent_gibbs_params(0.0));
  t.require("n_z = 0 exactly for sudden quench", sudden[2] == 0.0);
  const qubit::Axis slow = qubit::rotation_axis(qubit::coherent_gibbs_params(50.0));
  t.check("|n_z| at tau omega0 = 50", std::abs(slow[2]), 0.02);

  const qubit::QubitProcessParams base = qubit::coherent_gibbs_params(1.0);
  const std::vector<double> q_grid = qubit::default_q_grid();
  std::vector<double> tau_grid{0.0};
  for (double x : qubit::fig1_default_tau_grid()) tau_grid.push_back(x);
  tau_grid.push_back(50.0);
  const qubit::Fig1Sweep sweep = qubit::fig1_sweep(base, q_grid, tau_grid);
  const std::size_t nq = q_grid.size();

  std::vector<double> mean(tau_grid.size(), 0.0);
  for (std::size_t col = 0; col < tau_grid.size(); ++col) {
    double best = INFINITY;
    double half = INFINITY;
    double worst = 0.0;
    for (std::size_t k = 0; k < nq; ++k) {
      const qubit::Fig1Row& row = sweep.rows[col * nq + k];
      t.check("fig1 lhs = rhs", std::abs(row.value - row.rhs), 1e-8);
      const double dev = std::abs(row.value - 1.0);
      best = std::min(best, dev);
      worst = std::max(worst, dev);
      if (std::abs(row.q - 0.5) < 1e-12) half = dev;
      mean[col] += row.value / static_cast<double>(nq);
    }
    if (col == 0) {
      t.check("sudden quench value -> 1", worst, 1e-9);
    } else if (col + 1 == tau_grid.size()) {
      t.check("tau omega0 = 50 value -> 1 (calibrated)", worst, 2e-2);
    } else {
      t.check("q = 1/2 closest to one", half - best, 0.0);
    }
  }
  // the 0.2..2 grid occupies columns 1..10
  const auto first = mean.begin() + 1;
  const auto last = mean.end() - 1;
  const auto peak = std::max_element(first, last);
  const double peak_tau = tau_grid[static_cast<std::size_t>(peak - mean.begin())];
  t.check("peak near tau omega0 = 1", std::abs(peak_tau - 1.0), 0.2 + 1e-9);
  t.require("rises from tau omega0 = 0.2", *first < *peak);
  t.require("falls by tau omega0 = 2", *(last - 1) < *peak);
  t.require("ends closer to one than the peak",
            std::abs(*first - 1.0) < std::abs(*peak - 1.0) && std::abs(*(last - 1) - 1.0) < std::abs(*peak - 1.0));
}

void oracle_equivalence(Tally& t, Rng& rng) {
  auto compare = [&](const WorkContext& ctx, double q) {
    const Matrix& h0 = ctx.process().h_initial.matrix();
    const Matrix& h1 = ctx.process().h_final.matrix();
    const Matrix& u = ctx.evolution().matrix();
    const Matrix& rho = ctx.rho0().matrix();
    t.check("quasiprobability vs triple loop",
            oracle::discrepancy(as_points(quasiprob_distribution(ctx, q)), oracle::quasiprob_atoms(h0, h1, u, rho, q),
                                ctx.work_merge_tol()),
            1e-10);
    const CoherenceContext cctx(ctx);
    for (double qp : q_set) {
      t.check("joint quasiprobability vs quadruple loop",
              oracle::discrepancy(as_points(joint_distribution(cctx, q, qp)),
                                  oracle::joint_atoms(h0, h1, u, rho, q, qp), ctx.work_merge_tol(),
                                  cctx.coherence_merge_tol()),
              1e-10);
    }
  };
  for (int c = 0; c < 20; ++c) {
    const WorkContext ctx = random_context(rng, dim_for(c, 2, 3));
    for (double q : q_set) compare(ctx, q);
  }
  const qubit::QubitProcessParams p = qubit::coherent_gibbs_params(1.0);
  const WorkContext qctx(qubit::qubit_process(p), qubit::initial_state(p));
  const Matrix& h0 = qctx.process().h_initial.matrix();
  t.check("coherent Gibbs qubit vs triple loop at q = 0",
          oracle::discrepancy(as_points(quasiprob_distribution(qctx, 0.0)),
                              oracle::quasiprob_atoms(h0, qctx.process().h_final.matrix(), qctx.evolution().matrix(),
                                                      qctx.rho0().matrix(), 0.0),
                              qctx.work_merge_tol()),
          1e-10);
}

struct Criterion {
  const char* title;
  double budget;
  std::function<void(Tally&, Rng&)> body;
};

const std::vector<Criterion>& criteria() {
  static const std::vector<Criterion> list{
      {"reduction and symmetry", 10.0, reduction_and_symmetry},
      {"moments", 10.0, moments},
      {"characteristic functions", 20.0, characteristic_functions},
      {"fluctuation relations", 20.0, fluctuation_relations},
      {"joint distribution structure", 20.0, joint_structure},
      {"second law with coherence", 5.0, second_law},
      {"negativity bounds", 10.0, negativity_bounds},
      {"detector scheme", 30.0, detector_scheme},
      {"qubit example end to end", 60.0, [](Tally& t, Rng&) { qubit_end_to_end(t); }},
      {"brute-force oracle equivalence", 10.0, oracle_equivalence},
  };
  return list;
}

}  // namespace

CriterionResult run_criterion(int id, std::uint64_t seed) {
  if (id < 1 || id > criterion_count) throw std::out_of_range("run_criterion: id outside 1..10");
  const Criterion& c = criteria()[static_cast<std::size_t>(id - 1)];
  CriterionResult result;
  result.id = id;
  result.title = c.title;
  result.budget_seconds = c.budget;
  Tally tally;
  Rng rng(seed + static_cast<std::uint64_t>(id));
  const auto start = std::chrono::steady_clock::now();
  try {
    c.body(tally, rng);
  } catch (const std::exception& e) {
    tally.require(std::string("unexpected exception: ") + e.what(), false);
  }
  result.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  result.checks = tally.count();
  result.detail = tally.summary();
  result.passed = tally.passed() && result.seconds < result.budget_seconds;
  if (tally.passed() && !result.passed) result.detail += "; over time budget";
  return result;
}

std::vector<CriterionResult> run_acceptance(std::uint64_t seed) {
  std::vector<CriterionResult> out;
  for (int id = 1; id <= criterion_count; ++id) out.push_back(run_criterion(id, seed));
  return out;
}

std::string format_result(const CriterionResult& r) {
  std::ostringstream os;
  os << (r.passed ? "PASS" : "FAIL") << " [" << r.id << "] " << r.title << " (" << std::fixed << std::setprecision(2)
     << r.seconds << " s / " << std::setprecision(0) << r.budget_seconds << " s): " << r.detail;
  return os.str();
}

}  // namespace qwork::verify
