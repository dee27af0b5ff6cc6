#include <cmath>

#include "doctest.h"
#include "qwork/distribution.hpp"

using namespace qwork;

TEST_SUITE("distribution") {
  TEST_CASE("coincident atoms merge onto the first position of a run") {
    const DeltaDistribution d({{1.0 + 5e-10, 0.25}, {1.0, 0.25}, {-2.0, 0.5}}, 1e-9);
    REQUIRE(d.size() == 2);
    CHECK(d.atoms()[0].position == -2.0);
    CHECK(d.atoms()[1].position == 1.0);
    CHECK(d.atoms()[1].weight == 0.5);
    CHECK(d.total_weight() == doctest::Approx(1.0));
  }

  TEST_CASE("runs are anchored, not chained") {
    // 0, 0.8e-9, 1.6e-9: the third is beyond tol of the run's first member
    const DeltaDistribution d({{0.0, 0.2}, {0.8e-9, 0.3}, {1.6e-9, 0.5}}, 1e-9);
    REQUIRE(d.size() == 2);
    CHECK(d.atoms()[0].weight == doctest::Approx(0.5));
    CHECK(d.atoms()[1].position == 1.6e-9);
  }

  TEST_CASE("cancelled weights are pruned") {
    const DeltaDistribution d({{0.0, 0.4}, {0.0, -0.4}, {1.0, 1.0}}, 1e-9);
    REQUIRE(d.size() == 1);
    CHECK(d.atoms()[0].position == 1.0);
  }

  TEST_CASE("signed weights and moments") {
    const DeltaDistribution d({{-1.0, -0.25}, {1.0, 0.75}, {2.0, 0.5}}, 1e-9);
    CHECK(d.negative_weight() == doctest::Approx(-0.25));
    CHECK(d.positive_weight() == doctest::Approx(1.25));
    CHECK(d.moment(0) == doctest::Approx(1.0));
    CHECK(d.moment(1) == doctest::Approx(0.25 + 0.75 + 1.0));
    CHECK(d.moment(2) == doctest::Approx(-0.25 + 0.75 + 2.0));
    CHECK(d.expectation([](double x) { return x * x * x; }) == doctest::Approx(0.25 + 0.75 + 4.0));
  }

  TEST_CASE("Fourier sum") {
    const DeltaDistribution one({{1.5, 1.0}}, 1e-9);
    CHECK(std::abs(one.fourier(0.7) - std::polar(1.0, 1.05)) < 1e-15);
    const DeltaDistribution d({{-1.0, 0.5}, {1.0, 0.5}}, 1e-9);
    CHECK(std::abs(d.fourier(0.3) - std::cos(0.3)) < 1e-15);
    CHECK(d.fourier(0.0) == std::complex<double>(1.0, 0.0));
  }

  TEST_CASE("weight discrepancy") {
    const DeltaDistribution a({{0.0, 0.5}, {1.0, 0.5}}, 1e-9);
    const DeltaDistribution b({{0.0, 0.5}, {1.0 + 1e-12, 0.3}, {2.0, 0.2}}, 1e-9);
    CHECK(max_weight_discrepancy(a, a) == 0.0);
    CHECK(max_weight_discrepancy(a, b) == doctest::Approx(0.2));
    CHECK(max_weight_discrepancy(b, a) == doctest::Approx(0.2));
    const DeltaDistribution empty;
    CHECK(max_weight_discrepancy(a, empty) == doctest::Approx(0.5));
  }

  TEST_CASE("joint clustering and marginals") {
    const JointDeltaDistribution j({{0.0, 1.0, 0.25}, {0.0, 1.0 + 1e-12, 0.25}, {0.0, 2.0, 0.25}, {3.0, 1.0, 0.25}},
                                   1e-9, 1e-9);
    CHECK(j.size() == 3);
    CHECK(j.total_weight() == doctest::Approx(1.0));
    const DeltaDistribution w = j.work_marginal();
    REQUIRE(w.size() == 2);
    CHECK(w.atoms()[0].weight == doctest::Approx(0.75));
    const DeltaDistribution c = j.coherence_marginal();
    REQUIRE(c.size() == 2);
    CHECK(c.atoms()[0].position == 1.0);
    CHECK(c.atoms()[0].weight == doctest::Approx(0.75));
    CHECK(j.expectation([](double x, double y) { return x + y; }) == doctest::Approx(0.25 + 0.25 + 0.5 + 1.0));
    CHECK(max_weight_discrepancy(j, j) == 0.0);
  }

  TEST_CASE("relative merge tolerance") {
    CHECK(relative_merge_tol(2.0, 3.0) == doctest::Approx(6e-9));
    CHECK(relative_merge_tol(0.0, 0.0) == doctest::Approx(1e-9));
  }
}
