#include <algorithm>
#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pspin/error.hpp"
#include "pspin/eigensolver.hpp"
#include "pspin/observables.hpp"
#include "pspin/semiclassical.hpp"
#include "pspin/sweeps.hpp"

using namespace pspin;

TEST_CASE("grid values") {
  CHECK(SGrid{0.0, 0.0, 0.1}.values() == std::vector<double>{0.0});
  const auto v = SGrid{0.0, 1.0, 0.002}.values();
  CHECK(v.size() == 501);
  CHECK(v.back() == 1.0);
  CHECK(SGrid{0.45, 0.52, 0.001}.values().size() == 71);
}

TEST_CASE("observable names") {
  for (auto o : {Observable::theta_min, Observable::distance, Observable::concurrence, Observable::spectrum}) {
    CHECK(parse_observable(to_string(o)) == o);
  }
  CHECK_THROWS_AS(parse_observable("entropy"), std::invalid_argument);
}

TEST_CASE("SweepSpec validation") {
  SweepSpec spec;
  CHECK_NOTHROW(spec.validate());
  spec.n_values = {40, 20};
  CHECK_THROWS_AS(spec.validate(), InvalidParams);
  spec.n_values = {20};
  spec.s_grid = {0.0, 1.5, 0.1};
  CHECK_THROWS_AS(spec.validate(), InvalidParams);
  spec.s_grid = {0.0, 1.0, 0.0};
  CHECK_THROWS_AS(spec.validate(), InvalidParams);
  spec.s_grid = {0.0, 1.0, 0.1};
  spec.k_levels = 0;
  CHECK_THROWS_AS(spec.validate(), InvalidParams);
}

TEST_CASE("single point equals the direct call") {
  SweepSpec spec;
  spec.lam_values = {0.3};
  spec.n_values = {40};
  spec.s_grid = {0.44, 0.44, 0.01};
  spec.observables = {Observable::theta_min, Observable::distance, Observable::concurrence,
                      Observable::spectrum};
  spec.k_levels = 3;
  const auto r = run_sweep(spec);
  REQUIRE(r.points.size() == 1);
  const auto& pt = r.points[0];
  const ModelParams params(11, 40, 0.44, 0.3);
  CHECK(pt.ok());
  CHECK(pt.theta_min == minimize_theta(params).theta_min);
  CHECK(pt.distance == trace_norm_distance(params));
  const auto spec_r = lowest_eigenpairs(BandedHamiltonian(params), 3);
  CHECK(pt.levels == spec_r.eigenvalues);
  CHECK(pt.concurrence == concurrence(two_spin_rdm(spec_r.ground_vector, 40), 40).c);
  CHECK(r.to_table().rows.size() == 1);
}

TEST_CASE("canonical order and worker independence") {
  SweepSpec spec;
  spec.lam_values = {0.1, 1.0};
  spec.n_values = {20, 40, 160};
  spec.s_grid = {0.0, 1.0, 0.05};
  spec.observables = {Observable::distance, Observable::concurrence};
  const auto a = run_sweep(spec, 1);
  const auto b = run_sweep(spec, 4);
  REQUIRE(a.points.size() == 2 * 3 * 21);
  CHECK(a.points[0].lam == 0.1);
  CHECK(a.points[0].n == 20);
  CHECK(a.points[1].s == doctest::Approx(0.05));
  CHECK(a.points[21].n == 40);
  CHECK(a.points[63].lam == 1.0);
  for (std::size_t i = 0; i < a.points.size(); ++i) {
    CHECK(a.points[i].distance == b.points[i].distance);
    CHECK(a.points[i].c_rescaled == b.points[i].c_rescaled);
  }
  CHECK(a.failures() == 0);
  const Table t = a.to_table();
  CHECK(t.columns == std::vector<std::string>{"lambda", "n", "s", "distance", "overlap",
                                              "concurrence", "c_rescaled", "error"});
}

TEST_CASE("theta_min sweep shows the jump at 0.487") {
  SweepSpec spec;
  spec.observables = {Observable::theta_min};
  spec.s_grid = {0.48, 0.495, 0.001};
  const auto r = run_sweep(spec);
  double biggest = 0.0, where = 0.0;
  for (std::size_t i = 1; i < r.points.size(); ++i) {
    const double d = std::abs(r.points[i].theta_min - r.points[i - 1].theta_min);
    if (d > biggest) {
      biggest = d;
      where = r.points[i].s;
    }
  }
  CHECK(biggest > 1.0);
  CHECK(std::abs(where - 0.487) <= 1e-3 + 1e-12);
}

TEST_CASE("endpoint scan") {
  const std::vector<double> lams{0.1, 0.5, 1.0};
  const std::vector<int> ns{20, 160};
  const auto r = endpoint_scan(11, lams, ns, Observable::concurrence);
  REQUIRE(r.points.size() == 6);
  for (const auto& pt : r.points) {
    CHECK(pt.s == 1.0);
    if (pt.lam == 1.0) CHECK(pt.c_rescaled == doctest::Approx(0.0));
  }
  CHECK(r.points[1].c_rescaled > r.points[3].c_rescaled);
  CHECK(r.points[3].c_rescaled > 0.0);
}

TEST_CASE("peak refinement is a local maximum") {
  const std::vector<int> ns{20, 40};
  for (auto obs : {Observable::distance, Observable::concurrence}) {
    for (const auto& pk : peak_scan(11, 0.1, ns, obs)) {
      const double v0 = observable_value(11, pk.n, pk.s_peak, 0.1, obs);
      CHECK(pk.value == doctest::Approx(v0).epsilon(1e-12));
      for (double ds : {-1e-5, 1e-5}) {
        CHECK(observable_value(11, pk.n, pk.s_peak + ds, 0.1, obs) <= pk.value + 1e-12);
      }
      for (double ds : {-1e-6, 1e-6}) {
        const double v = observable_value(11, pk.n, pk.s_peak + ds, 0.1, obs);
        CHECK(v <= pk.value + 1e-12);
        CHECK(std::abs(v - pk.value) <= 1e-8);
      }
    }
  }
}

TEST_CASE("concurrence peaks at lambda=0.1 increase toward 2") {
  const std::vector<int> ns{20, 40, 80, 160};
  const auto peaks = peak_scan(11, 0.1, ns, Observable::concurrence);
  for (std::size_t i = 1; i < peaks.size(); ++i) CHECK(peaks[i].value > peaks[i - 1].value);
  CHECK(peaks.back().value < 2.2);
  const auto fit = fit_inverse_n(peaks);
  CHECK(fit.points == 3);
  CHECK(fit.intercept == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("concurrence peaks at lambda=0.5 decrease") {
  const std::vector<int> ns{20, 40, 80};
  const auto peaks = peak_scan(11, 0.5, ns, Observable::concurrence);
  for (std::size_t i = 1; i < peaks.size(); ++i) CHECK(peaks[i].value < peaks[i - 1].value);
}

TEST_CASE("inverse-N fit of exact data") {
  std::vector<PeakRecord> recs;
  for (int n : {10, 20, 40, 80}) recs.push_back({n, 1.0 / n, 0.5, 3.0 - 2.0 / n, Observable::distance});
  const auto fit = fit_inverse_n(recs);
  CHECK(fit.intercept == doctest::Approx(3.0));
  CHECK(fit.slope == doctest::Approx(-2.0));
  CHECK(fit.residual < 1e-12);
}

TEST_CASE("point failures are recorded without aborting") {
  SweepSpec spec;
  spec.n_values = {4, 20};
  spec.s_grid = {0.2, 0.3, 0.1};
  spec.observables = {Observable::spectrum};
  spec.k_levels = 8;
  const auto r = run_sweep(spec);
  REQUIRE(r.points.size() == 4);
  CHECK(r.failures() == 2);
  CHECK_FALSE(r.points[0].ok());
  CHECK(r.points[2].ok());
  CHECK(r.points[2].levels.size() == 8);
}
