#include <cmath>
#include <numbers>
#include <vector>

#include "doctest.h"
#include "pspin/semiclassical.hpp"

using namespace pspin;

constexpr double kPi = std::numbers::pi;

TEST_CASE("potential values") {
  for (double lam : {0.0, 0.3, 1.0}) CHECK(potential(kPi / 2, 0.0, 11, 0.0, lam) == doctest::Approx(-1.0));
  for (double phi : {0.0, 1.0, 2.5}) CHECK(potential(0.0, phi, 11, 1.0, 1.0) == doctest::Approx(-1.0));
  CHECK(potential(kPi / 2, 0.0, 11, 0.5, 0.1) == doctest::Approx(-0.05).epsilon(1e-14));
  CHECK(potential(kPi / 2, 0.0, ModelParams(11, 20, 0.5, 0.1)) ==
        doctest::Approx(-0.05).epsilon(1e-14));
}

TEST_CASE("slope matches a finite difference") {
  for (double th : {0.1, 0.7, 1.3, 2.0, 2.9}) {
    const double h = 1e-6;
    const double fd = (potential(th + h, 0.0, 5, 0.6, 0.4) - potential(th - h, 0.0, 5, 0.6, 0.4)) / (2 * h);
    CHECK(potential_slope(th, 5, 0.6, 0.4) == doctest::Approx(fd).epsilon(1e-7));
  }
}

TEST_CASE("curvature at the paramagnetic point") {
  for (double s : {0.1, 0.4, 0.8}) {
    for (double lam : {0.0, 0.3, 0.9}) {
      const double h = 1e-4;
      const double fd = (potential(kPi / 2 + h, 0.0, 11, s, lam) - 2 * potential(kPi / 2, 0.0, 11, s, lam) +
                         potential(kPi / 2 - h, 0.0, 11, s, lam)) /
                        (h * h);
      CHECK(std::abs(fd - (-2 * s * (1 - lam) + (1 - s))) < 1e-6);
    }
  }
}

TEST_CASE("minimizer at the endpoints") {
  for (double lam : {0.0, 0.5, 1.0}) CHECK(minimize_theta(11, 0.0, lam).theta_min == doctest::Approx(kPi / 2));
  CHECK(minimize_theta(11, 1.0, 1.0).theta_min == doctest::Approx(0.0));
  CHECK(minimize_theta(3, 1.0, 0.7).theta_min == doctest::Approx(0.0));
}

TEST_CASE("minimizer is the least local minimum") {
  for (double s = 0.0; s <= 1.0; s += 0.05) {
    for (double lam : {0.1, 0.3, 1.0}) {
      const auto pt = minimize_theta(11, s, lam);
      bool found = false;
      for (const auto& m : pt.local_minima) {
        CHECK(m.value >= pt.v_min - 1e-12);
        found = found || m.theta == pt.theta_min;
      }
      CHECK(found);
    }
  }
}

TEST_CASE("coexisting minima at the first-order point") {
  const auto records = classify_transitions(11, 1.0, 1e-3);
  REQUIRE(records.size() == 1);
  const auto pt = minimize_theta(11, records[0].s_star, 1.0);
  REQUIRE(pt.local_minima.size() >= 2);
  CHECK(pt.degenerate_minima().size() == 2);
  const auto at487 = minimize_theta(11, 0.487, 1.0);
  REQUIRE(at487.local_minima.size() == 2);
  CHECK(std::abs(at487.local_minima[0].value - at487.local_minima[1].value) < 1e-3);
}

TEST_CASE("second-order line") {
  CHECK(second_order_line(0.1) == doctest::Approx(1.0 / 2.8));
  CHECK(second_order_line(0.3) == doctest::Approx(0.4166666666666667));
  CHECK(second_order_line(1.0) == 1.0);
  CHECK(second_order_line(0.0) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("transition classification at p=11") {
  auto r1 = classify_transitions(11, 1.0, 1e-3);
  REQUIRE(r1.size() == 1);
  CHECK(r1[0].order == TransitionOrder::first);
  CHECK(std::abs(r1[0].s_star - 0.487) <= 1e-3);
  CHECK(r1[0].theta_jump > kJumpThreshold);

  auto r2 = classify_transitions(11, 0.1, 1e-3);
  REQUIRE(r2.size() == 1);
  CHECK(r2[0].order == TransitionOrder::second);
  CHECK(std::abs(r2[0].s_star - 0.357) <= 1e-3);
  CHECK(r2[0].theta_jump == 0.0);

  auto r3 = classify_transitions(11, 0.3, 1e-3);
  REQUIRE(r3.size() == 2);
  CHECK(r3[0].order == TransitionOrder::second);
  CHECK(std::abs(r3[0].s_star - 0.417) <= 1e-3);
  CHECK(r3[1].order == TransitionOrder::first);
  CHECK(std::abs(r3[1].s_star - 0.471) <= 1e-3);

  auto r4 = classify_transitions(11, 0.2, 1e-3);
  REQUIRE(r4.size() == 1);
  CHECK(std::abs(r4[0].s_star - 1.0 / 2.6) <= 1e-3);
}

TEST_CASE("second-order points sit on the analytic line") {
  for (int p : {3, 5, 11}) {
    for (double lam = 0.0; lam < 1.0; lam += 0.05) {
      for (const auto& r : classify_transitions(p, lam, 1e-3)) {
        if (r.order == TransitionOrder::second) {
          CHECK(std::abs(r.s_star - second_order_line(lam)) <= 2e-3);
        }
      }
    }
  }
}

TEST_CASE("V_min is continuous and theta_min does not increase") {
  for (double lam : {0.1, 0.3, 1.0}) {
    double prev_v = minimize_theta(11, 0.0, lam).v_min;
    double prev_t = minimize_theta(11, 0.0, lam).theta_min;
    for (int i = 1; i <= 2000; ++i) {
      const double s = i / 2000.0;
      const auto pt = minimize_theta(11, s, lam);
      CHECK(std::abs(pt.v_min - prev_v) < 2e-3);
      CHECK(pt.theta_min <= prev_t + 1e-9);
      prev_v = pt.v_min;
      prev_t = pt.theta_min;
    }
  }
}

TEST_CASE("phase diagram paths") {
  std::vector<double> grid;
  for (int i = 0; i <= 50; ++i) grid.push_back(i / 50.0);
  CHECK_FALSE(phase_diagram(3, grid, 1e-3).first_order_free_path);
  const auto p5 = phase_diagram(5, grid, 1e-3, 2);
  CHECK(p5.first_order_free_path);
  CHECK(p5.path_lambda > 0.0);
  const auto p11 = phase_diagram(11, grid, 1e-3);
  CHECK(p11.first_order_free_path);
  REQUIRE(p11.rows.size() == grid.size());
  CHECK(p11.rows.front().transitions.size() == 1);
  CHECK(p11.rows.front().transitions[0].s_star == doctest::Approx(1.0 / 3.0).epsilon(1e-6));
}
