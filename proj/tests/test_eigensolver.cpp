#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <vector>

#include <Eigen/Dense>

#include "doctest.h"
#include "pspin/eigensolver.hpp"
#include "pspin/error.hpp"
#include "pspin/oracle.hpp"
#include "pspin/semiclassical.hpp"
#include "test_support.hpp"

using namespace pspin;

namespace {

double norm(const std::vector<double>& v) {
  return std::sqrt(std::inner_product(v.begin(), v.end(), v.begin(), 0.0));
}

double min_gap(int n, double lo, double hi, double step) {
  double best = 1e300;
  for (double s = lo; s <= hi + 1e-12; s += step) {
    const auto r = lowest_eigenpairs(BandedHamiltonian(ModelParams(11, n, s, 1.0)), 2);
    best = std::min(best, r.eigenvalues[1] - r.eigenvalues[0]);
  }
  return best;
}

}  // namespace

TEST_CASE("classical endpoint s=1, lambda=1") {
  for (int n : {2, 7, 50, 300}) {
    const auto r = lowest_eigenpairs(BandedHamiltonian(ModelParams(11, n, 1.0, 1.0)), 2);
    CHECK(r.eigenvalues[0] == doctest::Approx(-n).epsilon(1e-14));
    CHECK(r.ground_vector[0] == doctest::Approx(1.0).epsilon(1e-12));
    for (int w = 1; w <= n; ++w) CHECK(std::abs(r.ground_vector[w]) < 1e-12);
  }
}

TEST_CASE("transverse-field endpoint s=0") {
  for (int n : {2, 9, 64, 200}) {
    for (double lam : {0.0, 0.5, 1.0}) {
      const auto r = lowest_eigenpairs(BandedHamiltonian(ModelParams(5, n, 0.0, lam)), 1);
      CHECK(r.eigenvalues[0] == doctest::Approx(-n).epsilon(1e-13));
      for (int w = 0; w <= n; ++w) {
        const double lb = std::lgamma(n + 1.0) - std::lgamma(w + 1.0) - std::lgamma(n - w + 1.0);
        const double expected = std::exp(0.5 * (lb - n * std::log(2.0)));
        CHECK(std::abs(r.ground_vector[w] - expected) < 1e-10);
      }
    }
  }
}

TEST_CASE("all levels at N=12 near the transition match the oracle sector") {
  const ModelParams params(11, 12, 0.487, 1.0);
  const BandedHamiltonian h(params);
  const auto levels = all_eigenvalues(h);
  const Eigen::MatrixXd full = oracle::oracle_hamiltonian(params);
  const auto sector = oracle::dense_eigenvalues(oracle::project_to_dicke(full, 12));
  const auto every = oracle::dense_eigenvalues(full);
  REQUIRE(levels.size() == sector.size());
  for (std::size_t i = 0; i < levels.size(); ++i) {
    CHECK(std::abs(levels[i] - sector[i]) < 1e-10);
    const auto it = std::lower_bound(every.begin(), every.end(), levels[i] - 1e-9);
    REQUIRE(it != every.end());
    CHECK(std::abs(*it - levels[i]) < 1e-9);
  }
}

TEST_CASE("ground energy equals the global oracle minimum") {
  for (const auto& params : testing::random_params(40, 2, 10, 101)) {
    CAPTURE(params.p());
    CAPTURE(params.n());
    CAPTURE(params.s());
    CAPTURE(params.lam());
    const auto r = lowest_eigenpairs(BandedHamiltonian(params), 1);
    CHECK(std::abs(r.eigenvalues[0] - oracle::oracle_ground(params).energy) < 1e-10);
  }
}

TEST_CASE("returned pairs satisfy the contract") {
  for (const auto& params : testing::random_params(60, 2, 400, 202)) {
    const BandedHamiltonian h(params);
    const int k = std::min<int>(5, static_cast<int>(h.dim()));
    const auto r = lowest_eigenpairs(h, k);
    REQUIRE(r.eigenvalues.size() == static_cast<std::size_t>(k));
    CHECK(std::is_sorted(r.eigenvalues.begin(), r.eigenvalues.end()));
    CHECK(std::abs(norm(r.ground_vector) - 1.0) < 1e-12);
    CHECK(r.residual <= 1e-9 * std::max(1.0, std::abs(r.eigenvalues[0])));
    const auto big = std::max_element(r.ground_vector.begin(), r.ground_vector.end(),
                                      [](double a, double b) { return std::abs(a) < std::abs(b); });
    CHECK(*big > 0.0);
  }
}

TEST_CASE("k out of range") {
  const BandedHamiltonian h(ModelParams(3, 4, 0.5, 0.5));
  CHECK_THROWS_AS(lowest_eigenpairs(h, 0), InvalidParams);
  CHECK_THROWS_AS(lowest_eigenpairs(h, 6), InvalidParams);
  CHECK_NOTHROW(lowest_eigenpairs(h, 5));
}

TEST_CASE("bulge chasing preserves the spectrum") {
  std::mt19937_64 rng(5);
  std::uniform_real_distribution<double> u(-1.0, 1.0);
  for (int n : {1, 2, 3, 4, 5, 8, 17, 60}) {
    std::vector<double> d(n), b1(n > 0 ? n - 1 : 0), b2(n > 1 ? n - 2 : 0);
    for (auto& x : d) x = u(rng);
    for (auto& x : b1) x = u(rng);
    for (auto& x : b2) x = u(rng);
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(n, n);
    for (int i = 0; i < n; ++i) {
      m(i, i) = d[i];
      if (i + 1 < n) m(i, i + 1) = m(i + 1, i) = b1[i];
      if (i + 2 < n) m(i, i + 2) = m(i + 2, i) = b2[i];
    }
    std::vector<double> td, te;
    detail::pentadiagonal_to_tridiagonal(d, b1, b2, td, te);
    const auto got = detail::tridiagonal_eigenvalues(td, te);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
    for (int i = 0; i < n; ++i) CHECK(std::abs(got[i] - es.eigenvalues()(i)) < 1e-12);
  }
}

TEST_CASE("spectrum_sweep endpoints and order") {
  const std::vector<double> grid{0.0, 0.5, 1.0};
  const auto rows = spectrum_sweep(11, 30, 1.0, grid, 3, 2);
  REQUIRE(rows.size() == 3);
  CHECK(rows[0].s == 0.0);
  CHECK(rows[0].levels[0] == doctest::Approx(-30).epsilon(1e-13));
  CHECK(rows[2].levels[0] == doctest::Approx(-30).epsilon(1e-14));
  CHECK(rows[1].levels.size() == 3);
  const auto serial = spectrum_sweep(11, 30, 1.0, grid, 3, 1);
  for (std::size_t i = 0; i < rows.size(); ++i) CHECK(rows[i].levels == serial[i].levels);
}

TEST_CASE("minimum gap shrinks with N at the first-order point") {
  const double g20 = min_gap(20, 0.47, 0.50, 1e-4);
  const double g40 = min_gap(40, 0.47, 0.50, 1e-4);
  CHECK(g40 < g20);
}

TEST_CASE("variational bound by the coherent state") {
  for (const auto& params : testing::random_params(30, 2, 200, 303)) {
    const BandedHamiltonian h(params);
    const auto r = lowest_eigenpairs(h, 1);
    const auto c = testing::coherent_state(minimize_theta(params).theta_min, params.n());
    const auto hc = h.apply(c);
    const double expectation = std::inner_product(c.begin(), c.end(), hc.begin(), 0.0);
    CHECK(r.eigenvalues[0] <= expectation + 1e-10);
  }
}

TEST_CASE("ground energy derivative kinks across the first-order point") {
  const int n = 128;
  auto e0 = [&](double s) {
    return lowest_eigenpairs(BandedHamiltonian(ModelParams(11, n, s, 1.0)), 1).eigenvalues[0];
  };
  const double h = 1e-4;
  auto slope = [&](double s) { return (e0(s + h) - e0(s - h)) / (2 * h); };
  const double pre = std::abs(slope(0.46) - slope(0.40));
  const double jump = std::abs(slope(0.50) - slope(0.475));
  CHECK(jump > 10 * pre);
}
