#include <cmath>
#include <cstdlib>
#include <numbers>
#include <random>
#include <string>
#include <vector>

#include "doctest.h"
#include "pspin/kernels.hpp"

using namespace pspin::kernels;

namespace {

std::vector<double> random_vector(std::size_t n, std::mt19937_64& rng) {
  std::uniform_real_distribution<double> dist(-3.0, 3.0);
  std::vector<double> v(n);
  for (auto& x : v) x = dist(rng);
  return v;
}

std::vector<double> dense_symv(const std::vector<double>& d, const std::vector<double>& b1,
                               const std::vector<double>& b2, const std::vector<double>& x) {
  const std::size_t n = d.size();
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    y[i] += d[i] * x[i];
    if (i + 1 < n) {
      y[i] += b1[i] * x[i + 1];
      y[i + 1] += b1[i] * x[i];
    }
    if (i + 2 < n) {
      y[i] += b2[i] * x[i + 2];
      y[i + 2] += b2[i] * x[i];
    }
  }
  return y;
}

struct Variant {
  Isa isa;
  void (*symv)(std::span<const double>, std::span<const double>, std::span<const double>,
               std::span<const double>, std::span<double>);
  void (*grid)(std::span<const double>, std::span<const double>, int, double, double,
               std::span<double>);
};

std::vector<Variant> vector_variants() {
  std::vector<Variant> v;
#ifdef PSPIN_HAVE_AVX2
  v.push_back({Isa::avx2, avx2::banded_symv, avx2::potential_grid});
#endif
#ifdef PSPIN_HAVE_NEON
  v.push_back({Isa::neon, neon::banded_symv, neon::potential_grid});
#endif
  return v;
}

}  // namespace

TEST_CASE("scalar banded_symv agrees with a dense product") {
  std::mt19937_64 rng(7);
  for (std::size_t n : {1u, 2u, 3u, 4u, 5u, 9u, 33u}) {
    const auto d = random_vector(n, rng);
    const auto b1 = random_vector(n > 0 ? n - 1 : 0, rng);
    const auto b2 = random_vector(n > 1 ? n - 2 : 0, rng);
    const auto x = random_vector(n, rng);
    std::vector<double> y(n);
    scalar::banded_symv(d, b1, b2, x, y);
    const auto ref = dense_symv(d, b1, b2, x);
    for (std::size_t i = 0; i < n; ++i) CHECK(y[i] == doctest::Approx(ref[i]).epsilon(1e-13));
  }
}

TEST_CASE("vector variants are bit-identical to scalar") {
  std::mt19937_64 rng(11);
  for (const Variant& var : vector_variants()) {
    if (!isa_available(var.isa)) continue;
    CAPTURE(isa_name(var.isa));
    for (std::size_t n = 1; n < 70; ++n) {
      const auto d = random_vector(n, rng);
      const auto b1 = random_vector(n - 1, rng);
      const auto b2 = random_vector(n > 1 ? n - 2 : 0, rng);
      const auto x = random_vector(n, rng);
      std::vector<double> ys(n), yv(n);
      scalar::banded_symv(d, b1, b2, x, ys);
      var.symv(d, b1, b2, x, yv);
      CHECK(ys == yv);

      std::vector<double> c(n), s(n), vs(n), vv(n);
      for (std::size_t i = 0; i < n; ++i) {
        const double t = std::numbers::pi * static_cast<double>(i) / static_cast<double>(n);
        c[i] = std::cos(t);
        s[i] = std::sin(t);
      }
      for (int p : {3, 5, 11}) {
        scalar::potential_grid(c, s, p, 0.487, 0.3, vs);
        var.grid(c, s, p, 0.487, 0.3, vv);
        CHECK(vs == vv);
      }
    }
  }
}

TEST_CASE("dispatcher picks an available variant") {
  CHECK(isa_available(Isa::scalar));
  CHECK(isa_available(active_isa()));
  const char* forced = std::getenv("PSPIN_KERNELS");
  if (forced && std::string(forced) == "scalar") CHECK(active_isa() == Isa::scalar);
}

TEST_CASE("potential_grid matches the closed form") {
  const std::vector<double> c{1.0, 0.0, -1.0};
  const std::vector<double> s{0.0, 1.0, 0.0};
  std::vector<double> out(3);
  potential_grid(c, s, 11, 0.5, 0.1, out);
  CHECK(out[0] == doctest::Approx(0.5 * -0.1));
  CHECK(out[1] == doctest::Approx(-0.05));
  CHECK(out[2] == doctest::Approx(0.5 * 0.1));
}
