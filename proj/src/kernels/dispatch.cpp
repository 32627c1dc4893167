#include <cstdlib>
#include <string_view>

#include "pspin/kernels.hpp"

namespace pspin::kernels {
namespace {

struct Table {
  Isa isa;
  decltype(&scalar::banded_symv) banded_symv;
  decltype(&scalar::potential_grid) potential_grid;
};

bool cpu_has_avx2() noexcept {
#if defined(PSPIN_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  return __builtin_cpu_supports("avx2");
#else
  return false;
#endif
}

Table select() noexcept {
  if (const char* env = std::getenv("PSPIN_KERNELS");
      env != nullptr && std::string_view(env) == "scalar") {
    return {Isa::scalar, &scalar::banded_symv, &scalar::potential_grid};
  }
#if defined(PSPIN_HAVE_AVX2)
  if (cpu_has_avx2()) return {Isa::avx2, &avx2::banded_symv, &avx2::potential_grid};
#endif
#if defined(PSPIN_HAVE_NEON)
  return {Isa::neon, &neon::banded_symv, &neon::potential_grid};
#endif
  return {Isa::scalar, &scalar::banded_symv, &scalar::potential_grid};
}

const Table& table() noexcept {
  static const Table t = select();
  return t;
}

}  // namespace

const char* isa_name(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return "scalar";
    case Isa::avx2: return "avx2";
    case Isa::neon: return "neon";
  }
  return "unknown";
}

bool isa_available(Isa isa) noexcept {
  switch (isa) {
    case Isa::scalar: return true;
    case Isa::avx2: return cpu_has_avx2();
    case Isa::neon:
#if defined(PSPIN_HAVE_NEON)
      return true;
#else
      return false;
#endif
  }
  return false;
}

Isa active_isa() noexcept { return table().isa; }

void banded_symv(std::span<const double> diag, std::span<const double> band1,
                 std::span<const double> band2, std::span<const double> x,
                 std::span<double> y) {
  table().banded_symv(diag, band1, band2, x, y);
}

void potential_grid(std::span<const double> cos_theta,
                    std::span<const double> sin_theta, int p, double s,
                    double lam, std::span<double> out) {
  table().potential_grid(cos_theta, sin_theta, p, s, lam, out);
}

}  // namespace pspin::kernels
