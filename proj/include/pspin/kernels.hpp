#pragma once

// Data-parallel inner loops. Each kernel has a portable scalar reference
// implementation and, where the target supports it, a vectorized variant.
// The top-level entry points dispatch once per process to the best variant
// the CPU reports; setting PSPIN_KERNELS=scalar in the environment pins the
// scalar path.

#include <span>

namespace pspin::kernels {

enum class Isa { scalar, avx2, neon };

const char* isa_name(Isa isa) noexcept;

/// True when the variant was compiled in and the running CPU supports it.
bool isa_available(Isa isa) noexcept;

/// Variant selected by the dispatcher.
Isa active_isa() noexcept;

/// y = H x for a symmetric pentadiagonal H given by its main diagonal
/// (n entries), first superdiagonal (n-1) and second superdiagonal (n-2).
/// Spans must be sized consistently; x and y must not alias.
void banded_symv(std::span<const double> diag, std::span<const double> band1,
                 std::span<const double> band2, std::span<const double> x,
                 std::span<double> y);

/// out[i] = s * (-lam * cos^p + (1 - lam) * sin^2) - (1 - s) * sin, the
/// semiclassical potential at phi = 0, from tabulated cos/sin of theta.
void potential_grid(std::span<const double> cos_theta,
                    std::span<const double> sin_theta, int p, double s,
                    double lam, std::span<double> out);

namespace scalar {
void banded_symv(std::span<const double> diag, std::span<const double> band1,
                 std::span<const double> band2, std::span<const double> x,
                 std::span<double> y);
void potential_grid(std::span<const double> cos_theta,
                    std::span<const double> sin_theta, int p, double s,
                    double lam, std::span<double> out);
}  // namespace scalar

namespace avx2 {
// Only callable when isa_available(Isa::avx2).
void banded_symv(std::span<const double> diag, std::span<const double> band1,
                 std::span<const double> band2, std::span<const double> x,
                 std::span<double> y);
void potential_grid(std::span<const double> cos_theta,
                    std::span<const double> sin_theta, int p, double s,
                    double lam, std::span<double> out);
}  // namespace avx2

namespace neon {
// Only callable when isa_available(Isa::neon).
void banded_symv(std::span<const double> diag, std::span<const double> band1,
                 std::span<const double> band2, std::span<const double> x,
                 std::span<double> y);
void potential_grid(std::span<const double> cos_theta,
                    std::span<const double> sin_theta, int p, double s,
                    double lam, std::span<double> out);
}  // namespace neon

}  // namespace pspin::kernels
