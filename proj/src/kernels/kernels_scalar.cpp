#include "pspin/kernels.hpp"

#include "row_kernels.hpp"

namespace pspin::kernels::scalar {

void banded_symv(std::span<const double> diag, std::span<const double> band1,
                 std::span<const double> band2, std::span<const double> x,
                 std::span<double> y) {
  for (std::size_t i = 0; i < diag.size(); ++i) {
    y[i] = detail::banded_row(diag, band1, band2, x, i);
  }
}

void potential_grid(std::span<const double> cos_theta,
                    std::span<const double> sin_theta, int p, double s,
                    double lam, std::span<double> out) {
  for (std::size_t i = 0; i < out.size(); ++i) {
    out[i] = detail::potential_point(cos_theta[i], sin_theta[i], p, s, lam);
  }
}

}  // namespace pspin::kernels::scalar
