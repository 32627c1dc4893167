#include "pspin/hamiltonian.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "pspin/error.hpp"
#include "pspin/kernels.hpp"

namespace pspin {

double int_pow(double x, int p) noexcept {
  double result = 1.0;
  for (unsigned e = static_cast<unsigned>(p); e != 0; e >>= 1) {
    if (e & 1u) result *= x;
    x *= x;
  }
  return result;
}

BandedHamiltonian::BandedHamiltonian(const ModelParams& params) : params_(params) {
  const int n = params.n();
  const double nd = n;
  const double s = params.s();
  const double lam = params.lam();

  diag_.resize(static_cast<std::size_t>(n) + 1);
  band1_.resize(static_cast<std::size_t>(n));
  band2_.resize(static_cast<std::size_t>(n) - 1);

  for (int w = 0; w <= n; ++w) {
    const double wd = w;
    const double mz = 1.0 - 2.0 * wd / nd;
    const double pspin = -lam * nd * int_pow(mz, params.p());
    const double afi = (1.0 - lam) * (2.0 * wd - 2.0 * wd * wd / nd + 1.0);
    diag_[w] = s * (pspin + afi);
  }
  for (int w = 0; w < n; ++w) {
    const double wd = w;
    band1_[w] = -(1.0 - s) * std::sqrt((nd - wd) * (wd + 1.0));
  }
  for (int w = 0; w + 1 < n; ++w) {
    const double wd = w;
    band2_[w] = s * (1.0 - lam) / nd *
                std::sqrt((wd + 1.0) * (wd + 2.0) * (nd - wd) * (nd - wd - 1.0));
  }
}

double BandedHamiltonian::at(std::size_t i, std::size_t j) const {
  if (i >= dim() || j >= dim()) throw DimensionMismatch("matrix index out of range");
  const std::size_t lo = std::min(i, j);
  switch (std::max(i, j) - lo) {
    case 0: return diag_[lo];
    case 1: return band1_[lo];
    case 2: return band2_[lo];
    default: return 0.0;
  }
}

void BandedHamiltonian::apply(std::span<const double> x, std::span<double> y) const {
  if (x.size() != dim() || y.size() != dim()) {
    throw DimensionMismatch("apply: expected vectors of length " + std::to_string(dim()) +
                            ", got " + std::to_string(x.size()) + " and " +
                            std::to_string(y.size()));
  }
  kernels::banded_symv(diag_, band1_, band2_, x, y);
}

std::vector<double> BandedHamiltonian::apply(std::span<const double> x) const {
  std::vector<double> y(dim());
  apply(x, y);
  return y;
}

double BandedHamiltonian::norm_inf() const noexcept {
  double best = 0.0;
  for (std::size_t i = 0; i < dim(); ++i) {
    double row = std::abs(diag_[i]);
    if (i + 1 < dim()) row += std::abs(band1_[i]);
    if (i >= 1) row += std::abs(band1_[i - 1]);
    if (i + 2 < dim()) row += std::abs(band2_[i]);
    if (i >= 2) row += std::abs(band2_[i - 2]);
    best = std::max(best, row);
  }
  return best;
}

BandedHamiltonian build_hamiltonian(const ModelParams& params) { return BandedHamiltonian(params); }

std::vector<double> apply(const BandedHamiltonian& h, std::span<const double> v) { return h.apply(v); }

}  // namespace pspin
