#pragma once

#include <cstddef>
#include <span>
#include <vector>

#include "pspin/params.hpp"

namespace pspin {

/// The model Hamiltonian restricted to the maximal total-spin sector
/// S = N/2, as a real symmetric pentadiagonal (N+1) x (N+1) matrix.
///
/// Basis index w in [0, N] counts flipped spins relative to |0...0>, i.e.
/// |w> = |S = N/2, M = N/2 - w>. Immutable after construction.
class BandedHamiltonian {
 public:
  explicit BandedHamiltonian(const ModelParams& params);

  std::size_t dim() const noexcept { return diag_.size(); }
  const ModelParams& params() const noexcept { return params_; }

  /// [H]_{w,w}, N+1 entries.
  std::span<const double> diag() const noexcept { return diag_; }
  /// [H]_{w,w+1}, N entries.
  std::span<const double> band1() const noexcept { return band1_; }
  /// [H]_{w,w+2}, N-1 entries.
  std::span<const double> band2() const noexcept { return band2_; }

  /// Matrix element [H]_{i,j}; zero outside the band.
  double at(std::size_t i, std::size_t j) const;

  /// y = H x. Throws DimensionMismatch unless both spans have length dim().
  void apply(std::span<const double> x, std::span<double> y) const;
  std::vector<double> apply(std::span<const double> x) const;

  /// Largest absolute row sum (infinity norm).
  double norm_inf() const noexcept;

 private:
  ModelParams params_;
  std::vector<double> diag_;
  std::vector<double> band1_;
  std::vector<double> band2_;
};

BandedHamiltonian build_hamiltonian(const ModelParams& params);

std::vector<double> apply(const BandedHamiltonian& h, std::span<const double> v);

/// x^p by repeated squaring.
double int_pow(double x, int p) noexcept;

}  // namespace pspin
