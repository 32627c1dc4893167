#pragma once

#include <span>
#include <vector>

#include "pspin/hamiltonian.hpp"

namespace pspin {

/// Lowest part of the spectrum of a BandedHamiltonian.
struct SpectrumResult {
  std::vector<double> eigenvalues;    ///< k smallest, ascending
  std::vector<double> ground_vector;  ///< unit norm; largest-|.| entry positive
  int k = 0;
  double residual = 0.0;              ///< ||H v0 - E0 v0||_2
  bool near_degenerate = false;       ///< some adjacent gap below 1e-12 (relative)
};

/// k smallest eigenvalues and the ground eigenvector, 1 <= k <= N+1.
///
/// The band is reduced to tridiagonal form by Givens bulge chasing, all
/// eigenvalues follow from implicit-shift QL, and the ground vector from
/// inverse iteration on the pentadiagonal matrix. Throws ConvergenceFailure
/// if QL stalls or the ground residual exceeds 1e-9 * max(1, |E0|).
SpectrumResult lowest_eigenpairs(const BandedHamiltonian& h, int k);

/// Every eigenvalue of h, ascending.
std::vector<double> all_eigenvalues(const BandedHamiltonian& h);

struct SpectrumRow {
  double s = 0.0;
  std::vector<double> levels;  ///< k lowest eigenvalues at this s
};

/// One row per s in s_grid, in grid order. Rows are independent and run on
/// up to `workers` threads. A ConvergenceFailure names the offending s.
std::vector<SpectrumRow> spectrum_sweep(int p, int n, double lam, std::span<const double> s_grid,
                                        int k, unsigned workers = 1);

namespace detail {

/// Tridiagonal form (diagonal, subdiagonal) of the symmetric pentadiagonal
/// matrix with the given bands; orthogonally similar to it.
void pentadiagonal_to_tridiagonal(std::span<const double> diag, std::span<const double> band1,
                                  std::span<const double> band2, std::vector<double>& d,
                                  std::vector<double>& e);

/// Eigenvalues of the symmetric tridiagonal matrix (d, e), ascending.
/// e has d.size() - 1 entries.
std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e);

}  // namespace detail

}  // namespace pspin
