#pragma once

#include <array>
#include <optional>
#include <span>

#include "pspin/params.hpp"

namespace pspin {

/// Overlap of a Dicke-basis state with the spin-coherent state |theta, 0>.
struct CoherentOverlap {
  double theta = 0.0;
  double log_terms_max = 0.0;  ///< largest log-magnitude among the summed terms
  double overlap = 0.0;        ///< in [-1, 1]
  double distance = 0.0;       ///< sqrt(1 - overlap^2), in [0, 1]
};

/// Throws NotNormalized if | ||ground|| - 1 | > 1e-9 and DimensionMismatch
/// unless ground has N+1 entries.
CoherentOverlap coherent_overlap(std::span<const double> ground, double theta, int n);

/// Trace-norm distance between the exact ground state and the coherent
/// state at the semiclassical optimum theta_min.
double trace_norm_distance(const ModelParams& params);

/// Two-site reduced density matrix in the basis |00>, |01>, |10>, |11>.
class TwoSpinRDM {
 public:
  TwoSpinRDM() { m_.fill(0.0); }

  double operator()(int i, int j) const { return m_[4 * i + j]; }
  double& operator()(int i, int j) { return m_[4 * i + j]; }

  double trace() const { return m_[0] + m_[5] + m_[10] + m_[15]; }
  const std::array<double, 16>& data() const { return m_; }

  /// Upper-triangular 3 x 3 factor F (row major) with rho = E F^T F E^T,
  /// where E embeds the symmetric basis |00>, (|01> + |10>)/sqrt2, |11>.
  /// Present when the matrix was built from a state.
  const std::optional<std::array<double, 9>>& factor() const { return factor_; }
  void set_factor(const std::array<double, 9>& f) { factor_ = f; }

 private:
  std::array<double, 16> m_;
  std::optional<std::array<double, 9>> factor_;
};

/// Reduced density matrix of any two sites for a state of the maximal-spin
/// sector given by its Dicke coefficients.
TwoSpinRDM two_spin_rdm(std::span<const double> ground, int n);

struct ConcurrenceResult {
  double c = 0.0;
  double c_rescaled = 0.0;             ///< (N - 1) * c
  std::array<double, 4> sqrt_eigs{};   ///< square roots of eig(R), descending
  double trace_r = 0.0;                ///< trace of R = rho * rho_tilde
};

/// Wootters concurrence of a real two-qubit density matrix. The square roots
/// of eig(R) are the moduli of the eigenvalues of G^T (sigma_y x sigma_y) G
/// for any factor rho = G G^T; the stored factor is used when present. Throws
/// NonPhysicalState if rho has an eigenvalue below -1e-12 or trace != 1.
ConcurrenceResult concurrence(const TwoSpinRDM& rdm, int n);

/// log C(n, k) through log-gamma.
double log_binomial(int n, int k);

}  // namespace pspin
