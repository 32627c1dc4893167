#pragma once

// Brute-force reference on the full 2^N Hilbert space. Shares nothing with
// the Dicke-sector pipeline beyond parameter types; used to validate it.

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "pspin/params.hpp"

namespace pspin::oracle {

inline constexpr int kMaxSpins = 12;

/// Computational basis state index b: bit i of b is the state of site i,
/// with bit value 0 meaning |0> (sigma_z = +1).
struct DenseState {
  std::vector<double> amplitudes;
  int n = 0;
};

/// Full Hamiltonian s (lam H0 + (1 - lam) V_AFI) + (1 - s) V_TF built from
/// Pauli strings. Accepts 1 <= n <= kMaxSpins; p must be odd and >= 3.
Eigen::MatrixXd oracle_hamiltonian(int p, int n, double s, double lam);
Eigen::MatrixXd oracle_hamiltonian(const ModelParams& params);

/// Lowest eigenpair of the full Hamiltonian, from LAPACK.
struct GroundState {
  double energy = 0.0;
  DenseState state;
};
GroundState oracle_ground(const ModelParams& params);

/// Every eigenvalue of a dense symmetric matrix, ascending.
std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& h);

/// Symmetric Dicke states |w> as explicit 2^N vectors, one column per w.
Eigen::MatrixXd dicke_basis(int n);

/// B^T H B for the Dicke basis B.
Eigen::MatrixXd project_to_dicke(const Eigen::MatrixXd& full, int n);

/// Expands Dicke coefficients into the full computational basis.
DenseState from_dicke(std::span<const double> coefficients, int n);

/// Reduced density matrix of sites (a, b), basis |00>, |01>, |10>, |11>
/// with the first label on site a.
Eigen::Matrix4d oracle_rdm(const DenseState& state, int site_a = 0, int site_b = 1);

/// Concurrence via the eigenvalues of sqrt(rho) rho_tilde sqrt(rho).
double oracle_concurrence(const DenseState& state);

/// <theta, 0 | state> with the coherent state built as an explicit product.
double oracle_overlap(const DenseState& state, double theta);

/// sqrt(1 - overlap^2), as the norm of the part of state orthogonal to the
/// product state.
double oracle_distance(const DenseState& state, double theta);

}  // namespace pspin::oracle
