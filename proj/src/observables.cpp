#include "pspin/observables.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numbers>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "pspin/eigensolver.hpp"
#include "pspin/error.hpp"
#include "pspin/hamiltonian.hpp"
#include "pspin/semiclassical.hpp"

namespace pspin {
namespace {

double log_gamma(double x) {
#if defined(__GLIBC__)
  int sign = 0;
  return ::lgamma_r(x, &sign);
#else
  return std::lgamma(x);
#endif
}

void check_state(std::span<const double> v, int n) {
  if (n < 2) throw InvalidParams("need at least two spins, got " + std::to_string(n));
  if (v.size() != static_cast<std::size_t>(n) + 1) {
    throw DimensionMismatch("expected " + std::to_string(n + 1) + " Dicke coefficients, got " +
                            std::to_string(v.size()));
  }
  double norm2 = 0.0;
  for (double x : v) norm2 += x * x;
  if (std::abs(std::sqrt(norm2) - 1.0) > 1e-9) {
    throw NotNormalized("state norm deviates from 1 by " + std::to_string(std::sqrt(norm2) - 1.0));
  }
}

}  // namespace

double log_binomial(int n, int k) {
  if (k < 0 || k > n) return -std::numeric_limits<double>::infinity();
  return log_gamma(n + 1.0) - log_gamma(k + 1.0) - log_gamma(n - k + 1.0);
}

CoherentOverlap coherent_overlap(std::span<const double> ground, double theta, int n) {
  check_state(ground, n);
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) {
    throw InvalidParams("theta must lie in [0, pi]");
  }
  const double log_cos = std::log(std::cos(0.5 * theta));
  const double log_sin = std::log(std::sin(0.5 * theta));

  // Coherent amplitude sqrt(C(N,w)) cos^(N-w) sin^w, built from logs; zero
  // powers are skipped so that 0 * log(0) never appears. Each amplitude is
  // at most 1, so exp never overflows.
  std::vector<double> coherent(ground.size(), 0.0);
  double max_log = -std::numeric_limits<double>::infinity();
  double coherent_norm2 = 0.0;
  double ground_norm2 = 0.0;
  for (int w = 0; w <= n; ++w) {
    double l = 0.5 * log_binomial(n, w);
    if (n - w > 0) l += (n - w) * log_cos;
    if (w > 0) l += w * log_sin;
    coherent[w] = std::exp(l);
    coherent_norm2 += coherent[w] * coherent[w];
    ground_norm2 += ground[w] * ground[w];
    if (ground[w] != 0.0) max_log = std::max(max_log, l + std::log(std::abs(ground[w])));
  }
  const double cn = std::sqrt(coherent_norm2);
  const double gn = std::sqrt(ground_norm2);
  double acc = 0.0;
  for (int w = 0; w <= n; ++w) {
    coherent[w] /= cn;
    acc += (ground[w] / gn) * coherent[w];
  }

  // sqrt(1 - overlap^2) as the norm of the component orthogonal to the
  // coherent state, which keeps full precision when the overlap is near 1.
  double perp2 = 0.0;
  for (int w = 0; w <= n; ++w) {
    const double r = ground[w] / gn - acc * coherent[w];
    perp2 += r * r;
  }

  CoherentOverlap out;
  out.theta = theta;
  out.log_terms_max = max_log;
  out.overlap = std::clamp(acc, -1.0, 1.0);
  out.distance = std::clamp(std::sqrt(perp2), 0.0, 1.0);
  return out;
}

double trace_norm_distance(const ModelParams& params) {
  const SemiclassicalPoint sc = minimize_theta(params);
  const SpectrumResult spec = lowest_eigenpairs(BandedHamiltonian(params), 1);
  return coherent_overlap(spec.ground_vector, sc.theta_min, params.n()).distance;
}

TwoSpinRDM two_spin_rdm(std::span<const double> ground, int n) {
  check_state(ground, n);

  // Amplitude of |D_k> (two sites, k excitations) x |D_m> (the other N-2)
  // inside |w = m + k>.
  const int rest = n - 2;
  std::array<std::vector<double>, 3> weight;
  for (int k = 0; k < 3; ++k) {
    weight[k].resize(static_cast<std::size_t>(rest) + 1);
    for (int m = 0; m <= rest; ++m) {
      weight[k][m] =
          std::exp(0.5 * (log_binomial(2, k) + log_binomial(rest, m) - log_binomial(n, m + k)));
    }
  }
  std::array<std::array<double, 3>, 3> sym{};
  for (int k = 0; k < 3; ++k) {
    for (int kp = k; kp < 3; ++kp) {
      double acc = 0.0;
      for (int m = 0; m <= rest; ++m) {
        acc += ground[m + k] * weight[k][m] * ground[m + kp] * weight[kp][m];
      }
      sym[k][kp] = sym[kp][k] = acc;
    }
  }

  // sym = A^T A with A(m, k) = ground[m + k] * weight[k][m]; keep the R of A.
  Eigen::MatrixXd a(rest + 1, 3);
  for (int m = 0; m <= rest; ++m) {
    for (int k = 0; k < 3; ++k) a(m, k) = ground[m + k] * weight[k][m];
  }
  const Eigen::HouseholderQR<Eigen::MatrixXd> qr(a);
  const Eigen::MatrixXd packed = qr.matrixQR();
  std::array<double, 9> factor{};
  for (int i = 0; i < std::min(3, rest + 1); ++i) {
    for (int j = i; j < 3; ++j) factor[3 * i + j] = packed(i, j);
  }

  // Embed: D0 = |00>, D1 = (|01> + |10>)/sqrt2, D2 = |11>.
  const double r = std::numbers::sqrt2 / 2.0;
  const std::array<std::array<double, 3>, 4> embed{{{1.0, 0.0, 0.0},
                                                    {0.0, r, 0.0},
                                                    {0.0, r, 0.0},
                                                    {0.0, 0.0, 1.0}}};
  TwoSpinRDM rho;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) {
      double acc = 0.0;
      for (int a = 0; a < 3; ++a) {
        for (int b = 0; b < 3; ++b) acc += embed[i][a] * sym[a][b] * embed[j][b];
      }
      rho(i, j) = acc;
    }
  }
  rho.set_factor(factor);
  return rho;
}

ConcurrenceResult concurrence(const TwoSpinRDM& rdm, int n) {
  if (n < 2) throw InvalidParams("need at least two spins, got " + std::to_string(n));
  Eigen::Matrix4d rho;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) rho(i, j) = rdm(i, j);
  }
  if (std::abs(rho.trace() - 1.0) > 1e-9) {
    throw NonPhysicalState("reduced density matrix has trace " + std::to_string(rho.trace()));
  }
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> rho_eig(rho, Eigen::EigenvaluesOnly);
  if (rho_eig.eigenvalues().minCoeff() < -1e-12) {
    throw NonPhysicalState("reduced density matrix has eigenvalue " +
                           std::to_string(rho_eig.eigenvalues().minCoeff()));
  }

  // sigma_y x sigma_y is real; rho is real so rho* = rho.
  Eigen::Matrix4d yy = Eigen::Matrix4d::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;

  ConcurrenceResult out;
  out.trace_r = (rho * yy * rho * yy).trace();
  if (const auto& f = rdm.factor()) {
    // yy acts on the symmetric basis as [[0, 0, -1], [0, 1, 0], [-1, 0, 0]].
    const Eigen::Matrix3d g = Eigen::Map<const Eigen::Matrix<double, 3, 3, Eigen::RowMajor>>(f->data());
    Eigen::Matrix3d yy3 = Eigen::Matrix3d::Zero();
    yy3(0, 2) = yy3(2, 0) = -1.0;
    yy3(1, 1) = 1.0;
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix3d> s_eig(g * yy3 * g.transpose(),
                                                               Eigen::EigenvaluesOnly);
    for (int i = 0; i < 3; ++i) out.sqrt_eigs[i] = std::abs(s_eig.eigenvalues()[i]);
    out.sqrt_eigs[3] = 0.0;
  } else {
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> full(rho);
    const Eigen::Vector4d root =
        full.eigenvalues().unaryExpr([](double x) { return std::sqrt(std::max(0.0, x)); });
    const Eigen::Matrix4d g = full.eigenvectors() * root.asDiagonal();
    const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> s_eig(g.transpose() * yy * g,
                                                               Eigen::EigenvaluesOnly);
    for (int i = 0; i < 4; ++i) out.sqrt_eigs[i] = std::abs(s_eig.eigenvalues()[i]);
  }
  std::sort(out.sqrt_eigs.begin(), out.sqrt_eigs.end(), std::greater<>());
  const auto& l = out.sqrt_eigs;
  out.c = std::clamp(l[0] - l[1] - l[2] - l[3], 0.0, 1.0);
  out.c_rescaled = (n - 1) * out.c;
  return out;
}

}  // namespace pspin
