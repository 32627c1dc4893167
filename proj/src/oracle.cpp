#include "pspin/oracle.hpp"

#include <algorithm>
#include <array>
#include <bit>
#include <cmath>
#include <functional>
#include <string>

#include <lapacke.h>

#include "pspin/error.hpp"

namespace pspin::oracle {
namespace {

void check_size(int n) {
  if (n < 1 || n > kMaxSpins) {
    throw SizeLimitExceeded("oracle supports 1 <= N <= " + std::to_string(kMaxSpins) + ", got " +
                            std::to_string(n));
  }
}

void check_state(const DenseState& state) {
  check_size(state.n);
  if (state.amplitudes.size() != (std::size_t{1} << state.n)) {
    throw DimensionMismatch("dense state has wrong length");
  }
}

}  // namespace

Eigen::MatrixXd oracle_hamiltonian(int p, int n, double s, double lam) {
  check_size(n);
  validate_order(p);
  validate_unit_interval(s, "s");
  validate_unit_interval(lam, "lambda");

  const Eigen::Index dim = Eigen::Index{1} << n;
  const double nd = n;
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);

  for (Eigen::Index b = 0; b < dim; ++b) {
    // H0 = -N (sum_i sigma^z_i / N)^p is diagonal.
    const int ones = std::popcount(static_cast<unsigned>(b));
    const double mz = (nd - 2.0 * ones) / nd;
    h(b, b) += s * lam * (-nd * std::pow(mz, p));

    // V_TF = -sum_i sigma^x_i.
    for (int i = 0; i < n; ++i) h(b ^ (Eigen::Index{1} << i), b) += -(1.0 - s);

    // V_AFI = (1/N) sum_{i,j} sigma^x_i sigma^x_j.
    const double afi = s * (1.0 - lam) / nd;
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        const Eigen::Index target = b ^ (Eigen::Index{1} << i) ^ (Eigen::Index{1} << j);
        h(target, b) += afi;
      }
    }
  }
  return h;
}

Eigen::MatrixXd oracle_hamiltonian(const ModelParams& params) {
  return oracle_hamiltonian(params.p(), params.n(), params.s(), params.lam());
}

GroundState oracle_ground(const ModelParams& params) {
  Eigen::MatrixXd h = oracle_hamiltonian(params);
  const auto dim = static_cast<lapack_int>(h.rows());
  lapack_int found = 0;
  double energy = 0.0;
  std::vector<double> vec(static_cast<std::size_t>(dim));
  std::vector<lapack_int> support(2);
  const lapack_int info =
      LAPACKE_dsyevr(LAPACK_COL_MAJOR, 'V', 'I', 'U', dim, h.data(), dim, 0.0, 0.0, 1, 1, 0.0,
                     &found, &energy, vec.data(), dim, support.data());
  if (info != 0 || found != 1) {
    throw ConvergenceFailure("LAPACK dsyevr failed with info " + std::to_string(info));
  }
  const auto peak = std::max_element(vec.begin(), vec.end(),
                                     [](double a, double b) { return std::abs(a) < std::abs(b); });
  if (*peak < 0.0) {
    for (double& x : vec) x = -x;
  }
  return {energy, DenseState{std::move(vec), params.n()}};
}

std::vector<double> dense_eigenvalues(const Eigen::MatrixXd& h) {
  Eigen::MatrixXd a = h;
  const auto dim = static_cast<lapack_int>(a.rows());
  std::vector<double> w(static_cast<std::size_t>(dim));
  const lapack_int info = LAPACKE_dsyev(LAPACK_COL_MAJOR, 'N', 'U', dim, a.data(), dim, w.data());
  if (info != 0) throw ConvergenceFailure("LAPACK dsyev failed with info " + std::to_string(info));
  return w;
}

Eigen::MatrixXd dicke_basis(int n) {
  check_size(n);
  const Eigen::Index dim = Eigen::Index{1} << n;
  Eigen::MatrixXd basis = Eigen::MatrixXd::Zero(dim, n + 1);
  std::vector<double> count(static_cast<std::size_t>(n) + 1, 0.0);
  for (Eigen::Index b = 0; b < dim; ++b) count[std::popcount(static_cast<unsigned>(b))] += 1.0;
  for (Eigen::Index b = 0; b < dim; ++b) {
    const int w = std::popcount(static_cast<unsigned>(b));
    basis(b, w) = 1.0 / std::sqrt(count[w]);
  }
  return basis;
}

Eigen::MatrixXd project_to_dicke(const Eigen::MatrixXd& full, int n) {
  const Eigen::MatrixXd b = dicke_basis(n);
  return b.transpose() * full * b;
}

DenseState from_dicke(std::span<const double> coefficients, int n) {
  if (coefficients.size() != static_cast<std::size_t>(n) + 1) {
    throw DimensionMismatch("expected N+1 Dicke coefficients");
  }
  const Eigen::MatrixXd b = dicke_basis(n);
  const Eigen::Map<const Eigen::VectorXd> c(coefficients.data(), n + 1);
  const Eigen::VectorXd full = b * c;
  return DenseState{std::vector<double>(full.data(), full.data() + full.size()), n};
}

Eigen::Matrix4d oracle_rdm(const DenseState& state, int site_a, int site_b) {
  check_state(state);
  if (site_a == site_b || site_a < 0 || site_b < 0 || site_a >= state.n || site_b >= state.n) {
    throw InvalidParams("oracle_rdm needs two distinct sites inside the system");
  }
  Eigen::Matrix4d rho = Eigen::Matrix4d::Zero();
  const std::size_t dim = state.amplitudes.size();
  const std::size_t mask_a = std::size_t{1} << site_a;
  const std::size_t mask_b = std::size_t{1} << site_b;
  for (std::size_t b = 0; b < dim; ++b) {
    if (b & (mask_a | mask_b)) continue;
    // b enumerates the environment with both sites cleared.
    std::array<double, 4> amp{};
    for (int ka = 0; ka < 2; ++ka) {
      for (int kb = 0; kb < 2; ++kb) {
        const std::size_t idx = b | (ka ? mask_a : 0) | (kb ? mask_b : 0);
        amp[2 * ka + kb] = state.amplitudes[idx];
      }
    }
    for (int i = 0; i < 4; ++i) {
      for (int j = 0; j < 4; ++j) rho(i, j) += amp[i] * amp[j];
    }
  }
  return rho;
}

double oracle_concurrence(const DenseState& state) {
  const Eigen::Matrix4d rho = oracle_rdm(state);
  Eigen::Matrix4d yy = Eigen::Matrix4d::Zero();
  yy(0, 3) = -1.0;
  yy(1, 2) = 1.0;
  yy(2, 1) = 1.0;
  yy(3, 0) = -1.0;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> rho_eig(rho);
  const Eigen::Vector4d root =
      rho_eig.eigenvalues().unaryExpr([](double x) { return std::sqrt(std::max(0.0, x)); });
  const Eigen::Matrix4d sqrt_rho =
      rho_eig.eigenvectors() * root.asDiagonal() * rho_eig.eigenvectors().transpose();
  // sqrt(rho) rho_tilde sqrt(rho) is the square of sqrt(rho) yy sqrt(rho), so
  // its square-rooted eigenvalues are the moduli of the latter's.
  const Eigen::Matrix4d m = sqrt_rho * yy * sqrt_rho;
  const Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> m_eig(0.5 * (m + m.transpose()),
                                                             Eigen::EigenvaluesOnly);
  std::array<double, 4> l{};
  for (int i = 0; i < 4; ++i) l[i] = std::abs(m_eig.eigenvalues()[i]);
  std::sort(l.begin(), l.end(), std::greater<>());
  return std::max(0.0, l[0] - l[1] - l[2] - l[3]);
}

namespace {

std::vector<double> product_state(int n, double theta) {
  const double up = std::cos(0.5 * theta);
  const double down = std::sin(0.5 * theta);
  std::vector<double> product{1.0};
  for (int site = 0; site < n; ++site) {
    // Site `site` is bit `site`: new index = old + bit * 2^site.
    std::vector<double> next(product.size() * 2);
    for (std::size_t i = 0; i < product.size(); ++i) {
      next[i] = product[i] * up;
      next[i + product.size()] = product[i] * down;
    }
    product = std::move(next);
  }
  return product;
}

}  // namespace

double oracle_overlap(const DenseState& state, double theta) {
  check_state(state);
  const std::vector<double> product = product_state(state.n, theta);
  double acc = 0.0;
  for (std::size_t i = 0; i < product.size(); ++i) acc += product[i] * state.amplitudes[i];
  return acc;
}

double oracle_distance(const DenseState& state, double theta) {
  const double ov = oracle_overlap(state, theta);
  const std::vector<double> product = product_state(state.n, theta);
  double perp2 = 0.0;
  for (std::size_t i = 0; i < product.size(); ++i) {
    const double r = state.amplitudes[i] - ov * product[i];
    perp2 += r * r;
  }
  return std::min(1.0, std::sqrt(perp2));
}

}  // namespace pspin::oracle
