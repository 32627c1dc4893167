#include "pspin/eigensolver.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>
#include <string>

#include "pspin/error.hpp"
#include "pspin/parallel.hpp"

namespace pspin {
namespace detail {
namespace {

// Symmetric matrix of lower bandwidth 3 (pentadiagonal plus one bulge
// diagonal), stored by column: col(j)[d] = A(j + d, j).
class BulgeBand {
 public:
  explicit BulgeBand(std::size_t n) : n_(n), data_(n) {}

  double& operator()(std::size_t i, std::size_t j) {
    const auto [lo, hi] = std::minmax(i, j);
    return data_[lo][hi - lo];
  }

  std::size_t size() const { return n_; }

 private:
  std::size_t n_;
  std::vector<std::array<double, 4>> data_;
};

// Similarity by a rotation in the (r, r+1) plane chosen to zero A(r+1, c).
void rotate_out(BulgeBand& a, std::size_t r, std::size_t c) {
  const std::size_t k = r + 1;
  const std::size_t n = a.size();
  const double x = a(r, c);
  const double y = a(k, c);
  if (y == 0.0) return;
  const double rho = std::hypot(x, y);
  const double cs = x / rho;
  const double sn = y / rho;

  const std::size_t lo = r >= 2 ? r - 2 : 0;
  const std::size_t hi = std::min(n - 1, k + 2);
  for (std::size_t j = lo; j <= hi; ++j) {
    if (j == r || j == k) continue;
    const double tr = a(r, j);
    const double tk = a(k, j);
    a(r, j) = cs * tr + sn * tk;
    a(k, j) = -sn * tr + cs * tk;
  }
  const double arr = a(r, r);
  const double akk = a(k, k);
  const double ark = a(r, k);
  a(r, r) = cs * cs * arr + 2.0 * cs * sn * ark + sn * sn * akk;
  a(k, k) = sn * sn * arr - 2.0 * cs * sn * ark + cs * cs * akk;
  a(r, k) = cs * sn * (akk - arr) + (cs * cs - sn * sn) * ark;
  a(r, c) = rho;
  a(k, c) = 0.0;
}

}  // namespace

void pentadiagonal_to_tridiagonal(std::span<const double> diag, std::span<const double> band1,
                                  std::span<const double> band2, std::vector<double>& d,
                                  std::vector<double>& e) {
  const std::size_t n = diag.size();
  BulgeBand a(n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = diag[i];
    if (i + 1 < n) a(i + 1, i) = band1[i];
    if (i + 2 < n) a(i + 2, i) = band2[i];
  }

  // Zero A(j+2, j) and chase the bulge it creates at distance 3 down the band.
  for (std::size_t j = 0; j + 2 < n; ++j) {
    std::size_t c = j;
    std::size_t r = j + 1;
    while (r + 1 < n) {
      rotate_out(a, r, c);
      c = r;
      r += 2;
      if (r + 1 >= n || a(r + 1, c) == 0.0) break;
    }
  }

  d.assign(n, 0.0);
  e.assign(n > 0 ? n - 1 : 0, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    d[i] = a(i, i);
    if (i + 1 < n) e[i] = a(i + 1, i);
  }
}

std::vector<double> tridiagonal_eigenvalues(std::vector<double> d, std::vector<double> e) {
  const int n = static_cast<int>(d.size());
  e.resize(d.size(), 0.0);
  constexpr int kMaxIterations = 60;

  for (int l = 0; l < n; ++l) {
    int iter = 0;
    int m = l;
    do {
      for (m = l; m < n - 1; ++m) {
        const double dd = std::abs(d[m]) + std::abs(d[m + 1]);
        if (std::abs(e[m]) <= std::numeric_limits<double>::epsilon() * dd) break;
      }
      if (m == l) break;
      if (iter++ == kMaxIterations) {
        throw ConvergenceFailure("tridiagonal QL did not converge for eigenvalue " +
                                 std::to_string(l));
      }
      // Wilkinson-type shift from the leading 2x2 block.
      double g = (d[l + 1] - d[l]) / (2.0 * e[l]);
      double r = std::hypot(g, 1.0);
      g = d[m] - d[l] + e[l] / (g + std::copysign(r, g));
      double s = 1.0;
      double c = 1.0;
      double p = 0.0;
      int i = m - 1;
      for (; i >= l; --i) {
        const double f = s * e[i];
        const double b = c * e[i];
        r = std::hypot(f, g);
        e[i + 1] = r;
        if (r == 0.0) {
          d[i + 1] -= p;
          e[m] = 0.0;
          break;
        }
        s = f / r;
        c = g / r;
        g = d[i + 1] - p;
        r = (d[i] - g) * s + 2.0 * c * b;
        p = s * r;
        d[i + 1] = g + p;
        g = c * r - b;
      }
      if (r == 0.0 && i >= l) continue;
      d[l] -= p;
      e[l] = g;
      e[m] = 0.0;
    } while (m != l);
  }
  std::sort(d.begin(), d.end());
  return d;
}

}  // namespace detail

namespace {

// LU factorization with partial pivoting of a pentadiagonal matrix shifted
// by -sigma. Row i stores columns [i-2, i+4]; U has upper bandwidth 4.
class ShiftedBandLU {
 public:
  ShiftedBandLU(const BandedHamiltonian& h, double sigma, double tiny)
      : n_(h.dim()), rows_(n_), perm_(n_), mult_(n_) {
    for (auto& row : rows_) row.fill(0.0);
    for (std::size_t i = 0; i < n_; ++i) {
      at(i, i) = h.diag()[i] - sigma;
      if (i + 1 < n_) at(i, i + 1) = at(i + 1, i) = h.band1()[i];
      if (i + 2 < n_) at(i, i + 2) = at(i + 2, i) = h.band2()[i];
    }
    for (std::size_t j = 0; j < n_; ++j) {
      const std::size_t last_row = std::min(n_ - 1, j + 2);
      const std::size_t last_col = std::min(n_ - 1, j + 4);
      std::size_t piv = j;
      for (std::size_t r = j + 1; r <= last_row; ++r) {
        if (std::abs(at(r, j)) > std::abs(at(piv, j))) piv = r;
      }
      perm_[j] = piv;
      if (piv != j) {
        for (std::size_t c = j; c <= last_col; ++c) std::swap(at(j, c), at(piv, c));
      }
      if (std::abs(at(j, j)) < tiny) at(j, j) = std::copysign(tiny, at(j, j) == 0.0 ? 1.0 : at(j, j));
      mult_[j].fill(0.0);
      for (std::size_t r = j + 1; r <= last_row; ++r) {
        const double f = at(r, j) / at(j, j);
        mult_[j][r - j - 1] = f;
        at(r, j) = 0.0;
        if (f == 0.0) continue;
        for (std::size_t c = j + 1; c <= last_col; ++c) at(r, c) -= f * at(j, c);
      }
    }
  }

  void solve(std::vector<double>& b) const {
    for (std::size_t j = 0; j < n_; ++j) {
      std::swap(b[j], b[perm_[j]]);
      if (j + 1 < n_) b[j + 1] -= mult_[j][0] * b[j];
      if (j + 2 < n_) b[j + 2] -= mult_[j][1] * b[j];
    }
    for (std::size_t jj = n_; jj-- > 0;) {
      double acc = b[jj];
      const std::size_t last_col = std::min(n_ - 1, jj + 4);
      for (std::size_t c = jj + 1; c <= last_col; ++c) acc -= at(jj, c) * b[c];
      b[jj] = acc / at(jj, jj);
    }
  }

 private:
  double& at(std::size_t i, std::size_t j) { return rows_[i][j + 2 - i]; }
  double at(std::size_t i, std::size_t j) const { return rows_[i][j + 2 - i]; }

  std::size_t n_;
  std::vector<std::array<double, 7>> rows_;
  std::vector<std::size_t> perm_;
  std::vector<std::array<double, 2>> mult_;
};

double norm2(std::span<const double> v) {
  double scale = 0.0;
  for (double x : v) scale = std::max(scale, std::abs(x));
  if (scale == 0.0) return 0.0;
  double acc = 0.0;
  for (double x : v) acc += (x / scale) * (x / scale);
  return scale * std::sqrt(acc);
}

double residual_norm(const BandedHamiltonian& h, std::span<const double> v, double e0) {
  std::vector<double> hv = h.apply(v);
  for (std::size_t i = 0; i < hv.size(); ++i) hv[i] -= e0 * v[i];
  return norm2(hv);
}

void apply_sign_convention(std::vector<double>& v) {
  std::size_t best = 0;
  for (std::size_t i = 1; i < v.size(); ++i) {
    if (std::abs(v[i]) > std::abs(v[best])) best = i;
  }
  if (v[best] < 0.0) {
    for (double& x : v) x = -x;
  }
}

std::vector<double> ground_vector(const BandedHamiltonian& h, double e0, double tol,
                                  double& residual) {
  const std::size_t n = h.dim();
  const double scale = std::max(1.0, h.norm_inf());
  const ShiftedBandLU lu(h, e0, std::numeric_limits<double>::epsilon() * scale);

  std::vector<double> v(n);
  for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.25 * std::sin(1.0 + static_cast<double>(i));
  constexpr int kMaxSweeps = 12;
  residual = std::numeric_limits<double>::infinity();
  for (int it = 0; it < kMaxSweeps; ++it) {
    lu.solve(v);
    const double nv = norm2(v);
    if (!(nv > 0.0) || !std::isfinite(nv)) break;
    for (double& x : v) x /= nv;
    residual = residual_norm(h, v, e0);
    if (residual <= 1e-3 * tol && it >= 1) break;
  }
  apply_sign_convention(v);
  return v;
}

}  // namespace

std::vector<double> all_eigenvalues(const BandedHamiltonian& h) {
  std::vector<double> d;
  std::vector<double> e;
  detail::pentadiagonal_to_tridiagonal(h.diag(), h.band1(), h.band2(), d, e);
  return detail::tridiagonal_eigenvalues(std::move(d), std::move(e));
}

SpectrumResult lowest_eigenpairs(const BandedHamiltonian& h, int k) {
  if (k < 1 || static_cast<std::size_t>(k) > h.dim()) {
    throw InvalidParams("requested " + std::to_string(k) + " levels from a matrix of dimension " +
                        std::to_string(h.dim()));
  }
  std::vector<double> values = all_eigenvalues(h);

  SpectrumResult out;
  out.k = k;
  out.eigenvalues.assign(values.begin(), values.begin() + k);
  for (int i = 0; i + 1 < k; ++i) {
    const double gap = out.eigenvalues[i + 1] - out.eigenvalues[i];
    if (gap < 1e-12 * std::max(1.0, std::abs(out.eigenvalues[i]))) out.near_degenerate = true;
  }
  if (values.size() > 1 && k == 1) {
    out.near_degenerate = values[1] - values[0] < 1e-12 * std::max(1.0, std::abs(values[0]));
  }

  const double e0 = values.front();
  const double tol = 1e-9 * std::max(1.0, std::abs(e0));
  out.ground_vector = ground_vector(h, e0, tol, out.residual);
  if (!(out.residual <= tol)) {
    std::ostringstream msg;
    msg << "ground-state residual " << out.residual << " exceeds " << tol;
    throw ConvergenceFailure(msg.str());
  }
  return out;
}

std::vector<SpectrumRow> spectrum_sweep(int p, int n, double lam, std::span<const double> s_grid,
                                        int k, unsigned workers) {
  return parallel_map(s_grid.size(), workers, [&](std::size_t i) {
    const double s = s_grid[i];
    const BandedHamiltonian h(ModelParams(p, n, s, lam));
    try {
      SpectrumResult r = lowest_eigenpairs(h, k);
      return SpectrumRow{s, std::move(r.eigenvalues)};
    } catch (const ConvergenceFailure& err) {
      std::ostringstream msg;
      msg.precision(17);
      msg << "at s = " << s << ": " << err.what();
      throw ConvergenceFailure(msg.str());
    }
  });
}

}  // namespace pspin
