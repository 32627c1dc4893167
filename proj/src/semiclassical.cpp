#include "pspin/semiclassical.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "pspin/error.hpp"
#include "pspin/hamiltonian.hpp"
#include "pspin/kernels.hpp"
#include "pspin/parallel.hpp"

namespace pspin {
namespace {

constexpr double kPi = std::numbers::pi;
constexpr double kHalfPi = std::numbers::pi / 2.0;
constexpr double kTieTolerance = 1e-12;
constexpr double kBisectionWidth = 1e-9;

struct ThetaGrid {
  std::vector<double> theta;
  std::vector<double> cos_theta;
  std::vector<double> sin_theta;

  ThetaGrid() : theta(kThetaGridPoints), cos_theta(kThetaGridPoints), sin_theta(kThetaGridPoints) {
    const double h = kPi / (kThetaGridPoints - 1);
    for (int i = 0; i < kThetaGridPoints; ++i) {
      theta[i] = i * h;
      cos_theta[i] = std::cos(theta[i]);
      sin_theta[i] = std::sin(theta[i]);
    }
    theta.back() = kPi;
  }
};

const ThetaGrid& theta_grid() {
  static const ThetaGrid grid;
  return grid;
}

double golden_section(double lo, double hi, int p, double s, double lam) {
  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = lo;
  double b = hi;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = potential(c, 0.0, p, s, lam);
  double fd = potential(d, 0.0, p, s, lam);
  while (b - a > 1e-10) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = potential(c, 0.0, p, s, lam);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = potential(d, 0.0, p, s, lam);
    }
  }
  return 0.5 * (a + b);
}

// Refines the grid minimum at index i to a stationary point of V.
double refine_minimum(std::size_t i, int p, double s, double lam) {
  const auto& grid = theta_grid();
  const std::size_t last = grid.theta.size() - 1;
  if (i == 0 && potential_slope(0.0, p, s, lam) >= 0.0) return 0.0;
  if (i == last && potential_slope(kPi, p, s, lam) <= 0.0) return kPi;

  double lo = grid.theta[i == 0 ? 0 : i - 1];
  double hi = grid.theta[std::min(i + 1, last)];
  if (potential_slope(lo, p, s, lam) <= 0.0 && potential_slope(hi, p, s, lam) >= 0.0) {
    while (hi - lo > 1e-14) {
      const double mid = 0.5 * (lo + hi);
      if (mid <= lo || mid >= hi) break;
      if (potential_slope(mid, p, s, lam) < 0.0) {
        lo = mid;
      } else {
        hi = mid;
      }
    }
    return 0.5 * (lo + hi);
  }
  return golden_section(lo, hi, p, s, lam);
}

struct Bracket {
  double lo;
  double hi;
  double theta_lo;
  double theta_hi;
};

// Shrinks [lo, hi] onto the sharpest change of theta(x), keeping the half
// across which theta moves more.
template <typename ThetaOf>
Bracket localize_change(Bracket b, ThetaOf&& theta_of) {
  while (b.hi - b.lo > kBisectionWidth) {
    const double mid = 0.5 * (b.lo + b.hi);
    const double tm = theta_of(mid);
    if (std::abs(tm - b.theta_lo) >= std::abs(b.theta_hi - tm)) {
      b.hi = mid;
      b.theta_hi = tm;
    } else {
      b.lo = mid;
      b.theta_lo = tm;
    }
  }
  return b;
}

bool departed(double theta) { return std::abs(theta - kHalfPi) > kDepartureThreshold; }

}  // namespace

double potential(double theta, double phi, int p, double s, double lam) {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  const double cphi = std::cos(phi);
  return s * (-lam * int_pow(c, p) + (1.0 - lam) * sn * sn * cphi * cphi) - (1.0 - s) * sn * cphi;
}

double potential(double theta, double phi, const ModelParams& params) {
  return potential(theta, phi, params.p(), params.s(), params.lam());
}

double potential_slope(double theta, int p, double s, double lam) {
  const double c = std::cos(theta);
  const double sn = std::sin(theta);
  // Factored through cos(theta) so the sign stays exact at theta = pi/2.
  return c * (s * (lam * p * int_pow(c, p - 2) * sn + 2.0 * (1.0 - lam) * sn) - (1.0 - s));
}

std::vector<LocalMinimum> SemiclassicalPoint::degenerate_minima() const {
  std::vector<LocalMinimum> out;
  for (const auto& m : local_minima) {
    if (m.value - v_min < kDegeneracyTolerance) out.push_back(m);
  }
  return out;
}

SemiclassicalPoint minimize_theta(int p, double s, double lam) {
  validate_order(p);
  validate_unit_interval(s, "s");
  validate_unit_interval(lam, "lambda");

  const auto& grid = theta_grid();
  std::vector<double> v(grid.theta.size());
  kernels::potential_grid(grid.cos_theta, grid.sin_theta, p, s, lam, v);

  SemiclassicalPoint out;
  out.p = p;
  out.s = s;
  out.lam = lam;
  const std::size_t last = v.size() - 1;
  for (std::size_t i = 0; i <= last; ++i) {
    const bool left_ok = i == 0 || v[i] < v[i - 1];
    const bool right_ok = i == last || v[i] <= v[i + 1];
    if (!left_ok || !right_ok) continue;
    const double theta = refine_minimum(i, p, s, lam);
    const double value = potential(theta, 0.0, p, s, lam);
    if (!out.local_minima.empty() && std::abs(out.local_minima.back().theta - theta) < 1e-9) {
      if (value < out.local_minima.back().value) out.local_minima.back() = {theta, value};
      continue;
    }
    out.local_minima.push_back({theta, value});
  }

  double best = out.local_minima.front().value;
  for (const auto& m : out.local_minima) best = std::min(best, m.value);
  const double tie = kTieTolerance * std::max(1.0, std::abs(best));
  for (const auto& m : out.local_minima) {
    if (m.value <= best + tie) {
      out.theta_min = m.theta;
      out.v_min = m.value;
      break;
    }
  }
  return out;
}

SemiclassicalPoint minimize_theta(const ModelParams& params) {
  return minimize_theta(params.p(), params.s(), params.lam());
}

double second_order_line(double lam) {
  validate_unit_interval(lam, "lambda");
  return 1.0 / (3.0 - 2.0 * lam);
}

const char* to_string(TransitionOrder order) noexcept {
  return order == TransitionOrder::first ? "first" : "second";
}

std::vector<TransitionRecord> classify_transitions(int p, double lam, double s_resolution) {
  validate_order(p);
  validate_unit_interval(lam, "lambda");
  if (!(s_resolution > 0.0 && s_resolution <= 1e-3)) {
    throw InvalidParams("s_resolution must lie in (0, 1e-3], got " + std::to_string(s_resolution));
  }
  auto theta_at = [&](double s) { return minimize_theta(p, s, lam).theta_min; };

  std::vector<TransitionRecord> records;
  const auto steps = static_cast<long>(std::ceil(1.0 / s_resolution - 1e-9));
  double s_prev = 0.0;
  double theta_prev = theta_at(0.0);
  bool left_paramagnet = departed(theta_prev);

  for (long j = 1; j <= steps; ++j) {
    const double s = std::min(1.0, static_cast<double>(j) * s_resolution);
    const double theta = theta_at(s);

    if (std::abs(theta - theta_prev) > kJumpThreshold) {
      const Bracket b = localize_change({s_prev, s, theta_prev, theta}, theta_at);
      const double jump = std::abs(b.theta_hi - b.theta_lo);
      if (jump > kJumpThreshold) {
        records.push_back({lam, 0.5 * (b.lo + b.hi), TransitionOrder::first, jump});
        left_paramagnet = true;
      }
    }
    if (!left_paramagnet && departed(theta)) {
      double lo = s_prev;
      double hi = s;
      while (hi - lo > kBisectionWidth) {
        const double mid = 0.5 * (lo + hi);
        (departed(theta_at(mid)) ? hi : lo) = mid;
      }
      records.push_back({lam, 0.5 * (lo + hi), TransitionOrder::second, 0.0});
      left_paramagnet = true;
    }
    s_prev = s;
    theta_prev = theta;
  }
  return records;
}

bool PhaseDiagramRow::first_order_free() const {
  return std::none_of(transitions.begin(), transitions.end(),
                      [](const TransitionRecord& r) { return r.order == TransitionOrder::first; });
}

PhaseDiagram phase_diagram(int p, std::span<const double> lam_grid, double s_resolution,
                           unsigned workers) {
  validate_order(p);
  for (double lam : lam_grid) validate_unit_interval(lam, "lambda");

  PhaseDiagram out;
  out.p = p;
  out.s_resolution = s_resolution;
  out.rows = parallel_map(lam_grid.size(), workers, [&](std::size_t i) {
    return PhaseDiagramRow{lam_grid[i], classify_transitions(p, lam_grid[i], s_resolution)};
  });

  // Candidate paths climb a first-order-free column to s = 1 and then run
  // along s = 1 to lambda = 1. lambda = 0 is excluded: there the p-body term
  // vanishes and the s = 1 ground state is degenerate.
  std::vector<const PhaseDiagramRow*> columns;
  for (const auto& row : out.rows) columns.push_back(&row);
  std::sort(columns.begin(), columns.end(),
            [](const PhaseDiagramRow* a, const PhaseDiagramRow* b) { return a->lam < b->lam; });

  auto theta_top = [&](double lam) { return minimize_theta(p, 1.0, lam).theta_min; };
  for (std::size_t c = 0; c < columns.size(); ++c) {
    const double lam = columns[c]->lam;
    if (lam <= 0.0 || !columns[c]->first_order_free()) continue;

    std::vector<double> edge;
    for (std::size_t k = c; k < columns.size(); ++k) edge.push_back(columns[k]->lam);
    if (edge.back() < 1.0) edge.push_back(1.0);
    bool blocked = false;
    for (std::size_t k = 0; k + 1 < edge.size() && !blocked; ++k) {
      const double t0 = theta_top(edge[k]);
      const double t1 = theta_top(edge[k + 1]);
      if (std::abs(t1 - t0) <= kJumpThreshold) continue;
      const Bracket b = localize_change({edge[k], edge[k + 1], t0, t1}, theta_top);
      blocked = std::abs(b.theta_hi - b.theta_lo) > kJumpThreshold;
    }
    if (!blocked) {
      out.first_order_free_path = true;
      out.path_lambda = lam;
      break;
    }
  }
  return out;
}

}  // namespace pspin
