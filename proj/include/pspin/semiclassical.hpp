#pragma once

#include <span>
#include <vector>

#include "pspin/params.hpp"

namespace pspin {

/// Per-spin energy of the spin-coherent product state |theta, phi> in the
/// large-N limit. Depends only on p, s and lambda of `params`.
double potential(double theta, double phi, const ModelParams& params);
double potential(double theta, double phi, int p, double s, double lam);

/// dV/dtheta at phi = 0.
double potential_slope(double theta, int p, double s, double lam);

/// Number of uniform theta samples on [0, pi] used to bracket minima.
inline constexpr int kThetaGridPoints = 4001;
/// Two local minima whose potentials differ by less than this coexist.
inline constexpr double kDegeneracyTolerance = 1e-9;
/// theta_min discontinuity above which a transition is first order.
inline constexpr double kJumpThreshold = 0.01;
/// Distance below pi/2 at which theta_min has left the paramagnetic point.
inline constexpr double kDepartureThreshold = 1e-6;

struct LocalMinimum {
  double theta = 0.0;
  double value = 0.0;
};

struct SemiclassicalPoint {
  int p = 0;
  double s = 0.0;
  double lam = 0.0;
  double theta_min = 0.0;                    ///< global minimizer at phi = 0
  double v_min = 0.0;
  std::vector<LocalMinimum> local_minima;    ///< ascending in theta

  /// Local minima within kDegeneracyTolerance of v_min.
  std::vector<LocalMinimum> degenerate_minima() const;
};

/// Global minimum of V over theta in [0, pi] at phi = 0, plus every local
/// minimum. Ties in V (within 1e-12) resolve to the smallest theta.
SemiclassicalPoint minimize_theta(const ModelParams& params);
SemiclassicalPoint minimize_theta(int p, double s, double lam);

/// s at which d^2V/dtheta^2 vanishes at theta = pi/2: 1 / (3 - 2 lambda).
double second_order_line(double lam);

enum class TransitionOrder { first, second };

const char* to_string(TransitionOrder order) noexcept;

struct TransitionRecord {
  double lam = 0.0;
  double s_star = 0.0;
  TransitionOrder order = TransitionOrder::second;
  double theta_jump = 0.0;  ///< 0 for second order
};

/// Transitions met while s increases from 0 to 1 at fixed lambda, sampled
/// with step s_resolution (<= 1e-3) and refined by bisection.
std::vector<TransitionRecord> classify_transitions(int p, double lam, double s_resolution);

struct PhaseDiagramRow {
  double lam = 0.0;
  std::vector<TransitionRecord> transitions;
  bool first_order_free() const;
};

struct PhaseDiagram {
  int p = 0;
  double s_resolution = 0.0;
  std::vector<PhaseDiagramRow> rows;  ///< in lam_grid order
  /// A path that is monotone in s and lambda leads from s = 0 to
  /// (s, lambda) = (1, 1) crossing only second-order lines.
  bool first_order_free_path = false;
  /// Smallest positive lambda column that carries such a path, or -1.
  double path_lambda = -1.0;
};

PhaseDiagram phase_diagram(int p, std::span<const double> lam_grid, double s_resolution,
                           unsigned workers = 1);

}  // namespace pspin
