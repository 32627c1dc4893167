#pragma once

#include <limits>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "pspin/table.hpp"

namespace pspin {

enum class Observable { theta_min, distance, concurrence, spectrum };

const char* to_string(Observable o) noexcept;
/// Throws std::invalid_argument for an unknown name.
Observable parse_observable(std::string_view name);

/// Uniform grid start, start + step, ... up to stop (inclusive within 1e-9).
struct SGrid {
  double start = 0.0;
  double stop = 1.0;
  double step = 0.002;

  std::vector<double> values() const;
};

struct SweepSpec {
  int p = 11;
  std::vector<double> lam_values{1.0};
  std::vector<int> n_values{20};
  SGrid s_grid;
  std::vector<Observable> observables{Observable::distance};
  int k_levels = 1;

  /// Throws InvalidParams on grids outside [0, 1], non-ascending n_values,
  /// non-positive step or k_levels < 1.
  void validate() const;
};

/// Everything computed at one (lambda, N, s). Fields of observables that
/// were not requested, or that failed, hold NaN.
struct PointResult {
  double lam = 0.0;
  int n = 0;
  double s = 0.0;
  double theta_min = std::numeric_limits<double>::quiet_NaN();
  double v_min = std::numeric_limits<double>::quiet_NaN();
  double distance = std::numeric_limits<double>::quiet_NaN();
  double overlap = std::numeric_limits<double>::quiet_NaN();
  double concurrence = std::numeric_limits<double>::quiet_NaN();
  double c_rescaled = std::numeric_limits<double>::quiet_NaN();
  std::vector<double> levels;
  std::string error;  ///< empty on success

  bool ok() const { return error.empty(); }
};

PointResult evaluate_point(int p, int n, double s, double lam,
                           std::span<const Observable> observables, int k_levels = 1);

struct SweepResult {
  SweepSpec spec;
  std::vector<PointResult> points;  ///< lambda outer, N middle, s inner

  std::size_t failures() const;
  Table to_table() const;
};

/// Evaluates every grid point; failures are recorded per point and never
/// abort the sweep. Points run on up to `workers` threads; output order is
/// canonical regardless of scheduling.
SweepResult run_sweep(const SweepSpec& spec, unsigned workers = 1);

/// Observables at s = 1 for every (lambda, N).
SweepResult endpoint_scan(int p, std::span<const double> lam_values, std::span<const int> n_values,
                          Observable observable, unsigned workers = 1, double s = 1.0);

struct PeakRecord {
  int n = 0;
  double inv_n = 0.0;
  double s_peak = 0.0;
  double value = 0.0;
  Observable observable = Observable::distance;
};

struct PeakOptions {
  double half_window = 0.05;  ///< around the semiclassical transitions
  double coarse_step = 1e-3;
  double s_tolerance = 1e-7;  ///< golden-section stopping width
  unsigned workers = 1;
};

/// Distance: D; concurrence: rescaled concurrence C_R.
double observable_value(int p, int n, double s, double lam, Observable observable);

/// Maximum over s of the observable near the semiclassical transitions, one
/// record per N (in n_values order). Observable must be distance or
/// concurrence.
std::vector<PeakRecord> peak_scan(int p, double lam, std::span<const int> n_values,
                                  Observable observable, const PeakOptions& options = {});

/// Least-squares line value = intercept + slope / N over the three largest N.
struct InverseNFit {
  double intercept = 0.0;
  double slope = 0.0;
  double residual = 0.0;  ///< root-mean-square deviation of the fitted points
  int points = 0;
};
InverseNFit fit_inverse_n(std::span<const PeakRecord> peaks);

}  // namespace pspin
