#include "pspin/sweeps.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

#include "pspin/eigensolver.hpp"
#include "pspin/error.hpp"
#include "pspin/hamiltonian.hpp"
#include "pspin/observables.hpp"
#include "pspin/parallel.hpp"
#include "pspin/semiclassical.hpp"

namespace pspin {
namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

bool wants(std::span<const Observable> list, Observable o) {
  return std::find(list.begin(), list.end(), o) != list.end();
}

// Objective maximized by peak_scan, and the reported value at that point.
struct Probe {
  double objective;
  double value;
};

Probe probe(int p, int n, double s, double lam, Observable observable) {
  const ModelParams params(p, n, s, lam);
  const SpectrumResult spec = lowest_eigenpairs(BandedHamiltonian(params), 1);
  if (observable == Observable::distance) {
    const double theta = minimize_theta(params).theta_min;
    const CoherentOverlap ov = coherent_overlap(spec.ground_vector, theta, n);
    // -|overlap| orders points like D but keeps resolution where D rounds to 1.
    return {-std::abs(ov.overlap), ov.distance};
  }
  const double cr = concurrence(two_spin_rdm(spec.ground_vector, n), n).c_rescaled;
  return {cr, cr};
}

}  // namespace

const char* to_string(Observable o) noexcept {
  switch (o) {
    case Observable::theta_min: return "theta_min";
    case Observable::distance: return "distance";
    case Observable::concurrence: return "concurrence";
    case Observable::spectrum: return "spectrum";
  }
  return "unknown";
}

Observable parse_observable(std::string_view name) {
  for (Observable o : {Observable::theta_min, Observable::distance, Observable::concurrence,
                       Observable::spectrum}) {
    if (name == to_string(o)) return o;
  }
  throw std::invalid_argument("unknown observable '" + std::string(name) + "'");
}

std::vector<double> SGrid::values() const {
  if (start == stop) return {start};
  const auto count = static_cast<long>(std::floor((stop - start) / step + 1e-9)) + 1;
  std::vector<double> out;
  out.reserve(static_cast<std::size_t>(count));
  for (long i = 0; i < count; ++i) {
    out.push_back(std::clamp(start + static_cast<double>(i) * step, 0.0, 1.0));
  }
  return out;
}

void SweepSpec::validate() const {
  validate_order(p);
  if (lam_values.empty() || n_values.empty()) throw InvalidParams("empty lambda or N list");
  for (double lam : lam_values) validate_unit_interval(lam, "lambda");
  for (std::size_t i = 0; i < n_values.size(); ++i) {
    if (n_values[i] < 2) throw InvalidParams("N must be >= 2");
    if (i > 0 && n_values[i] <= n_values[i - 1]) throw InvalidParams("N values must ascend");
  }
  validate_unit_interval(s_grid.start, "s start");
  validate_unit_interval(s_grid.stop, "s stop");
  if (s_grid.stop < s_grid.start) throw InvalidParams("s stop precedes s start");
  if (!(s_grid.step > 0.0)) throw InvalidParams("s step must be positive");
  if (k_levels < 1) throw InvalidParams("levels must be >= 1");
  if (observables.empty()) throw InvalidParams("no observables requested");
}

PointResult evaluate_point(int p, int n, double s, double lam,
                           std::span<const Observable> observables, int k_levels) {
  PointResult out;
  out.lam = lam;
  out.n = n;
  out.s = s;
  try {
    const ModelParams params(p, n, s, lam);
    const bool semiclassical = wants(observables, Observable::theta_min) ||
                               wants(observables, Observable::distance);
    SemiclassicalPoint sc;
    if (semiclassical) {
      sc = minimize_theta(params);
      if (wants(observables, Observable::theta_min)) {
        out.theta_min = sc.theta_min;
        out.v_min = sc.v_min;
      }
    }
    const bool quantum = wants(observables, Observable::distance) ||
                         wants(observables, Observable::concurrence) ||
                         wants(observables, Observable::spectrum);
    if (!quantum) return out;

    const int k = wants(observables, Observable::spectrum) ? k_levels : 1;
    const SpectrumResult spec = lowest_eigenpairs(BandedHamiltonian(params), k);
    if (wants(observables, Observable::spectrum)) {
      out.levels = spec.eigenvalues;
    }
    if (wants(observables, Observable::distance)) {
      const CoherentOverlap ov = coherent_overlap(spec.ground_vector, sc.theta_min, n);
      out.distance = ov.distance;
      out.overlap = ov.overlap;
    }
    if (wants(observables, Observable::concurrence)) {
      const ConcurrenceResult c = concurrence(two_spin_rdm(spec.ground_vector, n), n);
      out.concurrence = c.c;
      out.c_rescaled = c.c_rescaled;
    }
  } catch (const std::exception& err) {
    out.error = err.what();
    if (wants(observables, Observable::spectrum)) {
      out.levels.assign(static_cast<std::size_t>(k_levels), kNaN);
    }
  }
  return out;
}

std::size_t SweepResult::failures() const {
  return static_cast<std::size_t>(
      std::count_if(points.begin(), points.end(), [](const PointResult& r) { return !r.ok(); }));
}

Table SweepResult::to_table() const {
  const auto& obs = spec.observables;
  Table t;
  t.columns = {"lambda", "n", "s"};
  if (wants(obs, Observable::theta_min)) {
    t.columns.insert(t.columns.end(), {"theta_min", "v_min"});
  }
  if (wants(obs, Observable::distance)) t.columns.insert(t.columns.end(), {"distance", "overlap"});
  if (wants(obs, Observable::concurrence)) {
    t.columns.insert(t.columns.end(), {"concurrence", "c_rescaled"});
  }
  if (wants(obs, Observable::spectrum)) {
    for (int k = 0; k < spec.k_levels; ++k) t.columns.push_back("E" + std::to_string(k));
  }
  t.columns.push_back("error");

  for (const auto& r : points) {
    std::vector<Cell> row{r.lam, static_cast<long long>(r.n), r.s};
    if (wants(obs, Observable::theta_min)) {
      row.emplace_back(r.theta_min);
      row.emplace_back(r.v_min);
    }
    if (wants(obs, Observable::distance)) {
      row.emplace_back(r.distance);
      row.emplace_back(r.overlap);
    }
    if (wants(obs, Observable::concurrence)) {
      row.emplace_back(r.concurrence);
      row.emplace_back(r.c_rescaled);
    }
    if (wants(obs, Observable::spectrum)) {
      for (double e : r.levels) row.emplace_back(e);
    }
    row.emplace_back(r.error);
    t.rows.push_back(std::move(row));
  }
  return t;
}

SweepResult run_sweep(const SweepSpec& spec, unsigned workers) {
  spec.validate();
  const std::vector<double> s_values = spec.s_grid.values();
  const std::size_t per_lam = spec.n_values.size() * s_values.size();
  const std::size_t total = spec.lam_values.size() * per_lam;

  SweepResult out;
  out.spec = spec;
  out.points = parallel_map(total, workers, [&](std::size_t idx) {
    const double lam = spec.lam_values[idx / per_lam];
    const int n = spec.n_values[(idx % per_lam) / s_values.size()];
    const double s = s_values[idx % s_values.size()];
    return evaluate_point(spec.p, n, s, lam, spec.observables, spec.k_levels);
  });
  return out;
}

SweepResult endpoint_scan(int p, std::span<const double> lam_values, std::span<const int> n_values,
                          Observable observable, unsigned workers, double s) {
  SweepSpec spec;
  spec.p = p;
  spec.lam_values.assign(lam_values.begin(), lam_values.end());
  spec.n_values.assign(n_values.begin(), n_values.end());
  spec.s_grid = {s, s, 1.0};
  spec.observables = {observable};
  return run_sweep(spec, workers);
}

double observable_value(int p, int n, double s, double lam, Observable observable) {
  if (observable != Observable::distance && observable != Observable::concurrence) {
    throw std::invalid_argument("peak observables are distance and concurrence");
  }
  return probe(p, n, s, lam, observable).value;
}

std::vector<PeakRecord> peak_scan(int p, double lam, std::span<const int> n_values,
                                  Observable observable, const PeakOptions& options) {
  if (observable != Observable::distance && observable != Observable::concurrence) {
    throw std::invalid_argument("peak_scan supports distance and concurrence");
  }
  const std::vector<TransitionRecord> transitions = classify_transitions(p, lam, 1e-3);
  double lo = 0.0;
  double hi = 1.0;
  if (!transitions.empty()) {
    lo = transitions.front().s_star;
    hi = transitions.front().s_star;
    for (const auto& t : transitions) {
      lo = std::min(lo, t.s_star);
      hi = std::max(hi, t.s_star);
    }
    lo = std::max(0.0, lo - options.half_window);
    hi = std::min(1.0, hi + options.half_window);
  }

  // Coarse candidates: the grid plus both sides of every first-order point,
  // where theta_min (and with it the observable) is discontinuous.
  std::vector<double> candidates = SGrid{lo, hi, options.coarse_step}.values();
  for (const auto& t : transitions) {
    if (t.order != TransitionOrder::first) continue;
    for (double side : {t.s_star - 1e-9, t.s_star + 1e-9}) {
      if (side > lo && side < hi) candidates.push_back(side);
    }
  }
  std::sort(candidates.begin(), candidates.end());

  return parallel_map(n_values.size(), options.workers, [&](std::size_t idx) {
    const int n = n_values[idx];
    std::vector<Probe> coarse;
    coarse.reserve(candidates.size());
    for (double s : candidates) coarse.push_back(probe(p, n, s, lam, observable));
    std::size_t best = 0;
    for (std::size_t i = 1; i < coarse.size(); ++i) {
      if (coarse[i].objective > coarse[best].objective) best = i;
    }

    double best_s = candidates[best];
    Probe best_probe = coarse[best];
    auto consider = [&](double s) {
      const Probe pr = probe(p, n, s, lam, observable);
      if (pr.objective > best_probe.objective) {
        best_probe = pr;
        best_s = s;
      }
      return pr.objective;
    };

    double a = candidates[best == 0 ? 0 : best - 1];
    double b = candidates[std::min(best + 1, candidates.size() - 1)];
    const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
    double c = b - inv_phi * (b - a);
    double d = a + inv_phi * (b - a);
    double fc = consider(c);
    double fd = consider(d);
    while (b - a > options.s_tolerance) {
      if (fc >= fd) {
        b = d;
        d = c;
        fd = fc;
        c = b - inv_phi * (b - a);
        fc = consider(c);
      } else {
        a = c;
        c = d;
        fc = fd;
        d = a + inv_phi * (b - a);
        fd = consider(d);
      }
    }
    return PeakRecord{n, 1.0 / n, best_s, best_probe.value, observable};
  });
}

InverseNFit fit_inverse_n(std::span<const PeakRecord> peaks) {
  std::vector<PeakRecord> sorted(peaks.begin(), peaks.end());
  std::sort(sorted.begin(), sorted.end(),
            [](const PeakRecord& a, const PeakRecord& b) { return a.n > b.n; });
  if (sorted.size() > 3) sorted.resize(3);
  InverseNFit fit;
  fit.points = static_cast<int>(sorted.size());
  if (sorted.empty()) return fit;
  if (sorted.size() == 1) {
    fit.intercept = sorted[0].value;
    return fit;
  }
  double mx = 0.0;
  double my = 0.0;
  for (const auto& r : sorted) {
    mx += r.inv_n;
    my += r.value;
  }
  mx /= sorted.size();
  my /= sorted.size();
  double sxx = 0.0;
  double sxy = 0.0;
  for (const auto& r : sorted) {
    sxx += (r.inv_n - mx) * (r.inv_n - mx);
    sxy += (r.inv_n - mx) * (r.value - my);
  }
  fit.slope = sxy / sxx;
  fit.intercept = my - fit.slope * mx;
  double ss = 0.0;
  for (const auto& r : sorted) {
    const double dev = r.value - (fit.intercept + fit.slope * r.inv_n);
    ss += dev * dev;
  }
  fit.residual = std::sqrt(ss / sorted.size());
  return fit;
}

}  // namespace pspin
