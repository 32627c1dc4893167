#include "pspin/cli.hpp"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <fstream>
#include <iostream>
#include <numbers>
#include <sstream>

#include "CLI11.hpp"
#include "pspin/eigensolver.hpp"
#include "pspin/error.hpp"
#include "pspin/hamiltonian.hpp"
#include "pspin/observables.hpp"
#include "pspin/oracle.hpp"
#include "pspin/semiclassical.hpp"
#include "pspin/sweeps.hpp"

namespace pspin::cli {
namespace {

using ordered_json = nlohmann::ordered_json;

std::vector<double> uniform_grid(double start, double stop, double step) {
  return SGrid{start, stop, step}.values();
}

std::string csv_field(const std::string& text) {
  if (text.find_first_of(",\"\n") == std::string::npos) return text;
  std::string quoted = "\"";
  for (char ch : text) {
    if (ch == '"') quoted += '"';
    quoted += ch;
  }
  return quoted + "\"";
}

std::string render(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) return format_number(*d);
  if (const auto* i = std::get_if<long long>(&cell)) return std::to_string(*i);
  return csv_field(std::get<std::string>(cell));
}

ordered_json to_json(const Cell& cell) {
  if (const auto* d = std::get_if<double>(&cell)) {
    if (!std::isfinite(*d)) return nullptr;
    const std::string text = format_number(*d);
    double rounded = 0.0;
    std::from_chars(text.data(), text.data() + text.size(), rounded);
    return rounded;
  }
  if (const auto* i = std::get_if<long long>(&cell)) return *i;
  return std::get<std::string>(cell);
}

// Options shared by every subcommand; they may appear before or after the
// subcommand name and may come from a --config file.
struct Options {
  int p = 11;
  std::vector<double> lambda;
  std::vector<int> n;
  double s_start = std::numeric_limits<double>::quiet_NaN();
  double s_stop = std::numeric_limits<double>::quiet_NaN();
  double s_step = std::numeric_limits<double>::quiet_NaN();
  double s_resolution = 1e-3;
  int levels = 10;
  std::string observable;
  std::string out = "-";
  std::string format = "csv";
  unsigned workers = 1;
  bool strict = false;
};

struct Output {
  Table table;
  ordered_json metadata;
  std::size_t failures = 0;
  std::vector<std::string> failure_messages;
};

// Argument problems detected after parsing.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

double pick(double value, double fallback) { return std::isnan(value) ? fallback : value; }

SGrid s_grid(const Options& o, double start, double stop, double step) {
  return {pick(o.s_start, start), pick(o.s_stop, stop), pick(o.s_step, step)};
}

std::vector<double> lambdas(const Options& o, std::vector<double> fallback) {
  return o.lambda.empty() ? fallback : o.lambda;
}

std::vector<int> sizes(const Options& o, std::vector<int> fallback) {
  return o.n.empty() ? fallback : o.n;
}

ordered_json base_metadata(const std::string& command, const Options& o) {
  ordered_json m;
  m["tool"] = kToolName;
  m["version"] = kToolVersion;
  m["command"] = command;
  m["p"] = o.p;
  return m;
}

ordered_json grid_json(const SGrid& g) {
  return ordered_json{{"start", g.start}, {"stop", g.stop}, {"step", g.step}};
}

void collect_failures(const SweepResult& r, Output& out) {
  out.failures = r.failures();
  for (const auto& pt : r.points) {
    if (pt.ok()) continue;
    std::ostringstream msg;
    msg << "lambda=" << format_number(pt.lam) << " n=" << pt.n << " s=" << format_number(pt.s)
        << ": " << pt.error;
    out.failure_messages.push_back(msg.str());
  }
}

Output cmd_semiclassical(const Options& o) {
  const SGrid grid = s_grid(o, 0.0, 1.0, 0.002);
  const std::vector<double> lams = lambdas(o, {1.0});
  validate_order(o.p);
  Output out;
  out.table.columns = {"lambda", "s", "theta_min", "v_min", "local_minima"};
  for (double lam : lams) {
    for (double s : grid.values()) {
      const SemiclassicalPoint pt = minimize_theta(o.p, s, lam);
      out.table.rows.push_back({lam, s, pt.theta_min, pt.v_min,
                                static_cast<long long>(pt.local_minima.size())});
    }
  }
  out.metadata = base_metadata("semiclassical", o);
  out.metadata["lambda"] = lams;
  out.metadata["s_grid"] = grid_json(grid);
  return out;
}

Output cmd_phase_diagram(const Options& o) {
  const std::vector<double> lams = lambdas(o, uniform_grid(0.0, 1.0, 0.02));
  const PhaseDiagram pd = phase_diagram(o.p, lams, o.s_resolution, o.workers);
  Output out;
  out.table.columns = {"lambda", "order", "s_star", "theta_jump", "second_order_line",
                       "path_exists"};
  const auto path = static_cast<long long>(pd.first_order_free_path ? 1 : 0);
  for (const auto& row : pd.rows) {
    const double line = second_order_line(row.lam);
    if (row.transitions.empty()) {
      out.table.rows.push_back({row.lam, std::string("none"),
                                std::numeric_limits<double>::quiet_NaN(),
                                std::numeric_limits<double>::quiet_NaN(), line, path});
    }
    for (const auto& t : row.transitions) {
      out.table.rows.push_back(
          {row.lam, std::string(to_string(t.order)), t.s_star, t.theta_jump, line, path});
    }
  }
  out.metadata = base_metadata("phase-diagram", o);
  out.metadata["lambda"] = lams;
  out.metadata["s_resolution"] = o.s_resolution;
  out.metadata["first_order_free_path"] = pd.first_order_free_path;
  out.metadata["path_lambda"] = pd.first_order_free_path ? ordered_json(pd.path_lambda) : nullptr;
  return out;
}

Output sweep_command(const std::string& name, const Options& o,
                     std::vector<Observable> observables) {
  SweepSpec spec;
  spec.p = o.p;
  spec.lam_values = lambdas(o, {1.0});
  spec.n_values = sizes(o, {20, 40, 160});
  spec.s_grid = s_grid(o, 0.0, 1.0, 0.002);
  spec.observables = std::move(observables);
  spec.k_levels = o.levels;
  const SweepResult r = run_sweep(spec, o.workers);

  Output out;
  out.table = r.to_table();
  collect_failures(r, out);
  out.metadata = base_metadata(name, o);
  out.metadata["lambda"] = spec.lam_values;
  out.metadata["n"] = spec.n_values;
  out.metadata["s_grid"] = grid_json(spec.s_grid);
  return out;
}

Output cmd_spectrum(const Options& o) {
  const std::vector<double> lams = lambdas(o, {1.0});
  const std::vector<int> ns = sizes(o, {512});
  if (lams.size() != 1 || ns.size() != 1) {
    throw UsageError("spectrum takes a single --lambda and a single --n");
  }
  SweepSpec spec;
  spec.p = o.p;
  spec.lam_values = lams;
  spec.n_values = ns;
  spec.s_grid = s_grid(o, 0.45, 0.52, 0.001);
  spec.observables = {Observable::spectrum};
  spec.k_levels = o.levels;
  const SweepResult r = run_sweep(spec, o.workers);

  Output out;
  out.table.columns = {"s"};
  for (int k = 0; k < o.levels; ++k) out.table.columns.push_back("E" + std::to_string(k));
  for (const auto& pt : r.points) {
    std::vector<Cell> row{pt.s};
    for (double e : pt.levels) row.emplace_back(e);
    out.table.rows.push_back(std::move(row));
  }
  collect_failures(r, out);
  out.metadata = base_metadata("spectrum", o);
  out.metadata["lambda"] = lams.front();
  out.metadata["n"] = ns.front();
  out.metadata["levels"] = o.levels;
  out.metadata["s_grid"] = grid_json(spec.s_grid);
  return out;
}

Observable peak_observable(const Options& o) {
  const Observable obs = parse_observable(o.observable.empty() ? "distance" : o.observable);
  if (obs != Observable::distance && obs != Observable::concurrence) {
    throw UsageError("--observable must be distance or concurrence");
  }
  return obs;
}

Output cmd_peaks(const Options& o) {
  const Observable obs = peak_observable(o);
  const std::vector<double> lams = lambdas(o, uniform_grid(0.1, 1.0, 0.1));
  const std::vector<int> ns = sizes(o, {20, 40, 80, 160});
  validate_order(o.p);

  Output out;
  out.table.columns = {"lambda", "n", "inv_n", "s_peak", "value", "observable",
                       "fit_intercept", "fit_slope", "fit_residual"};
  PeakOptions options;
  options.workers = o.workers;
  for (double lam : lams) {
    const std::vector<PeakRecord> peaks = peak_scan(o.p, lam, ns, obs, options);
    const InverseNFit fit = fit_inverse_n(peaks);
    for (const auto& pk : peaks) {
      out.table.rows.push_back({lam, static_cast<long long>(pk.n), pk.inv_n, pk.s_peak, pk.value,
                                std::string(to_string(obs)), fit.intercept, fit.slope,
                                fit.residual});
    }
  }
  out.metadata = base_metadata("peaks", o);
  out.metadata["lambda"] = lams;
  out.metadata["n"] = ns;
  out.metadata["observable"] = to_string(obs);
  out.metadata["window"] = options.half_window;
  out.metadata["coarse_step"] = options.coarse_step;
  return out;
}

Output cmd_endpoint(const Options& o) {
  std::vector<Observable> observables;
  if (o.observable.empty() || o.observable == "both") {
    observables = {Observable::distance, Observable::concurrence};
  } else {
    observables = {peak_observable(o)};
  }
  SweepSpec spec;
  spec.p = o.p;
  spec.lam_values = lambdas(o, uniform_grid(0.1, 1.0, 0.1));
  spec.n_values = sizes(o, {20, 40, 80, 160});
  spec.s_grid = {1.0, 1.0, 1.0};
  spec.observables = observables;
  const SweepResult r = run_sweep(spec, o.workers);

  Output out;
  out.table = r.to_table();
  collect_failures(r, out);
  out.metadata = base_metadata("endpoint", o);
  out.metadata["lambda"] = spec.lam_values;
  out.metadata["n"] = spec.n_values;
  out.metadata["s"] = 1.0;
  return out;
}

Output cmd_oracle(const Options& o) {
  const std::vector<double> lams = lambdas(o, {1.0});
  const std::vector<int> ns = sizes(o, {8});
  if (lams.size() != 1 || ns.size() != 1) {
    throw UsageError("oracle takes a single --lambda and a single --n");
  }
  const ModelParams params(o.p, ns.front(), pick(o.s_start, 0.5), lams.front());
  const int n = params.n();

  const SpectrumResult spec = lowest_eigenpairs(BandedHamiltonian(params), 1);
  const double theta = minimize_theta(params).theta_min;
  const CoherentOverlap ov = coherent_overlap(spec.ground_vector, theta, n);
  const TwoSpinRDM rdm = two_spin_rdm(spec.ground_vector, n);
  const ConcurrenceResult conc = concurrence(rdm, n);

  const oracle::GroundState ref = oracle::oracle_ground(params);
  const double ref_distance = oracle::oracle_distance(ref.state, theta);
  const Eigen::Matrix4d ref_rdm = oracle::oracle_rdm(ref.state);
  double rdm_diff = 0.0;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) rdm_diff = std::max(rdm_diff, std::abs(rdm(i, j) - ref_rdm(i, j)));
  }
  const double ref_c = oracle::oracle_concurrence(ref.state);

  Output out;
  out.table.columns = {"quantity", "dicke", "oracle", "abs_diff"};
  auto add = [&](const char* name, double a, double b) {
    out.table.rows.push_back({std::string(name), a, b, std::abs(a - b)});
  };
  add("ground_energy", spec.eigenvalues.front(), ref.energy);
  add("distance", ov.distance, ref_distance);
  add("concurrence", conc.c, ref_c);
  out.table.rows.push_back({std::string("rdm_max_entry"), 0.0, 0.0, rdm_diff});
  out.metadata = base_metadata("oracle", o);
  out.metadata["lambda"] = params.lam();
  out.metadata["n"] = n;
  out.metadata["s"] = params.s();
  return out;
}

int emit(const Output& result, const Options& o, std::ostream& out, std::ostream& err) {
  std::ostringstream buffer;
  if (o.format == "json") {
    write_json(result.table, result.metadata, buffer);
  } else {
    write_csv(result.table, buffer);
  }
  if (o.out.empty() || o.out == "-") {
    out << buffer.str();
  } else {
    std::ofstream file(o.out, std::ios::binary | std::ios::trunc);
    file << buffer.str();
    file.close();
    if (!file) {
      err << "error: cannot write " << o.out << "\n";
      return kIoError;
    }
  }
  for (const auto& msg : result.failure_messages) err << "warning: point failed: " << msg << "\n";
  if (result.failures > 0 && o.strict) {
    err << "error: " << result.failures << " point(s) failed\n";
    return kNumericalFailure;
  }
  return kSuccess;
}

}  // namespace

std::string format_number(double value) {
  if (std::isnan(value)) return "nan";
  if (std::isinf(value)) return value > 0 ? "inf" : "-inf";
  if (value == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

void write_csv(const Table& table, std::ostream& out) {
  for (std::size_t c = 0; c < table.columns.size(); ++c) {
    out << (c ? "," : "") << csv_field(table.columns[c]);
  }
  out << "\n";
  for (const auto& row : table.rows) {
    for (std::size_t c = 0; c < row.size(); ++c) out << (c ? "," : "") << render(row[c]);
    out << "\n";
  }
}

void write_json(const Table& table, const nlohmann::ordered_json& metadata, std::ostream& out) {
  ordered_json doc;
  doc["metadata"] = metadata;
  doc["columns"] = table.columns;
  doc["rows"] = ordered_json::array();
  for (const auto& row : table.rows) {
    ordered_json obj = ordered_json::object();
    for (std::size_t c = 0; c < row.size() && c < table.columns.size(); ++c) {
      obj[table.columns[c]] = to_json(row[c]);
    }
    doc["rows"].push_back(std::move(obj));
  }
  out << doc.dump(2) << "\n";
}

int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Quantum annealing in the ferromagnetic p-spin model with antiferromagnetic "
               "transverse interactions: semiclassical analysis and exact diagonalization in the "
               "maximal-spin sector.",
               kToolName};
  app.require_subcommand(1);
  app.fallthrough();
  app.set_version_flag("--version", kToolVersion);
  app.set_config("--config", "", "Read options from a flat 'key = value' file");
  app.allow_config_extras(CLI::config_extras_mode::error);

  Options o;
  app.add_option("--p", o.p, "Interaction order (odd, >= 3)")->capture_default_str();
  app.add_option("--lambda", o.lambda, "Stoquasticity parameter(s), comma separated")
      ->delimiter(',');
  app.add_option("--n", o.n, "System size(s), comma separated and ascending")->delimiter(',');
  app.add_option("--s-start", o.s_start, "First s of the grid");
  app.add_option("--s-stop", o.s_stop, "Last s of the grid");
  app.add_option("--s-step", o.s_step, "Grid step in s")->check(CLI::PositiveNumber);
  app.add_option("--s-resolution", o.s_resolution, "Sampling step for transition detection")
      ->check(CLI::Range(1e-9, 1e-3))
      ->capture_default_str();
  app.add_option("--levels", o.levels, "Number of lowest levels")
      ->check(CLI::PositiveNumber)
      ->capture_default_str();
  app.add_option("--observable", o.observable, "distance | concurrence (endpoint also: both)");
  app.add_option("--out", o.out, "Output file, '-' for stdout")->capture_default_str();
  app.add_option("--format", o.format, "Output format")
      ->check(CLI::IsMember({"csv", "json"}))
      ->capture_default_str();
  app.add_option("--workers", o.workers, "Worker threads for sweeps")
      ->check(CLI::Range(1u, 1024u))
      ->capture_default_str();
  app.add_flag("--strict", o.strict, "Exit with code 3 if any grid point fails");

  auto* semi = app.add_subcommand("semiclassical", "theta_min and V_min of the semiclassical potential versus s");
  semi->footer("Columns: lambda, s, theta_min, v_min, local_minima (count).");
  auto* phase = app.add_subcommand("phase-diagram", "First/second-order transition lines over a lambda grid");
  phase->footer("Columns: lambda, order (first|second|none), s_star, theta_jump, "
                "second_order_line = 1/(3-2 lambda), path_exists (1 if a first-order-free path "
                "to s = lambda = 1 exists).");
  auto* dist = app.add_subcommand("distance", "Trace-norm distance to the optimal spin-coherent state versus s");
  dist->footer("Columns: lambda, n, s, theta_min, v_min, distance, overlap, error.");
  auto* conc = app.add_subcommand("concurrence", "Two-spin concurrence and rescaled concurrence versus s");
  conc->footer("Columns: lambda, n, s, concurrence, c_rescaled = (n-1) * concurrence, error.");
  auto* spec = app.add_subcommand("spectrum", "Lowest energy levels versus s");
  spec->footer("Columns: s, E0 ... E{levels-1} (ascending).");
  auto* peaks = app.add_subcommand("peaks", "Maximum over s of distance or rescaled concurrence per N");
  peaks->footer("Columns: lambda, n, inv_n, s_peak, value, observable, fit_intercept, fit_slope, "
                "fit_residual (least squares in 1/N over the three largest N).");
  auto* endpoint = app.add_subcommand("endpoint", "Distance and/or rescaled concurrence at s = 1");
  endpoint->footer("Columns: lambda, n, s, [distance, overlap], [concurrence, c_rescaled], error.");
  auto* orac = app.add_subcommand("oracle", "Compare against the full 2^N brute force (N <= 12)");
  orac->group("");
  orac->footer("Columns: quantity, dicke, oracle, abs_diff. Uses --s-start as s.");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kSuccess : kArgumentError;
  }

  try {
    Output result;
    if (semi->parsed()) {
      result = cmd_semiclassical(o);
    } else if (phase->parsed()) {
      result = cmd_phase_diagram(o);
    } else if (dist->parsed()) {
      result = sweep_command("distance", o, {Observable::theta_min, Observable::distance});
    } else if (conc->parsed()) {
      result = sweep_command("concurrence", o, {Observable::concurrence});
    } else if (spec->parsed()) {
      result = cmd_spectrum(o);
    } else if (peaks->parsed()) {
      result = cmd_peaks(o);
    } else if (endpoint->parsed()) {
      result = cmd_endpoint(o);
    } else {
      result = cmd_oracle(o);
    }
    return emit(result, o, out, err);
  } catch (const UsageError& e) {
    err << "error: " << e.what() << "\n" << app.help();
    return kArgumentError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << "\n";
    return kArgumentError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return kNumericalFailure;
  }
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  std::vector<const char*> argv{kToolName};
  for (const auto& a : args) argv.push_back(a.c_str());
  return run(static_cast<int>(argv.size()), argv.data(), out, err);
}

}  // namespace pspin::cli
