// sweep.hpp: parameter sweeps, critical-temperature tables and transient runs
//
// CSV output: UTF-8, comma separated, '.' decimal point, 17 significant digits.
// Every file starts with a '#' comment block holding the tool version and the
// full parameter set, followed by one header row. Row order follows the grid,
// never the order in which worker threads finish.

#pragma once

#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "spinbath/model.hpp"
#include "spinbath/quantumness.hpp"

namespace spinbath {

enum class Axis { g, t1, t2, p1, p2, p, mu };

Axis parse_axis(const std::string& name);
const char* axis_name(Axis axis);

// Sets the swept parameter. `p` sets p1 = p2, `mu` sets p2 = mu * p1.
ModelParams with_axis(ModelParams params, Axis axis, double value);

struct GridSpec {
  Axis axis = Axis::g;
  double min = 0.0;
  double max = 1.0;
  int steps = 2;
  bool log_scale = false;

  void validate() const;
  std::vector<double> values() const;
};

// "<axis>:<min>:<max>:<steps>[:log]"
GridSpec parse_grid(const std::string& text);

struct SweepSpec {
  GridSpec grid;
  ModelParams fixed;
  std::optional<double> mu;  // keeps p2 = mu * p1 at every point; not with axes p, p2, mu

  ModelParams point(double value) const;
};

struct OutputRow {
  double value = 0.0;
  double coherence_exact = 0.0;
  double coherence_perturbative = 0.0;
  BlochSums sums_exact;
  BlochSums sums_perturbative;
  double max_sum = 0.0;
  bool has_magic = false;
  std::vector<Warning> warnings;
};

// Exact steady state plus the order-2 expansion at one parameter point (omega = 1).
OutputRow evaluate_point(const ModelParams& params, double value);

// workers = 0 means one per hardware thread.
std::vector<OutputRow> run_sweep(const SweepSpec& spec, unsigned workers = 0);
void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<OutputRow>& rows);

struct CritSpec {
  Regime regime = Regime::low_t2;
  GridSpec grid;       // axis p or mu
  double p = 0.5;      // fixed p1 for a mu sweep
  double mu = 1.0;     // fixed ratio for a p sweep
  double t1 = 0.1;     // temperature at which the g windows are reported
  double t2 = 0.01;    // closed form (high regime) and exact solver
  bool exact = false;  // also bisect the exact boundary
};

struct CritRow {
  double value = 0.0;
  double p = 0.0;
  double mu = 1.0;
  CritTempReport report;
  GWindow window;
  double g_probe = 0.0;  // centre of the binding condition's window
  std::optional<double> exact_boundary;
};

std::vector<CritRow> run_crit(const CritSpec& spec, unsigned workers = 0);
void write_crit_csv(std::ostream& out, const CritSpec& spec, const std::vector<CritRow>& rows);

struct TransientRow {
  double t = 0.0;
  double coherence = 0.0;
  double max_sum = 0.0;
  double distance = 0.0;  // trace distance to the steady state
};

struct TransientResult {
  std::vector<TransientRow> rows;
  double steady_coherence = 0.0;
  double steady_max_sum = 0.0;
  double peak_coherence = 0.0;  // over sampled rows
  double peak_max_sum = 0.0;
  bool coherence_exceeds_steady = false;
  double max_correction = 0.0;
};

// Starts from tau1 x tau2.
TransientResult run_transient(const ModelParams& params, double t_end, double dt, std::size_t stride);
void write_transient_csv(std::ostream& out, const ModelParams& params, double t_end, double dt,
                         const TransientResult& result);

// "%.17g", with nan/inf spelled nan, inf, -inf.
std::string format_number(double v);

}  // namespace spinbath
