#include "spinbath/sweep.hpp"

#include <atomic>
#include <cmath>
#include <cstdio>
#include <exception>
#include <limits>
#include <mutex>
#include <sstream>
#include <thread>

#include "spinbath/dynamics.hpp"

namespace spinbath {

Axis parse_axis(const std::string& name) {
  if (name == "g") return Axis::g;
  if (name == "t1") return Axis::t1;
  if (name == "t2") return Axis::t2;
  if (name == "p1") return Axis::p1;
  if (name == "p2") return Axis::p2;
  if (name == "p") return Axis::p;
  if (name == "mu") return Axis::mu;
  throw InvalidArgument("unknown sweep axis '" + name + "' (expected g, t1, t2, p1, p2, p, mu)");
}

const char* axis_name(Axis axis) {
  switch (axis) {
    case Axis::g: return "g";
    case Axis::t1: return "t1";
    case Axis::t2: return "t2";
    case Axis::p1: return "p1";
    case Axis::p2: return "p2";
    case Axis::p: return "p";
    case Axis::mu: return "mu";
  }
  return "?";
}

ModelParams with_axis(ModelParams params, Axis axis, double value) {
  switch (axis) {
    case Axis::g: params.g = value; break;
    case Axis::t1: params.t1 = value; break;
    case Axis::t2: params.t2 = value; break;
    case Axis::p1: params.p1 = value; break;
    case Axis::p2: params.p2 = value; break;
    case Axis::p: params.p1 = params.p2 = value; break;
    case Axis::mu: params.p2 = value * params.p1; break;
  }
  return params;
}

void GridSpec::validate() const {
  if (!std::isfinite(min) || !std::isfinite(max) || !(min < max)) {
    throw InvalidArgument("sweep: need finite min < max");
  }
  if (steps < 2) throw InvalidArgument("sweep: steps must be >= 2");
  if (log_scale && !(min > 0.0)) throw InvalidArgument("sweep: log scale needs min > 0");
}

std::vector<double> GridSpec::values() const {
  validate();
  std::vector<double> out(static_cast<std::size_t>(steps));
  const double n = static_cast<double>(steps - 1);
  for (int i = 0; i < steps; ++i) {
    const double f = static_cast<double>(i) / n;
    out[static_cast<std::size_t>(i)] =
        log_scale ? std::exp(std::log(min) + f * (std::log(max) - std::log(min)))
                  : min + f * (max - min);
  }
  out.front() = min;
  out.back() = max;
  return out;
}

namespace {

double parse_double(const std::string& s, const char* what) {
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used != s.size()) throw InvalidArgument("");
    return v;
  } catch (const std::exception&) {
    throw InvalidArgument(std::string("sweep: cannot parse ") + what + " '" + s + "'");
  }
}

}  // namespace

GridSpec parse_grid(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  for (std::string item; std::getline(ss, item, ':');) parts.push_back(item);
  if (parts.size() != 4 && parts.size() != 5) {
    throw InvalidArgument("sweep: expected <axis>:<min>:<max>:<steps>[:log], got '" + text + "'");
  }
  GridSpec g;
  g.axis = parse_axis(parts[0]);
  g.min = parse_double(parts[1], "min");
  g.max = parse_double(parts[2], "max");
  const double steps = parse_double(parts[3], "steps");
  if (steps != std::floor(steps) || steps > 1e7) throw InvalidArgument("sweep: steps must be an integer");
  g.steps = static_cast<int>(steps);
  if (parts.size() == 5) {
    if (parts[4] == "log") {
      g.log_scale = true;
    } else if (parts[4] != "linear") {
      throw InvalidArgument("sweep: scale must be 'log' or 'linear'");
    }
  }
  g.validate();
  return g;
}

std::string format_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

namespace {

// Evaluates fn(i) for i in [0, n) on up to `workers` threads; results land in
// slot i. The first exception is rethrown on the calling thread.
template <typename Row, typename Fn>
std::vector<Row> parallel_map(std::size_t n, unsigned workers, Fn fn) {
  std::vector<std::optional<Row>> slots(n);
  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::size_t>(workers, std::max<std::size_t>(n, 1)));

  std::atomic<std::size_t> next{0};
  std::exception_ptr failure;
  std::mutex failure_mutex;
  auto work = [&] {
    for (std::size_t i = next++; i < n; i = next++) {
      try {
        slots[i] = fn(i);
      } catch (...) {
        std::lock_guard<std::mutex> lock(failure_mutex);
        if (!failure) failure = std::current_exception();
        next = n;
      }
    }
  };
  std::vector<std::thread> pool;
  for (unsigned w = 1; w < workers; ++w) pool.emplace_back(work);
  work();
  for (std::thread& t : pool) t.join();
  if (failure) std::rethrow_exception(failure);

  std::vector<Row> out;
  out.reserve(n);
  for (auto& s : slots) out.push_back(std::move(*s));
  return out;
}

void write_params_comment(std::ostream& out, const ModelParams& p) {
  out << "# params: omega=" << format_number(p.omega) << " g=" << format_number(p.g)
      << " t1=" << format_number(p.t1) << " t2=" << format_number(p.t2)
      << " p1=" << format_number(p.p1) << " p2=" << format_number(p.p2) << '\n';
}

void write_grid_comment(std::ostream& out, const GridSpec& g) {
  out << "# grid: axis=" << axis_name(g.axis) << " min=" << format_number(g.min)
      << " max=" << format_number(g.max) << " steps=" << g.steps
      << " scale=" << (g.log_scale ? "log" : "linear") << '\n';
}

}  // namespace

OutputRow evaluate_point(const ModelParams& params, double value) {
  const SteadyState ss = steady_state(params);
  const MagicReport magic = magic_report(ss.bloch1);
  OutputRow row;
  row.value = value;
  row.coherence_exact = l1_coherence(ss.rho1);
  row.coherence_perturbative = coherence_perturbative(params);
  row.sums_exact = magic.named;
  row.sums_perturbative = bloch_sums_perturbative(params, 2);
  row.max_sum = magic.max_sum;
  row.has_magic = magic.has_magic;
  row.warnings = ss.warnings;
  return row;
}

ModelParams SweepSpec::point(double value) const {
  ModelParams params = with_axis(fixed, grid.axis, value);
  if (mu) {
    if (grid.axis == Axis::p || grid.axis == Axis::p2 || grid.axis == Axis::mu) {
      throw InvalidArgument(std::string("sweep: --mu cannot be combined with axis ") + axis_name(grid.axis));
    }
    if (!std::isfinite(*mu) || !(*mu > 0.0)) throw InvalidArgument("sweep: mu must be positive");
    params.p2 = *mu * params.p1;
  }
  return params;
}

std::vector<OutputRow> run_sweep(const SweepSpec& spec, unsigned workers) {
  const std::vector<double> values = spec.grid.values();
  for (double v : values) spec.point(v).validate();
  return parallel_map<OutputRow>(values.size(), workers, [&](std::size_t i) {
    return evaluate_point(spec.point(values[i]), values[i]);
  });
}

void write_sweep_csv(std::ostream& out, const SweepSpec& spec, const std::vector<OutputRow>& rows) {
  out << "# spinbath " << SPINBATH_VERSION << '\n' << "# command: sweep\n";
  write_params_comment(out, spec.fixed);
  write_grid_comment(out, spec.grid);
  if (spec.mu) out << "# mu=" << format_number(*spec.mu) << " (p2 = mu * p1 at every point)\n";
  out << "# *_exact: exact steady state of qubit 1; *_pert: weak-coupling expansion "
         "(c_l1 to O(g), sums to O(g^2)), perturbative estimate\n";
  out << axis_name(spec.grid.axis)
      << ",c_l1_exact,c_l1_pert,sum_xyz_exact,sum_x_my_z_exact,sum_mx_yz_exact,"
         "sum_xyz_pert,sum_x_my_z_pert,sum_mx_yz_pert,max_sum,has_magic,warnings\n";
  for (const OutputRow& r : rows) {
    out << format_number(r.value) << ',' << format_number(r.coherence_exact) << ','
        << format_number(r.coherence_perturbative);
    for (double s : r.sums_exact.as_array()) out << ',' << format_number(s);
    for (double s : r.sums_perturbative.as_array()) out << ',' << format_number(s);
    out << ',' << format_number(r.max_sum) << ',' << (r.has_magic ? 1 : 0) << ',';
    for (std::size_t i = 0; i < r.warnings.size(); ++i) out << (i ? ";" : "") << r.warnings[i].code;
    out << '\n';
  }
}

std::vector<CritRow> run_crit(const CritSpec& spec, unsigned workers) {
  if (spec.grid.axis != Axis::p && spec.grid.axis != Axis::mu) {
    throw InvalidArgument("crit: sweep axis must be p or mu");
  }
  if (!(spec.t1 > 0.0) || !(spec.t2 > 0.0)) throw InvalidArgument("crit: t1 and t2 must be positive");
  const std::vector<double> values = spec.grid.values();
  const std::optional<double> t2 = spec.t2;

  return parallel_map<CritRow>(values.size(), workers, [&](std::size_t i) {
    CritRow row;
    row.value = values[i];
    row.p = spec.grid.axis == Axis::p ? values[i] : spec.p;
    row.mu = spec.grid.axis == Axis::mu ? values[i] : spec.mu;
    row.report = critical_temperature(row.p, spec.regime, t2, row.mu);
    row.window = g_window(row.p, spec.t1, spec.regime, t2, row.mu);

    const QuadraticCriterion q = magic_criterion(row.p, row.mu, spec.regime, t2);
    std::size_t binding = 0;
    for (std::size_t k = 1; k < 3; ++k) {
      if (q.linear[k] > q.linear[binding]) binding = k;
    }
    row.g_probe = std::max(0.0, q.linear[binding] / (2.0 * q.quadratic));

    if (spec.exact && row.g_probe > 0.0 && row.report.t_crit > 0.0) {
      ModelParams params;
      params.g = row.g_probe;
      params.t2 = spec.t2;
      params.p1 = row.p;
      params.p2 = row.mu * row.p;
      row.exact_boundary = magic_boundary_exact(params, std::max(1e-3, 0.1 * row.report.t_crit),
                                                4.0 * row.report.t_crit);
    }
    return row;
  });
}

void write_crit_csv(std::ostream& out, const CritSpec& spec, const std::vector<CritRow>& rows) {
  out << "# spinbath " << SPINBATH_VERSION << '\n' << "# command: crit\n";
  out << "# regime=" << regime_name(spec.regime) << " t1=" << format_number(spec.t1)
      << " t2=" << format_number(spec.t2) << " p=" << format_number(spec.p)
      << " mu=" << format_number(spec.mu) << " exact=" << (spec.exact ? 1 : 0) << '\n';
  write_grid_comment(out, spec.grid);
  out << "# t_crit*: closed-form perturbative estimate; exact_boundary: bisection of the exact "
         "steady state at g = g_probe (nan if absent); win*: allowed g at t1 (nan if empty)\n";
  out << axis_name(spec.grid.axis)
      << ",t_crit_1,t_crit_2,t_crit_3,t_crit,exact_boundary,g_probe,"
         "win1_lo,win1_hi,win2_lo,win2_hi,win3_lo,win3_hi,window_width\n";
  const double nan = std::numeric_limits<double>::quiet_NaN();
  for (const CritRow& r : rows) {
    out << format_number(r.value);
    for (double t : r.report.per_condition) out << ',' << format_number(t);
    out << ',' << format_number(r.report.t_crit) << ','
        << format_number(r.exact_boundary.value_or(nan)) << ',' << format_number(r.g_probe);
    for (const auto& iv : r.window.per_condition) {
      out << ',' << format_number(iv ? iv->lower : nan) << ',' << format_number(iv ? iv->upper : nan);
    }
    out << ',' << format_number(r.window.total_width()) << '\n';
  }
}

TransientResult run_transient(const ModelParams& params, double t_end, double dt, std::size_t stride) {
  const EquilibriumPair baths = equilibrium_states(params);
  const DensityMatrix start = tensor(baths.tau1, baths.tau2);
  const SteadyState ss = steady_state(params);
  const Trajectory traj = evolve(params, start, t_end, dt, stride);

  TransientResult result;
  result.steady_coherence = l1_coherence(ss.rho1);
  result.steady_max_sum = magic_report(ss.bloch1).max_sum;
  result.max_correction = traj.max_correction;
  result.rows.reserve(traj.states.size());
  for (std::size_t i = 0; i < traj.states.size(); ++i) {
    const DensityMatrix rho1 = partial_trace(traj.states[i], Slot::first);
    TransientRow row{traj.times[i], l1_coherence(rho1), magic_report(bloch_from_density(rho1)).max_sum,
                     trace_distance(traj.states[i], ss.rho12)};
    result.peak_coherence = std::max(result.peak_coherence, row.coherence);
    result.peak_max_sum = std::max(result.peak_max_sum, row.max_sum);
    result.rows.push_back(row);
  }
  result.coherence_exceeds_steady = result.peak_coherence > result.steady_coherence;
  return result;
}

void write_transient_csv(std::ostream& out, const ModelParams& params, double t_end, double dt,
                         const TransientResult& r) {
  out << "# spinbath " << SPINBATH_VERSION << '\n' << "# command: transient\n";
  write_params_comment(out, params);
  out << "# t_end=" << format_number(t_end) << " dt=" << format_number(dt)
      << " initial=tau1(x)tau2\n";
  out << "# steady_c_l1=" << format_number(r.steady_coherence)
      << " peak_c_l1=" << format_number(r.peak_coherence)
      << " transient_exceeds_steady=" << (r.coherence_exceeds_steady ? "yes" : "no")
      << " steady_max_sum=" << format_number(r.steady_max_sum)
      << " peak_max_sum=" << format_number(r.peak_max_sum) << '\n';
  out << "t,c_l1,max_sum,trace_distance\n";
  for (const TransientRow& row : r.rows) {
    out << format_number(row.t) << ',' << format_number(row.coherence) << ','
        << format_number(row.max_sum) << ',' << format_number(row.distance) << '\n';
  }
}

}  // namespace spinbath
