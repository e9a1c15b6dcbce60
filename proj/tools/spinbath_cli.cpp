// spinbath: steady-state coherence and magic of the heat-bath / spin-bath two-qubit machine
//
// Exit codes: 0 success, 2 usage error, 3 numerical failure.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <string>

#include "CLI11.hpp"

#include "spinbath/dynamics.hpp"
#include "spinbath/quantumness.hpp"
#include "spinbath/serialize.hpp"
#include "spinbath/sweep.hpp"

namespace {

using namespace spinbath;

constexpr int kUsageError = 2;
constexpr int kNumericalError = 3;

void add_model_flags(CLI::App& cmd, ModelParams& p) {
  cmd.add_option("--g", p.g, "swap coupling strength")->capture_default_str();
  cmd.add_option("--t1", p.t1, "heat-bath temperature")->capture_default_str();
  cmd.add_option("--t2", p.t2, "spin-bath temperature")->capture_default_str();
  cmd.add_option("--p1", p.p1, "reset rate of qubit 1 (per unit time)")->capture_default_str();
  cmd.add_option("--p2", p.p2, "reset rate of qubit 2 (per unit time)")->capture_default_str();
  cmd.add_option("--omega", p.omega, "level splitting scale")->capture_default_str();
}

void require_unit_omega(const ModelParams& p) {
  if (std::abs(p.omega - 1.0) > 1e-12) {
    throw InvalidArgument("perturbative columns need --omega 1 (closed forms are derived at omega = 1)");
  }
}

// Writes through `writer` to --out, or stdout when no path was given.
template <typename Writer>
void emit(const std::string& path, Writer writer) {
  if (path.empty()) {
    writer(std::cout);
    return;
  }
  std::ofstream file(path);
  if (!file) throw InvalidArgument("cannot open output file '" + path + "'");
  writer(file);
  if (!file) throw InvalidArgument("failed writing '" + path + "'");
}

void print_point_text(std::ostream& out, const ModelParams& p, const SteadyState& ss) {
  auto bloch = [](const BlochVector& r) {
    return "(" + format_number(r.x) + ", " + format_number(r.y) + ", " + format_number(r.z) + ")";
  };
  const MagicReport magic = magic_report(ss.bloch1);
  out << "params: omega=" << p.omega << " g=" << p.g << " t1=" << p.t1 << " t2=" << p.t2
      << " p1=" << p.p1 << " p2=" << p.p2 << '\n';
  out << "residual: " << format_number(ss.residual) << '\n';
  out << "bloch1 (heat-bath qubit): " << bloch(ss.bloch1) << '\n';
  out << "bloch2 (spin-bath qubit): " << bloch(ss.bloch2) << '\n';
  out << "c_l1 exact: " << format_number(l1_coherence(ss.rho1)) << '\n';
  if (std::abs(p.omega - 1.0) <= 1e-12) {
    out << "c_l1 perturbative (O(g)): " << format_number(coherence_perturbative(p)) << '\n';
  } else {
    out << "c_l1 perturbative: n/a (omega != 1)\n";
  }
  out << "rx+ry+rz: " << format_number(magic.named.rx_ry_rz) << '\n';
  out << "rx-ry+rz: " << format_number(magic.named.rx_mry_rz) << '\n';
  out << "-rx+ry+rz: " << format_number(magic.named.mrx_ry_rz) << '\n';
  out << "max_sum: " << format_number(magic.max_sum) << '\n';
  out << "has_magic: " << (magic.has_magic ? "true" : "false") << " (tolerance "
      << magic.tolerance << ")\n";
  for (const Warning& w : ss.warnings) out << "warning: " << w.message << '\n';
}

Regime parse_regime(const std::string& s) {
  if (s == "low") return Regime::low_t2;
  if (s == "high") return Regime::high_t2;
  throw InvalidArgument("--regime must be 'low' or 'high'");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady-state coherence and magic of a qubit coupled to a heat bath and, through a "
               "swap interaction, to a qubit reset by a spin bath."};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(SPINBATH_VERSION));

  ModelParams params;
  params.g = 0.01;
  std::string out_path;
  unsigned workers = 0;
  bool json = false;
  bool with_liouvillian = false;
  std::string sweep_text;
  std::optional<double> mu;
  std::string regime_text = "low";
  std::optional<double> t_end;
  std::optional<double> dt;
  std::size_t stride = 0;
  bool exact = false;

  CLI::App* point = app.add_subcommand("point", "exact steady state and quantumness at one point");
  add_model_flags(*point, params);
  point->add_flag("--json", json, "print a versioned JSON document instead of text");
  point->add_flag("--with-liouvillian", with_liouvillian, "include the 16x16 Liouvillian in --json");
  point->add_option("--out", out_path, "output file (default stdout)");

  CLI::App* sweep = app.add_subcommand("sweep", "CSV sweep of exact and perturbative quantities");
  add_model_flags(*sweep, params);
  sweep->add_option("--sweep", sweep_text, "<axis>:<min>:<max>:<steps>[:log], axis in g,t1,t2,p1,p2,p,mu")
      ->required();
  sweep->add_option("--mu", mu, "keep p2 = mu * p1 at every point (not with axes p, p2, mu)");
  sweep->add_option("--workers", workers, "worker threads (0 = all processors)");
  sweep->add_option("--out", out_path, "output CSV (default stdout)");

  CLI::App* crit = app.add_subcommand("crit", "closed-form critical temperatures and g windows");
  crit->add_option("--sweep", sweep_text, "p:<min>:<max>:<steps>[:log] or mu:...")->required();
  crit->add_option("--regime", regime_text, "low or high spin-bath temperature limit")
      ->capture_default_str();
  crit->add_option("--t1", params.t1, "heat-bath temperature for the g windows (default 0.1)");
  crit->add_option("--t2", params.t2, "spin-bath temperature (high regime; exact solver)");
  crit->add_option("--p1", params.p1, "fixed p1 for a mu sweep");
  crit->add_option("--mu", mu, "fixed p2/p1 for a p sweep");
  crit->add_flag("--exact", exact, "also bisect the exact steady-state boundary");
  crit->add_option("--workers", workers, "worker threads (0 = all processors)");
  crit->add_option("--out", out_path, "output CSV (default stdout)");

  CLI::App* transient = app.add_subcommand("transient", "RK4 run from tau1 x tau2");
  add_model_flags(*transient, params);
  transient->add_option("--t-end", t_end, "final time (default 200/min(p1,p2))");
  transient->add_option("--dt", dt, "time step (default 0.01/max(1,p1+p2,g,omega))");
  transient->add_option("--stride", stride, "write every k-th step (default: about 1000 rows)");
  transient->add_option("--out", out_path, "output CSV (default stdout)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kUsageError;
  }

  try {
    if (*point) {
      params.validate();
      const SteadyState ss = steady_state(params);
      emit(out_path, [&](std::ostream& os) {
        if (json) {
          os << point_report_json(params, ss, with_liouvillian).dump(2) << '\n';
        } else {
          print_point_text(os, params, ss);
        }
      });
      if (json || !out_path.empty()) {
        for (const Warning& w : ss.warnings) std::cerr << "warning: " << w.message << '\n';
      }
    } else if (*sweep) {
      SweepSpec spec;
      spec.grid = parse_grid(sweep_text);
      spec.fixed = params;
      spec.mu = mu;
      require_unit_omega(spec.fixed);
      const std::vector<OutputRow> rows = run_sweep(spec, workers);
      emit(out_path, [&](std::ostream& os) { write_sweep_csv(os, spec, rows); });
    } else if (*crit) {
      CritSpec spec;
      spec.regime = parse_regime(regime_text);
      spec.grid = parse_grid(sweep_text);
      if (crit->count("--t1")) spec.t1 = params.t1;
      spec.t2 = crit->count("--t2") ? params.t2 : (spec.regime == Regime::low_t2 ? 0.01 : 10.0);
      spec.p = params.p1;
      spec.mu = mu.value_or(1.0);
      spec.exact = exact;
      const std::vector<CritRow> rows = run_crit(spec, workers);
      emit(out_path, [&](std::ostream& os) { write_crit_csv(os, spec, rows); });
    } else if (*transient) {
      params.validate();
      const double end = t_end.value_or(200.0 / std::min(params.p1, params.p2));
      const double step = dt.value_or(default_time_step(params));
      if (!(step > 0.0)) throw InvalidArgument("--dt must be positive");
      const std::size_t every =
          stride ? stride : std::max<std::size_t>(1, static_cast<std::size_t>(end / step / 1000.0));
      const TransientResult result = run_transient(params, end, step, every);
      emit(out_path, [&](std::ostream& os) { write_transient_csv(os, params, end, step, result); });
    }
  } catch (const InvalidArgument& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kUsageError;
  } catch (const NumericalError& e) {
    std::cerr << "numerical failure: " << e.what() << '\n';
    return kNumericalError;
  }
  return 0;
}
