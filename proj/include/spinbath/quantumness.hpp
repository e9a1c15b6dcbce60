// quantumness.hpp: coherence and magic of the heat-bath qubit
//
// Magic is detected with the qubit stabilizer-polytope (octahedron) test:
// a state is a stabilizer mixture iff -1 <= r_x +- r_y +- r_z <= 1.
//
// The closed-form expansions below are weak-coupling results valid at
// omega = 1. They all share one shape for each of the three +r_z facets,
//
//   S_i ~ tanh(1/(2 T1)) (1 + a_i g - b g^2),
//
// so S_i > 1 is the quadratic condition b g^2 - a_i g + lambda < 0 with
// lambda = coth(1/(2 T1)) - 1. Its window in g is centred at a_i/(2b) and
// closes at T1 = 1/ln(1 + 8b/a_i^2). These critical temperatures are
// perturbative estimates; magic_boundary_exact gives the exact boundary.

#pragma once

#include <array>
#include <optional>
#include <vector>

#include "spinbath/dynamics.hpp"
#include "spinbath/linalg.hpp"
#include "spinbath/model.hpp"

namespace spinbath {

// The three facet combinations with +r_z, in a fixed order.
struct BlochSums {
  double rx_ry_rz = 0.0;    // r_x + r_y + r_z
  double rx_mry_rz = 0.0;   // r_x - r_y + r_z
  double mrx_ry_rz = 0.0;   // -r_x + r_y + r_z

  std::array<double, 3> as_array() const { return {rx_ry_rz, rx_mry_rz, mrx_ry_rz}; }
};

BlochSums named_sums(const BlochVector& r);

struct MagicReport {
  // sums[k] = s_x r_x + s_y r_y + s_z r_z with s_x = -1 if bit 2 of k is set,
  // s_y = -1 if bit 1 is set, s_z = -1 if bit 0 is set.
  std::array<double, 8> sums{};
  BlochSums named;
  double max_sum = 0.0;
  bool has_magic = false;
  double tolerance = Tolerances::magic;
};

MagicReport magic_report(const BlochVector& r, double tol = Tolerances::magic);

enum class Regime { low_t2, high_t2 };

const char* regime_name(Regime regime);

// coth(1/(2 t1)) - 1, computed without cancellation.
double thermal_offset(double t1);

// Leading-order l1 coherence of qubit 1. Requires omega = 1.
double coherence_perturbative(const ModelParams& params);

// Weak-coupling expansion of the three sums for general p1, p2, T1, T2.
// order 1 drops the g^2 term (which is the same for all three sums). Requires omega = 1.
BlochSums bloch_sums_perturbative(const ModelParams& params, int order = 2);

// Coefficient set of the equal-rate (p1 = p2 = p) limits.
struct PerturbativeCoefficients {
  Regime regime = Regime::low_t2;
  double mu = 1.0;
  // low T2: f1, g1, h1 are the linear coefficients (a_i = 4 c_i), f2 the quadratic one.
  double f1 = 0.0, f2 = 0.0, g1 = 0.0, h1 = 0.0;
  // high T2: a_i = 2 C_i, b = F2.
  double F1 = 0.0, F2 = 0.0, G1 = 0.0, H1 = 0.0;
};

// t2 is required (and must be positive) for the high-T2 regime.
PerturbativeCoefficients perturbative_coefficients(double p, Regime regime,
                                                   std::optional<double> t2 = std::nullopt);

// a_i and b of S_i ~ tanh(1/(2 T1)) (1 + a_i g - b g^2) with p1 = p, p2 = mu p.
struct QuadraticCriterion {
  std::array<double, 3> linear{};
  double quadratic = 0.0;
};

QuadraticCriterion magic_criterion(double p, double mu, Regime regime,
                                   std::optional<double> t2 = std::nullopt);

// The three sums from the mu-dependent low/high-T2 expansions.
BlochSums bloch_sums_asymmetric(double p, double mu, double g, double t1, Regime regime,
                                std::optional<double> t2 = std::nullopt);

struct CritTempReport {
  std::array<double, 3> per_condition{};  // 0 where the linear coefficient vanishes
  double t_crit = 0.0;
  Regime regime = Regime::low_t2;
};

CritTempReport critical_temperature(double p, Regime regime,
                                    std::optional<double> t2 = std::nullopt, double mu = 1.0);

struct GInterval {
  double lower = 0.0;
  double upper = 0.0;

  double width() const { return upper - lower; }
};

struct GWindow {
  std::array<std::optional<GInterval>, 3> per_condition;
  std::vector<GInterval> union_intervals;  // disjoint, ascending

  bool empty() const { return union_intervals.empty(); }
  double total_width() const;
};

// Allowed g for magic at heat-bath temperature t1, clipped to g >= 0.
GWindow g_window(double p, double t1, Regime regime, std::optional<double> t2 = std::nullopt,
                 double mu = 1.0);

// Largest upper window endpoint over all T1 (reached as T1 -> 0): max_i a_i / b.
double g_window_max(double p, Regime regime, std::optional<double> t2 = std::nullopt,
                    double mu = 1.0);

// max_sum of the exact steady state of qubit 1.
double exact_max_sum(const ModelParams& params);

// Bisection in T1 on exact_max_sum - 1 over [t1_low, t1_high]. params.t1 is
// ignored. Returns nullopt when the bracket shows no sign change (magic at the
// low end, none at the high end).
std::optional<double> magic_boundary_exact(const ModelParams& params, double t1_low,
                                           double t1_high, double tol = 1e-6);

}  // namespace spinbath
