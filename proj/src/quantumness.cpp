#include "spinbath/quantumness.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace spinbath {

namespace {

constexpr double kMinRate = 1e-6;

void require_unit_omega(const ModelParams& params, const char* who) {
  if (std::abs(params.omega - 1.0) > 1e-12) {
    throw InvalidArgument(std::string(who) + ": closed-form expansion is only valid at omega = 1");
  }
}

void require_rate(double p, const char* who) {
  if (!std::isfinite(p) || p < kMinRate) {
    throw InvalidArgument(std::string(who) + ": reset rate must be >= 1e-6");
  }
}

double high_t2_temperature(Regime regime, std::optional<double> t2, const char* who) {
  if (regime != Regime::high_t2) return 0.0;
  if (!t2 || !(*t2 > 0.0) || !std::isfinite(*t2)) {
    throw InvalidArgument(std::string(who) + ": high-T2 regime needs a positive t2");
  }
  return *t2;
}

}  // namespace

BlochSums named_sums(const BlochVector& r) {
  return {r.x + r.y + r.z, r.x - r.y + r.z, -r.x + r.y + r.z};
}

MagicReport magic_report(const BlochVector& r, double tol) {
  MagicReport report;
  report.tolerance = tol;
  report.named = named_sums(r);
  report.max_sum = -1e300;
  for (int k = 0; k < 8; ++k) {
    const double sx = (k & 4) ? -1.0 : 1.0;
    const double sy = (k & 2) ? -1.0 : 1.0;
    const double sz = (k & 1) ? -1.0 : 1.0;
    report.sums[static_cast<std::size_t>(k)] = sx * r.x + sy * r.y + sz * r.z;
    report.max_sum = std::max(report.max_sum, report.sums[static_cast<std::size_t>(k)]);
  }
  report.has_magic = report.max_sum > 1.0 + tol;
  return report;
}

const char* regime_name(Regime regime) {
  return regime == Regime::low_t2 ? "low_T2" : "high_T2";
}

double thermal_offset(double t1) {
  if (!(t1 > 0.0)) throw InvalidArgument("thermal_offset: t1 must be positive");
  return 2.0 / std::expm1(1.0 / t1);
}

double coherence_perturbative(const ModelParams& params) {
  params.validate();
  require_unit_omega(params, "coherence_perturbative");
  const double p1 = params.p1;
  const double p2 = params.p2;
  return 4.0 * params.g * p2 / std::sqrt((1.0 + 4.0 * p1 * p1) * (1.0 + 4.0 * p2 * p2)) *
         std::abs(std::tanh(0.5 / params.t1) * std::tanh(0.5 / params.t2));
}

BlochSums bloch_sums_perturbative(const ModelParams& params, int order) {
  params.validate();
  require_unit_omega(params, "bloch_sums_perturbative");
  if (order != 1 && order != 2) throw InvalidArgument("bloch_sums_perturbative: order is 1 or 2");
  require_rate(params.p1, "bloch_sums_perturbative");

  const double p1 = params.p1;
  const double p2 = params.p2;
  const double g = params.g;
  const double thermal = std::tanh(0.5 / params.t1);
  const double spin = std::tanh(0.5 / params.t2);
  const double denom = (1.0 + 4.0 * p1 * p1) * (1.0 + 4.0 * p2 * p2);

  const std::array<double, 3> linear_numerators = {
      -1.0 + 2.0 * p2 + 2.0 * p1 + 4.0 * p1 * p2,
      1.0 + 2.0 * p2 + 2.0 * p1 - 4.0 * p1 * p2,
      -1.0 - 2.0 * p2 - 2.0 * p1 + 4.0 * p1 * p2,
  };

  double second = 0.0;
  if (order == 2) {
    // 1/(1 + cosh(1/T2)) underflows cleanly to 0 for small T2.
    const double spin_term = 4.0 * p2 * p2 * (4.0 * p1 * p2 - 1.0) / (1.0 + std::cosh(1.0 / params.t2));
    const double bracket =
        -1.0 - 2.0 * p2 * p2 - 4.0 * p1 * (p1 + 4.0 * p1 * p2 * p2 + 2.0 * p2 * p2 * p2) + spin_term;
    second = 2.0 * g * g * bracket / (p1 * (p1 + p2) * denom);
  }

  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = thermal * (1.0 + 4.0 * g * p2 * linear_numerators[i] * spin / denom + second);
  }
  return {out[0], out[1], out[2]};
}

PerturbativeCoefficients perturbative_coefficients(double p, Regime regime,
                                                   std::optional<double> t2) {
  require_rate(p, "perturbative_coefficients");
  const double t2_value = high_t2_temperature(regime, t2, "perturbative_coefficients");
  const double p2 = p * p;
  const double denom = (1.0 + 4.0 * p2) * (1.0 + 4.0 * p2);

  PerturbativeCoefficients c;
  c.regime = regime;
  c.mu = 1.0;
  c.f1 = p * (4.0 * p2 + 4.0 * p - 1.0) / denom;
  c.g1 = p * (1.0 + 4.0 * p - 4.0 * p2) / denom;
  c.h1 = p * (4.0 * p2 - 4.0 * p - 1.0) / denom;
  c.f2 = (1.0 + 6.0 * p2 + 24.0 * p2 * p2) / (p2 * denom);
  if (regime == Regime::high_t2) {
    c.F1 = c.f1 / t2_value;
    c.G1 = c.g1 / t2_value;
    c.H1 = c.h1 / t2_value;
    c.F2 = 1.0 / p2;
  }
  return c;
}

QuadraticCriterion magic_criterion(double p, double mu, Regime regime, std::optional<double> t2) {
  require_rate(p, "magic_criterion");
  if (!std::isfinite(mu) || !(mu > 0.0)) throw InvalidArgument("magic_criterion: mu must be positive");
  require_rate(mu * p, "magic_criterion");
  const double t2_value = high_t2_temperature(regime, t2, "magic_criterion");

  const double p2 = p * p;
  const double mp = mu * p;
  const double denom = (1.0 + 4.0 * p2) * (1.0 + 4.0 * mp * mp);
  const std::array<double, 3> numerators = {
      4.0 * mu * p2 + 2.0 * mp + 2.0 * p - 1.0,
      1.0 + 2.0 * mp + 2.0 * p - 4.0 * mu * p2,
      4.0 * mu * p2 - 2.0 * mp - 2.0 * p - 1.0,
  };

  QuadraticCriterion q;
  if (regime == Regime::low_t2) {
    for (std::size_t i = 0; i < 3; ++i) q.linear[i] = 4.0 * mp * numerators[i] / denom;
    const double n = 1.0 + 2.0 * mp * mp + 4.0 * p2 + 16.0 * mp * mp * p2 + 8.0 * mu * mp * mp * p2;
    q.quadratic = 2.0 * n / (p2 * (1.0 + mu) * denom);
  } else {
    for (std::size_t i = 0; i < 3; ++i) q.linear[i] = 2.0 * mp * numerators[i] / (t2_value * denom);
    q.quadratic = 2.0 / (p2 * (1.0 + mu));
  }
  return q;
}

BlochSums bloch_sums_asymmetric(double p, double mu, double g, double t1, Regime regime,
                                std::optional<double> t2) {
  if (!(t1 > 0.0)) throw InvalidArgument("bloch_sums_asymmetric: t1 must be positive");
  const QuadraticCriterion q = magic_criterion(p, mu, regime, t2);
  const double thermal = std::tanh(0.5 / t1);
  std::array<double, 3> out{};
  for (std::size_t i = 0; i < 3; ++i) {
    out[i] = thermal * (1.0 + q.linear[i] * g - q.quadratic * g * g);
  }
  return {out[0], out[1], out[2]};
}

CritTempReport critical_temperature(double p, Regime regime, std::optional<double> t2, double mu) {
  const QuadraticCriterion q = magic_criterion(p, mu, regime, t2);
  CritTempReport report;
  report.regime = regime;
  for (std::size_t i = 0; i < 3; ++i) {
    const double a = q.linear[i];
    // Discriminant a^2/(4b^2) - lambda/b vanishes at lambda = a^2/(4b).
    report.per_condition[i] = a == 0.0 ? 0.0 : 1.0 / std::log1p(8.0 * q.quadratic / (a * a));
  }
  report.t_crit = *std::max_element(report.per_condition.begin(), report.per_condition.end());
  return report;
}

double GWindow::total_width() const {
  double w = 0.0;
  for (const GInterval& iv : union_intervals) w += iv.width();
  return w;
}

GWindow g_window(double p, double t1, Regime regime, std::optional<double> t2, double mu) {
  const QuadraticCriterion q = magic_criterion(p, mu, regime, t2);
  const double lambda = thermal_offset(t1);

  GWindow window;
  std::vector<GInterval> pieces;
  for (std::size_t i = 0; i < 3; ++i) {
    const double center = q.linear[i] / (2.0 * q.quadratic);
    const double discriminant = center * center - lambda / q.quadratic;
    if (!(discriminant > 0.0)) continue;
    const double half_width = std::sqrt(discriminant);
    const GInterval iv{std::max(0.0, center - half_width), center + half_width};
    if (!(iv.upper > iv.lower)) continue;
    window.per_condition[i] = iv;
    pieces.push_back(iv);
  }

  std::sort(pieces.begin(), pieces.end(),
            [](const GInterval& a, const GInterval& b) { return a.lower < b.lower; });
  for (const GInterval& iv : pieces) {
    if (!window.union_intervals.empty() && iv.lower <= window.union_intervals.back().upper) {
      window.union_intervals.back().upper = std::max(window.union_intervals.back().upper, iv.upper);
    } else {
      window.union_intervals.push_back(iv);
    }
  }
  return window;
}

double g_window_max(double p, Regime regime, std::optional<double> t2, double mu) {
  const QuadraticCriterion q = magic_criterion(p, mu, regime, t2);
  const double largest = *std::max_element(q.linear.begin(), q.linear.end());
  return std::max(0.0, largest / q.quadratic);
}

double exact_max_sum(const ModelParams& params) {
  return magic_report(steady_state(params).bloch1).max_sum;
}

std::optional<double> magic_boundary_exact(const ModelParams& params, double t1_low,
                                           double t1_high, double tol) {
  if (!(t1_low > 0.0) || !(t1_high > t1_low) || !(tol > 0.0)) {
    throw InvalidArgument("magic_boundary_exact: need 0 < t1_low < t1_high and tol > 0");
  }
  auto excess = [&](double t1) {
    ModelParams at = params;
    at.t1 = t1;
    return exact_max_sum(at) - 1.0;
  };
  double lo = t1_low;
  double hi = t1_high;
  if (!(excess(lo) > 0.0) || !(excess(hi) <= 0.0)) return std::nullopt;
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (excess(mid) > 0.0) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace spinbath
