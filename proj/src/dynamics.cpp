#include "spinbath/dynamics.hpp"

#include <algorithm>
#include <cmath>

namespace spinbath {

OperatorVector vectorize(const Matrix4c& m) {
  OperatorVector v;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) v(4 * i + j) = m(i, j);
  }
  return v;
}

Matrix4c unvectorize(const OperatorVector& v) {
  Matrix4c m;
  for (int i = 0; i < 4; ++i) {
    for (int j = 0; j < 4; ++j) m(i, j) = v(4 * i + j);
  }
  return m;
}

Matrix4c liouvillian_apply(const ModelParams& params, const Matrix4c& rho) {
  const Matrix4c h = hamiltonian(params);
  const EquilibriumPair baths = equilibrium_states(params);
  const Matrix2c rest_of_1 = partial_trace(rho, Slot::first);   // tr_2 rho
  const Matrix2c rest_of_2 = partial_trace(rho, Slot::second);  // tr_1 rho
  const Matrix4c unitary = cplx(0.0, -1.0) * (h * rho - rho * h);
  const Matrix4c reset1 = tensor(baths.tau1.matrix(), rest_of_2) - rho;
  const Matrix4c reset2 = tensor(rest_of_1, baths.tau2.matrix()) - rho;
  return unitary + params.p1 * reset1 + params.p2 * reset2;
}

Liouvillian build_liouvillian(const Matrix4c& hamiltonian, const Matrix2c& tau_first,
                              double p_first, const Matrix2c& tau_second, double p_second) {
  const Matrix4c id = Matrix4c::Identity();
  // Row-major vec: vec(A X B) = (A x B^T) vec(X).
  Superoperator l = cplx(0.0, -1.0) * (tensor(hamiltonian, id) - tensor(id, hamiltonian.transpose()));
  l -= (p_first + p_second) * Superoperator::Identity();

  // Pair index (a, b) of a two-qubit basis state is 2 a + b; the vec index of
  // entry (row, col) is 4 row + col.
  auto at = [](int a, int b, int c, int d) { return 4 * (2 * a + b) + (2 * c + d); };
  for (int a = 0; a < 2; ++a) {
    for (int b = 0; b < 2; ++b) {
      for (int c = 0; c < 2; ++c) {
        for (int d = 0; d < 2; ++d) {
          for (int k = 0; k < 2; ++k) {
            // (tau1 x tr_1 rho)_{ab,cd} = tau1_{ac} sum_k rho_{kb,kd}
            l(at(a, b, c, d), at(k, b, k, d)) += p_first * tau_first(a, c);
            // (tr_2 rho x tau2)_{ab,cd} = sum_k rho_{ak,ck} tau2_{bd}
            l(at(a, b, c, d), at(a, k, c, k)) += p_second * tau_second(b, d);
          }
        }
      }
    }
  }
  return {l};
}

Liouvillian build_liouvillian(const ModelParams& params) {
  const EquilibriumPair baths = equilibrium_states(params);
  return build_liouvillian(hamiltonian(params), baths.tau1.as2(), params.p1, baths.tau2.as2(),
                           params.p2);
}

SteadyState steady_state(const Liouvillian& liouvillian) {
  Eigen::MatrixXcd a = liouvillian.matrix;
  Eigen::VectorXcd b = Eigen::VectorXcd::Zero(16);
  a.row(0).setZero();
  for (int i = 0; i < 4; ++i) a(0, 5 * i) = 1.0;
  b(0) = 1.0;

  Eigen::VectorXcd x;
  try {
    x = solve_linear<cplx>(a, b);
  } catch (const NumericalError& e) {
    throw NumericalError(std::string("steady_state: constrained system is singular, steady ") +
                         "state not unique for these parameters (" + e.what() + ")");
  }
  const OperatorVector v = x;
  const Matrix4c rho = unvectorize(v);
  const double residual = (liouvillian.matrix * v).cwiseAbs().maxCoeff();
  if (residual > Tolerances::residual) {
    throw NumericalError("steady_state: residual " + error_number(residual) +
                         " exceeds tolerance");
  }

  try {
    DensityMatrix rho12(rho);
    DensityMatrix rho1 = partial_trace(rho12, Slot::first);
    DensityMatrix rho2 = partial_trace(rho12, Slot::second);
    const BlochVector r1 = bloch_from_density(rho1);
    const BlochVector r2 = bloch_from_density(rho2);
    return {std::move(rho12), std::move(rho1), std::move(rho2), r1, r2, residual, {}};
  } catch (const InvalidArgument& e) {
    throw NumericalError(std::string("steady_state: solution is not a valid state: ") + e.what());
  }
}

SteadyState steady_state(const ModelParams& params) {
  params.validate();
  if (!(params.p1 + params.p2 > 0.0)) {
    throw InvalidArgument("steady_state: p1 + p2 must be positive");
  }
  SteadyState out = steady_state(build_liouvillian(params));
  out.warnings = validity_warnings(params);
  return out;
}

double default_time_step(const ModelParams& params) {
  return 0.01 / std::max({1.0, params.p1 + params.p2, params.g, params.omega});
}

Trajectory evolve(const ModelParams& params, const DensityMatrix& rho0, double t_end, double dt,
                  std::size_t stride) {
  params.validate();
  if (rho0.dim() != 4) throw InvalidArgument("evolve: initial state must be 4x4");
  if (!(dt > 0.0) || !(t_end >= 0.0) || !std::isfinite(t_end)) {
    throw InvalidArgument("evolve: need dt > 0 and finite t_end >= 0");
  }
  if (stride == 0) throw InvalidArgument("evolve: stride must be positive");

  const Matrix4c h = hamiltonian(params);
  const std::vector<double> spectrum = hermitian_eigenvalues(h);
  const double h_norm = std::max(std::abs(spectrum.front()), std::abs(spectrum.back()));
  const double guard = dt * (h_norm + params.p1 + params.p2);
  if (guard > 0.1) {
    throw NumericalError("evolve: stability guard violated, dt*(|H|+p1+p2) = " +
                         error_number(guard) + " > 0.1");
  }

  const Superoperator l = build_liouvillian(params).matrix;
  const auto steps = static_cast<std::size_t>(std::ceil(t_end / dt - 1e-12));
  const double step = steps == 0 ? 0.0 : t_end / static_cast<double>(steps);

  Trajectory traj;
  traj.times.push_back(0.0);
  traj.states.push_back(rho0);

  OperatorVector v = vectorize(rho0.as4());
  for (std::size_t n = 1; n <= steps; ++n) {
    const OperatorVector k1 = l * v;
    const OperatorVector k2 = l * (v + 0.5 * step * k1);
    const OperatorVector k3 = l * (v + 0.5 * step * k2);
    const OperatorVector k4 = l * (v + step * k3);
    OperatorVector next = v + (step / 6.0) * (k1 + 2.0 * k2 + 2.0 * k3 + k4);

    const Matrix4c raw = unvectorize(next);
    Matrix4c fixed = 0.5 * (raw + raw.adjoint());
    fixed /= fixed.trace().real();
    const double correction = (fixed - raw).cwiseAbs().maxCoeff();
    traj.max_correction = std::max(traj.max_correction, correction);
    if (correction > Tolerances::step_correction) {
      throw NumericalError("evolve: step correction " + error_number(correction) +
                           " exceeds tolerance at step " + std::to_string(n));
    }
    v = vectorize(fixed);

    if (n % stride == 0 || n == steps) {
      traj.times.push_back(step * static_cast<double>(n));
      try {
        traj.states.emplace_back(fixed);
      } catch (const InvalidArgument& e) {
        throw NumericalError(std::string("evolve: invariant breach: ") + e.what());
      }
    }
  }
  return traj;
}

}  // namespace spinbath
