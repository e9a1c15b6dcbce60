// dynamics.hpp: reset master equation, its Liouvillian, steady state and RK4 evolution
//
//   d rho/dt = -i[H, rho] + p1 (tau1 x tr_1 rho - rho) + p2 (tr_2 rho x tau2 - rho)
//
// tr_i traces out qubit i and tau_i is reinserted into slot i. Operators are
// vectorized row-major: vec(rho)[4 i + j] = rho(i, j).

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "spinbath/linalg.hpp"
#include "spinbath/model.hpp"

namespace spinbath {

using Superoperator = Eigen::Matrix<cplx, 16, 16>;
using OperatorVector = Eigen::Matrix<cplx, 16, 1>;

OperatorVector vectorize(const Matrix4c& m);
Matrix4c unvectorize(const OperatorVector& v);

struct Liouvillian {
  Superoperator matrix;

  Matrix4c apply(const Matrix4c& rho) const { return unvectorize(matrix * vectorize(rho)); }
};

// Right-hand side of the master equation evaluated directly on a 4x4 operator.
Matrix4c liouvillian_apply(const ModelParams& params, const Matrix4c& rho);

// Explicit 16x16 matrix, assembled from Kronecker identities rather than by
// applying liouvillian_apply to basis elements.
Liouvillian build_liouvillian(const ModelParams& params);

// General form: any Hamiltonian, slot-1 reset toward tau_first at rate
// p_first, slot-2 reset toward tau_second at rate p_second.
Liouvillian build_liouvillian(const Matrix4c& hamiltonian, const Matrix2c& tau_first,
                              double p_first, const Matrix2c& tau_second, double p_second);

struct SteadyState {
  DensityMatrix rho12;
  DensityMatrix rho1;
  DensityMatrix rho2;
  BlochVector bloch1;
  BlochVector bloch2;
  double residual = 0.0;  // max |L vec(rho12)|
  std::vector<Warning> warnings;
};

// Solves L vec(rho) = 0 with the first row replaced by tr(rho) = 1. Throws
// NumericalError if the constrained system is singular or the result breaks a
// density-matrix invariant or the residual bound.
SteadyState steady_state(const ModelParams& params);
SteadyState steady_state(const Liouvillian& liouvillian);

struct Trajectory {
  std::vector<double> times;
  std::vector<DensityMatrix> states;
  double max_correction = 0.0;  // largest re-Hermitization / renormalization applied
};

// dt = 0.01 / max(1, p1 + p2, g, omega)
double default_time_step(const ModelParams& params);

// Classical RK4 on vec(rho). Every step is re-Hermitized and trace-normalized;
// a correction above Tolerances::step_correction is a NumericalError. Requires
// dt (||H|| + p1 + p2) <= 0.1. The step is shrunk so that t_end is hit exactly.
// States are stored every `stride` steps plus the initial and final state.
Trajectory evolve(const ModelParams& params, const DensityMatrix& rho0, double t_end, double dt,
                  std::size_t stride = 1);

}  // namespace spinbath
