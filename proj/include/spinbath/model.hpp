// model.hpp: Hamiltonian and bath equilibrium states of the two-qubit machine
//
// Qubit 1 (slot 1) is reset toward the Gibbs state of a heat bath at T1.
// Qubit 2 (slot 2) is reset toward the equilibrium state of a spin bath at T2
// that exchanges angular momentum along x. k_B = 1, omega1 = omega2 = omega.

#pragma once

#include <string>
#include <vector>

#include "spinbath/linalg.hpp"

namespace spinbath {

struct ModelParams {
  double omega = 1.0;  // level splitting scale, H_k = (omega/2)|1><1|
  double g = 0.0;      // swap coupling
  double t1 = 1.0;     // heat-bath temperature
  double t2 = 1.0;     // spin-bath temperature
  double p1 = 0.5;     // reset rate of qubit 1
  double p2 = 0.5;     // reset rate of qubit 2

  // Throws InvalidArgument unless omega > 0, g >= 0, t1, t2 > 0, p1, p2 >= 0
  // and every field is finite.
  void validate() const;
};

struct EquilibriumPair {
  DensityMatrix tau1;  // heat bath, diagonal in z
  DensityMatrix tau2;  // spin bath, diagonal in x
};

Matrix2c local_hamiltonian(double omega);

// |1><1| x I + I x |1><1|
Matrix4c excitation_number();

// H1 x I + I x H2 - g (|01><10| + |10><01|).
//
// The swap term carries a minus sign. This is the phase convention in which
// the weak-coupling Bloch expansions in quantumness.hpp hold for the literal
// combinations r_x +- r_y + r_z. The opposite sign is unitarily equivalent
// (sigma_z on qubit 1): it rotates the reduced states by pi about z and leaves
// coherence and the polytope test unchanged.
Matrix4c hamiltonian(const ModelParams& params);

DensityMatrix thermal_state(double omega, double t1);
DensityMatrix spin_equilibrium_state(double omega, double t2);
EquilibriumPair equilibrium_states(const ModelParams& params);

struct Warning {
  std::string code;  // short machine-readable tag, e.g. "weak_coupling"
  std::string message;
};

// Non-fatal notes attached to results. Currently the weak-coupling validity
// warning when g > 0.2 min(p1, p2); the computation still proceeds.
std::vector<Warning> validity_warnings(const ModelParams& params);

}  // namespace spinbath
