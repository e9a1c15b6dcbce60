#include "spinbath/model.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace spinbath {

void ModelParams::validate() const {
  auto require = [](bool ok, const char* what) {
    if (!ok) throw InvalidArgument(std::string("ModelParams: ") + what);
  };
  require(std::isfinite(omega) && std::isfinite(g) && std::isfinite(t1) && std::isfinite(t2) &&
              std::isfinite(p1) && std::isfinite(p2),
          "all fields must be finite");
  require(omega > 0.0, "omega must be positive");
  require(g >= 0.0, "g must be non-negative");
  require(t1 > 0.0, "t1 must be positive");
  require(t2 > 0.0, "t2 must be positive");
  require(p1 >= 0.0 && p2 >= 0.0, "reset rates must be non-negative");
}

Matrix2c local_hamiltonian(double omega) {
  Matrix2c h = Matrix2c::Zero();
  h(1, 1) = 0.5 * omega;
  return h;
}

Matrix4c excitation_number() {
  Matrix2c excited = Matrix2c::Zero();
  excited(1, 1) = 1.0;
  const Matrix2c id = Matrix2c::Identity();
  return tensor(excited, id) + tensor(id, excited);
}

Matrix4c hamiltonian(const ModelParams& params) {
  params.validate();
  const Matrix2c h_local = local_hamiltonian(params.omega);
  const Matrix2c id = Matrix2c::Identity();
  Matrix4c h = tensor(h_local, id) + tensor(id, h_local);
  h(1, 2) -= params.g;
  h(2, 1) -= params.g;
  return h;
}

namespace {

// Populations (1/(1+e^-x), e^-x/(1+e^-x)) with x = omega/t.
std::pair<double, double> gibbs_pair(double omega, double t, const char* who) {
  if (!(t > 0.0) || !std::isfinite(t)) {
    throw InvalidArgument(std::string(who) + ": temperature must be positive");
  }
  if (!(omega > 0.0)) throw InvalidArgument(std::string(who) + ": omega must be positive");
  const double boltzmann = std::exp(-omega / t);
  return {1.0 / (1.0 + boltzmann), boltzmann / (1.0 + boltzmann)};
}

}  // namespace

DensityMatrix thermal_state(double omega, double t1) {
  const auto [ground, excited] = gibbs_pair(omega, t1, "thermal_state");
  Matrix2c m = Matrix2c::Zero();
  m(0, 0) = ground;
  m(1, 1) = excited;
  return DensityMatrix(m);
}

DensityMatrix spin_equilibrium_state(double omega, double t2) {
  const auto [plus, minus] = gibbs_pair(omega, t2, "spin_equilibrium_state");
  // plus |+><+| + minus |-><-| = (I + (plus - minus) sigma_x) / 2
  Matrix2c m;
  m << 0.5, 0.5 * (plus - minus), 0.5 * (plus - minus), 0.5;
  return DensityMatrix(m);
}

EquilibriumPair equilibrium_states(const ModelParams& params) {
  params.validate();
  return {thermal_state(params.omega, params.t1), spin_equilibrium_state(params.omega, params.t2)};
}

std::vector<Warning> validity_warnings(const ModelParams& params) {
  std::vector<Warning> out;
  const double limit = 0.2 * std::min(params.p1, params.p2);
  if (params.g > limit) {
    std::ostringstream msg;
    msg << "reset-model validity: g = " << params.g << " exceeds 0.2*min(p1,p2) = " << limit
        << "; the reset master equation assumes weak coupling";
    out.push_back({"weak_coupling", msg.str()});
  }
  return out;
}

}  // namespace spinbath
