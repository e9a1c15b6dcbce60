#include "spinbath/serialize.hpp"

#include <cmath>

#include "spinbath/quantumness.hpp"

namespace spinbath {

using nlohmann::json;

json matrix_to_json(const MatrixXc& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back({m(i, j).real(), m(i, j).imag()});
    rows.push_back(std::move(row));
  }
  return rows;
}

MatrixXc matrix_from_json(const json& j) {
  if (!j.is_array() || j.empty()) throw InvalidArgument("matrix: expected array of rows");
  const auto rows = static_cast<Eigen::Index>(j.size());
  const auto cols = static_cast<Eigen::Index>(j.front().size());
  MatrixXc m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i) {
    const json& row = j.at(static_cast<std::size_t>(i));
    if (!row.is_array() || static_cast<Eigen::Index>(row.size()) != cols) {
      throw InvalidArgument("matrix: ragged rows");
    }
    for (Eigen::Index c = 0; c < cols; ++c) {
      const json& z = row.at(static_cast<std::size_t>(c));
      if (!z.is_array() || z.size() != 2 || !z[0].is_number() || !z[1].is_number()) {
        throw InvalidArgument("matrix: entries must be [re, im] number pairs");
      }
      m(i, c) = cplx(z[0].get<double>(), z[1].get<double>());
    }
  }
  return m;
}

json params_to_json(const ModelParams& p) {
  return {{"omega", p.omega}, {"g", p.g}, {"t1", p.t1}, {"t2", p.t2}, {"p1", p.p1}, {"p2", p.p2}};
}

ModelParams params_from_json(const json& j) {
  ModelParams p;
  p.omega = j.at("omega").get<double>();
  p.g = j.at("g").get<double>();
  p.t1 = j.at("t1").get<double>();
  p.t2 = j.at("t2").get<double>();
  p.p1 = j.at("p1").get<double>();
  p.p2 = j.at("p2").get<double>();
  p.validate();
  return p;
}

json liouvillian_to_json(const Liouvillian& l) {
  return {{"vectorization", "row-major"}, {"dim", 16}, {"matrix", matrix_to_json(l.matrix)}};
}

namespace {

json bloch_json(const BlochVector& r) { return json::array({r.x, r.y, r.z}); }

json magic_json(const MagicReport& m) {
  return {{"sums", m.sums},
          {"named",
           {{"rx+ry+rz", m.named.rx_ry_rz},
            {"rx-ry+rz", m.named.rx_mry_rz},
            {"-rx+ry+rz", m.named.mrx_ry_rz}}},
          {"max_sum", m.max_sum},
          {"has_magic", m.has_magic},
          {"tolerance", m.tolerance}};
}

}  // namespace

json point_report_json(const ModelParams& params, const SteadyState& state,
                       bool include_liouvillian) {
  json doc;
  doc["schema"] = kPointSchema;
  doc["schema_version"] = kPointSchemaVersion;
  doc["tool_version"] = SPINBATH_VERSION;
  doc["params"] = params_to_json(params);
  doc["steady_state"] = {{"rho12", matrix_to_json(state.rho12.matrix())},
                         {"rho1", matrix_to_json(state.rho1.matrix())},
                         {"rho2", matrix_to_json(state.rho2.matrix())},
                         {"bloch1", bloch_json(state.bloch1)},
                         {"bloch2", bloch_json(state.bloch2)},
                         {"residual", state.residual}};
  json pert = nullptr;
  if (std::abs(params.omega - 1.0) <= 1e-12) pert = coherence_perturbative(params);
  doc["coherence"] = {{"exact", l1_coherence(state.rho1)}, {"perturbative", pert}};
  doc["magic"] = magic_json(magic_report(state.bloch1));
  json warnings = json::array();
  for (const Warning& w : state.warnings) warnings.push_back({{"code", w.code}, {"message", w.message}});
  doc["warnings"] = warnings;
  if (include_liouvillian) doc["liouvillian"] = liouvillian_to_json(build_liouvillian(params));
  return doc;
}

std::vector<std::string> validate_point_json(const json& j) {
  std::vector<std::string> problems;
  auto need = [&](const json& obj, const char* key, auto&& check, const char* what) {
    if (!obj.is_object() || !obj.contains(key)) {
      problems.push_back(std::string("missing field ") + key);
      return false;
    }
    if (!check(obj.at(key))) {
      problems.push_back(std::string("field ") + key + " must be " + what);
      return false;
    }
    return true;
  };
  auto is_number = [](const json& v) { return v.is_number(); };
  auto is_object = [](const json& v) { return v.is_object(); };
  auto is_matrix = [](Eigen::Index dim) {
    return [dim](const json& v) {
      try {
        const MatrixXc m = matrix_from_json(v);
        return m.rows() == dim && m.cols() == dim;
      } catch (const std::exception&) {
        return false;
      }
    };
  };
  auto is_triple = [](const json& v) {
    return v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() && v[2].is_number();
  };

  if (!j.is_object()) return {"document must be an object"};
  need(j, "schema", [](const json& v) { return v == kPointSchema; }, "\"spinbath.point\"");
  need(j, "schema_version", [](const json& v) { return v == kPointSchemaVersion; }, "1");
  need(j, "tool_version", [](const json& v) { return v.is_string(); }, "a string");

  if (need(j, "params", is_object, "an object")) {
    for (const char* k : {"omega", "g", "t1", "t2", "p1", "p2"}) need(j["params"], k, is_number, "a number");
  }
  if (need(j, "steady_state", is_object, "an object")) {
    const json& s = j["steady_state"];
    need(s, "rho12", is_matrix(4), "a 4x4 complex matrix");
    need(s, "rho1", is_matrix(2), "a 2x2 complex matrix");
    need(s, "rho2", is_matrix(2), "a 2x2 complex matrix");
    need(s, "bloch1", is_triple, "three numbers");
    need(s, "bloch2", is_triple, "three numbers");
    need(s, "residual", is_number, "a number");
  }
  if (need(j, "coherence", is_object, "an object")) {
    need(j["coherence"], "exact", is_number, "a number");
    need(j["coherence"], "perturbative",
         [](const json& v) { return v.is_number() || v.is_null(); }, "a number or null");
  }
  if (need(j, "magic", is_object, "an object")) {
    const json& m = j["magic"];
    need(m, "sums", [](const json& v) { return v.is_array() && v.size() == 8; }, "eight numbers");
    need(m, "named", is_object, "an object");
    need(m, "max_sum", is_number, "a number");
    need(m, "has_magic", [](const json& v) { return v.is_boolean(); }, "a boolean");
    need(m, "tolerance", is_number, "a number");
  }
  need(j, "warnings", [](const json& v) { return v.is_array(); }, "an array");
  if (j.contains("liouvillian")) {
    need(j["liouvillian"], "matrix", is_matrix(16), "a 16x16 complex matrix");
  }
  return problems;
}

}  // namespace spinbath
