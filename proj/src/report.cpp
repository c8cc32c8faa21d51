#include "asep/report.hpp"

#include <charconv>
#include <sstream>

namespace asep {

using nlohmann::json;

json matrix_json(const Eigen::MatrixXd& m) {
  json rows = json::array();
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    json row = json::array();
    for (Eigen::Index j = 0; j < m.cols(); ++j) row.push_back(m(i, j));
    rows.push_back(std::move(row));
  }
  return rows;
}

namespace {

json vector_json(const Eigen::VectorXd& v) {
  json out = json::array();
  for (Eigen::Index i = 0; i < v.size(); ++i) out.push_back(v(i));
  return out;
}

json site_json(const Site& s, int dim) {
  json out = json::array();
  for (int i = 0; i < dim; ++i) out.push_back(s[i]);
  return out;
}

}  // namespace

json kernel_json(const JumpKernel& k) {
  const int d = k.dimension();
  json terms = json::array();
  for (const auto& t : k.terms())
    terms.push_back({{"z", site_json(t.z, d)}, {"p", t.p}, {"a", t.a}, {"b", t.b}, {"p_exact", to_string(t.p_exact)}});
  return {{"dimension", d}, {"range", k.range()}, {"symmetric", k.is_symmetric()}, {"terms", terms},
          {"S", matrix_json(k.S())}};
}

json verdict_json(const IrreducibilityVerdict& v) {
  return {{"generates_lattice", v.generates_lattice}, {"s_invertible", v.s_invertible}, {"rank", v.rank},
          {"index", v.index}, {"witness", v.witness}};
}

json level_json(const DiffusionReport& r) {
  return {
      {"generator_basis", {{"radius", r.generator_level.radius}, {"max_degree", r.generator_level.max_degree},
                           {"size", r.generator_basis_size}}},
      {"test_basis", {{"radius", r.test_level.radius}, {"max_degree", r.test_level.max_degree},
                      {"size", r.test_basis_size}}},
      {"rho", r.rho},
      {"chi", r.chi},
      {"Q", matrix_json(r.Q)},
      {"Q_star", matrix_json(r.Q_star)},
      {"D", matrix_json(r.D)},
      {"D_direct", matrix_json(r.D_direct)},
      {"alpha", matrix_json(r.alpha)},
      {"alpha_star", matrix_json(r.alpha_star)},
      {"residuals", vector_json(r.residuals)},
      {"residuals_star", vector_json(r.residuals_star)},
      {"direct_residuals", vector_json(r.direct_residuals)},
      {"symmetry_defect_Q", r.symmetry_defect_Q},
      {"symmetry_defect_D", r.symmetry_defect_D},
      {"dq_identity_defect", r.dq_identity_defect},
      {"cross_check_gap", r.cross_check_gap},
      {"reflection_gap", r.reflection_gap},
      {"max_residual", r.max_residual},
      {"consistent", r.consistent},
      {"dropped_modes", r.dropped_modes},
      {"dirichlet_min_eigenvalue", r.dirichlet_min_eigenvalue},
      {"dirichlet_asymmetry", r.dirichlet_asymmetry},
      {"overflow_mass", r.overflow_mass},
  };
}

json table_json(const ConvergenceTable& t) {
  json levels = json::array();
  for (const auto& r : t.levels) levels.push_back(level_json(r));
  return {{"levels", levels},
          {"residuals_nonincreasing", t.residuals_nonincreasing},
          {"symmetry_defect_decreased", t.symmetry_defect_decreased},
          {"symmetry_constant", t.symmetry_constant}};
}

json checks_json(const std::vector<IdentityCheck>& checks) {
  json out = json::array();
  for (const auto& c : checks)
    out.push_back({{"name", c.name}, {"defect", c.defect}, {"tolerance", c.tolerance}, {"exact", c.exact},
                   {"pass", c.pass}, {"detail", c.detail}});
  return out;
}

std::vector<BasisLevel> parse_schedule(const std::string& text) {
  std::vector<BasisLevel> out;
  std::stringstream in(text);
  std::string item;
  auto bad = [&](const std::string& why) {
    return Error(ErrorCode::ConfigParse, "schedule '" + text + "': " + why);
  };
  auto to_int = [&](std::string_view s) {
    int v = 0;
    auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc() || p != s.data() + s.size()) throw bad("'" + std::string(s) + "' is not an integer");
    return v;
  };
  while (std::getline(in, item, ',')) {
    const auto colon = item.find(':');
    if (colon == std::string::npos) throw bad("expected r:k pairs");
    BasisLevel level{to_int(std::string_view(item).substr(0, colon)), to_int(std::string_view(item).substr(colon + 1))};
    if (level.radius < 1 || level.max_degree < 2) throw bad("need r >= 1 and k >= 2");
    out.push_back(level);
  }
  if (out.empty()) throw bad("empty");
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i].radius < out[i - 1].radius || out[i].max_degree < out[i - 1].max_degree)
      throw bad("levels must be nested");
  return out;
}

std::string format_schedule(const std::vector<BasisLevel>& schedule) {
  std::string out;
  for (const auto& l : schedule) {
    if (!out.empty()) out += ',';
    out += std::to_string(l.radius) + ":" + std::to_string(l.max_degree);
  }
  return out;
}

}  // namespace asep
