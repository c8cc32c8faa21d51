#include "asep/run.hpp"

#include "asep/diffusion.hpp"
#include "asep/identities.hpp"
#include "asep/report.hpp"

#include <fstream>
#include <iomanip>
#include <ostream>
#include <sstream>

namespace asep {

using nlohmann::json;

void RunConfig::validate() const {
  if (kernel_path.empty() && !kernel_inline) throw Error(ErrorCode::ConfigParse, "no kernel given");
  Density<double> check(rho);
  (void)check;
  if (schedule.empty()) throw Error(ErrorCode::ConfigParse, "empty basis schedule");
  parse_schedule(format_schedule(schedule));
  if (!(tol_svd > 0 && tol_svd < 1)) throw Error(ErrorCode::ConfigParse, "tol_svd must lie in (0, 1)");
  if (!(tol_id > 0)) throw Error(ErrorCode::ConfigParse, "tol_id must be positive");
}

RunConfig load_run_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigParse, "cannot open " + path.string());
  json j;
  try {
    j = json::parse(in);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, path.string() + ": " + e.what());
  }
  RunConfig cfg;
  if (!j.is_object()) throw Error(ErrorCode::ConfigParse, path.string() + ": expected an object");
  if (j.contains("jumps")) {
    cfg.kernel_path = path;
    return cfg;
  }
  try {
    if (!j.contains("kernel")) throw Error(ErrorCode::ConfigParse, path.string() + ": missing \"kernel\"");
    const auto& k = j.at("kernel");
    if (k.is_string()) {
      std::filesystem::path kp = k.get<std::string>();
      cfg.kernel_path = kp.is_absolute() ? kp : path.parent_path() / kp;
    } else {
      cfg.kernel_inline = k;
    }
    if (j.contains("rho")) cfg.rho = j.at("rho").get<double>();
    if (j.contains("schedule")) cfg.schedule = parse_schedule(j.at("schedule").get<std::string>());
    if (j.contains("tol_svd")) cfg.tol_svd = j.at("tol_svd").get<double>();
    if (j.contains("tol_id")) cfg.tol_id = j.at("tol_id").get<double>();
    if (j.contains("rational")) cfg.rational = j.at("rational").get<bool>();
    if (j.contains("out")) cfg.out = j.at("out").get<std::string>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::ConfigParse, path.string() + ": " + e.what());
  }
  return cfg;
}

int exit_code_for(ErrorCode code) {
  switch (code) {
    case ErrorCode::ConfigParse:
    case ErrorCode::InvalidDensity:
      return kExitConfig;
    case ErrorCode::ZeroSiteWeight:
    case ErrorCode::NotNormalized:
    case ErrorCode::NegativeWeight:
    case ErrorCode::DuplicateVector:
    case ErrorCode::DimensionMismatch:
      return kExitKernel;
    default:
      return kExitSolver;
  }
}

namespace {

JumpKernel load_kernel(const RunConfig& cfg) {
  if (cfg.kernel_inline) return kernel_from_json_text(cfg.kernel_inline->dump());
  return load_kernel_json(cfg.kernel_path);
}

json config_json(const RunConfig& cfg) {
  return {{"rho", cfg.rho},
          {"schedule", format_schedule(cfg.schedule)},
          {"rational", cfg.rational},
          {"tolerances", {{"svd_cutoff", cfg.tol_svd}, {"identity", cfg.tol_id}, {"consistency_factor", 5.0},
                          {"reflection", 1e-12}, {"symmetric_D_equals_S", 1e-8}}}};
}

struct Assertions {
  json items = json::array();
  bool all = true;
  void add(const std::string& name, bool pass, json value) {
    items.push_back({{"name", name}, {"pass", pass}, {"value", std::move(value)}});
    all = all && pass;
  }
};

std::string sci(double x) {
  std::ostringstream out;
  out << std::scientific << std::setprecision(2) << x;
  return out.str();
}

}  // namespace

RunResult run(const std::string& subcommand, const RunConfig& cfg, std::ostream& log) {
  RunResult result;
  json& rep = result.report;
  rep["schema_version"] = kSchemaVersion;
  rep["command"] = subcommand;
  try {
    cfg.validate();
    const auto k = load_kernel(cfg);
    const auto verdict = check_irreducibility(k);
    rep["config"] = config_json(cfg);
    rep["kernel"] = kernel_json(k);
    rep["irreducibility"] = verdict_json(verdict);
    const bool kernel_ok = verdict.generates_lattice && verdict.s_invertible;
    log << "kernel: d=" << k.dimension() << " range=" << k.range() << (k.is_symmetric() ? " symmetric" : "")
        << " irreducible=" << verdict.generates_lattice << " S invertible=" << verdict.s_invertible << "\n";

    if (subcommand == "validate") {
      rep["pass"] = kernel_ok;
      result.exit_code = kernel_ok ? kExitOk : kExitKernel;
      if (!kernel_ok) log << "kernel fails: " << verdict.witness << "\n";
      return result;
    }
    if (!kernel_ok) {
      log << "kernel fails irreducibility: " << verdict.witness << "\n";
      rep["pass"] = false;
      result.exit_code = kExitKernel;
      return result;
    }

    if (subcommand == "check") {
      IdentityOptions opt;
      opt.rational = cfg.rational;
      opt.tol_exact = cfg.tol_id;
      opt.tol_svd = cfg.tol_svd;
      const auto level = cfg.schedule.back();
      const auto checks = run_identity_suite(k, cfg.rho, level, opt);
      bool all = true;
      for (const auto& c : checks) {
        log << (c.pass ? "  pass " : "  FAIL ") << std::left << std::setw(36) << c.name << " defect " << sci(c.defect)
            << (c.exact ? "  (exact)" : "  tol " + sci(c.tolerance)) << "\n";
        all = all && c.pass;
      }
      rep["basis"] = {{"radius", level.radius}, {"max_degree", level.max_degree}};
      rep["identities"] = checks_json(checks);
      rep["pass"] = all;
      result.exit_code = all ? kExitOk : kExitAssertion;
      return result;
    }

    if (subcommand == "compute") {
      SolverTolerances tol;
      tol.svd_cutoff = cfg.tol_svd;
      const auto table = convergence_study(k, cfg.rho, cfg.schedule, tol);
      Assertions a;
      a.add("residuals_nonincreasing", table.residuals_nonincreasing, nullptr);
      double worst_reflection = 0.0, worst_s = 0.0;
      bool consistent = true;
      for (const auto& r : table.levels) {
        log << "  level (" << r.generator_level.radius << "," << r.generator_level.max_degree << ") classes "
            << r.generator_basis_size << " test (" << r.test_level.radius << "," << r.test_level.max_degree << ") "
            << r.test_basis_size << "  max residual " << sci(r.max_residual) << "  symQ " << sci(r.symmetry_defect_Q)
            << "  gap " << sci(r.cross_check_gap) << "  " << std::fixed << std::setprecision(2) << r.seconds << "s\n"
            << std::defaultfloat;
        worst_reflection = std::max(worst_reflection, r.reflection_gap);
        consistent = consistent && r.consistent;
        worst_s = std::max(worst_s, (r.D - k.S()).cwiseAbs().maxCoeff());
      }
      a.add("estimators_consistent", consistent, nullptr);
      a.add("reflection_covariance", worst_reflection <= 1e-12, worst_reflection);
      a.add("symmetry_defect_trend", table.symmetry_defect_decreased, table.symmetry_constant);
      if (k.is_symmetric()) a.add("symmetric_kernel_D_equals_S", worst_s <= 1e-8, worst_s);
      log << "  symmetry constant C = " << sci(table.symmetry_constant) << " (finest symQ / finest max residual)\n";
      rep["convergence"] = table_json(table);
      rep["assertions"] = a.items;
      rep["pass"] = a.all;
      result.exit_code = a.all ? kExitOk : kExitAssertion;
      return result;
    }
    throw Error(ErrorCode::ConfigParse, "unknown subcommand '" + subcommand + "'");
  } catch (const Error& e) {
    log << "error: " << e.what() << "\n";
    rep["error"] = {{"code", to_string(e.code())}, {"message", e.what()}};
    rep["pass"] = false;
    result.exit_code = exit_code_for(e.code());
  }
  return result;
}

}  // namespace asep
