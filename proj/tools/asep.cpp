// Command-line front end: validate a kernel, run the identity suite, or
// compute D with a convergence table.

#include "asep/report.hpp"
#include "asep/run.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

int main(int argc, char** argv) {
  using namespace asep;
  CLI::App app{"Diffusion matrix of finite-range exclusion processes"};
  app.footer(
      "Exit codes:\n"
      "  0  all assertions pass\n"
      "  2  configuration error (unreadable file, bad flag value, rho outside (0,1))\n"
      "  3  kernel error (invalid weights, or not irreducible / S singular)\n"
      "  4  an identity or convergence assertion failed\n"
      "  5  solver error (singular Dirichlet matrix or Q, enumeration too large)");
  app.require_subcommand(1, 1);

  std::string config_path, schedule, out;
  double rho = 0.0, tol_svd = 0.0, tol_id = 0.0;
  bool rational = false;
  auto add_flags = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "run config or kernel JSON file")->required();
    sub->add_option("--rho", rho, "density in (0,1) [0.5]");
    sub->add_option("--schedule", schedule, "nested basis levels \"r:k,r:k,...\" [1:2,2:3,3:3]");
    sub->add_flag("--rational", rational, "run exact identities in rational arithmetic");
    sub->add_option("--out", out, "report path [stdout]");
    sub->add_option("--tol-svd", tol_svd, "relative eigenvalue cutoff [1e-10]");
    sub->add_option("--tol-id", tol_id, "tolerance for exact identities in floating point [1e-12]");
  };
  add_flags(app.add_subcommand("validate", "kernel verdicts: normalization, p(0), irreducibility, S"));
  add_flags(app.add_subcommand("check", "identity suite at the finest schedule level"));
  add_flags(app.add_subcommand("compute", "Q, D and the convergence table over the schedule"));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kExitConfig;
  }
  const auto* sub = app.get_subcommands().front();

  RunConfig cfg;
  try {
    cfg = load_run_config(config_path);
    if (sub->count("--rho")) cfg.rho = rho;
    if (sub->count("--schedule")) cfg.schedule = parse_schedule(schedule);
    if (sub->count("--tol-svd")) cfg.tol_svd = tol_svd;
    if (sub->count("--tol-id")) cfg.tol_id = tol_id;
    if (rational) cfg.rational = true;
    if (sub->count("--out")) cfg.out = out;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return exit_code_for(e.code());
  }

  const auto result = run(sub->get_name(), cfg, std::cerr);
  const std::string text = result.report.dump(2) + "\n";
  if (cfg.out.empty()) {
    std::cout << text;
  } else {
    std::ofstream file(cfg.out, std::ios::binary);
    if (!file) {
      std::cerr << "error: cannot write " << cfg.out << "\n";
      return kExitConfig;
    }
    file << text;
  }
  return result.exit_code;
}
