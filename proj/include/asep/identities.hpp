#pragma once

#include "asep/fluctuation.hpp"
#include "asep/kernel.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace asep {

struct IdentityCheck {
  std::string name;
  double defect = 0.0;
  double tolerance = 0.0;
  bool exact = false;  // evaluated in rational arithmetic; pass means defect == 0
  bool pass = false;
  std::string detail;
};

struct IdentityOptions {
  bool rational = false;
  // Tolerance for identities that hold exactly, when run in floating point.
  double tol_exact = 1e-12;
  double tol_svd = 1e-10;
  int samples = 20;
  std::uint64_t seed = 0x5eed;
};

// Runs every identity at one density and basis level. Items that are exact
// algebra run in rational arithmetic when options.rational is set; items
// that go through the Dirichlet solve always run in double.
std::vector<IdentityCheck> run_identity_suite(const JumpKernel& k, double rho, const BasisLevel& level,
                                              const IdentityOptions& options = {});

}  // namespace asep
