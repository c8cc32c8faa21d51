#pragma once

#include "asep/diffusion.hpp"
#include "asep/identities.hpp"
#include "asep/kernel.hpp"

#include "json.hpp"

#include <string>
#include <vector>

namespace asep {

inline constexpr int kSchemaVersion = 1;

// Matrices are arrays of rows. Wall-clock timings are left out so that
// repeated runs produce identical bytes.
nlohmann::json matrix_json(const Eigen::MatrixXd& m);
nlohmann::json kernel_json(const JumpKernel& k);
nlohmann::json verdict_json(const IrreducibilityVerdict& v);
nlohmann::json level_json(const DiffusionReport& r);
nlohmann::json table_json(const ConvergenceTable& t);
nlohmann::json checks_json(const std::vector<IdentityCheck>& checks);

// "1:2,2:3,3:3" -> levels; throws ConfigParse.
std::vector<BasisLevel> parse_schedule(const std::string& text);
std::string format_schedule(const std::vector<BasisLevel>& schedule);

}  // namespace asep
