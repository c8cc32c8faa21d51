#pragma once

#include "asep/lattice.hpp"
#include "asep/scalar.hpp"

#include <Eigen/Dense>

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

namespace asep {

// One entry of the jump law as supplied by the user.
struct JumpSpec {
  Site z;
  std::string weight;  // decimal text; exact value is recovered from it
};

// Symmetric/antisymmetric parts at a displacement z, for every z in
// supp(p) union -supp(p).
struct KernelTerm {
  Site z;
  double p = 0.0;      // p(z)
  double p_rev = 0.0;  // p(-z)
  double a = 0.0;
  double b = 0.0;
  Rational p_exact, p_rev_exact, a_exact, b_exact;
};

class JumpKernel {
 public:
  int dimension() const { return dim_; }
  const std::vector<KernelTerm>& terms() const { return terms_; }

  double p(const Site& z) const;
  double a(const Site& z) const;
  double b(const Site& z) const;

  // S_ij = 1/2 sum_z p(z) z_i z_j.
  const Eigen::MatrixXd& S() const { return s_; }
  // The same sum evaluated with a(z) in place of p(z).
  Eigen::MatrixXd S_from_symmetric_part() const;
  // Exact S, row-major.
  std::vector<Rational> S_exact() const;

  // Largest |z_i| over the support.
  int range() const { return range_; }
  bool is_symmetric() const;

  // Kernel of the reversed process, p*(z) = p(-z).
  JumpKernel reversed() const;

 private:
  friend JumpKernel build_kernel(int, const std::vector<JumpSpec>&);
  int dim_ = 0;
  int range_ = 0;
  std::vector<KernelTerm> terms_;  // sorted by z
  Eigen::MatrixXd s_;
};

// Validates and builds a kernel. Weights are parsed exactly and never
// renormalized. Errors: ZeroSiteWeight, NotNormalized, NegativeWeight,
// DuplicateVector, DimensionMismatch.
JumpKernel build_kernel(int dimension, const std::vector<JumpSpec>& jumps);
JumpKernel build_kernel(int dimension, const std::vector<std::pair<Site, double>>& jumps);

struct IrreducibilityVerdict {
  bool generates_lattice = false;  // {z : a(z) > 0} generates Z^d
  bool s_invertible = false;
  int rank = 0;                     // rank of the generated lattice
  long long index = 0;              // [Z^d : L] when rank == d, else 0
  std::string witness;              // human-readable reason on failure
};

IrreducibilityVerdict check_irreducibility(const JumpKernel& k);

// {"dimension": d, "jumps": [{"z": [..], "p": number}, ...]}
JumpKernel load_kernel_json(const std::filesystem::path& path);
JumpKernel kernel_from_json_text(const std::string& text);

// Reference kernels used across tests, the CLI and the acceptance suite.
namespace kernels {
JumpKernel ssep_1d();          // p(+-1) = 1/2
JumpKernel tasep_1d();         // p(+1) = 1
JumpKernel ssep_2d();          // p(+-e1) = p(+-e2) = 1/4
JumpKernel asymmetric_2d();    // p(e1)=.4, p(e2)=.3, p(-e1)=.2, p(-e2)=.1
}  // namespace kernels

}  // namespace asep
