#pragma once

#include "asep/fluctuation.hpp"
#include "asep/kernel.hpp"

#include <Eigen/Dense>

#include <memory>
#include <optional>
#include <vector>

namespace asep {

struct SolverTolerances {
  double svd_cutoff = 1e-10;  // relative eigenvalue cutoff for M and Gram solves
  double consistency_factor = 5.0;
};

// Solution of G x = rhs for symmetric positive semidefinite G, through the
// eigendecomposition with eigenvalues below cutoff * max dropped.
struct SpectralSolve {
  Eigen::VectorXd x;
  int dropped_modes = 0;
};
SpectralSolve solve_psd(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs, double cutoff);

// span{w_1..w_d} + span{L g_b : b in generator basis} (or w*_i and L* g_b
// when starred), reduced into the coordinates of the inner product's test
// basis. A test basis containing enlarged(generator level) leaves no overflow.
class RepresentationSpace {
 public:
  RepresentationSpace(const JumpKernel& k, std::shared_ptr<const FluctuationInner> inner,
                      const QuotientBasis& generator_basis, bool starred);

  int dimension() const { return inner_->dimension(); }
  bool starred() const { return starred_; }
  std::size_t generator_basis_size() const { return generators_.size() - static_cast<std::size_t>(dimension()); }
  const FluctuationInner& inner() const { return *inner_; }
  // Currents first (d entries), then L g_b in basis order.
  const std::vector<FluctuationVector>& generators() const { return generators_; }
  const FluctuationVector& current(int i) const { return generators_[static_cast<std::size_t>(i)]; }
  const Eigen::MatrixXd& gram() const { return gram_; }
  // Sum of |coefficient| of generator content outside the basis.
  double overflow_mass() const { return overflow_mass_; }

 private:
  std::shared_ptr<const FluctuationInner> inner_;
  bool starred_;
  std::vector<FluctuationVector> generators_;
  Eigen::MatrixXd gram_;
  double overflow_mass_ = 0.0;
};

// <<.,.>>-orthogonal projection of nabla_j xi(0) onto the space:
// nabla_j ~ sum_i alpha_i w_i + sum_b c_b L g_b.
struct GradientRepresentation {
  Eigen::VectorXd alpha;
  Eigen::VectorXd c;
  double residual = 0.0;     // sqrt of max(residual_sq, 0)
  double residual_sq = 0.0;  // chi (S^{-1})_jj - x . rhs, may dip below 0 by roundoff
  int dropped_modes = 0;
};
GradientRepresentation represent_gradient(const RepresentationSpace& space, int j, double cutoff = 1e-10);

// Joint least squares for target ~ sum_k c_k nabla_k + sum_b u_b L g_b.
struct DirectRow {
  Eigen::VectorXd d_row;
  Eigen::VectorXd u;
  double residual = 0.0;
  double residual_sq = 0.0;
  int dropped_modes = 0;
};
DirectRow direct_decomposition(const RepresentationSpace& space, const FluctuationVector& target,
                               double cutoff = 1e-10);
// Uses the space's own current w_j as the target.
DirectRow direct_decomposition(const RepresentationSpace& space, int j, double cutoff = 1e-10);

struct DiffusionReport {
  BasisLevel generator_level;
  BasisLevel test_level;
  std::size_t generator_basis_size = 0;
  std::size_t test_basis_size = 0;
  double rho = 0.0;
  double chi = 0.0;

  Eigen::MatrixXd Q;        // chi * alpha, unstarred
  Eigen::MatrixXd Q_star;   // chi * alpha*, starred
  Eigen::MatrixXd D;        // chi Q^{-1}
  Eigen::MatrixXd alpha;    // row j = representation coefficients of nabla_j
  Eigen::MatrixXd alpha_star;
  Eigen::MatrixXd D_direct; // direct-decomposition rows
  Eigen::VectorXd residuals;         // Q-route, per gradient
  Eigen::VectorXd residuals_star;
  Eigen::VectorXd direct_residuals;  // per current

  double symmetry_defect_Q = 0.0;  // ||Q - Q^T||_F / ||Q||_F
  double symmetry_defect_D = 0.0;
  double dq_identity_defect = 0.0; // ||chi I - D Q||_F
  double cross_check_gap = 0.0;    // max |D_direct - D|
  double reflection_gap = 0.0;     // max |alpha* - alpha|
  double max_residual = 0.0;       // over Q-route and direct residuals
  bool consistent = true;          // cross_check_gap <= factor * max_residual
  int dropped_modes = 0;

  double dirichlet_min_eigenvalue = 0.0;
  double dirichlet_asymmetry = 0.0;
  double overflow_mass = 0.0;
  double seconds = 0.0;  // wall time; kept out of serialized reports
};

// Builds Q from both representation spaces and D = chi Q^{-1}, together with
// the direct-decomposition cross-check. Throws SingularQ.
//
// Why Q = chi alpha: with nabla_j ~ sum_i alpha_i w_i + L g,
//   T nabla_j ~ sum_{i,k} alpha_i S_ik nabla_k + L^s g,
// and pairing with nabla_l uses <<nabla_k, nabla_l>> = chi (S^{-1})_kl and
// <<L^s g, nabla_l>> = 0, leaving Q_jl = chi sum_i alpha_i (S S^{-1})_il = chi alpha_l.
DiffusionReport q_and_d(const RepresentationSpace& space, const RepresentationSpace& starred,
                        const SolverTolerances& tol = {});

// Full pipeline at one generator level. The test basis defaults to
// enlarged(generator level).
DiffusionReport compute_level(const JumpKernel& k, double rho, const BasisLevel& generators,
                              const SolverTolerances& tol = {}, std::optional<BasisLevel> test = std::nullopt);

struct ConvergenceTable {
  std::vector<DiffusionReport> levels;
  bool residuals_nonincreasing = true;
  bool symmetry_defect_decreased = true;  // finest <= coarsest
  double symmetry_constant = 0.0;         // finest defect / finest max residual
};

// Levels must be nested (each basis contains the previous one). All levels
// share one test basis, enlarged(finest level), so the representation
// spaces are nested subspaces under a single norm and the residuals are
// nonincreasing.
ConvergenceTable convergence_study(const JumpKernel& k, double rho, const std::vector<BasisLevel>& schedule,
                                   const SolverTolerances& tol = {});

}  // namespace asep
