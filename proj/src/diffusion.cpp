#include "asep/diffusion.hpp"

#include "asep/generator.hpp"

#include <chrono>
#include <cmath>

namespace asep {

SpectralSolve solve_psd(const Eigen::MatrixXd& gram, const Eigen::VectorXd& rhs, double cutoff) {
  SpectralSolve out;
  out.x = Eigen::VectorXd::Zero(rhs.size());
  if (gram.rows() == 0) return out;
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> eig(gram);
  const auto& lambda = eig.eigenvalues();
  const double top = lambda.cwiseAbs().maxCoeff();
  const Eigen::VectorXd proj = eig.eigenvectors().transpose() * rhs;
  Eigen::VectorXd coef = Eigen::VectorXd::Zero(lambda.size());
  for (Eigen::Index i = 0; i < lambda.size(); ++i) {
    if (lambda(i) <= cutoff * top) {
      ++out.dropped_modes;
      continue;
    }
    coef(i) = proj(i) / lambda(i);
  }
  out.x = eig.eigenvectors() * coef;
  return out;
}

RepresentationSpace::RepresentationSpace(const JumpKernel& k, std::shared_ptr<const FluctuationInner> inner,
                                         const QuotientBasis& generator_basis, bool starred)
    : inner_(std::move(inner)), starred_(starred) {
  const auto& dens = inner_->density();
  const auto kind = starred_ ? GeneratorKind::Adjoint : GeneratorKind::Forward;
  auto add = [&](const LocalFunction<double>& g) {
    auto u = inner_->reduce(g);
    for (const auto& [cls, c] : u.overflow) overflow_mass_ += std::abs(c);
    generators_.push_back(std::move(u));
  };
  for (int i = 0; i < k.dimension(); ++i) {
    const auto cur = make_currents(k, dens, i);
    add(starred_ ? cur.w_star : cur.w);
  }
  for (std::size_t b = 0; b < generator_basis.size(); ++b)
    add(apply_generator(k, kind, generator_basis.representative(b, dens)));
  gram_ = inner_->gram(generators_);
}

GradientRepresentation represent_gradient(const RepresentationSpace& space, int j, double cutoff) {
  const auto& inner = space.inner();
  const auto& gens = space.generators();
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(gens.size()));
  for (std::size_t i = 0; i < gens.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = inner.gradient_pairing(j, gens[i]);
  const auto sol = solve_psd(space.gram(), rhs, cutoff);
  GradientRepresentation rep;
  const int d = space.dimension();
  rep.alpha = sol.x.head(d);
  rep.c = sol.x.tail(sol.x.size() - d);
  rep.dropped_modes = sol.dropped_modes;
  rep.residual_sq = inner.chi() * inner.S_inverse()(j, j) - sol.x.dot(rhs);
  rep.residual = std::sqrt(std::max(rep.residual_sq, 0.0));
  return rep;
}

DirectRow direct_decomposition(const RepresentationSpace& space, const FluctuationVector& target, double cutoff) {
  const auto& inner = space.inner();
  const int d = space.dimension();
  std::vector<FluctuationVector> family;
  for (int k = 0; k < d; ++k) family.push_back(inner.gradient(k));
  const auto& gens = space.generators();
  family.insert(family.end(), gens.begin() + d, gens.end());
  const Eigen::MatrixXd gram = inner.gram(family);
  Eigen::VectorXd rhs(static_cast<Eigen::Index>(family.size()));
  for (std::size_t i = 0; i < family.size(); ++i) rhs(static_cast<Eigen::Index>(i)) = inner(family[i], target);
  const auto sol = solve_psd(gram, rhs, cutoff);
  DirectRow row;
  row.d_row = sol.x.head(d);
  row.u = sol.x.tail(sol.x.size() - d);
  row.dropped_modes = sol.dropped_modes;
  row.residual_sq = inner.norm_sq(target) - sol.x.dot(rhs);
  row.residual = std::sqrt(std::max(row.residual_sq, 0.0));
  return row;
}

DirectRow direct_decomposition(const RepresentationSpace& space, int j, double cutoff) {
  return direct_decomposition(space, space.current(j), cutoff);
}

namespace {

double relative_asymmetry(const Eigen::MatrixXd& m) {
  const double n = m.norm();
  return n == 0.0 ? 0.0 : (m - m.transpose()).norm() / n;
}

}  // namespace

DiffusionReport q_and_d(const RepresentationSpace& space, const RepresentationSpace& starred,
                        const SolverTolerances& tol) {
  const int d = space.dimension();
  const auto& inner = space.inner();
  const double chi = inner.chi();
  DiffusionReport r;
  r.test_level = {inner.basis().radius(), inner.basis().max_degree()};
  r.test_basis_size = inner.basis().size();
  r.generator_basis_size = space.generator_basis_size();
  r.rho = inner.density().rho();
  r.chi = chi;
  r.alpha.resize(d, d);
  r.alpha_star.resize(d, d);
  r.D_direct.resize(d, d);
  r.residuals.resize(d);
  r.residuals_star.resize(d);
  r.direct_residuals.resize(d);
  for (int j = 0; j < d; ++j) {
    const auto rep = represent_gradient(space, j, tol.svd_cutoff);
    const auto rep_star = represent_gradient(starred, j, tol.svd_cutoff);
    const auto direct = direct_decomposition(space, j, tol.svd_cutoff);
    r.alpha.row(j) = rep.alpha.transpose();
    r.alpha_star.row(j) = rep_star.alpha.transpose();
    r.D_direct.row(j) = direct.d_row.transpose();
    r.residuals(j) = rep.residual;
    r.residuals_star(j) = rep_star.residual;
    r.direct_residuals(j) = direct.residual;
    r.dropped_modes += rep.dropped_modes + rep_star.dropped_modes + direct.dropped_modes;
  }
  r.Q = chi * r.alpha;
  r.Q_star = chi * r.alpha_star;

  Eigen::JacobiSVD<Eigen::MatrixXd> svd(r.Q);
  const auto& sv = svd.singularValues();
  if (!(sv(d - 1) > 1e-12 * sv(0)))
    throw Error(ErrorCode::SingularQ, "Q is numerically singular with " + std::to_string(r.generator_basis_size) + " generator classes");
  r.D = chi * r.Q.inverse();

  r.symmetry_defect_Q = relative_asymmetry(r.Q);
  r.symmetry_defect_D = relative_asymmetry(r.D);
  r.dq_identity_defect = (chi * Eigen::MatrixXd::Identity(d, d) - r.D * r.Q).norm();
  r.cross_check_gap = (r.D_direct - r.D).cwiseAbs().maxCoeff();
  r.reflection_gap = (r.alpha_star - r.alpha).cwiseAbs().maxCoeff();
  r.max_residual = std::max(r.residuals.maxCoeff(), r.direct_residuals.maxCoeff());
  r.consistent = r.cross_check_gap <= tol.consistency_factor * r.max_residual + 1e-12;

  r.dirichlet_min_eigenvalue = inner.dirichlet_min_eigenvalue();
  r.dirichlet_asymmetry = inner.dirichlet_asymmetry();
  r.overflow_mass = space.overflow_mass();
  return r;
}

DiffusionReport compute_level(const JumpKernel& k, double rho, const BasisLevel& generators,
                              const SolverTolerances& tol, std::optional<BasisLevel> test) {
  const auto start = std::chrono::steady_clock::now();
  const BasisLevel test_level = test.value_or(enlarged(generators, k));
  const int d = k.dimension();
  auto inner = std::make_shared<const FluctuationInner>(
      k, QuotientBasis::build(d, test_level.radius, test_level.max_degree), Density<double>(rho), tol.svd_cutoff);
  const auto gen_basis = QuotientBasis::build(d, generators.radius, generators.max_degree);
  const RepresentationSpace space(k, inner, gen_basis, false);
  const RepresentationSpace starred(k, inner, gen_basis, true);
  auto report = q_and_d(space, starred, tol);
  report.generator_level = generators;
  report.seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
  return report;
}

ConvergenceTable convergence_study(const JumpKernel& k, double rho, const std::vector<BasisLevel>& schedule,
                                   const SolverTolerances& tol) {
  if (schedule.empty()) throw Error(ErrorCode::ConfigParse, "empty basis schedule");
  for (std::size_t i = 1; i < schedule.size(); ++i)
    if (schedule[i].radius < schedule[i - 1].radius || schedule[i].max_degree < schedule[i - 1].max_degree)
      throw Error(ErrorCode::ConfigParse, "basis schedule is not nested");
  ConvergenceTable table;
  const BasisLevel test = enlarged(schedule.back(), k);
  for (const auto& level : schedule) table.levels.push_back(compute_level(k, rho, level, tol, test));
  // Residuals come from sqrt of a difference of O(1) numbers, so a residual
  // that vanishes exactly shows up as ~1e-8 after roundoff; compare squares.
  constexpr double kSlack = 1e-12;
  constexpr double kSlackSq = 1e-14;
  auto grew = [&](double cur, double prev) { return cur * cur > prev * prev + kSlackSq; };
  for (std::size_t i = 1; i < table.levels.size(); ++i) {
    const auto& prev = table.levels[i - 1];
    const auto& cur = table.levels[i];
    for (Eigen::Index j = 0; j < cur.residuals.size(); ++j)
      if (grew(cur.residuals(j), prev.residuals(j)) || grew(cur.direct_residuals(j), prev.direct_residuals(j)))
        table.residuals_nonincreasing = false;
  }
  const auto& first = table.levels.front();
  const auto& last = table.levels.back();
  table.symmetry_defect_decreased = last.symmetry_defect_Q <= first.symmetry_defect_Q + kSlack;
  table.symmetry_constant = last.max_residual > 0 ? last.symmetry_defect_Q / last.max_residual : 0.0;
  return table;
}

}  // namespace asep
