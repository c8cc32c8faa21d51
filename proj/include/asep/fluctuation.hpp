#pragma once

#include "asep/generator.hpp"
#include "asep/kernel.hpp"
#include "asep/localfn.hpp"

#include <Eigen/Dense>
#include <Eigen/Sparse>

#include <map>
#include <optional>
#include <vector>

namespace asep {

// t_i(g) = <g, sum_x x_i xi(x)>_rho = chi sum_x c_{x} x_i.
// Only the degree-one coefficients contribute: <eta_A, eta_x> vanishes unless
// A = {x}, and the constant rho in xi(x) pairs with <g>_rho = 0.
template <class S>
std::vector<S> t_vec(const LocalFunction<S>& g, int dim) {
  if (!is_centered(g))
    throw Error(ErrorCode::NonCenteredInput, "t-vector needs a function without constant term");
  std::vector<S> t(static_cast<std::size_t>(dim), S(0));
  for (const auto& [m, c] : g.terms()) {
    if (m.degree() != 1) continue;
    for (int i = 0; i < dim; ++i) t[static_cast<std::size_t>(i)] += c * S(m.sites()[0][i]);
  }
  for (auto& v : t) v *= g.density().chi();
  return t;
}

// Coefficient sums over translation classes of degree >= 2, keyed by the
// anchored representative.
template <class S>
std::map<Monomial, S> quotient_content(const LocalFunction<S>& g) {
  std::map<Monomial, S> out;
  for (const auto& [m, c] : g.terms()) {
    if (m.degree() < 2) continue;
    auto [it, inserted] = out.try_emplace(m.anchored(), c);
    if (!inserted) it->second += c;
  }
  for (auto it = out.begin(); it != out.end();) it = is_zero(it->second) ? out.erase(it) : std::next(it);
  return out;
}

// <g, f>_{rho,0} = sum_x <g, tau_x f>_rho. Per shift only equal monomials pair,
// so the sum collapses to chi^k times products of class sums, plus the
// degree-one term chi (sum c^1(g)) (sum c^1(f)). Both inputs must be centered.
template <class S>
S pair_rho0(const LocalFunction<S>& g, const LocalFunction<S>& f) {
  g.require_same_density(f);
  if (!is_centered(g) || !is_centered(f))
    throw Error(ErrorCode::NonCenteredInput, "pair_rho0 needs functions with zero mean");
  const S& chi = g.density().chi();
  S total = chi * g.linear_sum() * f.linear_sum();
  const auto qg = quotient_content(g);
  const auto qf = quotient_content(f);
  auto ig = qg.begin();
  auto jf = qf.begin();
  while (ig != qg.end() && jf != qf.end()) {
    if (ig->first < jf->first) {
      ++ig;
    } else if (jf->first < ig->first) {
      ++jf;
    } else {
      total += power(chi, ig->first.degree()) * ig->second * jf->second;
      ++ig;
      ++jf;
    }
  }
  return total;
}

// Translation classes of eta-monomials with degree in [2, kmax] whose sites
// span at most `radius` along every axis. The span condition is invariant
// under translation and reflection, so the set is reflection-closed, and the
// anchored representative lies in the box [0, r] x [-r, r]^{d-1}.
class QuotientBasis {
 public:
  static QuotientBasis build(int dim, int radius, int max_degree);

  int dimension() const { return dim_; }
  int radius() const { return radius_; }
  int max_degree() const { return max_degree_; }
  std::size_t size() const { return classes_.size(); }
  // Ordered by (degree, sorted site list).
  const std::vector<Monomial>& classes() const { return classes_; }
  const Monomial& operator[](std::size_t b) const { return classes_[b]; }

  // Position of an anchored monomial, if present.
  std::optional<std::size_t> index_of(const Monomial& anchored) const;
  // Position of the reflected class of each entry.
  std::vector<std::size_t> reflection_permutation() const;
  bool contains(const QuotientBasis& smaller) const;

  LocalFunction<double> representative(std::size_t b, const Density<double>& dens) const {
    return LocalFunction<double>::monomial(dens, classes_[b]);
  }

 private:
  int dim_ = 0;
  int radius_ = 0;
  int max_degree_ = 0;
  std::vector<Monomial> classes_;
  std::map<Monomial, std::size_t> index_;
};

// Reduced coordinates of a G_rho element.
struct FluctuationVector {
  Eigen::VectorXd tvec;   // t(g)
  Eigen::VectorXd qcoef;  // class sums over the basis
  std::map<Monomial, double> overflow;  // class sums outside the basis
};

// Requires in_G_rho(g); throws NotInG otherwise. Degree-one content is carried
// entirely by tvec.
FluctuationVector reduce(const LocalFunction<double>& g, const QuotientBasis& basis);

// M[b, b'] = <g_b, (-L^s) g_b'>_{rho,0} over class representatives. Returned
// as assembled (not symmetrized).
Eigen::MatrixXd dirichlet_matrix(const JumpKernel& k, const QuotientBasis& basis, const Density<double>& dens);
Eigen::SparseMatrix<double> dirichlet_matrix_sparse(const JumpKernel& k, const QuotientBasis& basis,
                                                   const Density<double>& dens);

// Smallest basis holding every class of L g_b for g_b in `basis`: one move
// or one added site can stretch the span by the kernel range and raise the
// degree by one.
struct BasisLevel {
  int radius = 0;
  int max_degree = 0;
  friend bool operator==(const BasisLevel&, const BasisLevel&) = default;
};
BasisLevel enlarged(const BasisLevel& level, const JumpKernel& k);

// The variational inner product with the f-supremum restricted to the span
// of a finite test basis:
//
//   <<u, v>> = t(u) . S^{-1} t(v) / chi + r(u) . M^{-1} r(v)
//
// The first term is the value of sup_alpha (2 alpha.t - chi alpha.S alpha),
// attained at alpha = S^{-1} t / chi. The second is the polarized value of
// sup_f (2 <g,f>_{rho,0} - <f,(-L^s) f>_{rho,0}) over f in the span of the
// basis, with r_b(u) = <u, g_b>_{rho,0} = chi^{|b|} qcoef_b(u).
//
// M is sparse and positive definite on every basis tried; it is factorized
// by sparse LDLT and its extreme eigenvalues are estimated by power and
// inverse-power iteration for the conditioning check.
class FluctuationInner {
 public:
  // Throws SingularDirichlet when M is not positive definite or its
  // eigenvalue ratio falls below svd_cutoff.
  FluctuationInner(const JumpKernel& k, QuotientBasis basis, Density<double> dens, double svd_cutoff = 1e-10);

  int dimension() const { return basis_.dimension(); }
  const QuotientBasis& basis() const { return basis_; }
  const Density<double>& density() const { return density_; }
  double chi() const { return density_.chi(); }
  double svd_cutoff() const { return cutoff_; }
  const Eigen::MatrixXd& S_inverse() const { return s_inv_; }
  const Eigen::SparseMatrix<double>& dirichlet() const { return m_; }
  // max |M - M^T| before symmetrization.
  double dirichlet_asymmetry() const { return asymmetry_; }
  double dirichlet_min_eigenvalue() const { return lambda_min_; }
  double dirichlet_max_eigenvalue() const { return lambda_max_; }

  FluctuationVector reduce(const LocalFunction<double>& g) const { return asep::reduce(g, basis_); }
  Eigen::VectorXd pairing_vector(const FluctuationVector& u) const;
  // M^{-1} applied column-wise.
  Eigen::MatrixXd solve_dirichlet(const Eigen::MatrixXd& rhs) const;

  double operator()(const FluctuationVector& u, const FluctuationVector& v) const;
  double norm_sq(const FluctuationVector& u) const { return (*this)(u, u); }

  // nabla_k xi(0) = xi(0) - xi(e_k), axis k 0-based.
  FluctuationVector gradient(int k) const;
  // <<nabla_k xi(0), u>> = -(S^{-1} t(u))_k, since the gradient has no
  // degree >= 2 content and t(nabla_k) = -chi e_k.
  double gradient_pairing(int k, const FluctuationVector& u) const;

  Eigen::MatrixXd gram(const std::vector<FluctuationVector>& vs) const;

 private:
  QuotientBasis basis_;
  Density<double> density_;
  double cutoff_;
  Eigen::MatrixXd s_inv_;
  Eigen::SparseMatrix<double> m_;
  Eigen::SimplicialLDLT<Eigen::SparseMatrix<double>> ldlt_;
  Eigen::VectorXd chi_pow_;  // chi^{|b|}
  double asymmetry_ = 0.0;
  double lambda_min_ = 0.0;
  double lambda_max_ = 0.0;
};

}  // namespace asep
