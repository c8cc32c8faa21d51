#include "asep/fluctuation.hpp"

#include <cmath>
#include <functional>

namespace asep {

namespace {

// Sites strictly after the origin in lexicographic order, inside the anchored
// box [0, r] x [-r, r]^{d-1}.
std::vector<Site> positive_sites(int dim, int radius) {
  std::vector<Site> out;
  Site s;
  std::function<void(int)> rec = [&](int axis) {
    if (axis == dim) {
      if (Site{} < s) out.push_back(s);
      return;
    }
    const int lo = axis == 0 ? 0 : -radius;
    for (int v = lo; v <= radius; ++v) {
      s[axis] = v;
      rec(axis + 1);
    }
    s[axis] = 0;
  };
  rec(0);
  std::sort(out.begin(), out.end());
  return out;
}

bool span_within(const std::vector<Site>& sites, int dim, int radius) {
  for (int i = 0; i < dim; ++i) {
    int lo = sites[0][i], hi = sites[0][i];
    for (const auto& s : sites) {
      lo = std::min(lo, s[i]);
      hi = std::max(hi, s[i]);
    }
    if (hi - lo > radius) return false;
  }
  return true;
}

}  // namespace

QuotientBasis QuotientBasis::build(int dim, int radius, int max_degree) {
  if (dim < 1 || dim > kMaxDim) throw Error(ErrorCode::DimensionMismatch, "basis dimension out of range");
  if (radius < 1 || max_degree < 2) throw std::invalid_argument("QuotientBasis: need radius >= 1 and max_degree >= 2");
  QuotientBasis qb;
  qb.dim_ = dim;
  qb.radius_ = radius;
  qb.max_degree_ = max_degree;
  const auto candidates = positive_sites(dim, radius);
  std::vector<Site> chosen{Site{}};
  // Subsets of the candidates in lexicographic order of their sorted lists.
  std::function<void(std::size_t, int)> rec = [&](std::size_t start, int remaining) {
    if (remaining == 0) {
      if (span_within(chosen, dim, radius)) qb.classes_.emplace_back(chosen);
      return;
    }
    for (std::size_t i = start; i < candidates.size(); ++i) {
      chosen.push_back(candidates[i]);
      if (span_within(chosen, dim, radius)) rec(i + 1, remaining - 1);
      chosen.pop_back();
    }
  };
  for (int deg = 2; deg <= max_degree; ++deg) rec(0, deg - 1);
  for (std::size_t b = 0; b < qb.classes_.size(); ++b) qb.index_.emplace(qb.classes_[b], b);
  return qb;
}

std::optional<std::size_t> QuotientBasis::index_of(const Monomial& anchored) const {
  auto it = index_.find(anchored);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

std::vector<std::size_t> QuotientBasis::reflection_permutation() const {
  std::vector<std::size_t> perm(classes_.size());
  for (std::size_t b = 0; b < classes_.size(); ++b) {
    auto idx = index_of(classes_[b].reflected().anchored());
    if (!idx) throw std::logic_error("QuotientBasis is not reflection-closed");
    perm[b] = *idx;
  }
  return perm;
}

bool QuotientBasis::contains(const QuotientBasis& smaller) const {
  if (smaller.dim_ != dim_) return false;
  return std::all_of(smaller.classes_.begin(), smaller.classes_.end(),
                     [&](const Monomial& m) { return index_.count(m) > 0; });
}

FluctuationVector reduce(const LocalFunction<double>& g, const QuotientBasis& basis) {
  if (!in_G_rho(g)) throw Error(ErrorCode::NotInG, "reduce needs an element of G_rho");
  const int d = basis.dimension();
  FluctuationVector u;
  u.tvec = Eigen::VectorXd::Zero(d);
  const auto t = t_vec(g, d);
  for (int i = 0; i < d; ++i) u.tvec(i) = t[static_cast<std::size_t>(i)];
  u.qcoef = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis.size()));
  for (const auto& [cls, c] : quotient_content(g)) {
    if (auto idx = basis.index_of(cls))
      u.qcoef(static_cast<Eigen::Index>(*idx)) = c;
    else
      u.overflow.emplace(cls, c);
  }
  return u;
}

Eigen::SparseMatrix<double> dirichlet_matrix_sparse(const JumpKernel& k, const QuotientBasis& basis,
                                                   const Density<double>& dens) {
  const auto n = static_cast<Eigen::Index>(basis.size());
  std::vector<Eigen::Triplet<double>> entries;
  for (Eigen::Index col = 0; col < n; ++col) {
    const auto g = basis.representative(static_cast<std::size_t>(col), dens);
    // L^s preserves degree, so only degree >= 2 classes appear here.
    const auto content = quotient_content(apply_generator(k, GeneratorKind::Symmetric, g));
    for (const auto& [cls, c] : content)
      if (auto row = basis.index_of(cls))
        entries.emplace_back(static_cast<Eigen::Index>(*row), col, -std::pow(dens.chi(), cls.degree()) * c);
  }
  Eigen::SparseMatrix<double> m(n, n);
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

Eigen::MatrixXd dirichlet_matrix(const JumpKernel& k, const QuotientBasis& basis, const Density<double>& dens) {
  return Eigen::MatrixXd(dirichlet_matrix_sparse(k, basis, dens));
}

BasisLevel enlarged(const BasisLevel& level, const JumpKernel& k) {
  return {level.radius + k.range(), level.max_degree + 1};
}

namespace {

// Dominant eigenvalue of a symmetric positive operator by power iteration.
template <class Apply>
double power_iteration(Eigen::Index n, Apply&& apply) {
  Eigen::VectorXd v = Eigen::VectorXd::Ones(n).normalized();
  double lambda = 0.0;
  for (int it = 0; it < 500; ++it) {
    Eigen::VectorXd w = apply(v);
    const double next = v.dot(w);
    const double nw = w.norm();
    if (nw == 0.0) return 0.0;
    v = w / nw;
    if (std::abs(next - lambda) <= 1e-13 * std::abs(next)) return next;
    lambda = next;
  }
  return lambda;
}

}  // namespace

FluctuationInner::FluctuationInner(const JumpKernel& k, QuotientBasis basis, Density<double> dens, double svd_cutoff)
    : basis_(std::move(basis)), density_(dens), cutoff_(svd_cutoff) {
  if (basis_.dimension() != k.dimension())
    throw Error(ErrorCode::DimensionMismatch, "basis and kernel dimensions differ");
  s_inv_ = k.S().inverse();
  const auto assembled = dirichlet_matrix_sparse(k, basis_, density_);
  const Eigen::SparseMatrix<double> transposed = assembled.transpose();
  asymmetry_ = 0.0;
  {
    const Eigen::SparseMatrix<double> diff = assembled - transposed;
    for (Eigen::Index c = 0; c < diff.outerSize(); ++c)
      for (Eigen::SparseMatrix<double>::InnerIterator it(diff, c); it; ++it)
        asymmetry_ = std::max(asymmetry_, std::abs(it.value()));
  }
  m_ = 0.5 * (assembled + transposed);
  const auto n = m_.rows();
  chi_pow_.resize(n);
  for (std::size_t b = 0; b < basis_.size(); ++b)
    chi_pow_(static_cast<Eigen::Index>(b)) = std::pow(density_.chi(), basis_[b].degree());
  if (n == 0) return;

  ldlt_.compute(m_);
  if (ldlt_.info() != Eigen::Success || ldlt_.vectorD().minCoeff() <= 0.0)
    throw Error(ErrorCode::SingularDirichlet, "Dirichlet matrix is not positive definite; shrink the basis");
  lambda_max_ = power_iteration(n, [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(m_ * v); });
  const double inv_max = power_iteration(n, [&](const Eigen::VectorXd& v) { return Eigen::VectorXd(ldlt_.solve(v)); });
  lambda_min_ = inv_max > 0 ? 1.0 / inv_max : 0.0;
  if (lambda_min_ <= cutoff_ * lambda_max_)
    throw Error(ErrorCode::SingularDirichlet, "Dirichlet matrix eigenvalue ratio " +
                                                  std::to_string(lambda_min_ / lambda_max_) + " below cutoff");
}

Eigen::VectorXd FluctuationInner::pairing_vector(const FluctuationVector& u) const {
  return chi_pow_.cwiseProduct(u.qcoef);
}

Eigen::MatrixXd FluctuationInner::solve_dirichlet(const Eigen::MatrixXd& rhs) const {
  if (rhs.rows() == 0) return rhs;
  return ldlt_.solve(rhs);
}

double FluctuationInner::operator()(const FluctuationVector& u, const FluctuationVector& v) const {
  const double slow = u.tvec.dot(s_inv_ * v.tvec) / chi();
  const Eigen::VectorXd rv = pairing_vector(v);
  const double fast = rv.size() ? pairing_vector(u).dot(Eigen::VectorXd(ldlt_.solve(rv))) : 0.0;
  return slow + fast;
}

FluctuationVector FluctuationInner::gradient(int k) const {
  FluctuationVector u;
  u.tvec = Eigen::VectorXd::Zero(dimension());
  u.tvec(k) = -chi();
  u.qcoef = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(basis_.size()));
  return u;
}

double FluctuationInner::gradient_pairing(int k, const FluctuationVector& u) const {
  return -(s_inv_.row(k).dot(u.tvec));
}

Eigen::MatrixXd FluctuationInner::gram(const std::vector<FluctuationVector>& vs) const {
  const auto n = static_cast<Eigen::Index>(vs.size());
  Eigen::MatrixXd t(dimension(), n), r(static_cast<Eigen::Index>(basis_.size()), n);
  for (Eigen::Index i = 0; i < n; ++i) {
    t.col(i) = vs[static_cast<std::size_t>(i)].tvec;
    r.col(i) = pairing_vector(vs[static_cast<std::size_t>(i)]);
  }
  Eigen::MatrixXd g = t.transpose() * s_inv_ * t / chi() + r.transpose() * solve_dirichlet(r);
  return 0.5 * (g + g.transpose());
}

}  // namespace asep
