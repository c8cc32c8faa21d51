#include "asep/identities.hpp"

#include "asep/generator.hpp"
#include "asep/oracle.hpp"
#include "asep/sampling.hpp"

#include <cmath>
#include <sstream>

namespace asep {

namespace {

template <class S>
LocalFunction<S> convert(const LocalFunction<Rational>& f, const Density<S>& dens) {
  if constexpr (is_exact_v<S>) {
    return f;
  } else {
    LocalFunction<double> g(dens);
    for (const auto& [m, c] : f.terms()) g.add_term(m, to_double(c));
    return g;
  }
}

template <class S>
double max_coef(const LocalFunction<S>& f) {
  double out = 0.0;
  for (const auto& [m, c] : f.terms()) out = std::max(out, std::abs(to_double(c)));
  return out;
}

template <class S>
double max_abs(const std::vector<S>& v) {
  double out = 0.0;
  for (const auto& x : v) out = std::max(out, std::abs(to_double(x)));
  return out;
}

template <class S>
double max_quotient(const LocalFunction<S>& f) {
  double out = 0.0;
  for (const auto& [cls, c] : quotient_content(f)) out = std::max(out, std::abs(to_double(c)));
  return out;
}

std::string fmt(double x) {
  std::ostringstream out;
  out.precision(3);
  out << x;
  return out.str();
}

// Inputs shared by all items at one (kernel, rho, level).
struct Setup {
  const JumpKernel& k;
  double rho;
  BasisLevel level;
  const IdentityOptions& opt;
  int dim() const { return k.dimension(); }
  int sample_radius() const { return dim() == 1 ? 2 : 1; }
};

IdentityCheck finish(std::string name, double defect, double tol, bool exact, std::string detail) {
  IdentityCheck c{std::move(name), defect, exact ? 0.0 : tol, exact, false, std::move(detail)};
  c.pass = std::isfinite(defect) && (exact ? defect == 0.0 : defect <= tol);
  return c;
}

// Items that are pure algebra over the eta basis.
template <class S>
void exact_items(const Setup& s, const Density<S>& dens, std::vector<IdentityCheck>& out) {
  const bool exact = is_exact_v<S>;
  const double tol = s.opt.tol_exact;
  const int d = s.dim();
  const auto rdens = Density<Rational>(rational_from_double(s.rho));
  sampling::Rng rng(s.opt.seed);
  const S rho = dens.rho();
  const S chi = dens.chi();

  // sum_x <g xi(x)>_rho over a box containing supp(g), by enumeration.
  auto box_sum = [&](const LocalFunction<S>& g, const std::vector<Site>& box) {
    S total(0);
    for (const auto& x : box)
      total += oracle::enumerate(box, rho, [&](const Configuration& c) { return evaluate(g, c) * S(c.at(x)); });
    return total;
  };

  {
    // Stated scope: mean-zero g, where rho <g> + chi d<g>/dtheta = chi d<g>/dtheta,
    // and g in G_rho, where both sides vanish.
    double worst = 0.0;
    for (int i = 0; i < s.opt.samples; ++i) {
      const bool in_g = i % 2 == 0;
      const auto gr = in_g ? sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4)
                           : sampling::random_local(rng, rdens, d, s.sample_radius(), 3, 4);
      const auto g = convert<S>(gr, dens);
      const auto curve = expectation_curve(g, rho);
      const S lhs = box_sum(g, g.support());
      worst = std::max(worst, std::abs(to_double(S(lhs - rho * curve.value - chi * curve.derivative))));
      if (in_g) worst = std::max(worst, std::abs(to_double(lhs)));
    }
    out.push_back(finish("degree_one_sum_centered", worst, tol, exact,
                         "sum_x <g xi(x)> = rho<g> + chi d<g>/dtheta on mean-zero g, = 0 on G_rho"));
  }
  {
    // Arbitrary g (with constant term) over a box B strictly larger than the
    // support: sum_{x in B} <g xi(x)> = |B| rho <g> + chi d<g>/dtheta.
    double worst = 0.0, as_stated = 0.0;
    for (int i = 0; i < s.opt.samples; ++i) {
      const auto g = convert<S>(sampling::random_local(rng, rdens, d, s.sample_radius(), 2, 3, true), dens);
      auto box = g.support();
      Site extra = Site{};
      for (const auto& x : box) extra = std::max(extra, x);
      box.push_back(extra + Site::unit(0));
      std::sort(box.begin(), box.end());
      const auto curve = expectation_curve(g, rho);
      const S lhs = box_sum(g, box);
      const S n(static_cast<int>(box.size()));
      worst = std::max(worst, std::abs(to_double(S(lhs - n * rho * curve.value - chi * curve.derivative))));
      as_stated = std::max(as_stated, std::abs(to_double(S(lhs - rho * curve.value - chi * curve.derivative))));
    }
    out.push_back(finish("degree_one_sum_general_box", worst, tol, exact,
                         "|B| rho <g> + chi d<g>/dtheta; the form without |B| misses by up to " + fmt(as_stated)));
  }
  {
    double worst = 0.0;
    const auto shifts = sampling::box_sites(d, 2);
    for (int i = 0; i < s.opt.samples; ++i) {
      const auto g = convert<S>(sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4), dens);
      const auto& h = shifts[static_cast<std::size_t>(i) % shifts.size()];
      const auto diff = translate(g, h) - g;
      worst = std::max({worst, max_abs(t_vec(diff, d)), max_quotient(diff)});
    }
    out.push_back(finish("translation_invariance", worst, tol, exact, "t(tau_h g - g) = 0 and quotient content 0"));
  }
  std::vector<Currents<S>> currents;
  for (int i = 0; i < d; ++i) currents.push_back(make_currents(s.k, dens, i));
  {
    double worst = 0.0;
    for (int i = 0; i < s.opt.samples; ++i) {
      const auto g = convert<S>(sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4), dens);
      const auto tl = t_vec(apply_generator(s.k, GeneratorKind::Forward, g), d);
      const auto ts = t_vec(apply_generator(s.k, GeneratorKind::Adjoint, g), d);
      for (int l = 0; l < d; ++l) {
        const S p = pair_rho0(currents[static_cast<std::size_t>(l)].w, g);
        worst = std::max(worst, std::abs(to_double(S(tl[static_cast<std::size_t>(l)] + p))));
        worst = std::max(worst, std::abs(to_double(S(ts[static_cast<std::size_t>(l)] - p))));
      }
    }
    out.push_back(finish("current_pairing_derived", worst, tol, exact, "t_l(L g) = -<w_l, g> and t_l(L* g) = <w_l, g>"));
  }
  {
    std::vector<LocalFunction<S>> tests;
    const auto basis = QuotientBasis::build(d, s.level.radius, s.level.max_degree);
    for (const auto& m : basis.classes()) tests.push_back(LocalFunction<S>::monomial(dens, m));
    for (int i = 0; i < s.opt.samples; ++i)
      tests.push_back(convert<S>(sampling::random_local(rng, rdens, d, s.sample_radius(), 3, 4, true), dens));
    const double defect = to_double(check_commutation<S>(s.k, tests));
    out.push_back(finish("commutation_RL_LstarR", defect, tol, exact,
                         std::to_string(tests.size()) + " functions (basis representatives and random)"));
  }
  {
    double coef = 0.0, in_h = 0.0, raw = 0.0;
    for (const auto& c : currents) {
      coef = std::max({coef, max_coef(reflect(c.W_sym) + c.W_sym), max_coef(reflect(c.h) - c.h)});
      const auto sum = reflect(c.w) + c.w_star;
      in_h = std::max({in_h, max_abs(t_vec(sum, d)), max_quotient(sum)});
      raw = std::max(raw, max_coef(sum));
    }
    out.push_back(finish("current_reflection", std::max(coef, in_h), tol, exact,
                         "R W^s = -W^s, R h = h coefficientwise; R w + w* has t = 0 and quotient 0 "
                         "(coefficientwise it is a degree-one remainder of size " + fmt(raw) + ")"));
  }
  {
    double worst = 0.0;
    for (const auto& c : currents) {
      const auto delta = c.w - c.W_sym + c.h;
      worst = std::max({worst, max_abs(t_vec(delta, d)), max_quotient(delta), std::abs(to_double(delta.linear_sum()))});
      for (int i = 0; i < s.opt.samples; ++i) {
        const auto f = convert<S>(sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4), dens);
        worst = std::max(worst, std::abs(to_double(pair_rho0(delta, f))));
      }
    }
    out.push_back(finish("current_identity_mod_translations", worst, tol, exact,
                         "delta = w - W^s + h: t(delta) = 0, <delta, f> = 0"));
  }
}

// Items that go through the Dirichlet solve.
void solver_items(const Setup& s, std::vector<IdentityCheck>& out) {
  const int d = s.dim();
  const Density<double> dens(s.rho);
  const auto rdens = Density<Rational>(rational_from_double(s.rho));
  const double tol = s.opt.tol_exact;
  const auto test_level = enlarged(s.level, s.k);
  const FluctuationInner inner(s.k, QuotientBasis::build(d, test_level.radius, test_level.max_degree), dens,
                               s.opt.tol_svd);
  const auto basis = QuotientBasis::build(d, s.level.radius, s.level.max_degree);
  const double chi = dens.chi();
  sampling::Rng rng(s.opt.seed + 1);

  {
    double worst = 0.0;
    for (int k = 0; k < d; ++k)
      for (int l = 0; l < d; ++l)
        worst = std::max(worst, std::abs(inner(inner.gradient(k), inner.gradient(l)) - chi * inner.S_inverse()(k, l)));
    out.push_back(finish("gradient_gram", worst, tol, false, "<<grad_k, grad_l>> = chi (S^-1)_kl"));
  }
  {
    std::vector<Currents<double>> cur;
    for (int i = 0; i < d; ++i) cur.push_back(make_currents(s.k, dens, i));
    double worst = 0.0;
    for (int i = 0; i < s.opt.samples; ++i) {
      const auto gr = sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4);
      const auto g = convert<double>(gr, dens);
      Eigen::VectorXd pw(d);
      for (int l = 0; l < d; ++l) pw(l) = pair_rho0(cur[static_cast<std::size_t>(l)].w, g);
      const Eigen::VectorXd expected = inner.S_inverse() * pw;
      const auto lg = inner.reduce(apply_generator(s.k, GeneratorKind::Forward, g));
      const auto ls = inner.reduce(apply_generator(s.k, GeneratorKind::Adjoint, g));
      for (int k = 0; k < d; ++k) {
        worst = std::max(worst, std::abs(inner(inner.gradient(k), lg) - expected(k)));
        worst = std::max(worst, std::abs(-inner(inner.gradient(k), ls) - expected(k)));
      }
    }
    out.push_back(finish("current_gradient_pairing", worst, tol, false,
                         "<<grad_k, L g>> = -<<grad_k, L* g>> = sum_l (S^-1)_kl <w_l, g>"));
  }
  std::vector<FluctuationVector> ls_basis, g_basis;
  for (std::size_t b = 0; b < basis.size(); ++b) {
    const auto g = basis.representative(b, dens);
    ls_basis.push_back(inner.reduce(apply_generator(s.k, GeneratorKind::Symmetric, g)));
    g_basis.push_back(inner.reduce(g));
  }
  {
    double worst = 0.0;
    for (const auto& u : ls_basis)
      for (int k = 0; k < d; ++k) worst = std::max(worst, std::abs(inner.gradient_pairing(k, u)));
    out.push_back(finish("dirichlet_supremum", worst, 1e-10, false,
                         "<<grad_k, L^s g_b>> = 0 over " + std::to_string(basis.size()) + " classes"));
  }
  {
    std::size_t overflow = 0;
    for (const auto& u : ls_basis) overflow += u.overflow.size();
    std::vector<FluctuationVector> all = ls_basis;
    all.insert(all.end(), g_basis.begin(), g_basis.end());
    const Eigen::MatrixXd gram = inner.gram(all);
    const auto n = static_cast<Eigen::Index>(basis.size());
    double worst = 0.0;
    for (Eigen::Index b = 0; b < n; ++b)
      for (Eigen::Index c = 0; c < n; ++c) {
        const double expected = b == c ? -std::pow(chi, basis[static_cast<std::size_t>(b)].degree()) : 0.0;
        worst = std::max(worst, std::abs(gram(b, n + c) - expected));
      }
    if (overflow) worst = std::numeric_limits<double>::infinity();
    out.push_back(finish("star_supremum", worst, 1e-9, false,
                         "<<L^s g_b, g_c>> = -<g_b, g_c> over " + std::to_string(basis.size() * basis.size()) +
                             " pairs, test basis (" + std::to_string(test_level.radius) + "," +
                             std::to_string(test_level.max_degree) + ")"));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < s.opt.samples; ++i) {
      const auto u = convert<double>(sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4), dens);
      const auto v = convert<double>(sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4), dens);
      const double uv = inner(inner.reduce(u), inner.reduce(v));
      const double ruv = inner(inner.reduce(reflect(u)), inner.reduce(reflect(v)));
      worst = std::max(worst, std::abs(ruv - uv) / std::max(1.0, std::abs(uv)));
    }
    for (int k = 0; k < d; ++k) {
      LocalFunction<double> grad(dens);
      grad.add_term(Monomial{Site{}}, 1.0);
      grad.add_term(Monomial{Site::unit(k)}, -1.0);
      worst = std::max(worst, std::sqrt(std::max(0.0, inner.norm_sq(inner.reduce(reflect(grad) + grad)))));
    }
    out.push_back(finish("reflection_isometry", worst, tol, false,
                         "<<Ru, Rv>> = <<u, v>> (relative) and ||R grad_k + grad_k|| = 0"));
  }
  {
    double worst = 0.0;
    for (int i = 0; i < s.opt.samples; ++i) {
      const auto u = inner.reduce(convert<double>(sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4), dens));
      const auto v = inner.reduce(convert<double>(sampling::random_G(rng, rdens, d, s.sample_radius(), 3, 4), dens));
      const double uv = inner(u, v), uu = inner.norm_sq(u), vv = inner.norm_sq(v);
      worst = std::max({worst, uv * uv - uu * vv, -uu, -vv});
    }
    out.push_back(finish("cauchy_schwarz", std::max(worst, 0.0), tol, false,
                         "<<u,v>>^2 <= <<u,u>><<v,v>> and norms >= 0"));
  }
  {
    const double defect = std::max(inner.dirichlet_asymmetry(), std::max(0.0, -inner.dirichlet_min_eigenvalue()));
    out.push_back(finish("dirichlet_symmetric_psd", defect, tol, false,
                         "max |M - M^T| and negative part of min eigenvalue; min eigenvalue " +
                             fmt(inner.dirichlet_min_eigenvalue())));
  }
}

}  // namespace

std::vector<IdentityCheck> run_identity_suite(const JumpKernel& k, double rho, const BasisLevel& level,
                                              const IdentityOptions& options) {
  const Setup s{k, rho, level, options};
  std::vector<IdentityCheck> out;
  if (options.rational)
    exact_items(s, Density<Rational>(rational_from_double(rho)), out);
  else
    exact_items(s, Density<double>(rho), out);
  solver_items(s, out);
  return out;
}

}  // namespace asep
