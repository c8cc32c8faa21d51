#include "asep/generator.hpp"
#include "asep/fluctuation.hpp"
#include "asep/oracle.hpp"
#include "asep/sampling.hpp"

#include "doctest.h"

#include <span>

using namespace asep;

namespace {

using Q = LocalFunction<Rational>;

Q xi(const Density<Rational>& d, const Site& x) { return Q::occupation(d, x); }
Q one(const Density<Rational>& d) { return Q::constant(d, Rational(1)); }

// Pointwise comparison of the symbolic result against the literal generator
// on every configuration of the generator box.
bool matches_oracle(const JumpKernel& k, GeneratorKind kind, const Q& f) {
  const auto lf = apply_generator(k, kind, f);
  const auto box = oracle::generator_box(k, f);
  for (unsigned long long bits = 0; bits < (1ULL << box.size()); ++bits) {
    const auto c = Configuration::from_bits(box, bits);
    if (evaluate(lf, c) != oracle::generator_pointwise(k, kind, f, c)) return false;
  }
  return true;
}

}  // namespace

TEST_SUITE("generator") {
  TEST_CASE("kinds") {
    for (auto kind : {GeneratorKind::Forward, GeneratorKind::Adjoint, GeneratorKind::Symmetric})
      CHECK(adjoint_of(adjoint_of(kind)) == kind);
    CHECK(adjoint_of(GeneratorKind::Forward) == GeneratorKind::Adjoint);
  }

  TEST_CASE("symmetric exclusion on xi(0)") {
    const Density<Rational> dens(Rational(1, 3));
    const auto k = kernels::ssep_1d();
    const auto got = apply_generator(k, GeneratorKind::Symmetric, xi(dens, Site{0}));
    const Rational h(1, 2);
    const auto expected = h * (xi(dens, Site{1}) - xi(dens, Site{0})) + h * (xi(dens, Site{-1}) - xi(dens, Site{0}));
    CHECK(got == expected);
    CHECK(matches_oracle(k, GeneratorKind::Symmetric, xi(dens, Site{0})));
    CHECK(apply_generator(k, GeneratorKind::Forward, xi(dens, Site{0})) == expected);
  }

  TEST_CASE("constants are annihilated") {
    const Density<Rational> dens(Rational(1, 2));
    for (const auto& k : {kernels::tasep_1d(), kernels::asymmetric_2d()})
      for (auto kind : {GeneratorKind::Forward, GeneratorKind::Adjoint, GeneratorKind::Symmetric})
        CHECK(apply_generator(k, kind, Q::constant(dens, Rational(5))).is_zero());
  }

  TEST_CASE("totally asymmetric exclusion on xi(0)") {
    const Density<Rational> dens(Rational(2, 5));
    const auto k = kernels::tasep_1d();
    const auto x0 = xi(dens, Site{0});
    const auto expected = multiply(xi(dens, Site{-1}), one(dens) - x0) - multiply(x0, one(dens) - xi(dens, Site{1}));
    CHECK(apply_generator(k, GeneratorKind::Forward, x0) == expected);
    CHECK(matches_oracle(k, GeneratorKind::Forward, x0));
    CHECK(matches_oracle(k, GeneratorKind::Adjoint, x0));
  }

  TEST_CASE("symmetric part preserves degree") {
    const Density<double> dens(0.3);
    for (const auto& k : {kernels::tasep_1d(), kernels::asymmetric_2d()}) {
      const int d = k.dimension();
      const auto basis = QuotientBasis::build(d, 3, d == 1 ? 4 : 3);
      for (const auto& m : basis.classes()) {
        const auto out = apply_generator(k, GeneratorKind::Symmetric, LocalFunction<double>::monomial(dens, m));
        for (const auto& [mm, c] : out.terms()) CHECK(mm.degree() == m.degree());
      }
    }
    // and the symbolic rule is the literal generator on these monomials
    const Density<Rational> rd(Rational(3, 10));
    const auto k = kernels::tasep_1d();
    const auto basis = QuotientBasis::build(1, 3, 4);
    for (const auto& m : basis.classes())
      CHECK(matches_oracle(k, GeneratorKind::Symmetric, Q::monomial(rd, m)));
  }

  TEST_CASE("generator output lies in G_rho") {
    const Density<Rational> dens(Rational(1, 5));
    sampling::Rng rng(21);
    for (int i = 0; i < 40; ++i) {
      const auto k = sampling::random_kernel(rng, 1 + i % 2, 2);
      const auto f = sampling::random_local(rng, dens, k.dimension(), 1, 3, 3);
      for (auto kind : {GeneratorKind::Forward, GeneratorKind::Adjoint, GeneratorKind::Symmetric})
        CHECK(in_G_rho(apply_generator(k, kind, f)));
    }
  }

  TEST_CASE("currents of the totally asymmetric process") {
    const Density<Rational> dens(Rational(3, 10));
    const auto k = kernels::tasep_1d();
    const auto c = make_currents(k, dens, 0);
    const Rational h(1, 2);
    const auto x0 = xi(dens, Site{0});
    const auto W = h * (multiply(x0, one(dens) - xi(dens, Site{1})) + multiply(xi(dens, Site{-1}), one(dens) - x0));
    CHECK(c.W == W);
    for (int i = 1; i < 10; ++i) {
      const Rational theta(i, 10);
      CHECK(oracle::exact_expectation(c.W, theta) == theta * (1 - theta));
    }
    // h = 1/2 eta_{0,1} + 1/2 eta_{0,-1}
    Q hh(dens);
    hh.add_term(Monomial{Site{0}, Site{1}}, h);
    hh.add_term(Monomial{Site{0}, Site{-1}}, h);
    CHECK(c.h == hh);
    // w = W - chi - (1 - 2 rho) eta_0
    auto w = W;
    w.add_term(Monomial{}, -dens.chi());
    w.add_term(Monomial{Site{0}}, -(1 - 2 * dens.rho()));
    CHECK(c.w == w);
    for (const auto* g : {&c.W_sym, &c.h, &c.w, &c.w_star}) CHECK(in_G_rho(*g));
  }

  TEST_CASE("currents of symmetric kernels") {
    const Density<Rational> dens(Rational(1, 4));
    for (const auto& k : {kernels::ssep_1d(), kernels::ssep_2d()})
      for (int i = 0; i < k.dimension(); ++i) {
        const auto c = make_currents(k, dens, i);
        CHECK(c.h.is_zero());
        CHECK(c.w == c.W_sym);
        CHECK(c.w_star == c.W_sym);
      }
  }

  TEST_CASE("reflection of currents") {
    const Density<Rational> dens(Rational(1, 5));
    for (const auto& k : {kernels::tasep_1d(), kernels::asymmetric_2d()})
      for (int i = 0; i < k.dimension(); ++i) {
        const auto c = make_currents(k, dens, i);
        CHECK(reflect(c.W_sym) == -c.W_sym);
        CHECK(reflect(c.h) == c.h);
        // R w + w* is a degree-one remainder that vanishes in H(rho)
        const auto rem = reflect(c.w) + c.w_star;
        for (const auto& [m, coef] : rem.terms()) CHECK(m.degree() == 1);
        CHECK(rem.linear_sum() == 0);
        for (const auto& t : t_vec(rem, k.dimension())) CHECK(t == 0);
      }
    // at rho = 1/2 the remainder is absent and R w = -w* literally
    const Density<Rational> half(Rational(1, 2));
    const auto c = make_currents(kernels::tasep_1d(), half, 0);
    CHECK(reflect(c.w) == -c.w_star);
  }

  TEST_CASE("RL = L*R") {
    const Density<Rational> dens(Rational(2, 5));
    const auto x0 = std::vector<Q>{Q::monomial(dens, Monomial{Site{0}})};
    CHECK(check_commutation<Rational>(kernels::tasep_1d(), x0) == 0);

    sampling::Rng rng(31);
    std::vector<Q> fs;
    for (int i = 0; i < 50; ++i) {
      auto f = sampling::random_local(rng, dens, 2, 2, 3, 1);
      fs.push_back(Q::monomial(dens, f.terms().begin()->first));
    }
    CHECK(check_commutation<Rational>(kernels::asymmetric_2d(), fs) == 0);
    CHECK(check_commutation<Rational>(kernels::ssep_2d(), fs) == 0);

    // floating point within 1e-12
    const Density<double> dd(0.4);
    std::vector<LocalFunction<double>> fd;
    for (const auto& f : fs) fd.push_back(LocalFunction<double>::monomial(dd, f.terms().begin()->first));
    CHECK(check_commutation<double>(kernels::asymmetric_2d(), fd) <= 1e-12);
    // for a symmetric kernel L = L* and reflection commutes with L
    for (const auto& f : fs)
      CHECK(apply_generator(kernels::ssep_2d(), GeneratorKind::Forward, f) ==
            apply_generator(kernels::ssep_2d(), GeneratorKind::Adjoint, f));
  }
}
