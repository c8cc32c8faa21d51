#include "asep/localfn.hpp"
#include "asep/oracle.hpp"
#include "asep/sampling.hpp"

#include "doctest.h"

using namespace asep;

namespace {

using F = LocalFunction<double>;
using Q = LocalFunction<Rational>;

Configuration config(std::vector<Site> box, std::vector<int> occ) { return Configuration(std::move(box), std::move(occ)); }

}  // namespace

TEST_SUITE("localfn") {
  TEST_CASE("density") {
    CHECK_THROWS_AS(Density<double>(0.0), Error);
    CHECK_THROWS_AS(Density<double>(1.0), Error);
    CHECK_THROWS_AS(Density<double>(-0.1), Error);
    try {
      Density<double> bad(1.5);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::InvalidDensity);
    }
    CHECK(Density<double>(0.5).chi() == 0.25);
    CHECK(Density<Rational>(Rational(1, 5)).chi() == Rational(4, 25));
  }

  TEST_CASE("evaluate") {
    const Density<double> half(0.5);
    const auto c = config({Site{0}, Site{1}}, {1, 0});
    CHECK(evaluate(F::monomial(half, Monomial{Site{0}, Site{1}}), c) == -0.25);
    CHECK(evaluate(F::constant(half, 1.0), c) == 1.0);
    CHECK(evaluate(F::occupation(half, Site{0}), c) == 1.0);
    CHECK_THROWS_AS(evaluate(F::monomial(half, Monomial{Site{5}}), c), Error);
    try {
      evaluate(F::monomial(half, Monomial{Site{5}}), c);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::UncoveredSite);
    }
  }

  TEST_CASE("expectation curve") {
    const Density<Rational> dens(Rational(1, 3));
    const auto f = Q::monomial(dens, Monomial{Site{0}, Site{3}});
    for (int i = 1; i < 10; ++i) {
      const Rational theta(i, 10);
      const auto curve = expectation_curve(f, theta);
      CHECK(curve.value == (theta - dens.rho()) * (theta - dens.rho()));
      CHECK(curve.value == oracle::exact_expectation(f, theta));
    }
    CHECK(expectation_curve(f, dens.rho()).derivative == 0);

    const auto eta0 = Q::monomial(dens, Monomial{Site{0}});
    CHECK(expectation_curve(eta0, dens.rho()).value == 0);
    CHECK(expectation_curve(eta0, dens.rho()).derivative == 1);
    CHECK(expectation_curve(Q::occupation(dens, Site{0}), Rational(3, 7)).value == Rational(3, 7));
  }

  TEST_CASE("expectation curve against enumeration on random functions") {
    sampling::Rng rng(11);
    const Density<Rational> rdens(Rational(3, 10));
    const Density<double> dens(0.3);
    for (int i = 0; i < 200; ++i) {
      const auto fr = sampling::random_local(rng, rdens, 1 + i % 2, 1, 3, 4, true);
      F f(dens);
      for (const auto& [m, c] : fr.terms()) f.add_term(m, to_double(c));
      for (int j = 1; j <= 9; ++j) {
        const double theta = j / 10.0;
        CHECK(std::abs(expectation_curve(f, theta).value - oracle::exact_expectation(f, theta)) <= 1e-12);
      }
      // exact mode agrees literally
      CHECK(expectation_curve(fr, Rational(7, 10)).value == oracle::exact_expectation(fr, Rational(7, 10)));
    }
  }

  TEST_CASE("basis orthogonality") {
    const Density<Rational> dens(Rational(2, 7));
    const std::vector<Monomial> ms{Monomial{}, Monomial{Site{0}}, Monomial{Site{1}}, Monomial{Site{0}, Site{1}},
                                   Monomial{Site{0}, Site{2}}, Monomial{Site{0}, Site{1}, Site{2}}};
    const std::vector<Site> box{Site{0}, Site{1}, Site{2}};
    for (const auto& a : ms)
      for (const auto& b : ms) {
        const auto fa = Q::monomial(dens, a);
        const auto fb = Q::monomial(dens, b);
        const Rational got = oracle::enumerate(box, dens.rho(), [&](const Configuration& c) {
          return evaluate(fa, c) * evaluate(fb, c);
        });
        CHECK(got == (a == b ? power(dens.chi(), a.degree()) : Rational(0)));
      }
  }

  TEST_CASE("G_rho membership") {
    const Density<double> dens(0.4);
    CHECK(in_G_rho(F::monomial(dens, Monomial{Site{0}, Site{1}})));
    CHECK_FALSE(in_G_rho(F::monomial(dens, Monomial{Site{0}})));
    CHECK(in_G_rho(F::monomial(dens, Monomial{Site{0}}) - F::monomial(dens, Monomial{Site{5}})));
    CHECK_FALSE(in_G_rho(F::constant(dens, 1.0)));
    // membership agrees with the two moment conditions
    const Density<Rational> rd(Rational(2, 5));
    sampling::Rng rng(3);
    for (int i = 0; i < 50; ++i) {
      const auto f = sampling::random_local(rng, rd, 1, 2, 2, 3, i % 3 == 0);
      const auto curve = expectation_curve(f, rd.rho());
      CHECK(in_G_rho(f) == (curve.value == 0 && curve.derivative == 0));
    }
  }

  TEST_CASE("projection onto G_rho") {
    const Density<Rational> dens(Rational(1, 4));
    const auto seven = Q::constant(dens, Rational(7));
    CHECK(project_to_G(seven).is_zero());
    const auto g = Q::monomial(dens, Monomial{Site{0}, Site{1}});
    CHECK(project_to_G(g) == g);

    sampling::Rng rng(5);
    for (int i = 0; i < 30; ++i) {
      const auto f = sampling::random_local(rng, dens, 1, 2, 3, 4, true);
      const auto p = project_to_G(f);
      CHECK(in_G_rho(p));
      const auto curve = expectation_curve(f, dens.rho());
      // pointwise: p = f - <f> - (xi(0) - rho) d<f>
      auto box = f.support();
      box.push_back(Site{0});
      std::sort(box.begin(), box.end());
      box.erase(std::unique(box.begin(), box.end()), box.end());
      for (unsigned long long bits = 0; bits < (1ULL << box.size()); ++bits) {
        const auto c = Configuration::from_bits(box, bits);
        CHECK(evaluate(p, c) == evaluate(f, c) - curve.value - (Rational(c.at(Site{0})) - dens.rho()) * curve.derivative);
      }
      // only the constant and eta_0 coefficients move
      const auto moved = p - f;
      for (const auto& [m, c] : moved.terms()) CHECK(m.degree() <= 1);
    }
  }

  TEST_CASE("translation and reflection") {
    const Density<double> dens(0.5);
    const auto f = F::monomial(dens, Monomial{Site{0}, Site{1}});
    CHECK(translate(f, Site{2}) == F::monomial(dens, Monomial{Site{2}, Site{3}}));
    CHECK(reflect(f) == F::monomial(dens, Monomial{Site{0}, Site{-1}}));
    sampling::Rng rng(9);
    const Density<Rational> rd(Rational(1, 2));
    for (int i = 0; i < 20; ++i) {
      const auto g = sampling::random_local(rng, rd, 2, 1, 3, 4, true);
      CHECK(reflect(reflect(g)) == g);
      CHECK(translate(translate(g, Site{1, -2}), Site{-1, 2}) == g);
    }
  }

  TEST_CASE("multiply") {
    const Density<Rational> dens(Rational(1, 5));
    const auto e0 = Q::monomial(dens, Monomial{Site{0}});
    const auto e1 = Q::monomial(dens, Monomial{Site{1}});
    auto expected = Rational(3, 5) * e0;
    expected.add_term(Monomial{}, dens.chi());
    CHECK(multiply(e0, e0) == expected);
    CHECK(multiply(e0, e1) == Q::monomial(dens, Monomial{Site{0}, Site{1}}));
    CHECK(multiply(multiply(e0, e0), e0) == multiply(e0, multiply(e0, e0)));

    const Density<Rational> other(Rational(1, 3));
    CHECK_THROWS_AS(multiply(e0, Q::monomial(other, Monomial{Site{0}})), Error);

    sampling::Rng rng(13);
    for (int i = 0; i < 30; ++i) {
      const auto f = sampling::random_local(rng, dens, 1, 1, 3, 3, true);
      const auto g = sampling::random_local(rng, dens, 1, 1, 3, 3, true);
      const auto fg = multiply(f, g);
      const auto box = sampling::box_sites(1, 1);
      for (unsigned long long bits = 0; bits < 8; ++bits) {
        const auto c = Configuration::from_bits(box, bits);
        CHECK(evaluate(fg, c) == evaluate(f, c) * evaluate(g, c));
      }
    }
  }

  TEST_CASE("degree-one sum over a box") {
    // For mean-zero g: sum_x <g xi(x)> = chi d<g>/dtheta. With a constant
    // term, a box B contributes |B| rho <g>; the form with a bare rho <g>
    // only holds when <g> = 0 or |B| = 1.
    const Density<Rational> dens(Rational(1, 5));
    const auto one = Q::constant(dens, Rational(1));
    const std::vector<Site> box{Site{0}, Site{1}};
    Rational lhs = 0;
    for (const auto& x : box)
      lhs += oracle::enumerate(box, dens.rho(), [&](const Configuration& c) { return Rational(c.at(x)); });
    CHECK(lhs == Rational(2) * dens.rho());
    CHECK(lhs != dens.rho());

    const auto g = Q::monomial(dens, Monomial{Site{0}, Site{1}}) + Rational(3) * Q::monomial(dens, Monomial{Site{1}});
    Rational sum = 0;
    for (const auto& x : box)
      sum += oracle::enumerate(box, dens.rho(), [&](const Configuration& c) { return evaluate(g, c) * Rational(c.at(x)); });
    CHECK(sum == dens.chi() * expectation_curve(g, dens.rho()).derivative);
  }

  TEST_CASE("debug rendering") {
    const Density<Rational> dens(Rational(1, 2));
    auto f = Q::monomial(dens, Monomial{Site{0}, Site{1}}, Rational(1, 2));
    f.add_term(Monomial{}, Rational(-3));
    CHECK(to_string(f, 1) == "-3 · η{} + 1/2 · η{0,1}");
  }
}
