#include "asep/fluctuation.hpp"
#include "asep/oracle.hpp"
#include "asep/sampling.hpp"

#include "doctest.h"

using namespace asep;

namespace {
using Q = LocalFunction<Rational>;
}

TEST_SUITE("oracle") {
  TEST_CASE("exact expectations") {
    const Density<Rational> dens(Rational(1, 2));
    const auto prod = multiply(Q::occupation(dens, Site{0}), Q::occupation(dens, Site{1}));
    const auto k = kernels::tasep_1d();
    const auto W = make_currents(k, dens, 0).W;
    const auto eta = Q::monomial(dens, Monomial{Site{0}, Site{1}});
    for (int i = 0; i <= 10; ++i) {
      const Rational theta(i, 10);
      CHECK(oracle::exact_expectation(prod, theta) == theta * theta);
      CHECK(oracle::exact_expectation(W, theta) == theta * (1 - theta));
      CHECK(oracle::exact_expectation(eta, theta) == (theta - dens.rho()) * (theta - dens.rho()));
    }
  }

  TEST_CASE("enumeration limit") {
    std::vector<Site> box;
    for (int i = 0; i < 25; ++i) box.push_back(Site{i});
    try {
      oracle::enumerate(box, 0.5, [](const Configuration&) { return 1.0; });
      FAIL("expected BoxTooLarge");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::BoxTooLarge);
    }
  }

  TEST_CASE("exchange") {
    const auto box = sampling::box_sites(1, 2);
    for (unsigned long long bits = 0; bits < 32; ++bits) {
      const auto c = Configuration::from_bits(box, bits);
      for (const auto& x : box)
        for (const auto& y : box) {
          CHECK(c.exchanged(x, y).exchanged(x, y) == c);
          if (c.at(x) == c.at(y)) CHECK(c.exchanged(x, y) == c);
        }
    }
  }

  TEST_CASE("pointwise generator") {
    const Density<Rational> dens(Rational(1, 2));
    const auto k = kernels::ssep_1d();
    const auto box = sampling::box_sites(1, 1);
    const auto f = Q::occupation(dens, Site{0});
    const Configuration c(box, {1, 0, 0});
    CHECK(oracle::generator_pointwise(k, GeneratorKind::Symmetric, f, c) == Rational(1, 2));
    for (unsigned long long bits = 0; bits < 8; ++bits)
      CHECK(oracle::generator_pointwise(k, GeneratorKind::Forward, Q::constant(dens, Rational(3)),
                                        Configuration::from_bits(box, bits)) == 0);
    CHECK_THROWS_AS(oracle::generator_pointwise(k, GeneratorKind::Forward, f, Configuration({Site{0}}, {1})), Error);
  }

  TEST_CASE("symbolic generator equals the literal one on random triples") {
    sampling::Rng rng(2024);
    int triples = 0;
    for (int i = 0; i < 520; ++i) {
      const int d = 1 + i % 2;
      const auto k = sampling::random_kernel(rng, d, d == 1 ? 2 : 1);
      const Density<Rational> dens(Rational(1 + i % 9, 10));
      const auto f = sampling::random_local(rng, dens, d, 1, 3, 3, i % 4 == 0);
      const auto kind = static_cast<GeneratorKind>(i % 3);
      const auto lf = apply_generator(k, kind, f);
      const auto box = oracle::generator_box(k, f);
      const auto c = sampling::random_configuration(rng, box);
      CHECK(evaluate(lf, c) == oracle::generator_pointwise(k, kind, f, c));
      ++triples;
    }
    CHECK(triples >= 500);
  }

  TEST_CASE("Bernoulli measures are invariant") {
    sampling::Rng rng(77);
    for (int i = 0; i < 30; ++i) {
      const int d = 1 + i % 2;
      const auto k = sampling::random_kernel(rng, d, 1);
      const Density<Rational> dens(Rational(3, 10));
      // keep the 2D support small: enumeration is exponential in it
      const auto f = d == 1 ? sampling::random_local(rng, dens, d, 1, 3, 3, true)
                            : sampling::random_local(rng, dens, d, 1, 2, 1, true);
      for (auto kind : {GeneratorKind::Forward, GeneratorKind::Adjoint, GeneratorKind::Symmetric}) {
        const auto lf = apply_generator(k, kind, f);
        for (const Rational theta : {Rational(1, 10), Rational(1, 2), Rational(5, 6)})
          CHECK(oracle::exact_expectation(lf, theta) == 0);
      }
    }
  }

  TEST_CASE("eta expansion from pointwise values") {
    sampling::Rng rng(5);
    const Density<Rational> dens(Rational(2, 7));
    for (int i = 0; i < 20; ++i) {
      const auto f = sampling::random_local(rng, dens, 1, 2, 3, 4, true);
      const auto box = sampling::box_sites(1, 2);
      CHECK(oracle::expand_pointwise<Rational>(box, dens, [&](const Configuration& c) { return evaluate(f, c); }) == f);
    }
  }

  TEST_CASE("summed pairing") {
    const Density<Rational> dens(Rational(1, 2));
    const auto e01 = Q::monomial(dens, Monomial{Site{0}, Site{1}});
    LocalFunction<Rational> grad(dens);
    grad.add_term(Monomial{Site{0}}, 1);
    grad.add_term(Monomial{Site{1}}, -1);
    CHECK(oracle::pair_rho0_bruteforce(grad, e01) == 0);
    const auto e0 = Q::monomial(dens, Monomial{Site{0}});
    CHECK(oracle::pair_rho0_bruteforce(e0, e0) == dens.chi());
    CHECK(oracle::pair_rho0_bruteforce(e01, e01) == Rational(1, 16));

    // shifts without overlap contribute nothing
    const auto g = e01 + Rational(2) * Q::monomial(dens, Monomial{Site{0}, Site{2}});
    for (int x = 4; x < 8; ++x) CHECK(oracle::shifted_pairing(g, g, Site{x}) == 0);
  }

  TEST_CASE("closed-form pairing against brute force") {
    sampling::Rng rng(99);
    const Density<Rational> rd(Rational(3, 10));
    const Density<double> dd(0.3);
    auto to_d = [&](const Q& f) {
      LocalFunction<double> g(dd);
      for (const auto& [m, c] : f.terms()) g.add_term(m, to_double(c));
      return g;
    };
    for (int i = 0; i < 200; ++i) {
      const int d = 1 + i % 2;
      const auto g = sampling::random_local(rng, rd, d, 1, 3, 3);
      const auto f = sampling::random_local(rng, rd, d, 1, 3, 3);
      CHECK(pair_rho0(g, f) == oracle::pair_rho0_bruteforce(g, f));
      CHECK(pair_rho0(g, f) == pair_rho0(f, g));
      CHECK(std::abs(pair_rho0(to_d(g), to_d(f)) - oracle::pair_rho0_bruteforce(to_d(g), to_d(f))) <= 1e-12);
    }
  }
}
