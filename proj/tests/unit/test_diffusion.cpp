#include "asep/diffusion.hpp"
#include "asep/generator.hpp"

#include "doctest.h"

using namespace asep;

TEST_SUITE("diffusion") {
  TEST_CASE("spectral solve drops null directions") {
    Eigen::MatrixXd g(2, 2);
    g << 1, 1, 1, 1;
    const Eigen::Vector2d rhs(2, 2);
    const auto sol = solve_psd(g, rhs, 1e-10);
    CHECK(sol.dropped_modes == 1);
    CHECK((g * sol.x - rhs).norm() <= 1e-12);
    CHECK(sol.x(0) == doctest::Approx(sol.x(1)));
  }

  TEST_CASE("symmetric exclusion in one dimension") {
    const auto r = compute_level(kernels::ssep_1d(), 0.5, {1, 2});
    CHECK(r.alpha(0, 0) == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(r.residuals(0) <= 1e-10);
    CHECK(r.Q(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.D(0, 0) == doctest::Approx(0.5).epsilon(1e-12));
    CHECK(r.overflow_mass == 0.0);
  }

  TEST_CASE("symmetric kernels give D = S at every level") {
    for (const auto& k : {kernels::ssep_1d(), kernels::ssep_2d()})
      for (double rho : {0.2, 0.5, 0.7})
        for (BasisLevel level : {BasisLevel{1, 2}, BasisLevel{2, 3}}) {
          const auto r = compute_level(k, rho, level);
          CHECK((r.D - k.S()).cwiseAbs().maxCoeff() <= 1e-8);
          CHECK(r.residuals.maxCoeff() <= 1e-10);
          CHECK(r.symmetry_defect_D <= 1e-12);
          CHECK((r.alpha - k.S().inverse()).cwiseAbs().maxCoeff() <= 1e-8);
        }
  }

  TEST_CASE("direct decomposition for a symmetric kernel") {
    const auto k = kernels::ssep_2d();
    auto inner = std::make_shared<const FluctuationInner>(k, QuotientBasis::build(2, 2, 3), Density<double>(0.4));
    const RepresentationSpace space(k, inner, QuotientBasis::build(2, 1, 2), false);
    for (int j = 0; j < 2; ++j) {
      const auto row = direct_decomposition(space, j);
      CHECK((row.d_row - k.S().row(j).transpose()).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(row.u.cwiseAbs().maxCoeff() <= 1e-8);
      CHECK(row.residual <= 1e-8);
    }
    FluctuationVector zero;
    zero.tvec = Eigen::VectorXd::Zero(2);
    zero.qcoef = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(inner->basis().size()));
    const auto row = direct_decomposition(space, zero);
    CHECK(row.d_row.norm() == 0.0);
    CHECK(row.residual == 0.0);
  }

  TEST_CASE("Q equals chi alpha through the explicit T image") {
    // T(sum alpha_i w_i + sum c_b L g_b) = sum alpha_i S_ik grad_k + sum c_b L^s g_b,
    // paired with grad_l.
    const auto k = kernels::asymmetric_2d();
    const Density<double> dens(0.3);
    const BasisLevel gen{1, 2};
    auto inner = std::make_shared<const FluctuationInner>(
        k, QuotientBasis::build(2, enlarged(gen, k).radius, enlarged(gen, k).max_degree), dens);
    const auto gb = QuotientBasis::build(2, gen.radius, gen.max_degree);
    const RepresentationSpace space(k, inner, gb, false);
    for (int j = 0; j < 2; ++j) {
      const auto rep = represent_gradient(space, j);
      FluctuationVector image;
      image.tvec = Eigen::VectorXd::Zero(2);
      image.qcoef = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(inner->basis().size()));
      for (int i = 0; i < 2; ++i)
        for (int kk = 0; kk < 2; ++kk) {
          const auto grad = inner->gradient(kk);
          image.tvec += rep.alpha(i) * k.S()(i, kk) * grad.tvec;
        }
      for (std::size_t b = 0; b < gb.size(); ++b) {
        const auto u = inner->reduce(apply_generator(k, GeneratorKind::Symmetric, gb.representative(b, dens)));
        CHECK(u.overflow.empty());
        image.tvec += rep.c(static_cast<Eigen::Index>(b)) * u.tvec;
        image.qcoef += rep.c(static_cast<Eigen::Index>(b)) * u.qcoef;
      }
      for (int l = 0; l < 2; ++l)
        CHECK((*inner)(image, inner->gradient(l)) == doctest::Approx(dens.chi() * rep.alpha(l)).epsilon(1e-10));
    }
  }

  TEST_CASE("totally asymmetric convergence") {
    const auto t = convergence_study(kernels::tasep_1d(), 0.5, {{1, 2}, {2, 3}, {3, 3}});
    REQUIRE(t.levels.size() == 3);
    CHECK(t.levels.front().residuals(0) > 1e-3);
    CHECK(t.residuals_nonincreasing);
    for (std::size_t i = 1; i < 3; ++i) {
      CHECK(t.levels[i].residuals(0) <= t.levels[i - 1].residuals(0) + 1e-12);
      CHECK(t.levels[i].direct_residuals(0) <= t.levels[i - 1].direct_residuals(0) + 1e-12);
    }
    for (const auto& r : t.levels) {
      CHECK(r.consistent);
      CHECK(r.cross_check_gap <= 5 * r.max_residual);
      CHECK(r.reflection_gap <= 1e-12);
      CHECK(r.overflow_mass == 0.0);
      CHECK(r.test_level == BasisLevel{4, 4});
    }
  }

  TEST_CASE("asymmetric two-dimensional kernel") {
    const auto t = convergence_study(kernels::asymmetric_2d(), 0.5, {{1, 2}, {2, 3}});
    CHECK(t.residuals_nonincreasing);
    CHECK(t.symmetry_defect_decreased);
    for (const auto& r : t.levels) {
      CHECK(r.reflection_gap <= 1e-12);
      CHECK((r.residuals - r.residuals_star).cwiseAbs().maxCoeff() <= 1e-10);
      CHECK(r.consistent);
      CHECK(r.dq_identity_defect <= 1e-12);
      CHECK(r.D(0, 0) > r.D(1, 1));  // more mass along e1
    }
  }

  TEST_CASE("schedule must be nested") {
    try {
      convergence_study(kernels::tasep_1d(), 0.5, {{2, 3}, {1, 3}});
      FAIL("expected ConfigParse");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::ConfigParse);
    }
  }
}
