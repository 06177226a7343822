#include <doctest.h>

#include <cmath>

#include "colorenz/error.hpp"
#include "colorenz/simulate.hpp"
#include "oracles.hpp"

using namespace colorenz;

namespace {
const GeneratorKind kFigureKinds[] = {GeneratorKind::uniform_interval, GeneratorKind::exponential, GeneratorKind::pareto};
}

TEST_CASE("sample means of the three univariate laws") {
  CHECK(draw(uniform_interval(0.0, 1.0, 1), 4000).mean()(0) == doctest::Approx(0.5).epsilon(0.04));
  CHECK(std::abs(draw(exponential(2.0, 1), 4000).mean()(0) - 0.5) <= 0.02);
  CHECK(std::abs(draw(pareto(0.25, 2.0, 1), 4000).mean()(0) - 0.5) <= 0.05);
  CHECK(std::abs(draw(uniform_interval(0.0, 1.0, 1), 4000).mean()(0) - 0.5) <= 0.02);
}

TEST_CASE("draws are deterministic per seed") {
  const Generator gens[] = {uniform_interval(-1.0, 2.0, 3, 2), exponential(1.5, 3, 3), pareto(1.0, 3.0, 3),
                            uniform_ball(Eigen::Vector2d(0.5, 0.5), 0.4, 3),
                            spherical_gaussian(Eigen::Vector3d(1, 2, 3), 2.0, 3), banana_mixture(3)};
  for (const Generator& g : gens) {
    CHECK(draw(g, 50).values() == draw(g, 50).values());
    Generator other = g;
    other.seed = 4;
    CHECK(draw(g, 50).values() != draw(other, 50).values());
    CHECK(parse_generator_kind(to_string(g.kind)) == g.kind);
  }
}

TEST_CASE("ball and mixture samples have the documented support") {
  const SampleMatrix ball = draw(uniform_ball(Eigen::Vector2d(0.5, 0.5), 0.4, 9), 2000);
  for (Index i = 0; i < ball.rows(); ++i)
    CHECK((ball.row(i) - Eigen::RowVector2d(0.5, 0.5)).norm() <= 0.4 + 1e-12);
  // uniform on the disc: P(|X - c| <= r/2) = 1/4
  Index inner = 0;
  for (Index i = 0; i < ball.rows(); ++i) inner += (ball.row(i) - Eigen::RowVector2d(0.5, 0.5)).norm() <= 0.2;
  CHECK(static_cast<double>(inner) / 2000.0 == doctest::Approx(0.25).epsilon(0.15));

  const SampleMatrix banana = draw(banana_mixture(1), 3000);
  CHECK(banana.cols() == 2);
  CHECK(std::abs(banana.mean()(0)) < 0.1);
  CHECK(banana.mean()(1) == doctest::Approx(0.75).epsilon(0.15));  // mean of t^2/2 over {-1.5, 0, 1.5}
}

TEST_CASE("invalid generator parameters are rejected") {
  CHECK_THROWS_AS(draw(pareto(0.25, 1.0, 1), 10), ConfigError);
  CHECK_THROWS_AS(draw(exponential(0.0, 1), 10), ConfigError);
  CHECK_THROWS_AS(draw(uniform_interval(1.0, 1.0, 1), 10), ConfigError);
  CHECK_THROWS_AS(draw(uniform_ball(Eigen::Vector2d(0, 0), -1.0, 1), 10), ConfigError);
  CHECK_THROWS_AS(draw(uniform_interval(0.0, 1.0, 1), 1), ConfigError);
  CHECK_THROWS_AS(parse_generator_kind("gamma"), ConfigError);
}

TEST_CASE("closed forms match quadrature of the quantile integrals") {
  for (GeneratorKind kind : kFigureKinds) {
    for (int k = 1; k <= 9; ++k) {
      const double u = k / 10.0;
      CHECK(closed_form_lorenz_pm(kind, u) == doctest::Approx(oracle::lorenz_pm(kind, u)).epsilon(1e-8));
      CHECK(closed_form_classical_lorenz(kind, u) == doctest::Approx(oracle::classical_lorenz(kind, u)).epsilon(1e-8));
      CHECK(closed_form_relative_potential(kind, u) ==
            doctest::Approx(oracle::potential(kind, u) / oracle::potential(kind, 1.0)).epsilon(1e-8));
    }
    CHECK(closed_form_lorenz_pm(kind, 0.0) == 0.0);
    CHECK(closed_form_lorenz_pm(kind, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(closed_form_classical_lorenz(kind, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
    CHECK(closed_form_relative_potential(kind, 0.0) == doctest::Approx(0.0));
    CHECK(closed_form_relative_potential(kind, 1.0) == doctest::Approx(1.0).epsilon(1e-15));
  }
  CHECK(closed_form_lorenz_pm(GeneratorKind::uniform_interval, 0.5) == 0.5);
  CHECK(closed_form_classical_lorenz(GeneratorKind::uniform_interval, 0.5) == 0.25);
  CHECK(closed_form_classical_lorenz(GeneratorKind::pareto, 0.75) == doctest::Approx(0.5).epsilon(1e-15));
  CHECK_THROWS_AS(closed_form_lorenz_pm(GeneratorKind::banana_mixture, 0.5), ConfigError);
  CHECK_THROWS_AS(closed_form_classical_lorenz(GeneratorKind::uniform_ball, 0.5), ConfigError);
  CHECK_THROWS_AS(closed_form_lorenz_pm(GeneratorKind::pareto, 1.5), ConfigError);
}
