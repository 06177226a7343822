#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <map>
#include <numbers>
#include <sstream>

#include "colorenz/error.hpp"
#include "colorenz/grid.hpp"

using namespace colorenz;

TEST_CASE("factorize explicit and automatic") {
  CHECK(factorize(144, 2, 8) == GridShape{8, 18, 0, 2});
  CHECK(factorize(144, 2) == GridShape{12, 12, 0, 2});
  CHECK(factorize(10, 2) == GridShape{3, 3, 1, 2});
  CHECK(factorize(1024, 2) == GridShape{32, 32, 0, 2});
  CHECK(factorize(4000, 1) == GridShape{2000, 2, 0, 1});
  CHECK(factorize(3, 1) == GridShape{1, 2, 1, 1});
  CHECK(factorize(7, 1) == GridShape{3, 2, 1, 1});
}

TEST_CASE("factorize rejects invalid requests") {
  CHECK_THROWS_AS(factorize(1, 2), ConfigError);
  CHECK_THROWS_AS(factorize(10, 2, 7), ConfigError);  // n_S = 1, n_0 = 3
  CHECK_THROWS_AS(factorize(10, 2, 0), ConfigError);
  CHECK_THROWS_AS(factorize(9, 1, 2), ConfigError);   // remainder 5 with two directions
}

TEST_CASE("factorize always satisfies the shape invariant") {
  for (Index n = 2; n <= 400; ++n) {
    for (Index d = 1; d <= 3; ++d) {
      const GridShape s = factorize(n, d);
      CHECK(s.size() == n);
      CHECK(s.n_origin <= std::min(s.n_radii, s.n_directions));
      CHECK_NOTHROW(s.validate());
    }
  }
}

TEST_CASE("small grids have the expected points") {
  const ReferenceGrid a = build_grid({2, 2, 0, 1});
  REQUIRE(a.size() == 4);
  CHECK(a.points(0, 0) == doctest::Approx(-1.0 / 3.0).epsilon(1e-15));
  CHECK(a.points(1, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(a.points(2, 0) == doctest::Approx(-2.0 / 3.0).epsilon(1e-15));
  CHECK(a.points(3, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));

  const ReferenceGrid b = build_grid({1, 4, 0, 2});
  const double expected[4][2] = {{0.5, 0.0}, {0.0, 0.5}, {-0.5, 0.0}, {0.0, -0.5}};
  for (int i = 0; i < 4; ++i)
    for (int c = 0; c < 2; ++c) CHECK(std::abs(b.points(i, c) - expected[i][c]) < 1e-15);

  const ReferenceGrid c = build_grid({1, 2, 1, 1});
  CHECK(c.points(0, 0) == -0.5);
  CHECK(c.points(1, 0) == 0.5);
  CHECK(c.points(2, 0) == 0.0);
}

TEST_CASE("point norms form the radial multiset") {
  for (const GridShape& shape : {GridShape{5, 7, 3, 2}, GridShape{4, 9, 2, 3}, GridShape{6, 2, 1, 1},
                                 GridShape{3, 10, 0, 5}}) {
    const ReferenceGrid g = build_grid(shape, 11);
    std::map<Index, Index> count;
    for (Index i = 0; i < g.size(); ++i) {
      const double norm = g.points.row(i).norm();
      const Index k = g.radius_index[static_cast<std::size_t>(i)];
      CHECK(std::abs(norm - g.radius(k)) < 1e-12);
      ++count[k];
    }
    CHECK(count[0] == shape.n_origin);
    for (Index k = 1; k <= shape.n_radii; ++k) CHECK(count[k] == shape.n_directions);
    for (Index k = 0; k < shape.n_radii; ++k)
      CHECK(g.radii(k) == static_cast<double>(k + 1) / static_cast<double>(shape.n_radii + 1));
  }
}

TEST_CASE("two-dimensional directions are balanced and equispaced") {
  for (Index ns : {3, 4, 7, 18, 32}) {
    const Eigen::MatrixXd dirs = sphere_directions(ns, 2, 0);
    CHECK(dirs.colwise().sum().norm() < 1e-12);
    std::vector<double> angles;
    for (Index j = 0; j < ns; ++j) angles.push_back(std::atan2(dirs(j, 1), dirs(j, 0)));
    std::sort(angles.begin(), angles.end());
    double max_gap = angles.front() + 2.0 * std::numbers::pi - angles.back();
    for (std::size_t j = 1; j < angles.size(); ++j) max_gap = std::max(max_gap, angles[j] - angles[j - 1]);
    CHECK(max_gap == doctest::Approx(2.0 * std::numbers::pi / static_cast<double>(ns)).epsilon(1e-12));
  }
  const Eigen::MatrixXd even = sphere_directions(18, 2, 0);
  CHECK(even.colwise().sum().norm() < 1e-14);
}

TEST_CASE("higher-dimensional directions are unit, antipodal and balanced") {
  for (Index d : {3, 4, 6}) {
    for (Index ns : {16, 64, 65}) {
      const Eigen::MatrixXd dirs = sphere_directions(ns, d, 5);
      for (Index j = 0; j < ns; ++j) CHECK(std::abs(dirs.row(j).norm() - 1.0) < 1e-12);
      const double mean_norm = (dirs.colwise().sum() / static_cast<double>(ns)).norm();
      CHECK(mean_norm <= 3.0 / std::sqrt(static_cast<double>(ns)));
    }
  }
  for (Index d : {3, 5})
    for (Index ns : {2, 3, 5, 8, 9, 65}) CHECK(sphere_directions(ns, d, 11).colwise().sum().norm() < 1e-12);
  // covariance of a balanced direction set approaches I/d
  const Eigen::MatrixXd dirs = sphere_directions(2000, 3, 1);
  const Eigen::MatrixXd cov = dirs.transpose() * dirs / 2000.0;
  CHECK((cov - Eigen::MatrixXd::Identity(3, 3) / 3.0).cwiseAbs().maxCoeff() < 0.02);
}

TEST_CASE("grid construction is deterministic and seed dependent in d >= 3") {
  const GridShape shape{4, 12, 2, 3};
  const ReferenceGrid a = build_grid(shape, 42);
  const ReferenceGrid b = build_grid(shape, 42);
  const ReferenceGrid c = build_grid(shape, 43);
  CHECK(a.points == b.points);
  CHECK(a.points != c.points);
  CHECK(build_grid({4, 12, 2, 2}, 1).points == build_grid({4, 12, 2, 2}, 2).points);
}

TEST_CASE("invalid shapes are rejected") {
  CHECK_THROWS_AS(build_grid({2, 3, 4, 2}), ConfigError);
  CHECK_THROWS_AS(build_grid({2, 3, 0, 1}), ConfigError);
  CHECK_THROWS_AS(build_grid({0, 3, 0, 2}), ConfigError);
  CHECK_THROWS_AS(build_grid({2, 3, 0, 0}), ConfigError);
}

TEST_CASE("grid CSV export") {
  std::ostringstream out;
  write_grid_csv(out, build_grid({1, 2, 1, 1}));
  const std::string text = out.str();
  CHECK(text.rfind("index,radius,dir_1,x_1\n", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '\n') == 4);
}
