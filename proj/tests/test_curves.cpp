#include <doctest.h>

#include <cmath>
#include <limits>
#include <sstream>

#include <json.hpp>

#include "colorenz/curves.hpp"
#include "colorenz/error.hpp"
#include "colorenz/univariate.hpp"
#include "oracles.hpp"

using namespace colorenz;

namespace {

SampleMatrix column(std::initializer_list<double> values) {
  Eigen::MatrixXd m(static_cast<Index>(values.size()), 1);
  Index i = 0;
  for (double v : values) m(i++, 0) = v;
  return SampleMatrix(m);
}

TransportPlan toy_plan() { return solve_assignment(column({1.0, 2.0, 3.0}), build_grid(factorize(3, 1))); }

TransportPlan random_plan(CounterRng& rng, Index n, Index d, double lo = 0.0, double hi = 1.0) {
  return solve_assignment(SampleMatrix(oracle::uniform_matrix(rng, n, d, lo, hi)), build_grid(factorize(n, d), 9));
}

}  // namespace

TEST_CASE("Lorenz curve of the three-point example") {
  const StepCurve curve = lorenz_curve(toy_plan());
  REQUIRE(curve.breakpoints() == 2);
  CHECK(curve.breakpoint(0) == 0.0);
  CHECK(curve.breakpoint(1) == 0.5);
  CHECK(curve.display_u(1) == 1.0);
  CHECK(curve.values(0, 0) == doctest::Approx(2.0 / 3.0).epsilon(1e-15));
  CHECK(curve.values(1, 0) == 2.0);
  CHECK(curve.at(0.49)(0) == curve.values(0, 0));
  CHECK(curve.at(0.5)(0) == 2.0);
  CHECK(curve.at(1.0)(0) == 2.0);

  const StepCurve rel = relativize(curve);
  CHECK(rel.values(0, 0) == doctest::Approx(1.0 / 3.0).epsilon(1e-15));
  CHECK(rel.values(1, 0) == 1.0);
}

TEST_CASE("Kakwani curves of the three-point example") {
  const TransportPlan plan = toy_plan();
  const StepCurve k = kakwani_curve(plan, column({10.0, 0.0, 10.0}));
  CHECK(k.values(0, 0) == 0.0);
  CHECK(k.values(1, 0) == doctest::Approx(20.0 / 3.0).epsilon(1e-15));
  CHECK_THROWS_AS(kakwani_curve(plan, column({1.0, 2.0})), DataError);

  // Y of a different dimension is allowed for Kakwani curves
  Eigen::MatrixXd y2(3, 2);
  y2 << 1, 4, 2, 5, 3, 6;
  const StepCurve k2 = kakwani_curve(plan, SampleMatrix(y2));
  CHECK(k2.dim() == 2);
  CHECK(k2.values(1, 1) == 5.0);
}

TEST_CASE("exact identities on random samples") {
  CounterRng rng(404);
  for (int trial = 0; trial < 60; ++trial) {
    const Index d = 1 + trial % 3;
    const Index n = 2 + static_cast<Index>(rng.uniform() * 40.0);
    const TransportPlan plan = random_plan(rng, n, d);
    const StepCurve lorenz = lorenz_curve(plan);
    CHECK(kakwani_curve(plan, plan.sample) == lorenz);
    CHECK(lorenz_yx_curve(plan, plan.sample) == lorenz);
    CHECK(lorenz.values.row(lorenz.breakpoints() - 1).transpose() == plan.sample.mean());

    const StepCurve ones = kakwani_curve(plan, SampleMatrix(Eigen::MatrixXd::Ones(n, 1)));
    const GridShape& s = plan.grid.shape;
    for (Index k = 0; k <= s.n_radii; ++k)
      CHECK(ones.values(k, 0) == static_cast<double>(s.n_origin + k * s.n_directions) / static_cast<double>(n));
    const StepCurve cond = conditionalize(kakwani_curve(plan, SampleMatrix(Eigen::MatrixXd::Constant(n, 1, 3.0))), s);
    for (Index k = 0; k <= s.n_radii; ++k) CHECK(cond.values(k, 0) == doctest::Approx(3.0).epsilon(1e-14));

    for (Index k = 1; k < lorenz.breakpoints(); ++k)
      for (Index c = 0; c < d; ++c) CHECK(lorenz.values(k, c) >= lorenz.values(k - 1, c));
  }
}

TEST_CASE("curve values at u = 0 come from origin-mapped observations only") {
  CounterRng rng(6);
  const TransportPlan plan = random_plan(rng, 10, 2);  // 3 x 3 + 1
  const StepCurve curve = lorenz_curve(plan);
  Eigen::VectorXd origin_sum = Eigen::VectorXd::Zero(2);
  for (Index i = 0; i < 10; ++i)
    if (plan.rank_level(i) == 0) origin_sum += plan.sample.row(i).transpose();
  CHECK((curve.values.row(0).transpose() - origin_sum / 10.0).norm() < 1e-15);
}

TEST_CASE("relative Lorenz curve in dimension one equals the central income share") {
  CounterRng rng(55);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 5 + static_cast<Index>(rng.uniform() * 60.0);
    const TransportPlan plan = random_plan(rng, n, 1, 0.1, 3.0);
    const StepCurve rel = relativize(lorenz_curve(plan));
    std::vector<double> v(plan.sample.values().data(), plan.sample.values().data() + n);
    const SortedSample s(v);
    const Index nr = plan.grid.shape.n_radii, n0 = plan.grid.shape.n_origin;
    for (Index k = 0; k <= nr; ++k) {
      const Index first = nr - k, last = nr + n0 + k - 1;  // central block of order statistics
      if (last < first) continue;
      const double lo = first == 0 ? 0.0 : 0.5 * (s[first - 1] + s[first]) / s.median();
      const double hi = last == n - 1 ? std::numeric_limits<double>::infinity()
                                      : 0.5 * (s[last] + s[last + 1]) / s.median();
      CHECK(rel.values(k, 0) == doctest::Approx(income_share(s, lo, hi)).epsilon(1e-12));
    }
  }
}

TEST_CASE("Lorenz function of Y with respect to X") {
  const TransportPlan plan = toy_plan();
  // far-out Y lands on the outer contour
  const StepCurve far = lorenz_yx_curve(plan, column({50.0, 50.0, 50.0, 50.0}));
  CHECK(far.values(0, 0) == 0.0);
  CHECK(far.values(1, 0) == 50.0);

  // Y near the centre: compare with the hand argmax over the three affine pieces
  const StepCurve mid = lorenz_yx_curve(plan, column({1.9, 2.1}));
  auto piece = [&](double y) {
    Index best = 0;
    for (Index j = 1; j < 3; ++j)
      if (y * plan.grid.points(j, 0) - plan.grid_duals(j) > y * plan.grid.points(best, 0) - plan.grid_duals(best))
        best = j;
    return best;
  };
  double inner = 0.0;
  for (double y : {1.9, 2.1})
    if (plan.grid.points(piece(y), 0) == 0.0) inner += y / 2.0;
  CHECK(mid.values(0, 0) == doctest::Approx(inner));
  CHECK(mid.values(1, 0) == doctest::Approx(2.0));
  CHECK(lorenz_yx_curve(plan, column({1.9, 2.1}), ExtensionMode::moreau).values(1, 0) == doctest::Approx(2.0));

  Eigen::MatrixXd y2 = Eigen::MatrixXd::Ones(3, 2);
  CHECK_THROWS_AS(lorenz_yx_curve(plan, SampleMatrix(y2)), DataError);
}

TEST_CASE("conditional rescaling") {
  const TransportPlan plan = toy_plan();
  const StepCurve cond = conditionalize(lorenz_curve(plan), plan.grid.shape);
  CHECK(cond.values(0, 0) == doctest::Approx(2.0));
  CHECK(cond.values(1, 0) == doctest::Approx(2.0));

  StepCurve c;
  c.n_radii = 2;
  c.values.resize(3, 1);
  c.values << 0.0, 1.0, 3.0;
  const StepCurve no_origin = conditionalize(c, {2, 3, 0, 2});
  CHECK(no_origin.values(0, 0) == no_origin.values(1, 0));
  CHECK(no_origin.values(1, 0) == doctest::Approx(2.0));
  CHECK(no_origin.values(2, 0) == doctest::Approx(3.0));
  CHECK_THROWS_AS(conditionalize(c, {3, 3, 0, 2}), ConfigError);
}

TEST_CASE("relativize checks its totals") {
  StepCurve c;
  c.n_radii = 1;
  c.values.resize(2, 2);
  c.values << 1, 0, 2, 0;
  CHECK_THROWS_AS(relativize(c), DataError);
  CHECK_THROWS_AS(relativize(c, Eigen::VectorXd::Ones(3)), ConfigError);
  const StepCurve r = relativize(c, Eigen::Vector2d(2.0, 4.0));
  CHECK(r.values(1, 0) == 1.0);
}

TEST_CASE("no concentration on a centred ball") {
  CounterRng rng(10);
  Eigen::MatrixXd x = oracle::normal_matrix(rng, 400, 2);
  for (Index i = 0; i < 400; ++i) {
    x.row(i).normalize();
    x.row(i) *= 0.4 * std::sqrt(rng.uniform());
  }
  x.rowwise() += Eigen::RowVector2d(0.5, 0.5);
  const TransportPlan plan = solve_assignment(SampleMatrix(x), build_grid(factorize(400, 2)));
  const StepCurve rel = relativize(lorenz_curve(plan));
  for (Index k = 0; k < rel.breakpoints(); ++k)
    for (Index c = 0; c < 2; ++c) CHECK(std::abs(rel.values(k, c) - rel.breakpoint(k)) <= 0.06);
}

TEST_CASE("curve CSV round trip and JSON metadata") {
  CounterRng rng(2);
  const TransportPlan plan = random_plan(rng, 31, 3);
  const StepCurve curve = relativize(lorenz_curve(plan));
  std::ostringstream out;
  write_curve_csv(out, curve, {"a", "b", "c"});
  CHECK(out.str().rfind("u,display_u,a,b,c\n", 0) == 0);
  std::istringstream in(out.str());
  CHECK(read_curve_csv(in) == curve);
  CHECK_THROWS_AS(write_curve_csv(out, curve, {"a"}), ConfigError);

  std::ostringstream js;
  write_curve_json(js, curve, {"lorenz", "relative", plan.grid.shape, 7, "subgradient", {"a", "b", "c"}});
  const auto doc = nlohmann::json::parse(js.str());
  CHECK(doc["grid"]["n_R"] == plan.grid.shape.n_radii);
  CHECK(doc["seed"] == 7);
  CHECK(doc["breakpoints"].size() == static_cast<std::size_t>(curve.breakpoints()));
  CHECK(doc["breakpoints"].back()["display_u"] == 1.0);
}
