#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "colorenz/grid.hpp"
#include "colorenz/transport.hpp"

namespace colorenz {

// Right-continuous step function on [0, 1]: row k of values holds the curve on
// [k/(n_R+1), (k+1)/(n_R+1)), and the last row on [n_R/(n_R+1), 1].
struct StepCurve {
  Index n_radii = 0;
  Eigen::MatrixXd values;  // (n_R + 1) x dim

  Index dim() const { return values.cols(); }
  Index breakpoints() const { return values.rows(); }
  double breakpoint(Index k) const { return static_cast<double>(k) / static_cast<double>(n_radii + 1); }
  // Display abscissa u (n_R+1)/n_R, reaching 1 at the last breakpoint.
  double display_u(Index k) const { return static_cast<double>(k) / static_cast<double>(n_radii); }

  Eigen::VectorXd at(double u) const;

  friend bool operator==(const StepCurve& a, const StepCurve& b) {
    return a.n_radii == b.n_radii && a.values.rows() == b.values.rows() &&
           a.values.cols() == b.values.cols() && a.values == b.values;
  }
};

// (1/n) sum_i X_i 1{|F(X_i)| <= u}
StepCurve lorenz_curve(const TransportPlan& plan_x);

// (1/n) sum_i Y_i 1{|F(X_i)| <= u}; rows of sample_y are paired with the plan's sample.
StepCurve kakwani_curve(const TransportPlan& plan_x, const SampleMatrix& sample_y);

// (1/n_Y) sum_i Y_i 1{|F_ext(Y_i)| <= u} with the extension of the X distribution function.
StepCurve lorenz_yx_curve(const TransportPlan& plan_x, const SampleMatrix& sample_y,
                          ExtensionMode mode = ExtensionMode::subgradient);

// Rescales row k by n / (n_0 + n_S k). When n_0 == 0 the k = 0 row copies the k = 1 row.
StepCurve conditionalize(const StepCurve& curve, const GridShape& shape);

// Componentwise division by totals (all > 0).
StepCurve relativize(const StepCurve& curve, const Eigen::Ref<const Eigen::VectorXd>& totals);
// Division by the curve's own value at u = 1.
StepCurve relativize(const StepCurve& curve);

struct CurveMetadata {
  std::string kind;
  std::string variant;
  GridShape shape;
  std::uint64_t seed = 0;
  std::string mode;
  std::vector<std::string> columns;
};

// Header: u,display_u,<columns...>; one row per breakpoint.
void write_curve_csv(std::ostream& out, const StepCurve& curve, const std::vector<std::string>& columns);
StepCurve read_curve_csv(std::istream& in);
void write_curve_json(std::ostream& out, const StepCurve& curve, const CurveMetadata& meta);

}  // namespace colorenz
