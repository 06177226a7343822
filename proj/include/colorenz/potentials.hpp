#pragma once

#include <iosfwd>

#include <Eigen/Core>

#include "colorenz/transport.hpp"

namespace colorenz {

// Lorenz potential sampled at the grid radii k/(n_R+1), k = 0..n_R, followed by u = 1.
struct PotentialCurve {
  Index n_radii = 0;
  Eigen::VectorXd values;  // n_R + 2 entries

  Index size() const { return values.size(); }
  double radius(Index k) const {
    return k > n_radii ? 1.0 : static_cast<double>(k) / static_cast<double>(n_radii + 1);
  }
  double at_one() const { return values(values.size() - 1); }
  // values / value at u = 1; throws DataError unless that value is positive.
  Eigen::VectorXd relative() const;
};

// Contour averages (1/n_S) sum_{|g_i| = u} psi_hat(g_i) of the max-affine quantile
// potential. The u = 1 entry averages psi_hat over the unit directions.
PotentialCurve lorenz_potential_curve(const TransportPlan& plan_x);

// Contour averages of psi_hat_Y(F_Y(Q_X(g_i))) over the X grid. For the u = 1 entry the
// outer contour images are pushed radially onto the unit sphere before evaluating psi_hat_Y.
PotentialCurve lorenz_potential_yx_curve(const TransportPlan& plan_x, const TransportPlan& plan_y,
                                         ExtensionMode mode = ExtensionMode::subgradient);

// Header: u,potential,relative
void write_potential_csv(std::ostream& out, const PotentialCurve& curve);

}  // namespace colorenz
