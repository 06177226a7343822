#include "colorenz/potentials.hpp"

#include <ostream>

#include "colorenz/error.hpp"
#include "colorenz/io.hpp"

namespace colorenz {

namespace {

void require_regular(const ReferenceGrid& grid) {
  const GridShape& s = grid.shape;
  if (grid.size() != s.size() || static_cast<Index>(grid.radius_index.size()) != s.size())
    throw ConfigError("potential curves need a regular grid");
  for (Index i = 0; i < grid.size(); ++i) {
    const Index expected = i < s.n_radii * s.n_directions ? i / s.n_directions + 1 : 0;
    if (grid.radius_index[static_cast<std::size_t>(i)] != expected)
      throw ConfigError("potential curves need a regular grid in canonical order");
  }
}

}  // namespace

Eigen::VectorXd PotentialCurve::relative() const {
  const double top = at_one();
  if (!(top > 0.0)) throw DataError("relative potential needs a positive value at u = 1");
  return values / top;
}

PotentialCurve lorenz_potential_curve(const TransportPlan& plan_x) {
  const ReferenceGrid& grid = plan_x.grid;
  require_regular(grid);
  const GridShape& s = grid.shape;
  PotentialCurve curve;
  curve.n_radii = s.n_radii;
  curve.values.setZero(s.n_radii + 2);
  for (Index i = 0; i < s.n_radii * s.n_directions; ++i) {
    const Index k = grid.radius_index[static_cast<std::size_t>(i)];
    curve.values(k) += quantile_potential(plan_x, grid.points.row(i).transpose());
  }
  for (Index j = 0; j < s.n_directions; ++j)
    curve.values(s.n_radii + 1) += quantile_potential(plan_x, grid.directions.row(j).transpose());
  curve.values /= static_cast<double>(s.n_directions);
  return curve;
}

PotentialCurve lorenz_potential_yx_curve(const TransportPlan& plan_x, const TransportPlan& plan_y,
                                         ExtensionMode mode) {
  if (plan_x.dim() != plan_y.dim())
    throw DataError("Lorenz potential of Y with respect to X needs equal dimensions");
  const ReferenceGrid& grid = plan_x.grid;
  require_regular(grid);
  const GridShape& s = grid.shape;
  const double outward =
      static_cast<double>(plan_y.grid.shape.n_radii + 1) / static_cast<double>(plan_y.grid.shape.n_radii);

  PotentialCurve curve;
  curve.n_radii = s.n_radii;
  curve.values.setZero(s.n_radii + 2);
  for (Index i = 0; i < s.n_radii * s.n_directions; ++i) {
    const Index k = grid.radius_index[static_cast<std::size_t>(i)];
    const Eigen::VectorXd image = extend_distribution(plan_y, empirical_quantile(plan_x, i), mode);
    curve.values(k) += quantile_potential(plan_y, image);
    if (k == s.n_radii) {
      Eigen::VectorXd boundary = outward * image;
      const double norm = boundary.norm();
      if (norm > 1.0) boundary /= norm;
      curve.values(s.n_radii + 1) += quantile_potential(plan_y, boundary);
    }
  }
  curve.values /= static_cast<double>(s.n_directions);
  return curve;
}

void write_potential_csv(std::ostream& out, const PotentialCurve& curve) {
  const Eigen::VectorXd rel = curve.relative();
  out << "u,potential,relative\n";
  for (Index k = 0; k < curve.size(); ++k)
    out << format_number(curve.radius(k)) << ',' << format_number(curve.values(k)) << ','
        << format_number(rel(k)) << '\n';
}

}  // namespace colorenz
