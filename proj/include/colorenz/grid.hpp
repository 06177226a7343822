#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include <Eigen/Core>

namespace colorenz {

using Index = Eigen::Index;

// Radial and spherical resolution of a regular grid: n = n_radii * n_directions + n_origin.
struct GridShape {
  Index n_radii = 0;
  Index n_directions = 0;
  Index n_origin = 0;
  Index dim = 0;

  Index size() const { return n_radii * n_directions + n_origin; }

  // Throws ConfigError unless n_origin <= min(n_radii, n_directions), the counts are
  // positive and, in dimension one, n_directions == 2.
  void validate() const;

  friend bool operator==(const GridShape&, const GridShape&) = default;
};

// Regular reference grid in the closed unit ball. Point order is radius-major
// (all directions at radius 1/(n_R+1), then at 2/(n_R+1), ...), origin copies last.
struct ReferenceGrid {
  GridShape shape;
  Eigen::MatrixXd directions;     // n_directions x dim, unit rows
  Eigen::VectorXd radii;          // k/(n_R+1), k = 1..n_R
  Eigen::MatrixXd points;         // n x dim
  std::vector<Index> radius_index;  // per point: k in 1..n_R, or 0 for the origin
  std::uint64_t seed = 0;

  Index size() const { return points.rows(); }
  Index dim() const { return points.cols(); }

  // Radius of breakpoint k, k = 0..n_R.
  double radius(Index k) const {
    return static_cast<double>(k) / static_cast<double>(shape.n_radii + 1);
  }
};

// Splits n into n_R radii times n_S directions plus n_0 <= min(n_R, n_S) origin copies.
//
// With no explicit radius count the largest n_R <= floor(sqrt(n)) admitting a valid
// remainder is chosen. Dimension one always uses the two directions {-1, +1}, so there
// n_R defaults to floor(n/2).
GridShape factorize(Index n, Index dim, std::optional<Index> n_radii = std::nullopt);

// d = 1: directions (-1, +1). d = 2: angles 2*pi*j/n_S. d >= 3: antipodally paired,
// normalized Gaussian images of a seed-shifted Halton sequence.
ReferenceGrid build_grid(const GridShape& shape, std::uint64_t seed = 0);

Eigen::MatrixXd sphere_directions(Index count, Index dim, std::uint64_t seed);

void write_grid_csv(std::ostream& out, const ReferenceGrid& grid);

}  // namespace colorenz
