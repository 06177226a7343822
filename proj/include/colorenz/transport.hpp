#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "colorenz/grid.hpp"

namespace colorenz {

// n observations (rows) in dimension d (columns); finite, n >= 2.
class SampleMatrix {
 public:
  SampleMatrix() = default;
  explicit SampleMatrix(Eigen::MatrixXd values, std::vector<std::string> names = {});

  const Eigen::MatrixXd& values() const { return values_; }
  const std::vector<std::string>& names() const { return names_; }
  Index rows() const { return values_.rows(); }
  Index cols() const { return values_.cols(); }
  auto row(Index i) const { return values_.row(i); }

  // Column means accumulated in observation order.
  Eigen::VectorXd mean() const;

 private:
  Eigen::MatrixXd values_;
  std::vector<std::string> names_;
};

enum class ExtensionMode { subgradient, moreau };

ExtensionMode parse_extension_mode(const std::string& text);
std::string to_string(ExtensionMode mode);

// Optimal matching between a sample and a reference grid of the same size, with
// separating dual potentials.
//
// The grid-side potentials psi*_j make observation i's matched piece strictly
// dominant: x_i.g_{sigma(i)} - psi*_{sigma(i)} >= x_i.g_j - psi*_j + 2 epsilon for every j with g_j != g_{sigma(i)}.
// They are normalized so the max-affine quantile potential vanishes at the origin.
struct TransportPlan {
  ReferenceGrid grid;
  SampleMatrix sample;
  std::vector<Index> assignment;  // observation i -> grid index
  std::vector<Index> inverse;     // grid index -> observation
  double cost = 0.0;              // sum of squared Euclidean distances
  Eigen::VectorXd grid_duals;     // psi*_j, one per grid point
  Eigen::VectorXd data_duals;     // psi_i = x_i.g_{sigma(i)} - psi*_{sigma(i)}
  double epsilon = 0.0;

  Index size() const { return static_cast<Index>(assignment.size()); }
  Index dim() const { return grid.dim(); }

  // Radius index (0..n_R) of the grid point matched to observation i.
  Index rank_level(Index i) const {
    return grid.radius_index[static_cast<std::size_t>(assignment[static_cast<std::size_t>(i)])];
  }
};

// Sum of squared distances between sample rows and their assigned grid points.
double matching_cost(const Eigen::MatrixXd& sample, const Eigen::MatrixXd& grid_points,
                     const std::vector<Index>& assignment);

TransportPlan solve_assignment(const SampleMatrix& sample, const ReferenceGrid& grid);

// Matched grid point of observation i; its norm is the empirical center-outward quantile order.
Eigen::VectorXd center_outward_rank(const TransportPlan& plan, Index i);

// Empirical center-outward distribution function extended to all of R^d.
//
// subgradient: the grid point of the dominant affine piece x.g_j - psi*_j (ties to the
// smallest index). moreau: gradient of the Moreau envelope of that max-affine function
// with parameter epsilon, computed exactly by an active-set method. Both return the
// matched grid point at every observation. Throws DegeneracyError for moreau when
// epsilon == 0.
Eigen::VectorXd extend_distribution(const TransportPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& query,
                                    ExtensionMode mode = ExtensionMode::subgradient);

// Index of the dominant affine piece at query (subgradient mode).
Index dominant_piece(const TransportPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& query);

// psi_hat(u) = max_i (x_i.u - psi_i) on the closed unit ball; psi_hat(0) = 0.
double quantile_potential(const TransportPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& u);

// Observation matched to grid point j.
Eigen::VectorXd empirical_quantile(const TransportPlan& plan, Index j);

void write_plan_csv(std::ostream& out, const TransportPlan& plan);

}  // namespace colorenz
