#pragma once

#include <vector>

#include <Eigen/Core>

namespace colorenz {

struct AssignmentResult {
  std::vector<Eigen::Index> row_to_col;
  double cost = 0.0;
  Eigen::VectorXd row_duals;  // u_i
  Eigen::VectorXd col_duals;  // v_j, with u_i + v_j <= cost(i, j), equality on the matching
};

// Exact minimum-cost perfect matching of a square cost matrix by successive shortest
// augmenting paths with reduced costs (Hungarian / Jonker-Volgenant family), O(n^3).
AssignmentResult solve_linear_assignment(const Eigen::MatrixXd& cost);

}  // namespace colorenz
