#include "colorenz/assignment.hpp"

#include <limits>

#include "colorenz/error.hpp"

namespace colorenz {

AssignmentResult solve_linear_assignment(const Eigen::MatrixXd& cost) {
  using Index = Eigen::Index;
  if (cost.rows() != cost.cols()) throw ConfigError("assignment cost matrix must be square");
  if (!cost.allFinite()) throw DataError("assignment cost matrix has non-finite entries");
  const Index n = cost.rows();
  constexpr double inf = std::numeric_limits<double>::infinity();

  // 1-based arrays; column 0 is the virtual root of each augmenting tree.
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0), min_reduced(n + 1);
  std::vector<Index> match(n + 1, 0), way(n + 1, 0);
  std::vector<char> used(n + 1);

  for (Index row = 1; row <= n; ++row) {
    match[0] = row;
    Index col0 = 0;
    std::fill(min_reduced.begin(), min_reduced.end(), inf);
    std::fill(used.begin(), used.end(), 0);
    do {
      used[col0] = 1;
      const Index i0 = match[col0];
      double delta = inf;
      Index col1 = 0;
      for (Index j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double reduced = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (reduced < min_reduced[j]) {
          min_reduced[j] = reduced;
          way[j] = col0;
        }
        if (min_reduced[j] < delta) {
          delta = min_reduced[j];
          col1 = j;
        }
      }
      for (Index j = 0; j <= n; ++j) {
        if (used[j]) {
          u[match[j]] += delta;
          v[j] -= delta;
        } else {
          min_reduced[j] -= delta;
        }
      }
      col0 = col1;
    } while (match[col0] != 0);
    do {
      const Index col1 = way[col0];
      match[col0] = match[col1];
      col0 = col1;
    } while (col0 != 0);
  }

  AssignmentResult result;
  result.row_to_col.assign(static_cast<std::size_t>(n), -1);
  for (Index j = 1; j <= n; ++j) result.row_to_col[static_cast<std::size_t>(match[j] - 1)] = j - 1;
  result.row_duals.resize(n);
  result.col_duals.resize(n);
  for (Index i = 0; i < n; ++i) {
    result.row_duals(i) = u[i + 1];
    result.col_duals(i) = v[i + 1];
    result.cost += cost(i, result.row_to_col[static_cast<std::size_t>(i)]);
  }
  return result;
}

}  // namespace colorenz
