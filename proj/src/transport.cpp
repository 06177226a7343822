#include "colorenz/transport.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <ostream>

#include <Eigen/LU>

#include "colorenz/assignment.hpp"
#include "colorenz/error.hpp"
#include "colorenz/io.hpp"

namespace colorenz {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

std::size_t at(Index i) { return static_cast<std::size_t>(i); }

// Monotone rearrangement in dimension one: sorted data onto sorted grid points, with the
// breakpoint between consecutive affine pieces placed midway between consecutive data.
void solve_monotone(const Eigen::MatrixXd& x, const Eigen::MatrixXd& g, std::vector<Index>& assignment,
                    Eigen::VectorXd& grid_duals) {
  const Index n = x.rows();
  std::vector<Index> by_x(at(n)), by_g(at(n));
  std::iota(by_x.begin(), by_x.end(), Index{0});
  std::iota(by_g.begin(), by_g.end(), Index{0});
  std::stable_sort(by_x.begin(), by_x.end(), [&](Index a, Index b) { return x(a, 0) < x(b, 0); });
  std::stable_sort(by_g.begin(), by_g.end(), [&](Index a, Index b) { return g(a, 0) < g(b, 0); });

  assignment.assign(at(n), 0);
  grid_duals.resize(n);
  double psi = 0.0;
  for (Index k = 0; k < n; ++k) {
    assignment[at(by_x[at(k)])] = by_g[at(k)];
    if (k > 0) {
      const double breakpoint = 0.5 * (x(by_x[at(k - 1)], 0) + x(by_x[at(k)], 0));
      psi += breakpoint * (g(by_g[at(k)], 0) - g(by_g[at(k - 1)], 0));
    }
    grid_duals(by_g[at(k)]) = psi;
  }
}

// Grid potentials with the largest uniform separation margin. With
// a(k, j) = x_{inv(k)}.(g_j - g_k), feasibility with margin m means
// psi*_j >= psi*_k + a(k, j) + m on every edge; the best margin is minus the maximum
// cycle mean of a (Karp), and half of it is used to keep a strict safety gap.
Eigen::VectorXd separating_duals(const Eigen::MatrixXd& x, const Eigen::MatrixXd& g,
                                 const std::vector<Index>& inverse) {
  const Index n = g.rows();
  Eigen::MatrixXd matched(n, x.cols());
  for (Index k = 0; k < n; ++k) matched.row(k) = x.row(inverse[at(k)]);
  Eigen::MatrixXd a = matched * g.transpose();  // a(k, j) = x_{inv(k)}.g_j
  const Eigen::VectorXd diag = a.diagonal();
  a.colwise() -= diag;
  a.diagonal().setConstant(-kInf);
  // Copies of one gridpoint need no separation from each other (a zero-mean 2-cycle otherwise).
  for (Index k = 0; k < n; ++k)
    for (Index j = k + 1; j < n; ++j)
      if (g.row(k) == g.row(j)) a(k, j) = a(j, k) = -kInf;

  // Karp: walk[k](v) = best weight of a k-edge walk ending at v.
  Eigen::MatrixXd walk(n + 1, n);
  walk.row(0).setZero();
  for (Index k = 1; k <= n; ++k) {
    for (Index v = 0; v < n; ++v) {
      double best = -kInf;
      const double* col = a.col(v).data();
      for (Index u = 0; u < n; ++u) best = std::max(best, walk(k - 1, u) + col[u]);
      walk(k, v) = best;
    }
  }
  double max_mean = -kInf;
  for (Index v = 0; v < n; ++v) {
    double worst = kInf;
    for (Index k = 0; k < n; ++k)
      worst = std::min(worst, (walk(n, v) - walk(k, v)) / static_cast<double>(n - k));
    max_mean = std::max(max_mean, worst);
  }
  const double margin = std::max(0.0, -max_mean) * 0.5;

  // Longest paths from a virtual source (Bellman-Ford, Gauss-Seidel sweeps).
  Eigen::VectorXd psi = Eigen::VectorXd::Zero(n);
  for (Index sweep = 0; sweep <= n; ++sweep) {
    bool changed = false;
    for (Index v = 0; v < n; ++v) {
      const double* col = a.col(v).data();
      double best = psi(v);
      for (Index u = 0; u < n; ++u) best = std::max(best, psi(u) + col[u] + margin);
      if (best > psi(v)) {
        psi(v) = best;
        changed = true;
      }
    }
    if (!changed) break;
  }
  return psi;
}

void check_query(const TransportPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& q) {
  if (q.size() != plan.dim()) throw ConfigError("query dimension does not match the plan");
  if (!q.allFinite()) throw DataError("query has non-finite entries");
}

// Exact proximal point of the max-affine function max_j (g_j.y - psi*_j) by a primal
// active-set method on  min t + |y - x|^2 / (2 eps)  s.t.  g_j.y - t <= psi*_j.
// Returns the gradient of the Moreau envelope, sum_{j in W} mu_j g_j.
Eigen::VectorXd moreau_gradient(const TransportPlan& plan, const Eigen::VectorXd& x) {
  const Eigen::MatrixXd& g = plan.grid.points;
  const Eigen::VectorXd& psi = plan.grid_duals;
  const double eps = plan.epsilon;
  const Index n = g.rows();
  const Eigen::VectorXd c = g * x - psi;

  Eigen::VectorXd y = x;
  Index first = 0;
  c.maxCoeff(&first);
  double t = c(first);
  std::vector<Index> working{first};

  Eigen::VectorXd mu;
  bool at_subproblem_optimum = false;
  const Index max_iterations = 20 * (n + plan.dim() + 1);
  for (Index iter = 0; iter < max_iterations; ++iter) {
    const auto m = static_cast<Index>(working.size());
    Eigen::MatrixXd kkt = Eigen::MatrixXd::Zero(m + 1, m + 1);
    Eigen::VectorXd rhs(m + 1);
    for (Index r = 0; r < m; ++r) {
      for (Index s = 0; s < m; ++s) kkt(r, s) = eps * g.row(working[at(r)]).dot(g.row(working[at(s)]));
      kkt(r, m) = 1.0;
      kkt(m, r) = 1.0;
      rhs(r) = c(working[at(r)]);
    }
    rhs(m) = 1.0;
    const Eigen::VectorXd sol = kkt.fullPivLu().solve(rhs);
    mu = sol.head(m);
    Eigen::VectorXd y_hat = x;
    for (Index r = 0; r < m; ++r) y_hat -= eps * mu(r) * g.row(working[at(r)]).transpose();
    const double t_hat = sol(m);

    const Eigen::VectorXd step_y = y_hat - y;
    const double step_t = t_hat - t;
    const double scale = 1.0 + y.norm() + std::abs(t);
    if (at_subproblem_optimum || step_y.norm() + std::abs(step_t) <= 1e-14 * scale) {
      Index worst = 0;
      const double lowest = mu.minCoeff(&worst);
      if (lowest >= -1e-12) {
        if (m == 1) return g.row(working[0]).transpose();
        Eigen::VectorXd grad = Eigen::VectorXd::Zero(plan.dim());
        for (Index r = 0; r < m; ++r) grad += std::max(mu(r), 0.0) * g.row(working[at(r)]).transpose();
        return grad / std::max(mu.cwiseMax(0.0).sum(), 1e-300);
      }
      working.erase(working.begin() + worst);
      at_subproblem_optimum = false;
      continue;
    }

    double alpha = 1.0;
    Index blocking = -1;
    for (Index j = 0; j < n; ++j) {
      if (std::find(working.begin(), working.end(), j) != working.end()) continue;
      const double rate = g.row(j).dot(step_y) - step_t;
      if (rate <= 0.0) continue;
      const double slack = std::max(0.0, psi(j) - (g.row(j).dot(y) - t));
      const double ratio = slack / rate;
      if (ratio < alpha) {
        alpha = ratio;
        blocking = j;
      }
    }
    y += alpha * step_y;
    t += alpha * step_t;
    if (blocking >= 0) {
      working.push_back(blocking);
      at_subproblem_optimum = false;
    } else {
      at_subproblem_optimum = true;
    }
  }
  throw DegeneracyError("Moreau extension did not converge; use subgradient mode");
}

}  // namespace

SampleMatrix::SampleMatrix(Eigen::MatrixXd values, std::vector<std::string> names)
    : values_(std::move(values)), names_(std::move(names)) {
  if (values_.rows() < 2 || values_.cols() < 1) throw DataError("sample needs n >= 2 rows and d >= 1 columns");
  if (!values_.allFinite()) throw DataError("sample has non-finite entries");
  if (!names_.empty() && static_cast<Index>(names_.size()) != values_.cols())
    throw ConfigError("column name count does not match sample dimension");
}

Eigen::VectorXd SampleMatrix::mean() const {
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(cols());
  for (Index i = 0; i < rows(); ++i)
    for (Index c = 0; c < cols(); ++c) sum(c) += values_(i, c);
  return sum / static_cast<double>(rows());
}

ExtensionMode parse_extension_mode(const std::string& text) {
  if (text == "subgradient") return ExtensionMode::subgradient;
  if (text == "moreau") return ExtensionMode::moreau;
  throw ConfigError("unknown extension mode '" + text + "'");
}

std::string to_string(ExtensionMode mode) {
  return mode == ExtensionMode::moreau ? "moreau" : "subgradient";
}

double matching_cost(const Eigen::MatrixXd& sample, const Eigen::MatrixXd& grid_points,
                     const std::vector<Index>& assignment) {
  double total = 0.0;
  for (Index i = 0; i < sample.rows(); ++i)
    total += (sample.row(i) - grid_points.row(assignment[at(i)])).squaredNorm();
  return total;
}

TransportPlan solve_assignment(const SampleMatrix& sample, const ReferenceGrid& grid) {
  if (sample.rows() != grid.size())
    throw DataError("sample size " + std::to_string(sample.rows()) + " differs from grid size " +
                    std::to_string(grid.size()));
  if (sample.cols() != grid.dim())
    throw DataError("sample dimension " + std::to_string(sample.cols()) + " differs from grid dimension " +
                    std::to_string(grid.dim()));
  const Eigen::MatrixXd& x = sample.values();
  const Eigen::MatrixXd& g = grid.points;
  const Index n = x.rows();

  TransportPlan plan;
  plan.grid = grid;
  plan.sample = sample;

  if (grid.dim() == 1) {
    solve_monotone(x, g, plan.assignment, plan.grid_duals);
  } else {
    Eigen::MatrixXd cost(n, n);
    for (Index j = 0; j < n; ++j)
      for (Index i = 0; i < n; ++i) cost(i, j) = (x.row(i) - g.row(j)).squaredNorm();
    plan.assignment = solve_linear_assignment(cost).row_to_col;
  }
  plan.inverse.assign(at(n), 0);
  for (Index i = 0; i < n; ++i) plan.inverse[at(plan.assignment[at(i)])] = i;
  if (grid.dim() != 1) plan.grid_duals = separating_duals(x, g, plan.inverse);
  plan.cost = matching_cost(x, g, plan.assignment);

  plan.data_duals.resize(n);
  for (Index i = 0; i < n; ++i) {
    const Index k = plan.assignment[at(i)];
    plan.data_duals(i) = x.row(i).dot(g.row(k)) - plan.grid_duals(k);
  }
  // psi_hat(0) = max_i(-psi_i) = 0
  const double shift = plan.data_duals.minCoeff();
  plan.data_duals.array() -= shift;
  plan.grid_duals.array() += shift;

  double min_gap = kInf;
  const Eigen::MatrixXd scores = (x * g.transpose()).rowwise() - plan.grid_duals.transpose();
  for (Index i = 0; i < n; ++i) {
    const Index k = plan.assignment[at(i)];
    double rival = -kInf;
    // copies of one gridpoint (the origin) are the same affine slope, not rival pieces
    for (Index j = 0; j < n; ++j)
      if (j != k && g.row(j) != g.row(k)) rival = std::max(rival, scores(i, j));
    min_gap = std::min(min_gap, scores(i, k) - rival);
  }
  plan.epsilon = std::max(0.0, 0.5 * min_gap);
  return plan;
}

Eigen::VectorXd center_outward_rank(const TransportPlan& plan, Index i) {
  if (i < 0 || i >= plan.size()) throw ConfigError("observation index out of range");
  return plan.grid.points.row(plan.assignment[at(i)]).transpose();
}

Index dominant_piece(const TransportPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& query) {
  check_query(plan, query);
  const Eigen::VectorXd scores = plan.grid.points * query - plan.grid_duals;
  Index best = 0;
  for (Index j = 1; j < scores.size(); ++j)
    if (scores(j) > scores(best)) best = j;
  return best;
}

Eigen::VectorXd extend_distribution(const TransportPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& query,
                                    ExtensionMode mode) {
  check_query(plan, query);
  if (mode == ExtensionMode::moreau) {
    if (!(plan.epsilon > 0.0))
      throw DegeneracyError("regularization scale epsilon is zero (tied affine pieces); use subgradient mode");
    return moreau_gradient(plan, query);
  }
  if (plan.epsilon == 0.0) {
    // Tied pieces: the argmax alone cannot recover the matched point of an observation.
    for (Index i = 0; i < plan.size(); ++i)
      if (plan.sample.row(i) == query.transpose()) return center_outward_rank(plan, i);
  }
  return plan.grid.points.row(dominant_piece(plan, query)).transpose();
}

double quantile_potential(const TransportPlan& plan, const Eigen::Ref<const Eigen::VectorXd>& u) {
  if (u.size() != plan.dim()) throw ConfigError("potential argument dimension does not match the plan");
  if (!(u.norm() <= 1.0 + 1e-12)) throw ConfigError("quantile potential is defined on the closed unit ball");
  return (plan.sample.values() * u - plan.data_duals).maxCoeff();
}

Eigen::VectorXd empirical_quantile(const TransportPlan& plan, Index j) {
  if (j < 0 || j >= plan.size()) throw ConfigError("grid index out of range");
  return plan.sample.row(plan.inverse[at(j)]).transpose();
}

void write_plan_csv(std::ostream& out, const TransportPlan& plan) {
  const Index d = plan.dim();
  out << "sample_index";
  for (Index c = 0; c < d; ++c) out << ",x_" << c + 1;
  out << ",grid_index";
  for (Index c = 0; c < d; ++c) out << ",g_" << c + 1;
  out << ",rank_norm,data_dual\n";
  for (Index i = 0; i < plan.size(); ++i) {
    const Index k = plan.assignment[at(i)];
    out << i;
    for (Index c = 0; c < d; ++c) out << ',' << format_number(plan.sample.values()(i, c));
    out << ',' << k;
    for (Index c = 0; c < d; ++c) out << ',' << format_number(plan.grid.points(k, c));
    out << ',' << format_number(plan.grid.radius(plan.rank_level(i))) << ','
        << format_number(plan.data_duals(i)) << '\n';
  }
}

}  // namespace colorenz
