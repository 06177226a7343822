#include "colorenz/indices.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>

#include <json.hpp>

#include "colorenz/error.hpp"
#include "colorenz/io.hpp"

namespace colorenz {

namespace {

void require_relative(const StepCurve& curve) {
  if (curve.breakpoints() < 1 || curve.dim() < 1) throw ConfigError("empty curve");
  const auto last = curve.values.row(curve.breakpoints() - 1);
  for (Index c = 0; c < curve.dim(); ++c)
    if (!(std::abs(last(c) - 1.0) <= 1e-9))
      throw DataError("index needs a relative curve ending at (1,...,1)");
}

double step_end(const StepCurve& curve, Index k) {
  return k + 1 < curve.breakpoints() ? curve.breakpoint(k + 1) : 1.0;
}

// integral_a^b sqrt(w^2 + h2) dw with w measured from the projection point.
double root_quadratic_integral(double a, double b, double h2) {
  auto antiderivative = [h2](double w) {
    if (h2 <= 0.0) return 0.5 * w * std::abs(w);
    const double h = std::sqrt(h2);
    return 0.5 * (w * std::sqrt(w * w + h2) + h2 * std::asinh(w / h));
  };
  return antiderivative(b) - antiderivative(a);
}

}  // namespace

double g_index(const StepCurve& curve) {
  require_relative(curve);
  const auto d = static_cast<double>(curve.dim());
  double total = 0.0;
  for (Index k = 0; k < curve.breakpoints(); ++k) {
    const Eigen::VectorXd v = curve.values.row(k).transpose();
    // |u 1 - v|^2 = d (u - c)^2 + |v - c 1|^2 with c the mean of v
    const double c = v.mean();
    const double h2 = (v.array() - c).square().sum() / d;
    total += root_quadratic_integral(curve.breakpoint(k) - c, step_end(curve, k) - c, h2);
  }
  // (2/sqrt(d)) * sqrt(d) * total
  return 2.0 * total;
}

double pietra_g_index(const StepCurve& curve) {
  require_relative(curve);
  const auto root_d = std::sqrt(static_cast<double>(curve.dim()));
  double best = 0.0;
  for (Index k = 0; k < curve.breakpoints(); ++k) {
    const auto v = curve.values.row(k).array();
    // convex in u, so the supremum over the interval sits at one of its ends
    for (const double u : {curve.breakpoint(k), step_end(curve, k)})
      best = std::max(best, std::sqrt((u - v).square().sum()) / root_d);
  }
  return best;
}

double potential_gini(const PotentialCurve& curve) {
  const Eigen::VectorXd rho = curve.relative();
  double area = 0.0;
  for (Index k = 0; k <= curve.n_radii; ++k) area += rho(k) * (curve.radius(k + 1) - curve.radius(k));
  return 2.0 * (0.5 - area);
}

double potential_pietra(const PotentialCurve& curve) {
  const Eigen::VectorXd rho = curve.relative();
  double best = 0.0;
  for (Index k = 0; k <= curve.n_radii; ++k) best = std::max(best, curve.radius(k + 1) - rho(k));
  return best;
}

KoshevoyMosler km_gini(const SampleMatrix& sample) {
  const Index n = sample.rows();
  if (n < 2) throw DataError("Koshevoy-Mosler index needs at least two observations");
  const Eigen::MatrixXd& x = sample.values();

  std::vector<double> row_sums(static_cast<std::size_t>(n), 0.0);
  double pair_sum = 0.0;
  double norm_sum = 0.0;
  for (Index i = 0; i < n; ++i) {
    norm_sum += x.row(i).norm();
    for (Index j = i + 1; j < n; ++j) {
      const double dist = (x.row(i) - x.row(j)).norm();
      pair_sum += dist;
      row_sums[static_cast<std::size_t>(i)] += dist;
      row_sums[static_cast<std::size_t>(j)] += dist;
    }
  }

  KoshevoyMosler out;
  const auto nn = static_cast<double>(n);
  out.delta = 2.0 * pair_sum / (nn * (nn - 1.0));
  out.kappa = norm_sum / nn;
  if (!(out.kappa > 0.0)) throw DataError("Koshevoy-Mosler index needs a nonzero sample (mean norm is 0)");
  out.index = out.delta / (2.0 * out.kappa);

  double mean_h = 0.0;
  for (double& s : row_sums) {
    s /= nn - 1.0;
    mean_h += s;
  }
  mean_h /= nn;
  double var = 0.0;
  for (const double s : row_sums) var += (s - mean_h) * (s - mean_h);
  out.sigma2 = 4.0 * var / (nn - 1.0);
  return out;
}

IndexReport compute_indices(const TransportPlan& plan_x, const SampleMatrix* paired_y) {
  IndexReport report;
  report.shape = plan_x.grid.shape;
  report.seed = plan_x.grid.seed;
  report.n = plan_x.size();
  report.d = plan_x.dim();

  try {
    const StepCurve rel = relativize(lorenz_curve(plan_x));
    report.gini_g = g_index(rel);
    report.pietra_g = pietra_g_index(rel);
  } catch (const DataError& e) {
    report.warnings.push_back(std::string("G-indices of X omitted: ") + e.what());
  }

  if (paired_y != nullptr) {
    try {
      const StepCurve rel = relativize(kakwani_curve(plan_x, *paired_y), paired_y->mean());
      report.gini_k = g_index(rel);
      report.pietra_k = pietra_g_index(rel);
    } catch (const DataError& e) {
      report.warnings.push_back(std::string("K-indices of Y/X omitted: ") + e.what());
    }
  }

  try {
    const PotentialCurve pc = lorenz_potential_curve(plan_x);
    report.potential_gini = potential_gini(pc);
    report.potential_pietra = potential_pietra(pc);
  } catch (const DataError& e) {
    report.warnings.push_back(std::string("potential indices omitted: ") + e.what());
  }

  try {
    const KoshevoyMosler km = km_gini(plan_x.sample);
    report.km_gini = km.index;
    report.km_delta = km.delta;
    report.km_kappa = km.kappa;
    report.km_sigma2 = km.sigma2;
  } catch (const DataError& e) {
    report.warnings.push_back(std::string("Koshevoy-Mosler index omitted: ") + e.what());
  }
  return report;
}

namespace {

nlohmann::ordered_json optional_json(const std::optional<double>& v) {
  return v ? nlohmann::ordered_json(*v) : nlohmann::ordered_json(nullptr);
}

std::string optional_cell(const std::optional<double>& v) { return v ? format_number(*v) : std::string(); }

}  // namespace

void write_index_json(std::ostream& out, const IndexReport& r) {
  nlohmann::ordered_json doc;
  doc["gini_g"] = optional_json(r.gini_g);
  doc["pietra_g"] = optional_json(r.pietra_g);
  doc["gini_k"] = optional_json(r.gini_k);
  doc["pietra_k"] = optional_json(r.pietra_k);
  doc["potential_gini"] = optional_json(r.potential_gini);
  doc["potential_pietra"] = optional_json(r.potential_pietra);
  doc["km_gini"] = optional_json(r.km_gini);
  doc["km_delta"] = r.km_delta;
  doc["km_kappa"] = r.km_kappa;
  doc["km_sigma2"] = optional_json(r.km_sigma2);
  doc["grid"] = {{"n_R", r.shape.n_radii}, {"n_S", r.shape.n_directions}, {"n_0", r.shape.n_origin}, {"d", r.shape.dim}};
  doc["seed"] = r.seed;
  doc["n"] = r.n;
  doc["d"] = r.d;
  doc["warnings"] = r.warnings;
  out << doc.dump(2) << '\n';
}

void write_index_table_csv(std::ostream& out, const std::vector<std::pair<std::string, IndexReport>>& rows) {
  out << "label,G_X,P_X,GK_YX,PK_YX\n";
  for (const auto& [label, r] : rows)
    out << label << ',' << optional_cell(r.gini_g) << ',' << optional_cell(r.pietra_g) << ','
        << optional_cell(r.gini_k) << ',' << optional_cell(r.pietra_k) << '\n';
}

}  // namespace colorenz
