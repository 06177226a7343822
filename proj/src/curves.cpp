#include "colorenz/curves.hpp"

#include <cmath>
#include <istream>
#include <ostream>

#include <json.hpp>

#include "colorenz/error.hpp"
#include "colorenz/io.hpp"

namespace colorenz {

namespace {

// Row k accumulates the observations whose level is <= k, in observation order, so the
// last row reproduces SampleMatrix::mean bit for bit.
StepCurve accumulate(Index n_radii, const SampleMatrix& values, const std::vector<double>& level_norms,
                     const ReferenceGrid& grid) {
  StepCurve curve;
  curve.n_radii = n_radii;
  curve.values.setZero(n_radii + 1, values.cols());
  const Index n = values.rows();
  for (Index k = 0; k <= n_radii; ++k) {
    const double limit = grid.radius(k) + 1e-12;
    Eigen::VectorXd sum = Eigen::VectorXd::Zero(values.cols());
    for (Index i = 0; i < n; ++i) {
      if (level_norms[static_cast<std::size_t>(i)] > limit) continue;
      for (Index c = 0; c < values.cols(); ++c) sum(c) += values.values()(i, c);
    }
    curve.values.row(k) = (sum / static_cast<double>(n)).transpose();
  }
  return curve;
}

}  // namespace

Eigen::VectorXd StepCurve::at(double u) const {
  if (!(u >= 0.0 && u <= 1.0)) throw ConfigError("u must lie in [0, 1]");
  auto k = static_cast<Index>(std::floor(u * static_cast<double>(n_radii + 1) + 1e-9));
  k = std::min(k, n_radii);
  return values.row(k).transpose();
}

StepCurve kakwani_curve(const TransportPlan& plan_x, const SampleMatrix& sample_y) {
  if (sample_y.rows() != plan_x.size())
    throw DataError("Kakwani curve needs Y paired row by row with X (row counts differ)");
  std::vector<double> levels(static_cast<std::size_t>(plan_x.size()));
  for (Index i = 0; i < plan_x.size(); ++i)
    levels[static_cast<std::size_t>(i)] = plan_x.grid.radius(plan_x.rank_level(i));
  return accumulate(plan_x.grid.shape.n_radii, sample_y, levels, plan_x.grid);
}

StepCurve lorenz_curve(const TransportPlan& plan_x) { return kakwani_curve(plan_x, plan_x.sample); }

StepCurve lorenz_yx_curve(const TransportPlan& plan_x, const SampleMatrix& sample_y, ExtensionMode mode) {
  if (sample_y.cols() != plan_x.dim())
    throw DataError("Lorenz function of Y with respect to X needs equal dimensions");
  std::vector<double> levels(static_cast<std::size_t>(sample_y.rows()));
  for (Index i = 0; i < sample_y.rows(); ++i) {
    const Eigen::VectorXd y = sample_y.row(i).transpose();
    levels[static_cast<std::size_t>(i)] = extend_distribution(plan_x, y, mode).norm();
  }
  return accumulate(plan_x.grid.shape.n_radii, sample_y, levels, plan_x.grid);
}

StepCurve conditionalize(const StepCurve& curve, const GridShape& shape) {
  if (curve.n_radii != shape.n_radii) throw ConfigError("curve and grid shape disagree on n_R");
  StepCurve out = curve;
  const auto n = static_cast<double>(shape.size());
  for (Index k = 0; k <= curve.n_radii; ++k) {
    const Index inside = shape.n_origin + shape.n_directions * k;
    if (inside > 0) out.values.row(k) *= n / static_cast<double>(inside);
  }
  if (shape.n_origin == 0 && curve.n_radii >= 1) out.values.row(0) = out.values.row(1);
  return out;
}

StepCurve relativize(const StepCurve& curve, const Eigen::Ref<const Eigen::VectorXd>& totals) {
  if (totals.size() != curve.dim()) throw ConfigError("totals dimension does not match the curve");
  for (Index c = 0; c < totals.size(); ++c)
    if (!(totals(c) > 0.0)) throw DataError("relative curves need positive totals in every component");
  StepCurve out = curve;
  for (Index k = 0; k < out.values.rows(); ++k)
    out.values.row(k).array() /= totals.transpose().array();
  return out;
}

StepCurve relativize(const StepCurve& curve) {
  const Eigen::VectorXd last = curve.values.row(curve.values.rows() - 1).transpose();
  return relativize(curve, last);
}

void write_curve_csv(std::ostream& out, const StepCurve& curve, const std::vector<std::string>& columns) {
  if (static_cast<Index>(columns.size()) != curve.dim()) throw ConfigError("one column name per curve component");
  out << "u,display_u";
  for (const auto& name : columns) out << ',' << name;
  out << '\n';
  for (Index k = 0; k < curve.breakpoints(); ++k) {
    out << format_number(curve.breakpoint(k)) << ',' << format_number(curve.display_u(k));
    for (Index c = 0; c < curve.dim(); ++c) out << ',' << format_number(curve.values(k, c));
    out << '\n';
  }
}

StepCurve read_curve_csv(std::istream& in) {
  const CsvTable table = read_csv(in);
  if (table.header.size() < 3 || table.header[0] != "u" || table.header[1] != "display_u")
    throw DataError("curve CSV must start with columns u,display_u");
  std::vector<std::string> names(table.header.begin() + 2, table.header.end());
  if (table.rows.size() < 2) throw DataError("curve CSV needs at least two breakpoints");
  StepCurve curve;
  curve.n_radii = static_cast<Index>(table.rows.size()) - 1;
  curve.values = numeric_columns(table, names);
  return curve;
}

void write_curve_json(std::ostream& out, const StepCurve& curve, const CurveMetadata& meta) {
  nlohmann::ordered_json doc;
  doc["kind"] = meta.kind;
  doc["variant"] = meta.variant;
  doc["grid"] = {{"n_R", meta.shape.n_radii},
                 {"n_S", meta.shape.n_directions},
                 {"n_0", meta.shape.n_origin},
                 {"d", meta.shape.dim}};
  doc["seed"] = meta.seed;
  doc["mode"] = meta.mode;
  doc["columns"] = meta.columns;
  auto& rows = doc["breakpoints"] = nlohmann::ordered_json::array();
  for (Index k = 0; k < curve.breakpoints(); ++k) {
    std::vector<double> value(curve.values.row(k).begin(), curve.values.row(k).end());
    rows.push_back({{"u", curve.breakpoint(k)}, {"display_u", curve.display_u(k)}, {"value", value}});
  }
  out << doc.dump(2) << '\n';
}

}  // namespace colorenz
