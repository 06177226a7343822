#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "colorenz/curves.hpp"
#include "colorenz/potentials.hpp"
#include "colorenz/transport.hpp"

namespace colorenz {

// (2/sqrt(d)) * integral_0^1 |(u,...,u) - L(u)| du, integrated exactly over each step.
// The curve must be relative: its value at u = 1 is (1,...,1) within 1e-9.
double g_index(const StepCurve& relative_curve);

// (1/sqrt(d)) * sup_u |(u,...,u) - L(u)|; on each step the supremum sits at an end.
double pietra_g_index(const StepCurve& relative_curve);

// 2 * integral_0^1 (u - Lambda(u)/Lambda(1)) du for the step potential curve.
double potential_gini(const PotentialCurve& curve);
double potential_pietra(const PotentialCurve& curve);

struct KoshevoyMosler {
  double delta = 0.0;   // U-statistic mean pairwise distance
  double kappa = 0.0;   // mean norm
  double index = 0.0;   // delta / (2 kappa)
  double sigma2 = 0.0;  // 4 * variance of the first-order projection of the kernel
};

KoshevoyMosler km_gini(const SampleMatrix& sample);

struct IndexReport {
  std::optional<double> gini_g;
  std::optional<double> pietra_g;
  std::optional<double> gini_k;
  std::optional<double> pietra_k;
  std::optional<double> potential_gini;
  std::optional<double> potential_pietra;
  std::optional<double> km_gini;
  double km_delta = 0.0;
  double km_kappa = 0.0;
  std::optional<double> km_sigma2;

  GridShape shape;
  std::uint64_t seed = 0;
  Index n = 0;
  Index d = 0;
  std::vector<std::string> warnings;
};

// Every index computable from a solved plan (and an optional paired Y sample).
// Indices whose relative curves are undefined are left empty and a warning is recorded.
IndexReport compute_indices(const TransportPlan& plan_x, const SampleMatrix* paired_y = nullptr);

void write_index_json(std::ostream& out, const IndexReport& report);
// Columns: label,G_X,P_X,GK_YX,PK_YX (empty cells for missing values).
void write_index_table_csv(std::ostream& out, const std::vector<std::pair<std::string, IndexReport>>& rows);

}  // namespace colorenz
