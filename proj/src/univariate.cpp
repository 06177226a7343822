#include "colorenz/univariate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>

#include "colorenz/error.hpp"

namespace colorenz {

namespace {

void require_relative(const SortedSample& s) {
  if (!(s.mean() > 0.0)) throw DataError("relative Lorenz quantities need a positive mean");
  if (s[0] < 0.0) throw DataError("relative Lorenz quantities need nonnegative values");
}

void require_unit(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw ConfigError("u must lie in [0, 1]");
}

}  // namespace

SortedSample::SortedSample(std::span<const double> values) : values_(values.begin(), values.end()) {
  if (values_.empty()) throw DataError("empty sample");
  for (double v : values_)
    if (!std::isfinite(v)) throw DataError("sample has non-finite entries");
  std::sort(values_.begin(), values_.end());
  mean_ = std::accumulate(values_.begin(), values_.end(), 0.0) / static_cast<double>(values_.size());
}

double classical_lorenz(const SortedSample& s, double u) {
  require_relative(s);
  require_unit(u);
  const auto n = s.size();
  const double pos = u * static_cast<double>(n);
  const auto whole = std::min(static_cast<std::size_t>(std::floor(pos)), n);
  double partial = 0.0;
  for (std::size_t i = 0; i < whole; ++i) partial += s[i];
  if (whole < n) partial += (pos - static_cast<double>(whole)) * s[whole];
  return partial / (static_cast<double>(n) * s.mean());
}

double classical_gini(const SortedSample& s, GiniMethod method) {
  require_relative(s);
  const auto n = s.size();
  if (n < 2) throw DataError("Gini index needs at least two observations");
  const double nd = static_cast<double>(n);
  if (method == GiniMethod::ustat) {
    // sum_{i<j} (x_(j) - x_(i)) = sum_k x_(k) (2k - n - 1), k = 1..n
    double pairs = 0.0;
    for (std::size_t k = 0; k < n; ++k) pairs += s[k] * (2.0 * static_cast<double>(k + 1) - nd - 1.0);
    return pairs * 2.0 / (nd * (nd - 1.0)) / (2.0 * s.mean());
  }
  const double total = s.mean() * nd;
  double cumulative = 0.0;
  double trapezoids = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double before = cumulative / total;
    cumulative += s[k];
    trapezoids += before + cumulative / total;
  }
  const double area_gini = 1.0 - trapezoids / nd;
  return area_gini * nd / (nd - 1.0);
}

double pietra_index(const SortedSample& s) {
  require_relative(s);
  const auto n = s.size();
  const double total = s.mean() * static_cast<double>(n);
  double cumulative = 0.0;
  double best = 0.0;
  for (std::size_t k = 0; k < n; ++k) {
    cumulative += s[k];
    best = std::max(best, static_cast<double>(k + 1) / static_cast<double>(n) - cumulative / total);
  }
  return best;
}

double amato_kakwani_index(const SortedSample& s) {
  require_relative(s);
  const double nd = static_cast<double>(s.size());
  const double total = s.mean() * nd;
  double length = 0.0;
  for (double x : s.values()) length += std::hypot(1.0 / nd, x / total);
  return (length - std::numbers::sqrt2) / (2.0 - std::numbers::sqrt2);
}

double classical_kakwani_curve(std::span<const std::pair<double, double>> pairs, double u, bool relative) {
  require_unit(u);
  const auto n = pairs.size();
  if (n == 0) throw DataError("empty sample");
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), std::size_t{0});
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return pairs[a].first < pairs[b].first; });
  double y_total = 0.0;
  for (const auto& p : pairs) y_total += p.second;
  const auto count = std::min(static_cast<std::size_t>(std::floor(u * static_cast<double>(n))), n);
  double partial = 0.0;
  for (std::size_t k = 0; k < count; ++k) partial += pairs[order[k]].second;
  if (!relative) return partial / static_cast<double>(n);
  if (!(y_total > 0.0)) throw DataError("relative Kakwani curve needs a positive mean of y");
  return partial / y_total;
}

double income_share(const SortedSample& s, double a, double b) {
  require_relative(s);
  if (!(a >= 0.0) || !(b > a)) throw ConfigError("income share needs 0 <= a < b");
  const double median = s.median();
  const double lo = a * median;
  const double hi = std::isinf(b) ? b : b * median;
  double band = 0.0;
  for (double x : s.values())
    if (x >= lo && x <= hi) band += x;
  return band / (static_cast<double>(s.size()) * s.mean());
}

}  // namespace colorenz
