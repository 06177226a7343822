#pragma once

#include <span>
#include <utility>
#include <vector>

namespace colorenz {

// Order statistics of a univariate sample together with its arithmetic mean.
class SortedSample {
 public:
  explicit SortedSample(std::span<const double> values);

  const std::vector<double>& values() const { return values_; }
  double mean() const { return mean_; }
  std::size_t size() const { return values_.size(); }
  double operator[](std::size_t k) const { return values_[k]; }

  // Lower median x_(ceil(n/2)).
  double median() const { return values_[(values_.size() + 1) / 2 - 1]; }

 private:
  std::vector<double> values_;
  double mean_ = 0.0;
};

enum class GiniMethod { area, ustat };

// Piecewise-linear empirical Lorenz function through (k/n, S_k/S_n).
double classical_lorenz(const SortedSample& s, double u);

// ustat: sum_{i<j} |x_i - x_j| * 2/(n(n-1)) / (2 mean). area: twice the area between the
// diagonal and the polyline, rescaled by n/(n-1) so both methods agree.
double classical_gini(const SortedSample& s, GiniMethod method = GiniMethod::ustat);

double pietra_index(const SortedSample& s);

// Length of the empirical Lorenz polyline mapped from [sqrt(2), 2] onto [0, 1]. The
// index is defined for continuous distributions; this is its polyline analogue.
double amato_kakwani_index(const SortedSample& s);

// Share of the total held, per pair (x, y), by the floor(u n) observations with the
// smallest x (ties kept in input order). relative divides by n * mean(y), otherwise by n.
double classical_kakwani_curve(std::span<const std::pair<double, double>> pairs, double u, bool relative = true);

// Share of the total held by observations in [a * median, b * median]; b may be +infinity.
double income_share(const SortedSample& s, double a, double b);

}  // namespace colorenz
