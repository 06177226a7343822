#include "colorenz/grid.hpp"

#include <algorithm>
#include <array>
#include <cmath>
#include <numbers>
#include <ostream>
#include <string>

#include "colorenz/error.hpp"
#include "colorenz/io.hpp"
#include "colorenz/random.hpp"

namespace colorenz {

namespace {

// Acklam's rational approximation followed by one Halley step.
double inverse_normal_cdf(double p) {
  static constexpr std::array<double, 6> a{-3.969683028665376e+01, 2.209460984245205e+02,
                                           -2.759285104469687e+02, 1.383577518672690e+02,
                                           -3.066479806614716e+01, 2.506628277459239e+00};
  static constexpr std::array<double, 5> b{-5.447609879822406e+01, 1.615858368580409e+02,
                                           -1.556989798598866e+02, 6.680131188771972e+01,
                                           -1.328068155288572e+01};
  static constexpr std::array<double, 6> c{-7.784894002430293e-03, -3.223964580411365e-01,
                                           -2.400758277161838e+00, -2.549732539343734e+00,
                                           4.374664141464968e+00,  2.938163982698783e+00};
  static constexpr std::array<double, 4> d{7.784695709041462e-03, 3.224671290700398e-01,
                                           2.445134137142996e+00, 3.754408661907416e+00};
  constexpr double low = 0.02425;
  double x;
  if (p < low) {
    const double q = std::sqrt(-2.0 * std::log(p));
    x = (((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  } else if (p <= 1.0 - low) {
    const double q = p - 0.5;
    const double r = q * q;
    x = (((((a[0] * r + a[1]) * r + a[2]) * r + a[3]) * r + a[4]) * r + a[5]) * q /
        (((((b[0] * r + b[1]) * r + b[2]) * r + b[3]) * r + b[4]) * r + 1.0);
  } else {
    const double q = std::sqrt(-2.0 * std::log(1.0 - p));
    x = -(((((c[0] * q + c[1]) * q + c[2]) * q + c[3]) * q + c[4]) * q + c[5]) /
        ((((d[0] * q + d[1]) * q + d[2]) * q + d[3]) * q + 1.0);
  }
  const double e = 0.5 * std::erfc(-x / std::numbers::sqrt2) - p;
  const double u = e * std::sqrt(2.0 * std::numbers::pi) * std::exp(0.5 * x * x);
  return x - u / (1.0 + 0.5 * x * u);
}

double radical_inverse(std::uint64_t i, std::uint64_t base) {
  const double inv = 1.0 / static_cast<double>(base);
  double f = inv;
  double value = 0.0;
  while (i > 0) {
    value += f * static_cast<double>(i % base);
    i /= base;
    f *= inv;
  }
  return value;
}

std::vector<std::uint64_t> first_primes(Index count) {
  std::vector<std::uint64_t> primes;
  for (std::uint64_t k = 2; static_cast<Index>(primes.size()) < count; ++k) {
    bool prime = true;
    for (auto p : primes) {
      if (p * p > k) break;
      if (k % p == 0) {
        prime = false;
        break;
      }
    }
    if (prime) primes.push_back(k);
  }
  return primes;
}

}  // namespace

void GridShape::validate() const {
  if (dim < 1) throw ConfigError("grid dimension must be >= 1");
  if (n_radii < 1 || n_directions < 1) throw ConfigError("grid needs n_R >= 1 and n_S >= 1");
  if (n_origin < 0 || n_origin > std::min(n_radii, n_directions))
    throw ConfigError("origin copies n_0 = " + std::to_string(n_origin) +
                      " must lie in [0, min(n_R, n_S)]");
  if (dim == 1 && n_directions != 2)
    throw ConfigError("dimension one grids use exactly two directions");
}

GridShape factorize(Index n, Index dim, std::optional<Index> n_radii) {
  if (n < 2) throw ConfigError("grid size must be >= 2");
  if (dim < 1) throw ConfigError("grid dimension must be >= 1");

  auto make = [&](Index r, Index s) {
    return GridShape{r, s, n - r * s, dim};
  };
  auto admissible = [&](Index r, Index s) {
    const Index rem = n - r * s;
    return r >= 1 && s >= 1 && rem >= 0 && rem <= std::min(r, s);
  };

  if (dim == 1) {
    const Index r = n_radii.value_or(n / 2);
    if (!admissible(r, 2))
      throw ConfigError("n = " + std::to_string(n) + " cannot be split into " +
                        std::to_string(r) + " radii x 2 directions");
    return make(r, 2);
  }

  if (n_radii) {
    const Index r = *n_radii;
    if (r < 1 || r > n) throw ConfigError("explicit n_R must lie in [1, n]");
    const Index s = n / r;
    if (!admissible(r, s))
      throw ConfigError("n_R = " + std::to_string(r) + " leaves remainder " +
                        std::to_string(n - r * s) + " > min(n_R, n_S)");
    return make(r, s);
  }

  auto r = static_cast<Index>(std::sqrt(static_cast<double>(n)));
  while (r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  for (; r >= 1; --r) {
    const Index s = n / r;
    if (admissible(r, s)) return make(r, s);
  }
  throw ConfigError("no admissible factorization");  // unreachable: r = 1 always works
}

Eigen::MatrixXd sphere_directions(Index count, Index dim, std::uint64_t seed) {
  Eigen::MatrixXd dirs(count, dim);
  if (dim == 1) {
    for (Index j = 0; j < count; ++j) dirs(j, 0) = (j % 2 == 0) ? -1.0 : 1.0;
    return dirs;
  }
  if (dim == 2) {
    // Even counts get exact antipodes so the direction set sums to zero.
    const Index half = (count % 2 == 0) ? count / 2 : count;
    for (Index j = 0; j < count; ++j) {
      if (j >= half) {
        dirs.row(j) = -dirs.row(j - half);
        continue;
      }
      const double angle = 2.0 * std::numbers::pi * static_cast<double>(j) / static_cast<double>(count);
      dirs(j, 0) = std::cos(angle);
      dirs(j, 1) = std::sin(angle);
    }
    return dirs;
  }

  // Cranley-Patterson rotation of a Halton sequence; the seed only sets the shift.
  const auto primes = first_primes(dim);
  CounterRng rng(seed, /*stream=*/0x5ee7);
  Eigen::VectorXd shift(dim);
  for (Index c = 0; c < dim; ++c) shift(c) = rng.uniform();

  // Antipodal pairs, and for odd counts a closing triple at 120 degrees on a great circle,
  // so every direction set with count >= 2 sums to zero.
  const Index pairs = count % 2 == 0 ? count / 2 : (count - 3) / 2;
  const Index base_count = count % 2 == 0 ? pairs : pairs + 2;
  Eigen::MatrixXd base(base_count, dim);
  for (Index j = 0; j < base_count; ++j) {
    for (Index c = 0; c < dim; ++c) {
      double p = radical_inverse(static_cast<std::uint64_t>(j + 1), primes[c]) + shift(c);
      p -= std::floor(p);
      p = std::clamp(p, 1e-12, 1.0 - 1e-12);
      base(j, c) = inverse_normal_cdf(p);
    }
    base.row(j).normalize();
  }
  for (Index j = 0; j < pairs; ++j) {
    dirs.row(j) = base.row(j);
    dirs.row(pairs + j) = -base.row(j);
  }
  if (count % 2 == 1) {
    if (count == 1) {
      dirs.row(0) = base.row(0);
      return dirs;
    }
    const Eigen::RowVectorXd a = base.row(pairs);
    Eigen::RowVectorXd b = base.row(pairs + 1) - base.row(pairs + 1).dot(a) * a;
    b.normalize();
    const double h = std::sqrt(3.0) / 2.0;
    dirs.row(count - 3) = a;
    dirs.row(count - 2) = -0.5 * a + h * b;
    dirs.row(count - 1) = -0.5 * a - h * b;
  }
  return dirs;
}

ReferenceGrid build_grid(const GridShape& shape, std::uint64_t seed) {
  shape.validate();
  ReferenceGrid grid;
  grid.shape = shape;
  grid.seed = seed;
  grid.directions = sphere_directions(shape.n_directions, shape.dim, seed);
  grid.radii.resize(shape.n_radii);
  for (Index k = 0; k < shape.n_radii; ++k) grid.radii(k) = grid.radius(k + 1);

  const Index n = shape.size();
  grid.points.setZero(n, shape.dim);
  grid.radius_index.assign(static_cast<std::size_t>(n), 0);
  Index row = 0;
  for (Index k = 0; k < shape.n_radii; ++k) {
    for (Index j = 0; j < shape.n_directions; ++j, ++row) {
      grid.points.row(row) = grid.radii(k) * grid.directions.row(j);
      grid.radius_index[static_cast<std::size_t>(row)] = k + 1;
    }
  }
  return grid;
}

void write_grid_csv(std::ostream& out, const ReferenceGrid& grid) {
  const Index d = grid.dim();
  out << "index,radius";
  for (Index c = 0; c < d; ++c) out << ",dir_" << c + 1;
  for (Index c = 0; c < d; ++c) out << ",x_" << c + 1;
  out << '\n';
  const Index n_dirs = grid.shape.n_directions;
  for (Index i = 0; i < grid.size(); ++i) {
    const Index k = grid.radius_index[static_cast<std::size_t>(i)];
    out << i << ',' << format_number(k == 0 ? 0.0 : grid.radius(k));
    for (Index c = 0; c < d; ++c)
      out << ',' << format_number(k == 0 ? 0.0 : grid.directions(i % n_dirs, c));
    for (Index c = 0; c < d; ++c) out << ',' << format_number(grid.points(i, c));
    out << '\n';
  }
}

}  // namespace colorenz
