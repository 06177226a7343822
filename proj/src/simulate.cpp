#include "colorenz/simulate.hpp"

#include <cmath>
#include <numbers>

#include "colorenz/error.hpp"
#include "colorenz/random.hpp"

namespace colorenz {

namespace {

// x ln x with the continuous value 0 at x = 0.
double xlogx(double x) { return x > 0.0 ? x * std::log(x) : 0.0; }

void require_unit(double u) {
  if (!(u >= 0.0 && u <= 1.0)) throw ConfigError("u must lie in [0, 1]");
}

Eigen::VectorXd center_or_zero(const Generator& gen) {
  return gen.center.size() == 0 ? Eigen::VectorXd::Zero(gen.dim) : gen.center;
}

Eigen::VectorXd gaussian_vector(CounterRng& rng, Index dim) {
  Eigen::VectorXd z(dim);
  for (Index c = 0; c < dim; ++c) z(c) = rng.normal();
  return z;
}

}  // namespace

GeneratorKind parse_generator_kind(const std::string& text) {
  if (text == "uniform_interval") return GeneratorKind::uniform_interval;
  if (text == "exponential") return GeneratorKind::exponential;
  if (text == "pareto") return GeneratorKind::pareto;
  if (text == "uniform_ball") return GeneratorKind::uniform_ball;
  if (text == "spherical_gaussian") return GeneratorKind::spherical_gaussian;
  if (text == "banana_mixture") return GeneratorKind::banana_mixture;
  throw ConfigError("unknown generator: " + text);
}

std::string to_string(GeneratorKind kind) {
  switch (kind) {
    case GeneratorKind::uniform_interval: return "uniform_interval";
    case GeneratorKind::exponential: return "exponential";
    case GeneratorKind::pareto: return "pareto";
    case GeneratorKind::uniform_ball: return "uniform_ball";
    case GeneratorKind::spherical_gaussian: return "spherical_gaussian";
    case GeneratorKind::banana_mixture: return "banana_mixture";
  }
  return "unknown";
}

void Generator::validate() const {
  if (dim < 1) throw ConfigError("generator dimension must be positive");
  if (center.size() != 0 && center.size() != dim) throw ConfigError("center dimension does not match");
  switch (kind) {
    case GeneratorKind::uniform_interval:
      if (!(std::isfinite(lower) && std::isfinite(upper) && lower < upper))
        throw ConfigError("uniform interval needs finite lower < upper");
      break;
    case GeneratorKind::exponential:
      if (!(rate > 0.0 && std::isfinite(rate))) throw ConfigError("exponential rate must be positive");
      break;
    case GeneratorKind::pareto:
      if (!(x_m > 0.0 && std::isfinite(x_m))) throw ConfigError("Pareto scale must be positive");
      if (!(alpha > 1.0 && std::isfinite(alpha))) throw ConfigError("Pareto shape must exceed 1 for a finite mean");
      break;
    case GeneratorKind::uniform_ball:
    case GeneratorKind::spherical_gaussian:
      if (!(scale > 0.0 && std::isfinite(scale))) throw ConfigError("scale must be positive");
      break;
    case GeneratorKind::banana_mixture:
      if (dim != 2) throw ConfigError("banana mixture is two-dimensional");
      break;
  }
}

Generator uniform_interval(double lower, double upper, std::uint64_t seed, Index dim) {
  Generator g;
  g.kind = GeneratorKind::uniform_interval;
  g.lower = lower;
  g.upper = upper;
  g.seed = seed;
  g.dim = dim;
  return g;
}

Generator exponential(double rate, std::uint64_t seed, Index dim) {
  Generator g;
  g.kind = GeneratorKind::exponential;
  g.rate = rate;
  g.seed = seed;
  g.dim = dim;
  return g;
}

Generator pareto(double x_m, double alpha, std::uint64_t seed, Index dim) {
  Generator g;
  g.kind = GeneratorKind::pareto;
  g.x_m = x_m;
  g.alpha = alpha;
  g.seed = seed;
  g.dim = dim;
  return g;
}

Generator uniform_ball(const Eigen::VectorXd& center, double radius, std::uint64_t seed) {
  Generator g;
  g.kind = GeneratorKind::uniform_ball;
  g.center = center;
  g.dim = center.size();
  g.scale = radius;
  g.seed = seed;
  return g;
}

Generator spherical_gaussian(const Eigen::VectorXd& mean, double sd, std::uint64_t seed) {
  Generator g;
  g.kind = GeneratorKind::spherical_gaussian;
  g.center = mean;
  g.dim = mean.size();
  g.scale = sd;
  g.seed = seed;
  return g;
}

Generator banana_mixture(std::uint64_t seed) {
  Generator g;
  g.kind = GeneratorKind::banana_mixture;
  g.dim = 2;
  g.seed = seed;
  return g;
}

SampleMatrix draw(const Generator& gen, Index n) {
  gen.validate();
  if (n < 2) throw ConfigError("sample size must be at least 2");
  CounterRng rng(gen.seed, static_cast<std::uint64_t>(gen.kind));
  Eigen::MatrixXd x(n, gen.dim);
  const Eigen::VectorXd center = center_or_zero(gen);

  for (Index i = 0; i < n; ++i) {
    switch (gen.kind) {
      case GeneratorKind::uniform_interval:
        for (Index c = 0; c < gen.dim; ++c) x(i, c) = gen.lower + (gen.upper - gen.lower) * rng.uniform();
        break;
      case GeneratorKind::exponential:
        for (Index c = 0; c < gen.dim; ++c) x(i, c) = -std::log(rng.uniform()) / gen.rate;
        break;
      case GeneratorKind::pareto:
        for (Index c = 0; c < gen.dim; ++c) x(i, c) = gen.x_m * std::pow(rng.uniform(), -1.0 / gen.alpha);
        break;
      case GeneratorKind::uniform_ball: {
        Eigen::VectorXd z = gaussian_vector(rng, gen.dim);
        const double r = gen.scale * std::pow(rng.uniform(), 1.0 / static_cast<double>(gen.dim));
        x.row(i) = (center + r * z / z.norm()).transpose();
        break;
      }
      case GeneratorKind::spherical_gaussian:
        x.row(i) = (center + gen.scale * gaussian_vector(rng, gen.dim)).transpose();
        break;
      case GeneratorKind::banana_mixture: {
        const auto component = static_cast<int>(rng.uniform() * 3.0);
        const double t = 1.5 * (component - 1);
        Eigen::Vector2d tangent(1.0, t);
        tangent.normalize();
        const Eigen::Vector2d normal(-tangent.y(), tangent.x());
        const double along = 0.6 * rng.normal();
        const double across = 0.2 * rng.normal();
        const Eigen::Vector2d mean(t, 0.5 * t * t);
        x.row(i) = (mean + along * tangent + across * normal).transpose();
        break;
      }
    }
  }
  return SampleMatrix(std::move(x));
}

double closed_form_lorenz_pm(GeneratorKind kind, double u) {
  require_unit(u);
  switch (kind) {
    case GeneratorKind::uniform_interval:
      return u;
    case GeneratorKind::exponential:
      return (u * (2.0 + std::log(4.0)) + xlogx(1.0 - u) - xlogx(1.0 + u)) / 2.0;
    case GeneratorKind::pareto:
      return std::numbers::sqrt2 * (std::sqrt(1.0 + u) - std::sqrt(1.0 - u)) / 2.0;
    default:
      throw ConfigError("no closed-form Lorenz function for " + to_string(kind));
  }
}

double closed_form_classical_lorenz(GeneratorKind kind, double u) {
  require_unit(u);
  switch (kind) {
    case GeneratorKind::uniform_interval:
      return u * u;
    case GeneratorKind::exponential:
      return xlogx(1.0 - u) + u;
    case GeneratorKind::pareto:
      return 1.0 - std::sqrt(1.0 - u);
    default:
      throw ConfigError("no closed-form classical Lorenz function for " + to_string(kind));
  }
}

double closed_form_relative_potential(GeneratorKind kind, double u) {
  require_unit(u);
  switch (kind) {
    case GeneratorKind::uniform_interval:
      return u * u;
    case GeneratorKind::exponential: {
      const double lo = (1.0 - u) / 2.0;
      const double hi = (1.0 + u) / 2.0;
      // (1-u) ln((1-u)/2) / 4 = xlogx(lo) / 2
      return (xlogx(lo) / 2.0 + xlogx(hi) / 2.0 + std::numbers::ln2 / 2.0) * 2.0 / std::numbers::ln2;
    }
    case GeneratorKind::pareto: {
      const double s = std::numbers::sqrt2;
      return (-(std::sqrt(1.0 + u) + std::sqrt(1.0 - u)) / (2.0 * s) + 1.0 / s) / (1.0 / s - 0.5);
    }
    default:
      throw ConfigError("no closed-form Lorenz potential for " + to_string(kind));
  }
}

}  // namespace colorenz
