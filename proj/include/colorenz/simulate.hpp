#pragma once

#include <cstdint>
#include <string>

#include <Eigen/Core>

#include "colorenz/transport.hpp"

namespace colorenz {

enum class GeneratorKind { uniform_interval, exponential, pareto, uniform_ball, spherical_gaussian, banana_mixture };

GeneratorKind parse_generator_kind(const std::string& text);
std::string to_string(GeneratorKind kind);

// Distribution with its parameters and seed. The univariate kinds draw dim iid
// components; uniform_ball and spherical_gaussian use center and scale; the banana
// mixture is fixed and two-dimensional.
struct Generator {
  GeneratorKind kind = GeneratorKind::uniform_interval;
  Index dim = 1;
  double lower = 0.0;   // uniform_interval
  double upper = 1.0;
  double rate = 2.0;    // exponential
  double x_m = 0.25;    // pareto
  double alpha = 2.0;
  Eigen::VectorXd center;  // uniform_ball, spherical_gaussian (zero when empty)
  double scale = 1.0;      // ball radius or Gaussian standard deviation
  std::uint64_t seed = 0;

  // Throws ConfigError for invalid parameters.
  void validate() const;
};

Generator uniform_interval(double lower, double upper, std::uint64_t seed, Index dim = 1);
Generator exponential(double rate, std::uint64_t seed, Index dim = 1);
Generator pareto(double x_m, double alpha, std::uint64_t seed, Index dim = 1);
Generator uniform_ball(const Eigen::VectorXd& center, double radius, std::uint64_t seed);
Generator spherical_gaussian(const Eigen::VectorXd& mean, double sd, std::uint64_t seed);

// Equal-weight mixture of three normals whose means sit on the parabola y = x^2/2 at
// x = -1.5, 0, 1.5, each elongated along the parabola's tangent (sd 0.6 along, 0.2 across).
// Illustrative only.
Generator banana_mixture(std::uint64_t seed);

// Bit-identical for identical (generator, n).
SampleMatrix draw(const Generator& gen, Index n);

// Relative center-outward Lorenz function of Uniform[0,1], Exponential(2) or Pareto(1/4, 2).
double closed_form_lorenz_pm(GeneratorKind kind, double u);
// Classical Lorenz function of the same three distributions.
double closed_form_classical_lorenz(GeneratorKind kind, double u);
// Relative center-outward Lorenz potential Lambda(u)/Lambda(1) of the same three distributions.
double closed_form_relative_potential(GeneratorKind kind, double u);

}  // namespace colorenz
