#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "colorenz/simulate.hpp"
#include "colorenz/transport.hpp"

namespace colorenz {

struct RunConfig {
  std::string input;
  std::string input_y;
  std::vector<std::string> cols;    // empty: every column
  std::vector<std::string> cols_y;
  bool rescale = false;             // divide each column by its maximum
  std::optional<Index> n_radii;     // empty: automatic factorization
  std::uint64_t seed = 0;
  ExtensionMode mode = ExtensionMode::subgradient;
  std::string out = ".";
  std::vector<std::string> formats{"csv"};
  std::string label = "sample";

  bool wants(const std::string& format) const;
};

// File name and content, in emission order. Commands build every output in memory
// before anything is written, so a failing run leaves no files behind.
using OutputFiles = std::vector<std::pair<std::string, std::string>>;

struct CommandResult {
  OutputFiles files;
  std::vector<std::string> warnings;
};

// Reads the selected columns; with rescale, divides each by its maximum (which must be positive).
SampleMatrix load_sample(const std::string& path, const std::vector<std::string>& cols, bool rescale);

CommandResult cmd_ranks(const RunConfig& config);
// which: lorenz | lorenz_yx | kakwani. variants: absolute, conditional, relative, relative_conditional.
CommandResult cmd_curves(const RunConfig& config, const std::string& which, const std::vector<std::string>& variants);
CommandResult cmd_indices(const RunConfig& config);
CommandResult cmd_potential(const RunConfig& config);
std::string cmd_simulate(const Generator& gen, Index n);

// Full command line. Returns the exit code: 0 success, 2 configuration error, 3 data
// error, 4 numerical degeneracy. Warnings go to err as one JSON object per line.
int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace colorenz
