#include "colorenz/cli.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "colorenz/curves.hpp"
#include "colorenz/error.hpp"
#include "colorenz/indices.hpp"
#include "colorenz/io.hpp"
#include "colorenz/potentials.hpp"

namespace colorenz {

namespace {

const std::vector<std::string> kVariants{"absolute", "conditional", "relative", "relative_conditional"};

TransportPlan solve(const RunConfig& config, const SampleMatrix& sample) {
  const GridShape shape = factorize(sample.rows(), sample.cols(), config.n_radii);
  return solve_assignment(sample, build_grid(shape, config.seed));
}

SampleMatrix load_x(const RunConfig& config) {
  if (config.input.empty()) throw ConfigError("--input is required");
  return load_sample(config.input, config.cols, config.rescale);
}

SampleMatrix load_y(const RunConfig& config) {
  if (config.input_y.empty()) throw ConfigError("--input-y is required for this command");
  return load_sample(config.input_y, config.cols_y, config.rescale);
}

void note_epsilon(const TransportPlan& plan, std::vector<std::string>& warnings) {
  if (plan.epsilon == 0.0)
    warnings.push_back("regularization scale epsilon is zero: tied affine pieces, extension uses the subgradient tie rule");
}

std::string curve_json(const StepCurve& curve, const CurveMetadata& meta) {
  std::ostringstream s;
  write_curve_json(s, curve, meta);
  return s.str();
}

}  // namespace

bool RunConfig::wants(const std::string& format) const {
  return std::find(formats.begin(), formats.end(), format) != formats.end();
}

SampleMatrix load_sample(const std::string& path, const std::vector<std::string>& cols, bool rescale) {
  const CsvTable table = read_csv_file(path);
  std::vector<std::string> names = cols.empty() ? table.header : cols;
  Eigen::MatrixXd values = numeric_columns(table, names);
  if (rescale) {
    for (Index c = 0; c < values.cols(); ++c) {
      const double top = values.col(c).maxCoeff();
      if (!(top > 0.0))
        throw DataError("cannot rescale column '" + names[static_cast<std::size_t>(c)] + "': its maximum is not positive");
      values.col(c) /= top;
    }
  }
  return SampleMatrix(std::move(values), std::move(names));
}

CommandResult cmd_ranks(const RunConfig& config) {
  const SampleMatrix x = load_x(config);
  const TransportPlan plan = solve(config, x);
  CommandResult result;
  note_epsilon(plan, result.warnings);

  std::ostringstream csv;
  csv << "id";
  for (const auto& name : x.names()) csv << ',' << name;
  csv << ",rank_norm";
  for (Index c = 0; c < x.cols(); ++c) csv << ",rank_dir_" << c + 1;
  csv << '\n';
  for (Index i = 0; i < x.rows(); ++i) {
    const Eigen::VectorXd g = center_outward_rank(plan, i);
    const double norm = plan.grid.radius(plan.rank_level(i));
    csv << i + 1;
    for (Index c = 0; c < x.cols(); ++c) csv << ',' << format_number(x.values()(i, c));
    csv << ',' << format_number(norm);
    for (Index c = 0; c < x.cols(); ++c) csv << ',' << format_number(norm > 0.0 ? g(c) / norm : 0.0);
    csv << '\n';
  }
  result.files.emplace_back("ranks.csv", csv.str());
  if (config.wants("json")) {
    nlohmann::ordered_json doc;
    doc["grid"] = {{"n_R", plan.grid.shape.n_radii},
                   {"n_S", plan.grid.shape.n_directions},
                   {"n_0", plan.grid.shape.n_origin},
                   {"d", plan.grid.shape.dim}};
    doc["seed"] = config.seed;
    doc["n"] = plan.size();
    doc["cost"] = plan.cost;
    doc["epsilon"] = plan.epsilon;
    result.files.emplace_back("ranks.json", doc.dump(2) + "\n");
  }
  return result;
}

CommandResult cmd_curves(const RunConfig& config, const std::string& which, const std::vector<std::string>& variants) {
  for (const auto& v : variants)
    if (std::find(kVariants.begin(), kVariants.end(), v) == kVariants.end())
      throw ConfigError("unknown curve variant '" + v + "'");
  if (which != "lorenz" && which != "lorenz_yx" && which != "kakwani")
    throw ConfigError("unknown curve kind '" + which + "' (lorenz, lorenz_yx or kakwani)");

  const SampleMatrix x = load_x(config);
  std::optional<SampleMatrix> y;
  if (which != "lorenz") y = load_y(config);
  const TransportPlan plan = solve(config, x);
  CommandResult result;
  note_epsilon(plan, result.warnings);

  StepCurve absolute;
  if (which == "lorenz") absolute = lorenz_curve(plan);
  else if (which == "kakwani") absolute = kakwani_curve(plan, *y);
  else absolute = lorenz_yx_curve(plan, *y, config.mode);
  const SampleMatrix& values = y ? *y : x;
  std::vector<std::string> columns = values.names();
  if (columns.empty())
    for (Index c = 0; c < values.cols(); ++c) columns.push_back("x" + std::to_string(c + 1));

  for (const auto& variant : variants) {
    StepCurve curve;
    if (variant == "absolute") {
      curve = absolute;
    } else if (variant == "conditional") {
      curve = conditionalize(absolute, plan.grid.shape);
    } else {
      try {
        curve = relativize(absolute, values.mean());
      } catch (const DataError& e) {
        result.warnings.push_back(which + " " + variant + " omitted: " + e.what());
        continue;
      }
      if (variant == "relative_conditional") curve = conditionalize(curve, plan.grid.shape);
    }
    const std::string stem = which + "_" + variant;
    if (config.wants("csv")) {
      std::ostringstream s;
      write_curve_csv(s, curve, columns);
      result.files.emplace_back(stem + ".csv", s.str());
    }
    if (config.wants("json")) {
      const CurveMetadata meta{which, variant, plan.grid.shape, config.seed, to_string(config.mode), columns};
      result.files.emplace_back(stem + ".json", curve_json(curve, meta));
    }
  }
  return result;
}

CommandResult cmd_indices(const RunConfig& config) {
  const SampleMatrix x = load_x(config);
  std::optional<SampleMatrix> y;
  if (!config.input_y.empty()) y = load_y(config);
  const TransportPlan plan = solve(config, x);
  CommandResult result;
  note_epsilon(plan, result.warnings);

  const IndexReport report = compute_indices(plan, y ? &*y : nullptr);
  result.warnings.insert(result.warnings.end(), report.warnings.begin(), report.warnings.end());
  if (config.wants("json")) {
    std::ostringstream s;
    write_index_json(s, report);
    result.files.emplace_back("indices.json", s.str());
  }
  if (config.wants("csv")) {
    std::ostringstream s;
    write_index_table_csv(s, {{config.label, report}});
    result.files.emplace_back("indices.csv", s.str());
  }
  return result;
}

CommandResult cmd_potential(const RunConfig& config) {
  const SampleMatrix x = load_x(config);
  std::optional<SampleMatrix> y;
  if (!config.input_y.empty()) y = load_y(config);
  const TransportPlan plan = solve(config, x);
  CommandResult result;
  note_epsilon(plan, result.warnings);

  std::vector<std::pair<std::string, PotentialCurve>> curves{{"potential", lorenz_potential_curve(plan)}};
  if (y) curves.emplace_back("potential_yx", lorenz_potential_yx_curve(plan, solve(config, *y), config.mode));

  for (const auto& [stem, curve] : curves) {
    if (config.wants("csv")) {
      std::ostringstream s;
      write_potential_csv(s, curve);
      result.files.emplace_back(stem + ".csv", s.str());
    }
    if (config.wants("json")) {
      const Eigen::VectorXd rel = curve.relative();
      nlohmann::ordered_json doc;
      doc["kind"] = stem;
      doc["grid"] = {{"n_R", plan.grid.shape.n_radii},
                     {"n_S", plan.grid.shape.n_directions},
                     {"n_0", plan.grid.shape.n_origin},
                     {"d", plan.grid.shape.dim}};
      doc["seed"] = config.seed;
      doc["mode"] = to_string(config.mode);
      auto& rows = doc["values"] = nlohmann::ordered_json::array();
      for (Index k = 0; k < curve.size(); ++k)
        rows.push_back({{"u", curve.radius(k)}, {"potential", curve.values(k)}, {"relative", rel(k)}});
      result.files.emplace_back(stem + ".json", doc.dump(2) + "\n");
    }
  }
  return result;
}

std::string cmd_simulate(const Generator& gen, Index n) {
  const SampleMatrix sample = draw(gen, n);
  std::ostringstream s;
  for (Index c = 0; c < sample.cols(); ++c) s << (c ? "," : "") << 'x' << c + 1;
  s << '\n';
  for (Index i = 0; i < sample.rows(); ++i) {
    for (Index c = 0; c < sample.cols(); ++c) s << (c ? "," : "") << format_number(sample.values()(i, c));
    s << '\n';
  }
  return s.str();
}

namespace {

void write_outputs(const std::string& dir, const OutputFiles& files) {
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw ConfigError("cannot create output directory '" + dir + "'");
  for (const auto& [name, content] : files) {
    const auto path = std::filesystem::path(dir) / name;
    std::ofstream f(path, std::ios::binary);
    if (!f) throw ConfigError("cannot write '" + path.string() + "'");
    f << content;
  }
}

void log_warnings(std::ostream& err, const std::vector<std::string>& warnings) {
  for (const auto& w : warnings) err << nlohmann::ordered_json{{"level", "warning"}, {"message", w}}.dump() << '\n';
}

void log_error(std::ostream& err, const char* kind, const std::string& message) {
  err << nlohmann::ordered_json{{"level", "error"}, {"kind", kind}, {"message", message}}.dump() << '\n';
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Center-outward Lorenz curves and concentration indices"};
  app.require_subcommand(1);

  RunConfig config;
  std::string cols, cols_y, mode = "subgradient", formats = "csv";

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--input", config.input, "CSV file with the X sample")->required();
    sub->add_option("--input-y", config.input_y, "CSV file with the Y sample");
    sub->add_option("--cols", cols, "comma-separated X columns (default: all)");
    sub->add_option("--cols-y", cols_y, "comma-separated Y columns (default: all)");
    sub->add_flag("--rescale", config.rescale, "divide each column by its maximum");
    sub->add_option("--nr", config.n_radii, "number of grid radii (default: automatic)");
    sub->add_option("--seed", config.seed, "grid seed");
    sub->add_option("--mode", mode, "extension mode: subgradient or moreau");
    sub->add_option("--out", config.out, "output directory");
    sub->add_option("--format", formats, "comma-separated output formats: csv, json");
  };

  auto* ranks = app.add_subcommand("ranks", "center-outward ranks of each observation");
  add_common(ranks);

  auto* curves = app.add_subcommand("curves", "Lorenz and Kakwani step curves");
  add_common(curves);
  std::string which = "lorenz", variants = "absolute,conditional,relative,relative_conditional";
  curves->add_option("--which", which, "lorenz, lorenz_yx or kakwani");
  curves->add_option("--variants", variants, "comma-separated subset of " + std::string("absolute,conditional,relative,relative_conditional"));

  auto* indices = app.add_subcommand("indices", "Gini, Pietra and Koshevoy-Mosler indices");
  add_common(indices);
  indices->add_option("--label", config.label, "row label of the index table");

  auto* potential = app.add_subcommand("potential", "Lorenz potential curves");
  add_common(potential);

  auto* simulate = app.add_subcommand("simulate", "draw a synthetic sample as CSV");
  std::string kind = "uniform_interval", center, sim_out;
  Index n = 0, dim = 1;
  Generator gen;
  simulate->add_option("--kind", kind, "uniform_interval, exponential, pareto, uniform_ball, spherical_gaussian, banana_mixture");
  simulate->add_option("--n", n, "sample size")->required();
  simulate->add_option("--dim", dim, "dimension (iid components for univariate kinds)");
  simulate->add_option("--seed", gen.seed, "random seed");
  simulate->add_option("--lower", gen.lower);
  simulate->add_option("--upper", gen.upper);
  simulate->add_option("--rate", gen.rate);
  simulate->add_option("--xm", gen.x_m);
  simulate->add_option("--alpha", gen.alpha);
  simulate->add_option("--center", center, "comma-separated center or mean");
  simulate->add_option("--scale", gen.scale, "ball radius or Gaussian standard deviation");
  simulate->add_option("--out", sim_out, "output file (default: standard output)");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    if (e.get_exit_code() == 0) {
      out << app.help();
      return 0;
    }
    log_error(err, "config", e.what());
    return 2;
  }

  try {
    if (simulate->parsed()) {
      gen.kind = parse_generator_kind(kind);
      gen.dim = dim;
      if (!center.empty()) {
        const auto parts = split_list(center);
        gen.center.resize(static_cast<Index>(parts.size()));
        for (std::size_t i = 0; i < parts.size(); ++i) {
          try {
            gen.center(static_cast<Index>(i)) = std::stod(parts[i]);
          } catch (const std::exception&) {
            throw ConfigError("bad --center value '" + parts[i] + "'");
          }
        }
        gen.dim = gen.center.size();
      }
      if (gen.kind == GeneratorKind::banana_mixture) gen.dim = 2;
      const std::string csv = cmd_simulate(gen, n);
      if (sim_out.empty() || sim_out == "-") {
        out << csv;
      } else {
        std::ofstream f(sim_out, std::ios::binary);
        if (!f) throw ConfigError("cannot write '" + sim_out + "'");
        f << csv;
      }
      return 0;
    }

    // an explicitly empty selection is an error, not "every column"
    auto selection = [](const std::string& text) {
      std::vector<std::string> names = split_list(text);
      if (names.empty() || std::any_of(names.begin(), names.end(), [](const auto& s) { return s.empty(); }))
        throw ConfigError("empty column selection");
      return names;
    };
    const CLI::App* active = app.get_subcommands().front();
    if (active->count("--cols") > 0) config.cols = selection(cols);
    if (active->count("--cols-y") > 0) config.cols_y = selection(cols_y);
    config.mode = parse_extension_mode(mode);
    config.formats = split_list(formats);
    for (const auto& f : config.formats)
      if (f != "csv" && f != "json") throw ConfigError("unknown format '" + f + "' (csv or json)");

    CommandResult result;
    if (ranks->parsed()) result = cmd_ranks(config);
    else if (curves->parsed()) result = cmd_curves(config, which, split_list(variants));
    else if (indices->parsed()) result = cmd_indices(config);
    else result = cmd_potential(config);

    log_warnings(err, result.warnings);
    write_outputs(config.out, result.files);
    for (const auto& [name, content] : result.files) out << (std::filesystem::path(config.out) / name).string() << '\n';
    return 0;
  } catch (const ConfigError& e) {
    log_error(err, "config", e.what());
    return 2;
  } catch (const DataError& e) {
    log_error(err, "data", e.what());
    return 3;
  } catch (const DegeneracyError& e) {
    log_error(err, "degeneracy", e.what());
    return 4;
  }
}

}  // namespace colorenz
