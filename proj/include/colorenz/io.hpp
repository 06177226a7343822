#pragma once

#include <iosfwd>
#include <string>
#include <string_view>
#include <vector>

#include <Eigen/Core>

namespace colorenz {

// Shortest decimal representation that parses back to the same double.
std::string format_number(double value);

// Comma-separated table with a mandatory header row.
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;
  std::vector<std::size_t> line_numbers;  // source line of each row, 1-based

  // Column position by header name; throws ConfigError if absent.
  std::size_t column(std::string_view name) const;
};

// Throws DataError (with the offending line number) on ragged rows.
CsvTable read_csv(std::istream& in);
CsvTable read_csv_file(const std::string& path);

// Parses the named columns as finite doubles into an (rows x columns) matrix.
// An empty selection picks every column. Throws ConfigError for unknown or empty
// selections and DataError for non-numeric or non-finite cells.
Eigen::MatrixXd numeric_columns(const CsvTable& table, const std::vector<std::string>& names);

std::vector<std::string> split_list(std::string_view text, char sep = ',');

}  // namespace colorenz
