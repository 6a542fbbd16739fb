#ifndef EFFDIM_CLI_CSV_HPP
#define EFFDIM_CLI_CSV_HPP

#include <filesystem>
#include <string>
#include <string_view>
#include <vector>

namespace effdim::cli {

// Shortest decimal string that parses back to the same double.
std::string format_double(double value);
double parse_double(std::string_view text);

// Header plus rows of already formatted cells. Written with LF line
// endings and no quoting (cells never contain commas).
struct CsvTable {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  std::size_t column(std::string_view name) const;  // throws if absent
  std::vector<double> numeric_column(std::string_view name) const;
};

std::string to_csv(const CsvTable& table);
// Throws Error(InvalidInput) for an empty document, a missing header or
// ragged rows.
CsvTable parse_csv(std::string_view text);

void write_file(const std::filesystem::path& path, std::string_view contents);
std::string read_file(const std::filesystem::path& path);

}  // namespace effdim::cli

#endif  // EFFDIM_CLI_CSV_HPP
