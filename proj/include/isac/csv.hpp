#pragma once

#include <iosfwd>
#include <string>
#include <variant>
#include <vector>

namespace isac {

using CsvCell = std::variant<std::string, double, long long>;

/// Comma-separated output with a fixed header. Doubles use the shortest
/// representation that round-trips, so files are byte-stable across runs.
/// Cells must not contain commas or newlines.
class CsvWriter {
 public:
  CsvWriter(std::ostream& os, std::vector<std::string> header);

  /// Metadata line "# text", allowed only before the header is written.
  void comment(const std::string& text);
  void row(const std::vector<CsvCell>& cells);

 private:
  void write_header();

  std::ostream& os_;
  std::vector<std::string> header_;
  bool header_written_ = false;
};

std::string format_number(double v);

struct CsvTable {
  std::vector<std::string> comments;  // without the leading '#'
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  /// Index of a header column; throws ConfigError when absent.
  std::size_t column(const std::string& name) const;
  double number(std::size_t row, const std::string& name) const;
};

/// Reads what CsvWriter produces. Throws ConfigError on ragged rows.
CsvTable read_csv(std::istream& is);

}  // namespace isac
