#include "isac/csv.hpp"

#include <charconv>
#include <istream>
#include <ostream>
#include <sstream>

#include "isac/types.hpp"

namespace isac {

std::string format_number(double v) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

CsvWriter::CsvWriter(std::ostream& os, std::vector<std::string> header)
    : os_(os), header_(std::move(header)) {
  if (header_.empty()) throw DimensionError("CSV header must not be empty");
}

void CsvWriter::comment(const std::string& text) {
  if (header_written_) throw Error("CSV comments must precede the header");
  os_ << "# " << text << '\n';
}

void CsvWriter::write_header() {
  for (std::size_t i = 0; i < header_.size(); ++i) {
    os_ << (i ? "," : "") << header_[i];
  }
  os_ << '\n';
  header_written_ = true;
}

void CsvWriter::row(const std::vector<CsvCell>& cells) {
  if (cells.size() != header_.size()) {
    throw DimensionError("CSV row width differs from header");
  }
  if (!header_written_) write_header();
  for (std::size_t i = 0; i < cells.size(); ++i) {
    if (i) os_ << ',';
    std::visit(
        [&](const auto& v) {
          using T = std::decay_t<decltype(v)>;
          if constexpr (std::is_same_v<T, double>) {
            os_ << format_number(v);
          } else {
            os_ << v;
          }
        },
        cells[i]);
  }
  os_ << '\n';
}

namespace {

std::vector<std::string> split_line(const std::string& line) {
  std::vector<std::string> out;
  std::istringstream in(line);
  std::string cell;
  while (std::getline(in, cell, ',')) out.push_back(cell);
  if (!line.empty() && line.back() == ',') out.emplace_back();
  return out;
}

}  // namespace

std::size_t CsvTable::column(const std::string& name) const {
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (header[i] == name) return i;
  }
  throw ConfigError("CSV has no column '" + name + "'");
}

double CsvTable::number(std::size_t row, const std::string& name) const {
  const std::string& s = rows.at(row).at(column(name));
  double v = 0.0;
  const auto res = std::from_chars(s.data(), s.data() + s.size(), v);
  if (res.ec != std::errc() || res.ptr != s.data() + s.size()) {
    throw ConfigError("CSV cell '" + s + "' in column '" + name +
                      "' is not a number");
  }
  return v;
}

CsvTable read_csv(std::istream& is) {
  CsvTable t;
  std::string line;
  int n = 0;
  while (std::getline(is, line)) {
    ++n;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line[0] == '#') {
      t.comments.push_back(line.size() > 1 && line[1] == ' ' ? line.substr(2)
                                                             : line.substr(1));
      continue;
    }
    auto cells = split_line(line);
    if (t.header.empty()) {
      t.header = std::move(cells);
    } else if (cells.size() != t.header.size()) {
      throw ConfigError("CSV line " + std::to_string(n) + ": expected " +
                        std::to_string(t.header.size()) + " cells, got " +
                        std::to_string(cells.size()));
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  if (t.header.empty()) throw ConfigError("CSV has no header");
  return t;
}

}  // namespace isac
