#pragma once

#include <istream>
#include <stdexcept>
#include <string>
#include <vector>

namespace gshrink {

// Malformed input. `line` is 1-based and counts the header.
class DataError : public std::runtime_error {
 public:
  DataError(const std::string& what, long line = 0)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + what : what),
        line_(line) {}
  long line() const { return line_; }

 private:
  long line_;
};

// Comma-separated table with a mandatory header row. Fields may be wrapped in
// double quotes ("" escapes a quote). Blank lines are skipped.
class CsvTable {
 public:
  static CsvTable read(std::istream& in);
  static CsvTable read_file(const std::string& path);

  const std::vector<std::string>& header() const { return header_; }
  std::size_t rows() const { return rows_.size(); }
  const std::vector<std::string>& row(std::size_t i) const { return rows_[i]; }
  long line_of(std::size_t i) const { return lines_[i]; }

  // Column index, or -1 when absent.
  int column(const std::string& name) const;
  int require_column(const std::string& name) const;

  // Parses a field as a finite double ('.' decimal, exponent allowed).
  double number(std::size_t row, int col) const;

 private:
  std::vector<std::string> header_;
  std::vector<std::vector<std::string>> rows_;
  std::vector<long> lines_;
};

std::vector<std::string> split_csv_line(const std::string& line);
std::string csv_escape(const std::string& field);
// Shortest representation that reads back to the same double.
std::string format_double(double x);

}  // namespace gshrink
