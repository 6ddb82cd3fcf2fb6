#pragma once

#include "gshrink/csv.hpp"

#include <gammashrink/model.hpp>

#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace gshrink {

enum ExitCode : int { kExitOk = 0, kExitUsage = 2, kExitData = 3, kExitNumeric = 4 };

class UsageError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-group summary of individual positive records.
struct GroupRow {
  std::vector<std::string> keys;  // group column first, then extra keys
  double mean = 0.0;
  long count = 0;
};

// Groups rows by (group column, extra key columns) in order of first
// appearance. Every value must be positive.
std::vector<GroupRow> group_records(const CsvTable& table, const std::string& group_column,
                                    const std::string& value_column,
                                    const std::vector<std::string>& extra_keys);

// Reads columns y, delta and optional eta; other columns are ignored.
gammashrink::Observations read_observations(const CsvTable& table);

// "fixed:V" or "gamma:SHAPE,RATE".
gammashrink::GlobalParam parse_global(std::string_view text);

struct Grid {
  double min = 0.0;
  double max = 0.0;
  int points = 0;
  bool log_scale = true;

  std::vector<double> values() const;
};

// "MIN:MAX:POINTS".
Grid parse_grid(std::string_view text, bool log_scale);

// Runs the command line (args excludes the program name) and returns the
// process exit code. Regular output goes to `out`, diagnostics to `err`.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace gshrink
