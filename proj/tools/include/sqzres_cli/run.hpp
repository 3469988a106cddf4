#pragma once

#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "sqzres_cli/config.hpp"

namespace sqzres::cli {

enum ExitCode { kSuccess = 0, kFailure = 1, kAdvisory = 2 };

struct RunOptions {
  std::filesystem::path out_dir;  // empty means cfg.output_dir
  bool strict = false;            // advisories become exit code 2
};

// Executes the configured experiment, writes its files and prints a summary to
// `out`; errors and advisories go to `err`.
int run(const RunConfig& cfg, const RunOptions& opts, std::ostream& out, std::ostream& err);

// CSV helpers: comma-separated, header row, LF endings, 12 significant digits.
std::string csv_number(double v);
void write_csv(const std::filesystem::path& path, const std::vector<std::string>& header,
               const std::vector<std::vector<std::string>>& rows);

}  // namespace sqzres::cli
