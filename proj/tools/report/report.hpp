#pragma once

#include <filesystem>
#include <map>
#include <stdexcept>
#include <string>

#include "config.hpp"
#include "json.hpp"

namespace rank1lab::report {

inline constexpr const char* kSchemaName = "rank1lab.report";
inline constexpr int kSchemaVersion = 1;

using Json = nlohmann::ordered_json;

/// Output directory missing and not creatable, or a file could not be written.
class OutputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Subcommands understood by run_command. `target` is the model name for
/// ellipticity, injectivity and pc-check and must be empty otherwise.
bool is_command(const std::string& command);
bool command_takes_model(const std::string& command);

struct RunOutcome {
  Json report;
  /// 0 pass, 1 findings (see below).
  int exit_code = 0;
  /// Extra files for the output directory, by file name (CSV exports).
  std::map<std::string, std::string> files;
};

/// Runs a subcommand. Single-target subcommands exit 1 iff they produce a raw
/// finding (violation, certificate, failed check, nonpositive pressure product);
/// `all` exits 1 iff some finding contradicts a model's declared ellipticity
/// class. Throws ConfigError for unknown commands or models.
RunOutcome run_command(const std::string& command, const std::string& target,
                       const RunConfig& cfg);

/// Pretty-printed report with a trailing newline.
std::string dump(const Json& report);

/// Copy of the report without the `meta` block.
Json strip_meta(const Json& report);

/// Writes report.json and the extra files into `dir`, each through a
/// temporary file and a rename. Throws OutputError.
void write_outputs(const RunOutcome& outcome, const std::filesystem::path& dir);

/// %.17g with '.' decimal separator.
std::string format_number(double v);

}  // namespace rank1lab::report
