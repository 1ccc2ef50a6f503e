#pragma once

// Command-line front end: configuration, suite dispatch, kernel dumps.
//
// Config files are flat "key = value" text; '#' and ';' start comments.
// Precedence is flags > file > built-in defaults.

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include "cylqft/suites.hpp"

namespace cylqft::cli {

enum ExitCode : int { kOk = 0, kCheckFailure = 1, kUsage = 2 };

struct RunConfig {
  int n_max = 8;
  int K = 64;
  std::size_t hbar_trunc = 4;
  int band_limit = 8;
  std::uint64_t seed = 0;
  std::map<std::string, double> tolerances;  // tol_* overrides
  std::filesystem::path output_dir = ".";
  bool deterministic = false;

  bool operator==(const RunConfig&) const = default;
};

/// Configuration problem tied to a key (or to a line of a config file).
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what)
      : std::runtime_error(key + ": " + what), key_(std::move(key)) {}
  const std::string& key() const { return key_; }

 private:
  std::string key_;
};

using KeyValues = std::map<std::string, std::string>;

/// Parses "key = value" lines. Throws ConfigError on malformed lines and
/// duplicate keys.
KeyValues parse_key_values(const std::string& text);
KeyValues read_config_file(const std::filesystem::path& path);

/// Applies file values, then flag values, over the defaults, and validates.
RunConfig parse_config(const KeyValues& file_values, const KeyValues& flag_values = {});

/// Throws ConfigError naming the offending key.
void validate(const RunConfig& cfg);

/// Effective configuration in the file format; parse_config of the output
/// reproduces cfg.
std::string dump_config(const RunConfig& cfg);

SuiteOptions to_suite_options(const RunConfig& cfg);

/// Recognised tolerance keys.
const std::vector<std::string>& tolerance_keys();

/// Writes to a sibling temporary file and renames it over path.
void write_atomic(const std::filesystem::path& path, const std::string& content);

const std::vector<std::string>& kernel_names();

/// CSV grid "u_sep,v_sep,value" over the midpoints of an n x n grid on
/// (-2pi, 2pi)^2. Throws std::invalid_argument for unknown kernels or n < 1.
std::string kernel_csv(const std::string& name, int n);

/// Entry point used by main(); returns the process exit status.
int run(int argc, const char* const* argv, std::ostream& out, std::ostream& err);

}  // namespace cylqft::cli
