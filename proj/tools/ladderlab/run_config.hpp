// run_config.hpp
//
// Settings shared by every subcommand. Precedence, lowest first: built-in
// defaults, the key=value config file, the LADDERLAB_CACHE environment
// variable (cache path only), command-line flags.
//
// Config file keys: cache_path, tol, T0, c0, threads, format, max_height.
// Blank lines and lines starting with '#' are ignored.

#pragma once

#include <filesystem>
#include <iosfwd>
#include <optional>
#include <string>

namespace ladderlab::cli {

enum class OutputFormat { csv, json };

struct RunConfig {
  std::filesystem::path cache_path;
  double tol = 1e-6;
  double T0 = 1e3;
  double c0 = 0.0;
  int thread_budget = 0;  // 0: OpenMP default
  OutputFormat output_format = OutputFormat::csv;
  double max_height = 1.3e6;
  bool allow_build = true;
};

// Flag values left unset by the user.
struct ConfigOverrides {
  std::optional<std::string> cache_path;
  std::optional<double> tol;
  std::optional<double> T0;
  std::optional<double> c0;
  std::optional<int> thread_budget;
  std::optional<std::string> format;
  std::optional<double> max_height;
  bool no_build = false;
};

std::filesystem::path default_cache_path();

// Throws DomainError on unknown keys or malformed values.
void apply_config_stream(RunConfig& config, std::istream& in, const std::string& origin);
void apply_config_file(RunConfig& config, const std::filesystem::path& path);

OutputFormat parse_format(const std::string& text);

// Throws DomainError naming the first invalid field.
void validate(const RunConfig& config);

// Defaults, then config file (if given), env, overrides; validated.
RunConfig resolve_config(const std::optional<std::filesystem::path>& config_file,
                         const ConfigOverrides& overrides);

}  // namespace ladderlab::cli
