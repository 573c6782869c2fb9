// run_config.cpp

#include "run_config.hpp"

#include "ladderlab/errors.hpp"

#include <cmath>
#include <cstdlib>
#include <fstream>
#include <istream>

namespace ladderlab::cli {
namespace {

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\r");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\r");
  return s.substr(b, e - b + 1);
}

double parse_real(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  double x = 0.0;
  try {
    x = std::stod(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw DomainError("config: " + key + " is not a number: '" + value + "'");
  return x;
}

int parse_int(const std::string& key, const std::string& value) {
  std::size_t used = 0;
  int x = 0;
  try {
    x = std::stoi(value, &used);
  } catch (const std::exception&) {
    used = 0;
  }
  if (used == 0 || used != value.size()) throw DomainError("config: " + key + " is not an integer: '" + value + "'");
  return x;
}

}  // namespace

std::filesystem::path default_cache_path() {
  if (const char* xdg = std::getenv("XDG_CACHE_HOME"); xdg && *xdg) {
    return std::filesystem::path(xdg) / "ladderlab" / "zeta_grid.llz";
  }
  if (const char* home = std::getenv("HOME"); home && *home) {
    return std::filesystem::path(home) / ".cache" / "ladderlab" / "zeta_grid.llz";
  }
  return "zeta_grid.llz";
}

OutputFormat parse_format(const std::string& text) {
  if (text == "csv") return OutputFormat::csv;
  if (text == "json") return OutputFormat::json;
  throw DomainError("config: format must be csv or json, got '" + text + "'");
}

void apply_config_stream(RunConfig& config, std::istream& in, const std::string& origin) {
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    line = trim(line);
    if (line.empty() || line[0] == '#') continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos) {
      throw DomainError(origin + ":" + std::to_string(lineno) + ": expected key=value");
    }
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key == "cache_path") {
      config.cache_path = value;
    } else if (key == "tol") {
      config.tol = parse_real(key, value);
    } else if (key == "T0") {
      config.T0 = parse_real(key, value);
    } else if (key == "c0") {
      config.c0 = parse_real(key, value);
    } else if (key == "threads") {
      config.thread_budget = parse_int(key, value);
    } else if (key == "format") {
      config.output_format = parse_format(value);
    } else if (key == "max_height") {
      config.max_height = parse_real(key, value);
    } else {
      throw DomainError(origin + ":" + std::to_string(lineno) + ": unknown key '" + key + "'");
    }
  }
}

void apply_config_file(RunConfig& config, const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw DomainError("config: cannot read " + path.string());
  apply_config_stream(config, in, path.string());
}

void validate(const RunConfig& config) {
  if (config.cache_path.empty()) throw DomainError("config: cache_path is empty");
  if (!(config.tol >= 1e-10 && config.tol <= 1e-3)) throw DomainError("config: tol must be in [1e-10, 1e-3]");
  if (!(config.T0 >= 100.0) || !std::isfinite(config.T0)) throw DomainError("config: T0 must be >= 100");
  if (!std::isfinite(config.c0)) throw DomainError("config: c0 must be finite");
  if (config.thread_budget < 0) throw DomainError("config: threads must be >= 0");
  if (!(config.max_height > config.T0 && config.max_height <= 1e7)) {
    throw DomainError("config: max_height must be in (T0, 1e7]");
  }
}

RunConfig resolve_config(const std::optional<std::filesystem::path>& config_file, const ConfigOverrides& o) {
  RunConfig config;
  config.cache_path = default_cache_path();
  if (config_file) apply_config_file(config, *config_file);
  if (const char* env = std::getenv("LADDERLAB_CACHE"); env && *env) config.cache_path = env;
  if (o.cache_path) config.cache_path = *o.cache_path;
  if (o.tol) config.tol = *o.tol;
  if (o.T0) config.T0 = *o.T0;
  if (o.c0) config.c0 = *o.c0;
  if (o.thread_budget) config.thread_budget = *o.thread_budget;
  if (o.format) config.output_format = parse_format(*o.format);
  if (o.max_height) config.max_height = *o.max_height;
  if (o.no_build) config.allow_build = false;
  validate(config);
  return config;
}

}  // namespace ladderlab::cli
