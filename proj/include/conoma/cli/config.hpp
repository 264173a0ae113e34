#pragma once

#include <cstdint>
#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <set>
#include <stdexcept>
#include <string>

namespace conoma::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 2;
inline constexpr int kExitIoError = 3;

// A bad or missing key. `line` is 0 for keys that came from the command line
// or were absent altogether.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, int line, const std::string& what);
  const std::string& key() const { return key_; }
  int line() const { return line_; }

 private:
  std::string key_;
  int line_;
};

class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Flat `key = value` configuration with `#` comments. Keys are namespaced
// with dots, e.g. `scenario.p_dbm`.
class Config {
 public:
  struct Entry {
    std::string value;
    int line = 0;
  };

  static Config parse(std::istream& in);
  static Config load(const std::filesystem::path& path);

  // Command-line override; replaces any value from the file.
  void set(const std::string& key, std::string value);

  // Parses a `key=value` override.
  void set_assignment(const std::string& assignment);

  bool has(const std::string& key) const;
  std::optional<double> get_double(const std::string& key) const;
  double get_double(const std::string& key, double fallback) const;
  double require_double(const std::string& key) const;
  std::optional<std::string> get_string(const std::string& key) const;
  bool get_bool(const std::string& key, bool fallback) const;

  // Rejects keys outside `known`, naming the first offender.
  void check_known(const std::set<std::string>& known) const;

  const std::map<std::string, Entry>& entries() const { return entries_; }

 private:
  const Entry* find(const std::string& key) const;
  std::map<std::string, Entry> entries_;
};

// Locale-independent equivalent of printf("%.9g").
std::string format_number(double value);

}  // namespace conoma::cli
