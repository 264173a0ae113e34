#include "conoma/cli/config.hpp"

#include <charconv>
#include <fstream>
#include <sstream>

namespace conoma::cli {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r");
  if (first == std::string::npos) return {};
  const auto last = s.find_last_not_of(" \t\r");
  return s.substr(first, last - first + 1);
}

std::string where(int line) {
  return line > 0 ? " (line " + std::to_string(line) + ")" : "";
}

}  // namespace

ConfigError::ConfigError(std::string key, int line, const std::string& what)
    : std::runtime_error(what), key_(std::move(key)), line_(line) {}

Config Config::parse(std::istream& in) {
  Config cfg;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    if (const auto hash = raw.find('#'); hash != std::string::npos) {
      raw.erase(hash);
    }
    const std::string text = trim(raw);
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw ConfigError(text, line,
                        "line " + std::to_string(line) + ": expected `key = value`, got `" +
                            text + "`");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key.empty()) {
      throw ConfigError("", line, "line " + std::to_string(line) + ": empty key");
    }
    if (auto it = cfg.entries_.find(key); it != cfg.entries_.end()) {
      throw ConfigError(key, line,
                        "duplicate key `" + key + "`" + where(line) +
                            ", first set on line " + std::to_string(it->second.line));
    }
    cfg.entries_[key] = {value, line};
  }
  return cfg;
}

Config Config::load(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw IoError("cannot open config file " + path.string());
  return parse(in);
}

void Config::set(const std::string& key, std::string value) {
  entries_[key] = {std::move(value), 0};
}

void Config::set_assignment(const std::string& assignment) {
  const auto eq = assignment.find('=');
  if (eq == std::string::npos || trim(assignment.substr(0, eq)).empty()) {
    throw ConfigError(assignment, 0,
                      "override `" + assignment + "` must have the form key=value");
  }
  set(trim(assignment.substr(0, eq)), trim(assignment.substr(eq + 1)));
}

const Config::Entry* Config::find(const std::string& key) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? nullptr : &it->second;
}

bool Config::has(const std::string& key) const { return find(key) != nullptr; }

std::optional<double> Config::get_double(const std::string& key) const {
  const Entry* e = find(key);
  if (e == nullptr) return std::nullopt;
  double value = 0.0;
  const char* begin = e->value.data();
  const char* end = begin + e->value.size();
  // from_chars rejects a leading '+'.
  if (begin != end && *begin == '+') ++begin;
  const auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || begin == end) {
    throw ConfigError(key, e->line,
                      "key `" + key + "`" + where(e->line) + ": `" + e->value +
                          "` is not a number");
  }
  return value;
}

double Config::get_double(const std::string& key, double fallback) const {
  return get_double(key).value_or(fallback);
}

double Config::require_double(const std::string& key) const {
  if (auto v = get_double(key)) return *v;
  throw ConfigError(key, 0, "missing required key `" + key + "`");
}

std::optional<std::string> Config::get_string(const std::string& key) const {
  const Entry* e = find(key);
  if (e == nullptr) return std::nullopt;
  return e->value;
}

bool Config::get_bool(const std::string& key, bool fallback) const {
  const Entry* e = find(key);
  if (e == nullptr) return fallback;
  if (e->value == "true" || e->value == "1" || e->value == "yes") return true;
  if (e->value == "false" || e->value == "0" || e->value == "no") return false;
  throw ConfigError(key, e->line,
                    "key `" + key + "`" + where(e->line) + ": `" + e->value +
                        "` is not a boolean");
}

void Config::check_known(const std::set<std::string>& known) const {
  for (const auto& [key, entry] : entries_) {
    if (known.count(key) == 0) {
      throw ConfigError(key, entry.line,
                        "unknown key `" + key + "`" + where(entry.line));
    }
  }
}

std::string format_number(double value) {
  char buf[64];
  const auto [ptr, ec] =
      std::to_chars(buf, buf + sizeof(buf), value, std::chars_format::general, 9);
  if (ec != std::errc()) return "nan";
  return std::string(buf, ptr);
}

}  // namespace conoma::cli
