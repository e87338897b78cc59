#include "qmetro/config.hpp"

#include "qmetro/error.hpp"

#include <charconv>
#include <cmath>
#include <fstream>
#include <sstream>

namespace qmetro {

namespace {

std::string trim(const std::string& s) {
  const auto first = s.find_first_not_of(" \t\r\n");
  if (first == std::string::npos) return "";
  const auto last = s.find_last_not_of(" \t\r\n");
  return s.substr(first, last - first + 1);
}

std::vector<std::string> split_list(const std::string& text) {
  std::vector<std::string> parts;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) parts.push_back(trim(item));
  return parts;
}

}  // namespace

ConfigFile ConfigFile::parse(std::istream& in, const std::string& source) {
  ConfigFile cfg;
  cfg.source_ = source;
  std::string raw;
  int line = 0;
  while (std::getline(in, raw)) {
    ++line;
    const auto hash = raw.find('#');
    const std::string text = trim(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (text.empty()) continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      fail(ErrorKind::ConfigError,
           source + ":" + std::to_string(line) + ": expected 'key = value', got '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    if (key.empty()) {
      fail(ErrorKind::ConfigError, source + ":" + std::to_string(line) + ": empty key");
    }
    if (cfg.entries_.count(key)) {
      fail(ErrorKind::ConfigError, source + ":" + std::to_string(line) + ": field '" + key +
                                       "' repeated (first on line " +
                                       std::to_string(cfg.entries_[key].line) + ")");
    }
    cfg.entries_[key] = {trim(text.substr(eq + 1)), line};
  }
  return cfg;
}

ConfigFile ConfigFile::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ConfigError, "cannot open config file '" + path + "'");
  return parse(in, path);
}

void ConfigFile::bad(const std::string& key, const std::string& why) const {
  const auto it = entries_.find(key);
  const std::string where =
      it == entries_.end() ? source_ : source_ + ":" + std::to_string(it->second.line);
  fail(ErrorKind::ConfigError, where + ": field '" + key + "': " + why);
}

double ConfigFile::to_double(const std::string& key, const std::string& text) const {
  double v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end || !std::isfinite(v)) {
    bad(key, "expected a number, got '" + text + "'");
  }
  return v;
}

std::string ConfigFile::get_string(const std::string& key, const std::string& fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : it->second.value;
}

double ConfigFile::get_double(const std::string& key, double fallback) const {
  const auto it = entries_.find(key);
  return it == entries_.end() ? fallback : to_double(key, it->second.value);
}

long ConfigFile::get_int(const std::string& key, long fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& text = it->second.value;
  long v = 0;
  const char* end = text.data() + text.size();
  const auto [ptr, ec] = std::from_chars(text.data(), end, v);
  if (ec != std::errc() || ptr != end) bad(key, "expected an integer, got '" + text + "'");
  return v;
}

bool ConfigFile::get_bool(const std::string& key, bool fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  const std::string& v = it->second.value;
  if (v == "true" || v == "yes" || v == "1" || v == "on") return true;
  if (v == "false" || v == "no" || v == "0" || v == "off") return false;
  bad(key, "expected true or false, got '" + v + "'");
}

std::vector<double> ConfigFile::get_doubles(const std::string& key,
                                            const std::vector<double>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<double> out;
  for (const std::string& item : split_list(it->second.value)) out.push_back(to_double(key, item));
  if (out.empty()) bad(key, "empty list");
  return out;
}

std::vector<std::string> ConfigFile::get_strings(const std::string& key,
                                                 const std::vector<std::string>& fallback) const {
  const auto it = entries_.find(key);
  if (it == entries_.end()) return fallback;
  std::vector<std::string> out = split_list(it->second.value);
  for (const std::string& item : out) {
    if (item.empty()) bad(key, "empty list item");
  }
  return out;
}

void ConfigFile::require_known(const std::set<std::string>& known) const {
  for (const auto& [key, entry] : entries_) {
    if (!known.count(key)) {
      fail(ErrorKind::ConfigError,
           source_ + ":" + std::to_string(entry.line) + ": unknown field '" + key + "'");
    }
  }
}

}  // namespace qmetro
