#pragma once

#include <istream>
#include <map>
#include <set>
#include <string>
#include <vector>

namespace qmetro {

/// Flat `key = value` text with `#` comments; lists are comma separated and
/// numbers use the C locale. Lookup failures throw config-error naming the
/// source line and field.
class ConfigFile {
 public:
  static ConfigFile parse(std::istream& in, const std::string& source = "<config>");
  static ConfigFile load(const std::string& path);

  bool has(const std::string& key) const { return entries_.count(key) != 0; }
  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  long get_int(const std::string& key, long fallback) const;
  bool get_bool(const std::string& key, bool fallback) const;
  std::vector<double> get_doubles(const std::string& key, const std::vector<double>& fallback) const;
  std::vector<std::string> get_strings(const std::string& key,
                                       const std::vector<std::string>& fallback) const;

  /// Rejects keys outside `known`.
  void require_known(const std::set<std::string>& known) const;

 private:
  struct Entry {
    std::string value;
    int line = 0;
  };
  [[noreturn]] void bad(const std::string& key, const std::string& why) const;
  double to_double(const std::string& key, const std::string& text) const;

  std::string source_;
  std::map<std::string, Entry> entries_;
};

}  // namespace qmetro
