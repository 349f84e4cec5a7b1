#pragma once

#include <map>
#include <string>
#include <vector>

namespace bql {

// Parse a real, accepting "inf" (any case, optional sign) for the extended
// p values; throws std::invalid_argument on trailing junk.
double parse_real(const std::string& text);

// Flat key=value configuration: one binding per line, '#' starts a comment,
// blank lines ignored, whitespace trimmed around both sides. Later bindings
// override earlier ones, and merge() layers a whole file the same way, so a
// run file only has to state what differs from the defaults.
class Config {
 public:
  static Config parse_file(const std::string& path);
  static Config parse_text(const std::string& text);

  bool has(const std::string& key) const;
  void set(const std::string& key, const std::string& value);
  void merge(const Config& overrides);

  std::string get_string(const std::string& key, const std::string& fallback) const;
  double get_double(const std::string& key, double fallback) const;
  int get_int(const std::string& key, int fallback) const;
  // comma-separated reals; empty vector when the key is absent
  std::vector<double> get_list(const std::string& key) const;

  std::string require_string(const std::string& key) const;
  double require_double(const std::string& key) const;
  std::vector<double> require_list(const std::string& key) const;

  const std::map<std::string, std::string>& entries() const { return map_; }
  // sorted "key=value" lines, each prefixed (e.g. "# ") — the reproducibility
  // header stamped into every output
  std::string echo(const std::string& line_prefix) const;

 private:
  std::map<std::string, std::string> map_;
};

}  // namespace bql
