#include "bql/config.hpp"

#include <cctype>
#include <cstdlib>
#include <limits>
#include <stdexcept>

#include "bql/io.hpp"

namespace bql {

namespace {
std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}
}  // namespace

double parse_real(const std::string& text) {
  const std::string t = trim(text);
  if (t.empty()) throw std::invalid_argument("empty real value");
  std::string body = t;
  double sign = 1.0;
  if (body[0] == '+' || body[0] == '-') {
    if (body[0] == '-') sign = -1.0;
    body = body.substr(1);
  }
  std::string lower;
  for (char c : body) lower += char(std::tolower(static_cast<unsigned char>(c)));
  if (lower == "inf" || lower == "infinity")
    return sign * std::numeric_limits<double>::infinity();
  std::size_t used = 0;
  double v = 0.0;
  try {
    v = std::stod(t, &used);
  } catch (const std::exception&) {
    throw std::invalid_argument("not a real number: '" + t + "'");
  }
  if (used != t.size())
    throw std::invalid_argument("trailing characters in real: '" + t + "'");
  return v;
}

Config Config::parse_text(const std::string& text) {
  Config cfg;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    const std::size_t nl = text.find('\n', pos);
    std::string line = text.substr(pos, nl == std::string::npos ? std::string::npos
                                                                : nl - pos);
    pos = (nl == std::string::npos) ? text.size() + 1 : nl + 1;
    ++line_no;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    line = trim(line);
    if (line.empty()) continue;
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": expected key=value");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty())
      throw std::invalid_argument("config line " + std::to_string(line_no) +
                                  ": empty key");
    cfg.map_[key] = value;
  }
  return cfg;
}

Config Config::parse_file(const std::string& path) {
  return parse_text(read_file(path));
}

bool Config::has(const std::string& key) const { return map_.count(key) > 0; }

void Config::set(const std::string& key, const std::string& value) {
  map_[key] = value;
}

void Config::merge(const Config& overrides) {
  for (const auto& [k, v] : overrides.map_) map_[k] = v;
}

std::string Config::get_string(const std::string& key,
                               const std::string& fallback) const {
  const auto it = map_.find(key);
  return it == map_.end() ? fallback : it->second;
}

double Config::get_double(const std::string& key, double fallback) const {
  const auto it = map_.find(key);
  return it == map_.end() ? fallback : parse_real(it->second);
}

int Config::get_int(const std::string& key, int fallback) const {
  const auto it = map_.find(key);
  if (it == map_.end()) return fallback;
  const double v = parse_real(it->second);
  const int i = int(v);
  if (double(i) != v)
    throw std::invalid_argument("config key '" + key + "' must be an integer");
  return i;
}

std::vector<double> Config::get_list(const std::string& key) const {
  const auto it = map_.find(key);
  std::vector<double> out;
  if (it == map_.end()) return out;
  const std::string& s = it->second;
  std::size_t pos = 0;
  while (pos <= s.size()) {
    const std::size_t comma = s.find(',', pos);
    const std::string item =
        s.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    if (!trim(item).empty()) out.push_back(parse_real(item));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  return out;
}

std::string Config::require_string(const std::string& key) const {
  const auto it = map_.find(key);
  if (it == map_.end())
    throw std::invalid_argument("missing required config key '" + key + "'");
  return it->second;
}

double Config::require_double(const std::string& key) const {
  return parse_real(require_string(key));
}

std::vector<double> Config::require_list(const std::string& key) const {
  if (!has(key))
    throw std::invalid_argument("missing required config key '" + key + "'");
  auto v = get_list(key);
  if (v.empty())
    throw std::invalid_argument("config key '" + key + "' must list values");
  return v;
}

std::string Config::echo(const std::string& line_prefix) const {
  std::string out;
  for (const auto& [k, v] : map_) {
    out += line_prefix;
    out += k;
    out += '=';
    out += v;
    out += '\n';
  }
  return out;
}

}  // namespace bql
