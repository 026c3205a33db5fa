#include "cli/config.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <stdexcept>

namespace goldilocks::cli {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = s.find_first_not_of(" \t\r\n");
  if (b == std::string::npos) return "";
  std::size_t e = s.find_last_not_of(" \t\r\n");
  return s.substr(b, e - b + 1);
}

std::string strip_quotes(std::string v) {
  if (v.size() >= 2 && v.front() == '"' && v.back() == '"') {
    v = v.substr(1, v.size() - 2);
  }
  return trim(v);
}

std::string strip_comment(const std::string& line) {
  bool in_quotes = false;
  for (std::size_t i = 0; i < line.size(); ++i) {
    if (line[i] == '"') in_quotes = !in_quotes;
    if (line[i] == '#' && !in_quotes) return line.substr(0, i);
  }
  return line;
}

std::vector<std::string> split(const std::string& s, char sep) {
  std::vector<std::string> out;
  std::size_t start = 0;
  for (std::size_t i = 0; i <= s.size(); ++i) {
    if (i == s.size() || s[i] == sep) {
      out.push_back(trim(s.substr(start, i - start)));
      start = i + 1;
    }
  }
  return out;
}

double parse_number(const std::string& s, const std::string& key) {
  char* end = nullptr;
  const double v = std::strtod(s.c_str(), &end);
  if (end == s.c_str() || trim(end).size() != 0) {
    throw std::invalid_argument("config key '" + key + "': expected a number, got '" +
                                s + "'");
  }
  return v;
}

}  // namespace

Config Config::load(const std::string& path, std::vector<std::string> allowed_keys) {
  Config cfg;
  cfg.allowed_ = std::move(allowed_keys);
  if (!path.empty()) {
    std::ifstream in(path);
    if (!in) {
      throw std::invalid_argument("cannot open config file '" + path + "'");
    }
    std::string line;
    long lineno = 0;
    while (std::getline(in, line)) {
      ++lineno;
      const std::string body = trim(strip_comment(line));
      if (body.empty()) continue;
      const std::size_t eq = body.find('=');
      if (eq == std::string::npos) {
        throw std::invalid_argument("config '" + path + "' line " +
                                    std::to_string(lineno) + ": expected key = value");
      }
      const std::string key = trim(body.substr(0, eq));
      cfg.check_allowed(key);
      cfg.kv_[key] = strip_quotes(trim(body.substr(eq + 1)));
    }
  }
  // environment overrides: GOLDILOCKS_<KEY>
  for (const auto& key : cfg.allowed_) {
    std::string env_name = "GOLDILOCKS_";
    for (char c : key) env_name.push_back(static_cast<char>(std::toupper(c)));
    if (const char* v = std::getenv(env_name.c_str())) {
      cfg.kv_[key] = strip_quotes(trim(v));
    }
  }
  return cfg;
}

void Config::check_allowed(const std::string& key) const {
  if (std::find(allowed_.begin(), allowed_.end(), key) == allowed_.end()) {
    std::string known;
    for (const auto& k : allowed_) {
      known += known.empty() ? k : ", " + k;
    }
    throw std::invalid_argument("unknown config key '" + key + "' (known keys: " +
                                known + ")");
  }
}

void Config::set(const std::string& key, const std::string& value) {
  check_allowed(key);
  kv_[key] = strip_quotes(trim(value));
}

bool Config::has(const std::string& key) const { return kv_.count(key) != 0; }

double Config::number(const std::string& key, double def) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  return parse_number(it->second, key);
}

long Config::integer(const std::string& key, long def) const {
  const auto it = kv_.find(key);
  if (it == kv_.end()) return def;
  const double v = parse_number(it->second, key);
  const long n = static_cast<long>(std::llround(v));
  if (static_cast<double>(n) != v) {
    throw std::invalid_argument("config key '" + key + "': expected an integer");
  }
  return n;
}

std::string Config::word(const std::string& key, const std::string& def) const {
  const auto it = kv_.find(key);
  return it == kv_.end() ? def : it->second;
}

double Config::quantity(const std::string& key, UnitDim dim,
                        const std::string& def) const {
  const auto it = kv_.find(key);
  const std::string& text = it == kv_.end() ? def : it->second;
  return quantity_as(text, dim, key);
}

std::vector<double> Config::grid(const std::string& key, UnitDim dim,
                                 const std::string& def) const {
  const auto it = kv_.find(key);
  return parse_grid_text(it == kv_.end() ? def : it->second, dim, key);
}

std::vector<double> parse_grid_text(const std::string& text, UnitDim dim,
                                    const std::string& key) {
  std::string body = trim(text);
  double scale = 1.0;
  bool have_unit = dim == UnitDim::dimensionless;

  const auto apply_unit = [&](const std::string& unit_text) {
    const Quantity q = parse_quantity("1 " + unit_text);
    if (q.dim != dim) {
      throw std::invalid_argument("config key '" + key + "' expects " + dim_name(dim) +
                                  " values, got unit '" + unit_text + "'");
    }
    scale = q.value_si;
    have_unit = true;
  };

  std::vector<double> values;
  const bool is_log = body.rfind("log(", 0) == 0;
  const bool is_lin = body.rfind("lin(", 0) == 0;
  if (is_log || is_lin) {
    const std::size_t close = body.find(')');
    if (close == std::string::npos) {
      throw std::invalid_argument("config key '" + key + "': missing ')' in grid");
    }
    const std::string tail = trim(body.substr(close + 1));
    if (!tail.empty()) apply_unit(tail);
    const auto parts = split(body.substr(4, close - 4), ',');
    if (parts.size() != 3) {
      throw std::invalid_argument("config key '" + key +
                                  "': grid needs (start, stop, count)");
    }
    const double a = parse_number(parts[0], key);
    const double b = parse_number(parts[1], key);
    const long n = static_cast<long>(parse_number(parts[2], key));
    if (n < 1 || (n > 1 && !(b > a))) {
      throw std::invalid_argument("config key '" + key + "': invalid grid bounds");
    }
    if (is_log && !(a > 0.0)) {
      throw std::invalid_argument("config key '" + key +
                                  "': log grid needs positive bounds");
    }
    values.reserve(static_cast<std::size_t>(n));
    for (long i = 0; i < n; ++i) {
      const double f = n == 1 ? 0.0 : static_cast<double>(i) / (n - 1);
      values.push_back(is_log ? a * std::pow(b / a, f) : a + (b - a) * f);
    }
  } else {
    auto parts = split(body, ',');
    if (parts.empty() || (parts.size() == 1 && parts[0].empty())) {
      throw std::invalid_argument("config key '" + key + "': empty grid");
    }
    // a trailing unit may ride on the last element: "1e-12, 1e-14 m^2"
    std::string& last = parts.back();
    const std::size_t sp = last.find_last_of(" \t");
    if (sp != std::string::npos) {
      const std::string maybe_unit = trim(last.substr(sp + 1));
      if (!maybe_unit.empty() &&
          !std::isdigit(static_cast<unsigned char>(maybe_unit[0])) &&
          maybe_unit[0] != '-' && maybe_unit[0] != '+' && maybe_unit[0] != '.') {
        apply_unit(trim(last.substr(sp)));
        last = trim(last.substr(0, sp));
      }
    }
    values.reserve(parts.size());
    for (const auto& p : parts) values.push_back(parse_number(p, key));
  }
  if (!have_unit) {
    throw std::invalid_argument("config key '" + key + "' needs an explicit " +
                                std::string(dim_name(dim)) + " unit");
  }
  for (double& v : values) v *= scale;
  return values;
}

}  // namespace goldilocks::cli
