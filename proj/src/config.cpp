#include "warplab/config.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace warplab {

namespace {

std::string trim(const std::string& s) {
  std::size_t b = 0, e = s.size();
  while (b < e && std::isspace(static_cast<unsigned char>(s[b]))) ++b;
  while (e > b && std::isspace(static_cast<unsigned char>(s[e - 1]))) --e;
  return s.substr(b, e - b);
}

[[noreturn]] void fail(const std::string& what) { throw std::invalid_argument("config: " + what); }

}  // namespace

bool Config::has(const std::string& section, const std::string& key) const {
  for (const ConfigSection& s : sections)
    if (s.name == section)
      for (const auto& [k, v] : s.entries)
        if (k == key) return true;
  return false;
}

const std::string& Config::get(const std::string& section, const std::string& key) const {
  for (const ConfigSection& s : sections)
    if (s.name == section)
      for (const auto& [k, v] : s.entries)
        if (k == key) return v;
  fail("missing key [" + section + "] " + key);
}

std::string Config::get_or(const std::string& section, const std::string& key,
                           const std::string& fallback) const {
  return has(section, key) ? get(section, key) : fallback;
}

double Config::number(const std::string& section, const std::string& key) const {
  const std::string& v = get(section, key);
  std::size_t pos = 0;
  double out = 0.0;
  try {
    out = std::stod(v, &pos);
  } catch (const std::exception&) {
    fail("key [" + section + "] " + key + " is not a number: '" + v + "'");
  }
  if (trim(v.substr(pos)) != "") fail("key [" + section + "] " + key + " has trailing junk: '" + v + "'");
  return out;
}

double Config::number_or(const std::string& section, const std::string& key, double fallback) const {
  return has(section, key) ? number(section, key) : fallback;
}

int Config::integer(const std::string& section, const std::string& key) const {
  const double v = number(section, key);
  const int i = static_cast<int>(v);
  if (static_cast<double>(i) != v) fail("key [" + section + "] " + key + " is not an integer");
  return i;
}

int Config::integer_or(const std::string& section, const std::string& key, int fallback) const {
  return has(section, key) ? integer(section, key) : fallback;
}

bool Config::flag_or(const std::string& section, const std::string& key, bool fallback) const {
  if (!has(section, key)) return fallback;
  const std::string v = get(section, key);
  if (v == "true" || v == "1" || v == "yes") return true;
  if (v == "false" || v == "0" || v == "no") return false;
  fail("key [" + section + "] " + key + " is not a boolean: '" + v + "'");
}

std::vector<double> Config::number_list(const std::string& section, const std::string& key) const {
  std::istringstream is(get(section, key));
  std::vector<double> out;
  std::string tok;
  while (is >> tok) {
    try {
      out.push_back(std::stod(tok));
    } catch (const std::exception&) {
      fail("key [" + section + "] " + key + " holds a non-numeric entry '" + tok + "'");
    }
  }
  if (out.empty()) fail("key [" + section + "] " + key + " holds an empty list");
  return out;
}

void Config::set(const std::string& section, const std::string& key, const std::string& value) {
  for (ConfigSection& s : sections)
    if (s.name == section) {
      for (auto& [k, v] : s.entries)
        if (k == key) {
          v = value;
          return;
        }
      s.entries.emplace_back(key, value);
      return;
    }
  sections.push_back({section, {{key, value}}});
}

Config parse_config(const std::string& text) {
  Config cfg;
  ConfigSection* current = nullptr;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    line = trim(line);
    if (line.empty()) continue;
    if (line.front() == '[') {
      if (line.back() != ']') fail("line " + std::to_string(lineno) + ": unterminated section header");
      const std::string name = trim(line.substr(1, line.size() - 2));
      if (name.empty()) fail("line " + std::to_string(lineno) + ": empty section name");
      for (const ConfigSection& s : cfg.sections)
        if (s.name == name) fail("line " + std::to_string(lineno) + ": duplicate section [" + name + "]");
      cfg.sections.push_back({name, {}});
      current = &cfg.sections.back();
      continue;
    }
    const std::size_t eq = line.find('=');
    if (eq == std::string::npos) fail("line " + std::to_string(lineno) + ": expected key = value");
    if (!current) fail("line " + std::to_string(lineno) + ": key outside any section");
    const std::string key = trim(line.substr(0, eq));
    const std::string value = trim(line.substr(eq + 1));
    if (key.empty()) fail("line " + std::to_string(lineno) + ": empty key");
    for (const auto& [k, v] : current->entries)
      if (k == key) fail("line " + std::to_string(lineno) + ": duplicate key '" + key + "'");
    current->entries.emplace_back(key, value);
  }
  return cfg;
}

Config load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail("cannot open '" + path + "'");
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_config(buf.str());
}

std::string serialize_config(const Config& cfg) {
  std::ostringstream os;
  bool first = true;
  for (const ConfigSection& s : cfg.sections) {
    if (!first) os << "\n";
    first = false;
    os << "[" << s.name << "]\n";
    for (const auto& [k, v] : s.entries) os << k << " = " << v << "\n";
  }
  return os.str();
}

std::uint64_t config_hash(const Config& cfg) {
  const std::string text = serialize_config(cfg);
  std::uint64_t h = 1469598103934665603ull;  // FNV-1a
  for (unsigned char c : text) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

WarpProfile profile_from_config(const Config& cfg) {
  const std::string kind = cfg.get("profile", "kind");
  if (kind == "euclidean") return WarpProfile::euclidean();
  if (kind == "hyperbolic") return WarpProfile::hyperbolic(cfg.number("profile", "alpha"));
  if (kind == "odd_polynomial") return WarpProfile::odd_polynomial(cfg.number_list("profile", "coeffs"));
  if (kind == "power_law") return WarpProfile::power_law(cfg.number("profile", "exponent"));
  if (kind == "custom")
    fail("custom profiles need closed-form derivative evaluators and cannot be built from a config file");
  fail("unknown profile kind '" + kind + "'");
}

namespace {

std::string format_number(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

void profile_to_config(const WarpProfile& profile, Config& cfg) {
  switch (profile.kind()) {
    case ProfileKind::Euclidean:
      cfg.set("profile", "kind", "euclidean");
      return;
    case ProfileKind::Hyperbolic:
      cfg.set("profile", "kind", "hyperbolic");
      cfg.set("profile", "alpha", format_number(profile.hyperbolic_alpha()));
      return;
    case ProfileKind::OddPolynomial: {
      cfg.set("profile", "kind", "odd_polynomial");
      std::string list;
      for (double a : profile.poly_coeffs()) {
        if (!list.empty()) list += ' ';
        list += format_number(a);
      }
      cfg.set("profile", "coeffs", list);
      return;
    }
    case ProfileKind::PowerLaw:
      cfg.set("profile", "kind", "power_law");
      cfg.set("profile", "exponent", format_number(profile.power_exponent()));
      return;
    case ProfileKind::Custom:
      fail("custom profiles are not expressible in the config format");
  }
}

}  // namespace warplab
