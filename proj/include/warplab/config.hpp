#pragma once

#include "warplab/warp_profile.hpp"

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace warplab {

/// Ordered key-value configuration with INI-style sections.  Order is kept so
/// that parse -> serialize -> parse is the identity on the structure and the
/// serialized form is diffable.
struct ConfigSection {
  std::string name;
  std::vector<std::pair<std::string, std::string>> entries;

  bool operator==(const ConfigSection&) const = default;
};

struct Config {
  std::vector<ConfigSection> sections;

  bool has(const std::string& section, const std::string& key) const;
  const std::string& get(const std::string& section, const std::string& key) const;  // throws
  std::string get_or(const std::string& section, const std::string& key,
                     const std::string& fallback) const;
  double number(const std::string& section, const std::string& key) const;
  double number_or(const std::string& section, const std::string& key, double fallback) const;
  int integer(const std::string& section, const std::string& key) const;
  int integer_or(const std::string& section, const std::string& key, int fallback) const;
  bool flag_or(const std::string& section, const std::string& key, bool fallback) const;
  std::vector<double> number_list(const std::string& section, const std::string& key) const;

  void set(const std::string& section, const std::string& key, const std::string& value);

  bool operator==(const Config&) const = default;
};

Config parse_config(const std::string& text);      // throws std::invalid_argument
Config load_config(const std::string& path);       // throws std::invalid_argument
std::string serialize_config(const Config& cfg);   // canonical text form
std::uint64_t config_hash(const Config& cfg);      // FNV-1a of the canonical form

/// Build the profile described by the [profile] section:
///   kind = euclidean | hyperbolic | odd_polynomial | power_law
///   alpha / coeffs / exponent as the kind requires.
WarpProfile profile_from_config(const Config& cfg);

/// Write the [profile] section describing a built-in profile; custom
/// closed-form profiles are not expressible as kind tag + numbers.
void profile_to_config(const WarpProfile& profile, Config& cfg);

}  // namespace warplab
