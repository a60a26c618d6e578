// config.hpp: key = value run configuration shared by every CLI command
//
// Couplings come from exactly one of {gamma1 + gamma2, lambda + asymmetry};
// temperatures from exactly one of {T1 + T2, Tm + deltaT, T1 + r}.
// Unset system values fall back to omega0 = 1, eps = 0.1, omega_c = 1000,
// s = 1, mu1 = mu2 = 0, chi = 0.

#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

#include "ssbh/model.hpp"
#include "ssbh/ness.hpp"

namespace ssbh::cli {

using KeyValues = std::map<std::string, std::string>;

// Line-oriented `key = value` with '#' comments, or a JSON object. A JSON file
// written by this tool is accepted too: its meta.config block is used.
KeyValues parse_config_text(std::string_view text);
KeyValues load_config_file(const std::string& path);

// "key=value"; ConfigError when malformed.
void apply_override(KeyValues& kv, std::string_view assignment);

double get_double(const KeyValues& kv, const std::string& key);
double get_double(const KeyValues& kv, const std::string& key, double fallback);
bool has(const KeyValues& kv, const std::string& key);

// Comma list of numbers, "a:b:n" (linear) or "log:a:b:n".
std::vector<double> parse_grid(std::string_view text);

Setup resolve_setup(const KeyValues& kv);

TruncationOptions truncation_options(const KeyValues& kv);

}  // namespace ssbh::cli
