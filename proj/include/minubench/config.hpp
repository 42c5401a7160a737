#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "minubench/types.hpp"

namespace minubench {

/// Flat `key = value` text with dotted section keys; `#` starts a comment.
/// Ordered map so serialization is deterministic.
using ConfigMap = std::map<std::string, std::string>;

ConfigMap parse_config_text(const std::string& text,
                            const std::string& origin = "<config>");
ConfigMap read_config_file(const std::filesystem::path& path);
std::string config_to_text(const ConfigMap& cfg);

std::optional<std::string> config_get(const ConfigMap& cfg,
                                      const std::string& key);
std::string config_get_string(const ConfigMap& cfg, const std::string& key,
                              const std::string& fallback);
double config_get_double(const ConfigMap& cfg, const std::string& key,
                         double fallback);
int config_get_int(const ConfigMap& cfg, const std::string& key, int fallback);
bool config_get_bool(const ConfigMap& cfg, const std::string& key,
                     bool fallback);

/// Shortest decimal representation that round-trips the double exactly.
std::string format_double(double value);

}  // namespace minubench
