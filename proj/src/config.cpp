#include "minubench/config.hpp"

#include <charconv>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace minubench {

namespace {

std::string trim(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void bad_value(const std::string& key, const std::string& value,
                            const char* expected) {
  throw DataError("config key \"" + key + "\": expected " + expected +
                  ", got \"" + value + "\"");
}

}  // namespace

ConfigMap parse_config_text(const std::string& text, const std::string& origin) {
  ConfigMap cfg;
  std::istringstream in(text);
  std::string line;
  int line_number = 0;
  while (std::getline(in, line)) {
    ++line_number;
    const std::string stripped = trim(line);
    if (stripped.empty() || stripped[0] == '#') continue;
    const auto eq = stripped.find('=');
    if (eq == std::string::npos) {
      std::ostringstream os;
      os << origin << ":" << line_number << ": expected `key = value`";
      throw DataError(os.str());
    }
    const std::string key = trim(stripped.substr(0, eq));
    const std::string value = trim(stripped.substr(eq + 1));
    if (key.empty()) {
      std::ostringstream os;
      os << origin << ":" << line_number << ": empty key";
      throw DataError(os.str());
    }
    cfg[key] = value;
  }
  return cfg;
}

ConfigMap read_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) {
    throw DataError("cannot open config file " + path.string());
  }
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_config_text(buffer.str(), path.string());
}

std::string config_to_text(const ConfigMap& cfg) {
  std::ostringstream out;
  for (const auto& [key, value] : cfg) {
    out << key << " = " << value << '\n';
  }
  return out.str();
}

std::optional<std::string> config_get(const ConfigMap& cfg,
                                      const std::string& key) {
  const auto it = cfg.find(key);
  if (it == cfg.end()) return std::nullopt;
  return it->second;
}

std::string config_get_string(const ConfigMap& cfg, const std::string& key,
                              const std::string& fallback) {
  return config_get(cfg, key).value_or(fallback);
}

double config_get_double(const ConfigMap& cfg, const std::string& key,
                         double fallback) {
  const auto value = config_get(cfg, key);
  if (!value) return fallback;
  char* end = nullptr;
  const double parsed = std::strtod(value->c_str(), &end);
  if (end == value->c_str() || *end != '\0') bad_value(key, *value, "a number");
  return parsed;
}

int config_get_int(const ConfigMap& cfg, const std::string& key, int fallback) {
  const auto value = config_get(cfg, key);
  if (!value) return fallback;
  int parsed = 0;
  const auto [ptr, ec] =
      std::from_chars(value->data(), value->data() + value->size(), parsed);
  if (ec != std::errc{} || ptr != value->data() + value->size()) {
    bad_value(key, *value, "an integer");
  }
  return parsed;
}

bool config_get_bool(const ConfigMap& cfg, const std::string& key,
                     bool fallback) {
  const auto value = config_get(cfg, key);
  if (!value) return fallback;
  if (*value == "true" || *value == "1") return true;
  if (*value == "false" || *value == "0") return false;
  bad_value(key, *value, "true or false");
}

std::string format_double(double value) {
  char buffer[64];
  const auto [ptr, ec] = std::to_chars(buffer, buffer + sizeof(buffer), value);
  return std::string(buffer, ptr);
}

}  // namespace minubench
