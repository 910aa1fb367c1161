#pragma once

#include <filesystem>
#include <string>
#include <vector>

namespace thermaldrift {

/// One `key = value` line of a config file.
struct ConfigEntry {
  int line = 0;
  std::string key;
  std::string value;
};

/// Flat key-value format: one `key = value` per line, '#' comments, blank
/// lines ignored. Errors carry file:line positions.
std::vector<ConfigEntry> parse_config_file(const std::filesystem::path& path);

/// Typed readers with file:line context on failure.
double config_double(const ConfigEntry& entry);
long config_long(const ConfigEntry& entry);
int config_int(const ConfigEntry& entry);
uint64_t config_u64(const ConfigEntry& entry);
bool config_bool(const ConfigEntry& entry);
std::vector<double> config_double_list(const ConfigEntry& entry);

}  // namespace thermaldrift
