#include "thermaldrift/config.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include "thermaldrift/types.hpp"

namespace thermaldrift {

namespace {
std::string trimmed(const std::string& s) {
  const auto begin = s.find_first_not_of(" \t\r");
  if (begin == std::string::npos) return "";
  const auto end = s.find_last_not_of(" \t\r");
  return s.substr(begin, end - begin + 1);
}

[[noreturn]] void fail(const ConfigEntry& entry, const std::string& what) {
  throw ValidationError("config line " + std::to_string(entry.line) + ": " +
                        what + " for key '" + entry.key + "' (value '" +
                        entry.value + "')");
}
}  // namespace

std::vector<ConfigEntry> parse_config_file(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw ValidationError("cannot open config file: " + path.string());
  std::vector<ConfigEntry> entries;
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    const auto hash = raw.find('#');
    std::string line = trimmed(hash == std::string::npos ? raw : raw.substr(0, hash));
    if (line.empty()) continue;
    const auto eq = line.find('=');
    if (eq == std::string::npos)
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": expected 'key = value', got '" + line + "'");
    ConfigEntry entry;
    entry.line = line_no;
    entry.key = trimmed(line.substr(0, eq));
    entry.value = trimmed(line.substr(eq + 1));
    if (entry.key.empty())
      throw ValidationError(path.string() + ":" + std::to_string(line_no) +
                            ": empty key");
    entries.push_back(std::move(entry));
  }
  return entries;
}

double config_double(const ConfigEntry& entry) {
  std::size_t used = 0;
  double v = 0;
  try {
    v = std::stod(entry.value, &used);
  } catch (const std::exception&) {
    fail(entry, "expected a real number");
  }
  if (used != entry.value.size()) fail(entry, "trailing characters");
  return v;
}

long config_long(const ConfigEntry& entry) {
  std::size_t used = 0;
  long v = 0;
  try {
    v = std::stol(entry.value, &used);
  } catch (const std::exception&) {
    fail(entry, "expected an integer");
  }
  if (used != entry.value.size()) fail(entry, "trailing characters");
  return v;
}

int config_int(const ConfigEntry& entry) {
  return static_cast<int>(config_long(entry));
}

uint64_t config_u64(const ConfigEntry& entry) {
  std::size_t used = 0;
  uint64_t v = 0;
  try {
    v = std::stoull(entry.value, &used);
  } catch (const std::exception&) {
    fail(entry, "expected an unsigned integer");
  }
  if (used != entry.value.size()) fail(entry, "trailing characters");
  return v;
}

bool config_bool(const ConfigEntry& entry) {
  std::string v = entry.value;
  std::transform(v.begin(), v.end(), v.begin(), ::tolower);
  if (v == "true" || v == "1" || v == "yes" || v == "on") return true;
  if (v == "false" || v == "0" || v == "no" || v == "off") return false;
  fail(entry, "expected a boolean");
}

std::vector<double> config_double_list(const ConfigEntry& entry) {
  std::vector<double> values;
  std::string item;
  std::istringstream ss(entry.value);
  while (std::getline(ss, item, ',')) {
    ConfigEntry fake{entry.line, entry.key, trimmed(item)};
    values.push_back(config_double(fake));
  }
  if (values.empty()) fail(entry, "expected a comma-separated list");
  return values;
}

}  // namespace thermaldrift
