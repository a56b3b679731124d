#pragma once

#include <map>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace lvcli {

// Bad config: names the offending key (section.key) when there is one.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string key, const std::string& what) : std::runtime_error(what), key_(std::move(key)) {}
  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

enum class KeyType { real, integer, boolean, text };

struct KeySpec {
  const char* section;
  const char* key;
  KeyType type;
  const char* def;
  const char* help;
};

// Every accepted key, in manifest order.
const std::vector<KeySpec>& schema();

extern const std::vector<std::string> kCommands;

class RunConfig {
 public:
  RunConfig();

  std::string command() const { return text("run.command"); }
  double real(const std::string& k) const;
  long integer(const std::string& k) const;
  bool boolean(const std::string& k) const;
  const std::string& text(const std::string& k) const;

  // Checks the key and the value type, then stores it.
  void set(const std::string& key, const std::string& value);

  // Effective config as INI text, schema order.
  std::string dump() const;

  std::vector<std::string> overrides;  // "section.key = value" as applied from flags
  std::string source;                  // config file path or "" when none

 private:
  std::map<std::string, std::string> values_;
};

// Reads an INI file on top of the defaults. Unknown sections and keys are
// rejected.
RunConfig parse_config_file(const std::string& path);
RunConfig parse_config_text(const std::string& text);

// "section.key=value" on top of cfg; recorded in cfg.overrides.
void apply_override(RunConfig& cfg, const std::string& assignment);

// Sanity checks that span several keys (command known, grid kind, ...).
void validate(const RunConfig& cfg);

}  // namespace lvcli
