#ifndef SSA_RUN_CONFIG_HPP
#define SSA_RUN_CONFIG_HPP

#include <cstdint>
#include <filesystem>
#include <map>
#include <optional>
#include <string>

#include "ssa/cost_model.hpp"
#include "ssa/lif.hpp"
#include "ssa/ssa_functional.hpp"

// Flat sectioned key-value configuration:
//   # comment
//   [sim]
//   tokens = 8
// Unknown keys are errors, as are duplicate keys within a section. Parse
// errors carry the 1-based line number.

namespace ssa {

class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string message, int line)
      : std::runtime_error(line > 0 ? "line " + std::to_string(line) + ": " + message
                                    : message),
        line_(line) {}
  int line() const noexcept { return line_; }

 private:
  int line_;
};

/// Raw parse: section -> key -> (value, line).
struct ParsedConfig {
  struct Entry {
    std::string value;
    int line = 0;
  };
  std::map<std::string, std::map<std::string, Entry>> sections;
};

ParsedConfig parse_config_text(const std::string& text);

/// Everything a run needs. The energy section is optional; commands that
/// need it fail with a config error when absent.
struct AppConfig {
  SsaConfig sim;
  LifConfig lif;
  std::optional<EnergyConfig> energy;
  AnnCostOptions ann_cost;

  /// FNV-1a 64 of the raw config bytes; embedded in reports for provenance.
  std::uint64_t config_hash = 0;
};

AppConfig load_config_text(const std::string& text);
AppConfig load_config_file(const std::filesystem::path& path);

/// Built-in defaults (no file): the SsaConfig/LifConfig defaults, no energy.
AppConfig default_config();

std::uint64_t fnv1a64(const std::string& bytes) noexcept;

}  // namespace ssa

#endif  // SSA_RUN_CONFIG_HPP
