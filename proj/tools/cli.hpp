#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace agency::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitRuntime = 1;
inline constexpr int kExitUsage = 2;

inline constexpr const char* kSeedEnvVar = "AGENCY_PHENOTYPER_SEED";

/// Bad user configuration; maps to exit code 2. `field` names the flag or
/// config key at fault.
class ConfigError : public std::runtime_error {
 public:
  ConfigError(std::string field, const std::string& what)
      : std::runtime_error(field + ": " + what), field_(std::move(field)) {}
  const std::string& field() const noexcept { return field_; }

 private:
  std::string field_;
};

struct RunConfig {
  std::string model = "minimal-tmaze";
  std::string preset = "standard";
  double alpha = 0.5;
  std::vector<std::string> presets;  // phenotype command only
  std::size_t horizon = 2;
  double gamma = 16.0;
  std::string mode = "argmax";
  std::string context = "random";
  std::string objective = "history-filtered";
  std::vector<std::uint64_t> seeds;
  std::string format = "table";
  std::string output;
  std::size_t jobs = 1;

  /// Throws ConfigError naming the first offending field.
  void validate() const;
};

/// Parses "0,1,5-9" (inclusive ranges). Throws ConfigError on `field`.
std::vector<std::uint64_t> parse_seed_list(const std::string& text, const std::string& field);

/// Entry point shared by the executable and the tests. `args` excludes the
/// program name.
int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace agency::cli
