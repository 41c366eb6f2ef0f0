#pragma once

#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <variant>
#include <vector>

namespace revsurf::config {

enum class Subcommand { geometry, bound_states, transport, experiment, verify };

[[nodiscard]] std::string_view to_string(Subcommand s);
[[nodiscard]] std::optional<Subcommand> parse_subcommand(std::string_view name);

enum class Kind { length, energy, ratio, integer, flag, text };

/// One accepted key. Lengths are nm, energies meV, ratios dimensionless.
struct KeySpec {
  std::string name;
  Kind kind;
  std::optional<std::string> default_value;
  bool required = false;
  bool positive = false;  // numeric keys only
  std::string help;
};

/// Accepted keys for a subcommand, including the shared workers/out keys.
[[nodiscard]] const std::vector<KeySpec>& schema(Subcommand s);

using Value = std::variant<double, long, bool, std::string>;

struct RunConfig {
  Subcommand subcommand = Subcommand::verify;
  std::map<std::string, Value> values;
  std::map<std::string, std::string> origin;  // key -> "file:line", "flag 'k=v'" or "default"

  [[nodiscard]] double number(const std::string& key) const;
  [[nodiscard]] long integer(const std::string& key) const;
  [[nodiscard]] bool flag(const std::string& key) const;
  [[nodiscard]] const std::string& text(const std::string& key) const;
  [[nodiscard]] bool has(const std::string& key) const { return values.count(key) != 0; }

  [[nodiscard]] std::filesystem::path output_dir() const;
  [[nodiscard]] unsigned workers() const;
};

/// Builds a validated RunConfig from an optional config file and key=value
/// flag tokens; flags override the file. The file holds key = value lines
/// under [section] headers named after subcommands; lines before the first
/// header apply to every subcommand. '#' and ';' start comments.
/// Throws ConfigError naming the offending line or flag.
[[nodiscard]] RunConfig parse_config(Subcommand subcommand, const std::optional<std::filesystem::path>& file,
                                     const std::vector<std::string>& flags);

/// Same, with the file contents given as text (`source` labels diagnostics).
[[nodiscard]] RunConfig parse_config_text(Subcommand subcommand, std::string_view text, const std::string& source,
                                          const std::vector<std::string>& flags);

}  // namespace revsurf::config
