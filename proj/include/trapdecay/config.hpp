#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "trapdecay/analysis.hpp"
#include "trapdecay/multiplet.hpp"

namespace trapdecay {

enum class OutputFormat { csv, json };

struct SweepSpec {
  SweepParameter parameter = SweepParameter::omega_bar;
  std::vector<double> values;
  double probe_time = 300;

  bool operator==(const SweepSpec&) const = default;
};

/// Everything one CLI invocation needs. Defaults reproduce the
/// N = 1, gamma = [0.5, 1, 0.5], omega_bar = 0.1 single-run setup.
struct RunConfig {
  MultipletParams<double> params;
  // Set when rates were specified through the drive (gamma0, gbar, ...).
  std::optional<DrivingFieldSpec<double>> drive;
  double t_max = 50;
  std::size_t samples = 1000;
  double threshold = 0.1;
  std::optional<SweepSpec> sweep;
  std::string output;  // empty means stdout
  OutputFormat format = OutputFormat::csv;
};

bool operator==(const RunConfig& a, const RunConfig& b);

RunConfig default_config();

/// Parses the flat `key = value` format. Lists are comma separated, complex
/// numbers are written `re+imi` (a plain real is also accepted), lines starting
/// with '#' are comments. `overrides` replace or add keys before resolution,
/// which is how command-line flags take precedence over the file.
///
/// Throws Error(ConfigSyntax, key) for malformed entries or unknown keys and
/// Error(ConfigRange, key) for values outside their domain.
RunConfig parse_config(std::string_view text,
                       const std::map<std::string, std::string>& overrides = {});

/// Inverse of parse_config: parse_config(render_config(c)) == c.
std::string render_config(const RunConfig& config);

// Shared number formatting.
std::string format_shortest(double value);
std::string format_complex(std::complex<double> value);
std::optional<double> parse_real(std::string_view text);
std::optional<std::complex<double>> parse_complex(std::string_view text);

}  // namespace trapdecay
