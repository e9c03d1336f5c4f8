#pragma once

// Configuration files: YAML (JSON is accepted as YAML flow syntax).
// The schema is documented in README.md. Site labels in files are 1-based.

#include <optional>
#include <string>

#include "qsr/generator.hpp"
#include "qsr/sweep.hpp"

namespace qsr {

struct ThresholdSpec {
  std::pair<double, double> bracket{0.01, 5.0};  ///< in units of omega
  bool tie_dephasing = false;
  double tol = 1e-6;  ///< in units of omega
};

struct ParsedConfig {
  ArrayConfig array;
  std::optional<SweepSpec> sweep;
  ThresholdSpec threshold;
  /// Qubit transition frequency for regime warnings, if given.
  std::optional<double> omega0;
  SolveOptions solver;
};

/// Throws ConfigError naming the offending field.
ParsedConfig parse_config_text(const std::string& text);
ParsedConfig parse_config_file(const std::string& path);

}  // namespace qsr
