#pragma once

// Parameter sweeps over steady states and their tabular serialization.

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsr/generator.hpp"
#include "qsr/measures.hpp"
#include "qsr/steady.hpp"

namespace qsr {

inline constexpr const char* kToolName = "qsr";
inline constexpr const char* kToolVersion = "1.0.0";

enum class SweepAxis { GammaDecay, GammaDephase, J, JPerp, JPar, Detuning };
enum class GridSpacing { Linear, Log };
enum class MeasureKind { Eof, Concurrence, Negativity, MutualInformation, Eigenvalues, PZ, PX, Residual };

std::string to_string(SweepAxis a);
std::string to_string(MeasureKind m);
std::optional<SweepAxis> parse_axis(const std::string& name);
std::optional<MeasureKind> parse_measure(const std::string& name);

/// `count` points from start to stop inclusive.
std::vector<double> make_grid(double start, double stop, int count, GridSpacing spacing);

struct SweepSpec {
  ArrayConfig base;
  SweepAxis axis = SweepAxis::GammaDecay;
  std::vector<double> grid;
  std::vector<MeasureKind> measures;
  /// Cut for mutual_information; sites outside both parts are traced out.
  Bipartition cut{{0}, {1}};
  /// Site for p_z / p_x.
  std::size_t site = 0;
  /// Keep gamma_dephase equal to gamma_decay at every point.
  bool tie_dephasing = false;
  SolveOptions solver;
  unsigned jobs = 0;

  /// Grid strictly increasing with >= 2 points, measures non-empty, two-qubit
  /// measures only on two-qubit arrays.
  void validate() const;

  /// Base config with the swept parameter set to `value`.
  ArrayConfig config_at(double value) const;
};

struct SweepRow {
  double axis = 0.0;
  std::string measure;
  double value = 0.0;

  bool operator==(const SweepRow&) const = default;
};

/// Measure name used for the row that flags a failed grid point. Its value
/// is the CLI solver-failure exit code, and the reason is in the metadata.
inline constexpr const char* kFailureMeasure = "solver_failure";

struct SweepResult {
  std::vector<SweepRow> rows;
  /// Ordered key/value metadata; keys are stable across runs.
  std::vector<std::pair<std::string, std::string>> metadata;

  std::size_t failure_count() const;
  /// Values of one measure in row order.
  std::vector<std::pair<double, double>> series(const std::string& measure) const;
};

/// Solve and measure every grid point. Deterministic for a given spec;
/// per-point solver failures become flagged rows.
SweepResult run_sweep(const SweepSpec& spec);

/// Rows for one already-solved state at axis value `x`.
std::vector<SweepRow> measure_rows(const SweepSpec& spec, double x, const SteadyStateReport& report);

/// Metadata describing a configuration.
std::vector<std::pair<std::string, std::string>> describe(const ArrayConfig& config);

enum class OutputFormat { Csv, Json };
std::optional<OutputFormat> parse_format(const std::string& name);

/// 17 significant digits, '.' decimal separator, locale independent.
std::string format_double(double v);

/// Key that carries the generation timestamp; excluded from determinism.
inline constexpr const char* kTimestampKey = "generated_at";

std::string to_csv(const SweepResult& result);
std::string to_json(const SweepResult& result);
SweepResult from_json(const std::string& text);

/// Write to `path`; throws Error naming the path on I/O failure.
void emit(const SweepResult& result, OutputFormat format, const std::string& path);
SweepResult read_json_file(const std::string& path);

/// Current UTC time, ISO 8601.
std::string utc_timestamp();

}  // namespace qsr
