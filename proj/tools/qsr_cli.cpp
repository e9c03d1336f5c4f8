// qsr: steady states, sweeps and separability thresholds of driven,
// dissipative qubit arrays.
//
// Exit codes: 0 success, 1 input error, 2 solver failure.

#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "qsr/config.hpp"
#include "qsr/errors.hpp"
#include "qsr/figures.hpp"
#include "qsr/measures.hpp"
#include "qsr/steady.hpp"
#include "qsr/sweep.hpp"
#include "qsr/thresholds.hpp"

namespace {

constexpr int kExitInput = 1;
constexpr int kExitSolver = 2;

struct Common {
  std::string config;
  std::string format = "csv";
  std::string out;
  unsigned jobs = 0;
  std::optional<double> tol;
};

void write(const qsr::SweepResult& r, const Common& c) {
  const auto fmt = qsr::parse_format(c.format).value();
  if (c.out.empty()) {
    std::cout << (fmt == qsr::OutputFormat::Csv ? qsr::to_csv(r) : qsr::to_json(r));
  } else {
    qsr::emit(r, fmt, c.out);
  }
}

qsr::SweepResult header(const std::string& command) {
  qsr::SweepResult r;
  r.metadata = {{"tool", std::string(qsr::kToolName) + " " + qsr::kToolVersion},
                {qsr::kTimestampKey, qsr::utc_timestamp()},
                {"command", command}};
  return r;
}

int cmd_steady(const Common& c) {
  auto parsed = qsr::parse_config_file(c.config);
  if (c.tol) parsed.solver.residual_tol = *c.tol;
  const auto& a = parsed.array;
  const auto rep = qsr::solve_steady_numeric(a, parsed.solver);
  auto r = header("steady");
  for (auto& kv : qsr::describe(a)) r.metadata.push_back(kv);
  r.metadata.emplace_back("solver.method", qsr::to_string(rep.method));
  const double x = a.gamma_decay.front();
  r.metadata.emplace_back("axis", "gamma_decay");
  r.rows.push_back({x, "residual", rep.residual});
  r.rows.push_back({x, "null_space_dim", static_cast<double>(rep.null_space_dim)});
  const auto& m = rep.state.matrix();
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      const std::string idx = "(" + std::to_string(i + 1) + "," + std::to_string(j + 1) + ")";
      r.rows.push_back({x, "rho_re" + idx, m(i, j).real()});
      r.rows.push_back({x, "rho_im" + idx, m(i, j).imag()});
    }
  qsr::SweepSpec spec;
  spec.base = a;
  spec.measures = {qsr::MeasureKind::Eigenvalues};
  if (a.n_qubits == 2)
    spec.measures.insert(spec.measures.end(),
                         {qsr::MeasureKind::Concurrence, qsr::MeasureKind::Eof, qsr::MeasureKind::Negativity});
  if (a.n_qubits >= 2) {
    spec.measures.push_back(qsr::MeasureKind::MutualInformation);
    spec.cut = qsr::Bipartition{{0}, {1}};
  }
  spec.measures.insert(spec.measures.end(), {qsr::MeasureKind::PZ, qsr::MeasureKind::PX});
  for (auto& row : qsr::measure_rows(spec, x, rep)) r.rows.push_back(row);
  write(r, c);
  return 0;
}

int cmd_sweep(const Common& c) {
  auto parsed = qsr::parse_config_file(c.config);
  if (!parsed.sweep) throw qsr::ConfigError("sweep", "missing (the sweep subcommand needs a sweep section)");
  auto spec = *parsed.sweep;
  spec.jobs = c.jobs;
  if (c.tol) spec.solver.residual_tol = *c.tol;
  const auto r = qsr::run_sweep(spec);
  write(r, c);
  if (r.failure_count() > 0) {
    std::cerr << "qsr: " << r.failure_count() << " grid point(s) failed; see failure.* metadata\n";
    return kExitSolver;
  }
  return 0;
}

int cmd_threshold(const Common& c) {
  auto parsed = qsr::parse_config_file(c.config);
  const auto& a = parsed.array;
  if (a.n_qubits != 2) throw qsr::ConfigError("n_qubits", "threshold needs a two-qubit array");
  const double omega = a.omega_rabi.front();
  if (!(omega > 0.0)) throw qsr::ConfigError("omega", "threshold needs omega > 0");
  const auto& cp = a.coupling;
  const double d = cp.anisotropy();
  const double s = std::abs(d) / omega;
  const auto ts = parsed.threshold;

  auto r = header("threshold");
  for (auto& kv : qsr::describe(a)) r.metadata.push_back(kv);
  r.metadata.emplace_back("axis", "s=|d|/omega");
  r.metadata.emplace_back("tie_dephasing", ts.tie_dephasing ? "true" : "false");

  const double analytic = cp.kind == qsr::CouplingKind::ZZ ? qsr::threshold_zz(omega, std::abs(cp.j_parallel))
                                                            : qsr::threshold_xxyy(omega, cp.j_perp, cp.j_parallel);
  if (!ts.tie_dephasing && a.gamma_dephase.front() == 0.0) {
    if (std::isfinite(analytic))
      r.rows.push_back({s, "analytic_threshold", analytic});
    else
      r.metadata.emplace_back("analytic_threshold", "never entangled");
  }
  if (ts.tie_dephasing) {
    if (const auto w = qsr::approx_combined_window(s)) {
      r.rows.push_back({s, "approx_window_lower", w->first * omega});
      r.rows.push_back({s, "approx_window_upper", w->second * omega});
    } else {
      r.metadata.emplace_back("approx_window", "empty");
    }
  }

  auto family = [&](double gamma) {
    qsr::ArrayConfig cfg = a;
    std::fill(cfg.gamma_decay.begin(), cfg.gamma_decay.end(), gamma);
    if (ts.tie_dephasing) cfg.gamma_dephase = cfg.gamma_decay;
    return cfg;
  };
  const double tol = (c.tol ? *c.tol : ts.tol) * omega;
  try {
    const auto res = qsr::scan_threshold_bisection(
        family, {ts.bracket.first * omega, ts.bracket.second * omega}, tol);
    if (res.lower) r.rows.push_back({s, "bisection_lower", *res.lower});
    if (std::isfinite(res.upper)) r.rows.push_back({s, "bisection_upper", res.upper});
    r.rows.push_back({s, "bisection_tolerance", res.tolerance});
  } catch (const qsr::NoSignChange& e) {
    r.metadata.emplace_back("bisection", std::string("no sign change: ") + e.what());
  }
  write(r, c);
  return 0;
}

int cmd_validate(const Common& c) {
  const auto parsed = qsr::parse_config_file(c.config);
  std::cout << "ok: " << parsed.array.n_qubits << " qubit(s), coupling " << qsr::to_string(parsed.array.coupling.kind);
  if (parsed.sweep) std::cout << ", sweep over " << qsr::to_string(parsed.sweep->axis) << " (" << parsed.sweep->grid.size() << " points)";
  std::cout << "\n";
  if (parsed.omega0) {
    for (const auto& w : qsr::validate_regime(parsed.array, *parsed.omega0)) std::cout << "warning: " << w << "\n";
  }
  return 0;
}

int cmd_figure(const std::string& name, const Common& c) {
  const auto fmt = qsr::parse_format(c.format).value();
  const std::filesystem::path dir = c.out.empty() ? std::filesystem::path(".") : std::filesystem::path(c.out);
  std::error_code ec;
  std::filesystem::create_directories(dir, ec);
  if (ec) throw qsr::Error("cannot create output directory " + dir.string() + ": " + ec.message());
  std::size_t failures = 0;
  for (const auto& f : qsr::figures::run(name, c.jobs)) {
    const auto path = dir / (f.label + (fmt == qsr::OutputFormat::Csv ? ".csv" : ".json"));
    qsr::emit(f.result, fmt, path.string());
    failures += f.result.failure_count();
    std::cout << path.string() << "\n";
  }
  return failures > 0 ? kExitSolver : 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Steady states and stochastic-resonance diagnostics of driven, dissipative qubit arrays"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(qsr::kToolName) + " " + qsr::kToolVersion);

  Common c;
  std::string figure_name;
  auto add_output = [&](CLI::App* sub) {
    sub->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--out", c.out, "Output path (stdout when omitted)");
  };
  auto add_config = [&](CLI::App* sub) {
    sub->add_option("--config", c.config, "Configuration file (YAML or JSON)")->required()->check(CLI::ExistingFile);
  };

  auto* steady = app.add_subcommand("steady", "Solve one steady state and report it with all measures");
  add_config(steady);
  add_output(steady);
  steady->add_option("--tol", c.tol, "Residual tolerance");

  auto* sweep = app.add_subcommand("sweep", "Run the sweep section of a configuration");
  add_config(sweep);
  add_output(sweep);
  sweep->add_option("--jobs", c.jobs, "Worker threads (default: hardware concurrency)");
  sweep->add_option("--tol", c.tol, "Residual tolerance");

  auto* threshold = app.add_subcommand("threshold", "Analytic and bisection separability thresholds (two qubits)");
  add_config(threshold);
  add_output(threshold);
  threshold->add_option("--tol", c.tol, "Bisection tolerance in units of omega");

  auto* figure = app.add_subcommand("figure", "Regenerate the data for a canned figure");
  figure->add_option("name", figure_name, "Figure name")->required()->check(CLI::IsMember(qsr::figures::names()));
  figure->add_option("--format", c.format, "Output format")->check(CLI::IsMember({"csv", "json"}));
  figure->add_option("--out", c.out, "Output directory (default: current directory)");
  figure->add_option("--jobs", c.jobs, "Worker threads (default: hardware concurrency)");

  auto* validate = app.add_subcommand("validate", "Check a configuration and print regime warnings");
  add_config(validate);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int rc = app.exit(e);
    return rc == 0 ? 0 : kExitInput;
  }

  try {
    if (*steady) return cmd_steady(c);
    if (*sweep) return cmd_sweep(c);
    if (*threshold) return cmd_threshold(c);
    if (*figure) return cmd_figure(figure_name, c);
    if (*validate) return cmd_validate(c);
  } catch (const qsr::ConfigError& e) {
    std::cerr << "qsr: config error at " << e.what() << "\n";
    return kExitInput;
  } catch (const qsr::InvalidArgument& e) {
    std::cerr << "qsr: invalid input: " << e.what() << "\n";
    return kExitInput;
  } catch (const qsr::Error& e) {
    std::cerr << "qsr: solver failure: " << e.what() << "\n";
    return kExitSolver;
  }
  return kExitInput;
}
