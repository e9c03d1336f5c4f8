#include <atomic>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "qsr/config.hpp"
#include "qsr/errors.hpp"
#include "qsr/figures.hpp"
#include "qsr/parallel.hpp"
#include "qsr/steady.hpp"
#include "qsr/sweep.hpp"

using namespace qsr;

namespace {

std::string body(const std::string& csv) {
  std::istringstream in(csv);
  std::string line, out;
  while (std::getline(in, line))
    if (line.rfind("# generated_at=", 0) != 0) out += line + "\n";
  return out;
}

SweepSpec small_spec() {
  SweepSpec s;
  s.base = ArrayConfig::homogeneous(2, 1.0, CouplingSpec::zz(1.5), 1.0);
  s.axis = SweepAxis::GammaDecay;
  s.grid = {0.1, 1.0, 10.0};
  s.measures = {MeasureKind::Eof};
  return s;
}

}  // namespace

TEST_CASE("grids") {
  const auto lin = make_grid(0.0, 1.0, 5, GridSpacing::Linear);
  CHECK(lin == std::vector<double>{0.0, 0.25, 0.5, 0.75, 1.0});
  const auto lg = make_grid(0.01, 100.0, 5, GridSpacing::Log);
  CHECK(lg.front() == 0.01);
  CHECK(lg.back() == 100.0);
  CHECK(lg[2] == doctest::Approx(1.0).epsilon(1e-14));
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 1, GridSpacing::Linear), InvalidArgument);
  CHECK_THROWS_AS(make_grid(0.0, 1.0, 3, GridSpacing::Log), InvalidArgument);
  CHECK_THROWS_AS(make_grid(1.0, 1.0, 3, GridSpacing::Linear), InvalidArgument);
}

TEST_CASE("axis and measure names") {
  CHECK(parse_axis("Gamma") == SweepAxis::GammaDecay);
  CHECK(parse_axis("γ") == SweepAxis::GammaDephase);
  CHECK(parse_axis("j_perp") == SweepAxis::JPerp);
  CHECK_FALSE(parse_axis("omega"));
  for (auto m : {MeasureKind::Eof, MeasureKind::Concurrence, MeasureKind::Negativity, MeasureKind::MutualInformation,
                 MeasureKind::Eigenvalues, MeasureKind::PZ, MeasureKind::PX, MeasureKind::Residual})
    CHECK(parse_measure(to_string(m)) == m);
  CHECK_FALSE(parse_measure("fidelity"));
}

TEST_CASE("config parsing") {
  const auto p = parse_config_text(R"(
n_qubits: 2
omega: 1.0
coupling: {kind: ZZ, j: 1.5}
sweep:
  axis: Gamma
  grid: {start: 0.01, stop: 10, count: 200, spacing: log}
  measures: [eof, eigenvalues]
)");
  CHECK(p.array.n_qubits == 2);
  CHECK(p.array.gamma_dephase == std::vector<double>{0.0, 0.0});
  CHECK(p.array.detuning == std::vector<double>{0.0, 0.0});
  CHECK(p.array.nbar == std::vector<double>{0.0, 0.0});
  CHECK(p.array.coupling.kind == CouplingKind::ZZ);
  CHECK(p.array.coupling.j_parallel == 1.5);
  REQUIRE(p.sweep);
  CHECK(p.sweep->grid.size() == 200);
  CHECK(p.sweep->grid.front() == 0.01);
  CHECK(p.sweep->grid.back() == 10.0);

  // JSON is accepted as YAML flow syntax.
  const auto j = parse_config_text(R"({"n_qubits": 3, "omega": [1, 2, 3], "gamma_decay": 0.5,
    "coupling": {"kind": "XXYY", "j_perp": 2.0, "j_par": 0.5},
    "sweep": {"axis": "j_perp", "grid": [0.5, 1.0, 2.0], "measures": ["mutual_information"],
              "cut": {"a": [1], "b": [3]}}})");
  CHECK(j.array.omega_rabi == std::vector<double>{1, 2, 3});
  CHECK(j.array.coupling.anisotropy() == 1.5);
  REQUIRE(j.sweep);
  CHECK(j.sweep->cut.part_a == std::vector<std::size_t>{0});
  CHECK(j.sweep->cut.part_b == std::vector<std::size_t>{2});

  const auto t = parse_config_text("n_qubits: 1\nomega: 1\ntemperature: {omega0: 0.6931471805599453, T: 1}\n");
  CHECK(t.array.nbar[0] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("config errors name the field") {
  auto field_of = [](const std::string& text) {
    try {
      parse_config_text(text);
    } catch (const ConfigError& e) {
      return e.field();
    }
    return std::string("<none>");
  };
  CHECK(field_of("n_qubits: 2\nomega: 1\ngamma_decay: -1\n") == "gamma_decay");
  CHECK(field_of("n_qubits: 2\nomega: 1\ngamma_dephase: [0.1, -2]\n") == "gamma_dephase");
  CHECK(field_of("n_qubits: 2\nomega: 1\nbogus: 1\n") == "bogus");
  CHECK(field_of("omega: 1\n") == "n_qubits");
  CHECK(field_of("n_qubits: 12\nomega: 1\n") == "n_qubits");
  CHECK(field_of("n_qubits: 2\nomega: 1\ncoupling: {kind: Heisenberg, jx: 1, jy: 0.5, jz: 0}\n") == "coupling");
  CHECK(field_of("n_qubits: 2\nomega: 1\nsweep: {axis: nope, grid: [1, 2], measures: [eof]}\n") == "sweep.axis");
  CHECK(field_of("n_qubits: 2\nomega: 1\nsweep: {axis: J, grid: [2, 1], measures: [eof]}\n").rfind("sweep", 0) == 0);
  CHECK(field_of("n_qubits: 2\nomega: [1, 2, 3]\n") == "omega");
  CHECK(field_of("n_qubits: 2\nomega: 1\n") == "<none>");
  CHECK_THROWS_AS(parse_config_file("/nonexistent/qsr.yaml"), ConfigError);
}

TEST_CASE("sweep rows, determinism and degenerate points") {
  auto spec = small_spec();
  spec.measures = {MeasureKind::Eof, MeasureKind::Residual};
  const auto a = run_sweep(spec);
  CHECK(a.rows.size() == 6);
  CHECK(a.failure_count() == 0);
  for (const auto& [x, v] : a.series("residual")) CHECK(v <= 1e-9);
  spec.jobs = 1;
  const auto b = run_sweep(spec);
  spec.jobs = 3;
  const auto c = run_sweep(spec);
  CHECK(a.rows == b.rows);
  CHECK(body(to_csv(a)) == body(to_csv(c)));

  // Gamma = 0 without dephasing has no unique steady state: flagged, not fatal.
  auto degenerate = small_spec();
  degenerate.grid = {0.0, 1.0};
  const auto d = run_sweep(degenerate);
  CHECK(d.failure_count() == 1);
  CHECK(d.rows.front().measure == kFailureMeasure);
  CHECK(d.rows.back().measure == "eof");
  bool flagged = false;
  for (const auto& [k, v] : d.metadata) flagged |= k == "failure.0";
  CHECK(flagged);

  auto bad = small_spec();
  bad.measures = {MeasureKind::Concurrence};
  bad.base = ArrayConfig::homogeneous(3, 1.0, CouplingSpec::zz(1.5), 1.0);
  CHECK_THROWS_AS(run_sweep(bad), InvalidArgument);
}

TEST_CASE("sweep follows the closed-form spectrum") {
  auto spec = small_spec();
  spec.measures = {MeasureKind::Eigenvalues};
  const auto r = run_sweep(spec);
  for (double g : spec.grid) {
    auto l = steady_spectrum_analytic(g, 1.5);
    std::sort(l.begin(), l.end());
    for (int i = 0; i < 4; ++i) {
      const auto series = r.series("eigenvalue_" + std::to_string(i + 1));
      for (const auto& [x, v] : series)
        if (x == g) CHECK(std::abs(v - l[static_cast<std::size_t>(i)]) < 1e-9);
    }
  }
}

TEST_CASE("CSV and JSON output") {
  const auto r = run_sweep(small_spec());
  const std::string csv = to_csv(r);
  CHECK(csv.find('\r') == std::string::npos);
  CHECK(csv.rfind("# tool=qsr", 0) == 0);
  std::istringstream in(csv);
  std::string line;
  int data = 0;
  bool header = false;
  while (std::getline(in, line)) {
    if (line.rfind("#", 0) == 0) {
      CHECK_FALSE(header);
      CHECK(line.find('=') != std::string::npos);
    } else if (!header) {
      CHECK(line == "axis,measure,value");
      header = true;
    } else {
      ++data;
    }
  }
  CHECK(data == 3);

  CHECK(format_double(0.1) == "0.10000000000000001");
  CHECK(format_double(1.0 / 3.0) == "0.33333333333333331");
  CHECK(std::stod(format_double(1.0 / 3.0)) == 1.0 / 3.0);

  const auto back = from_json(to_json(r));
  CHECK(back.rows == r.rows);
  CHECK(back.metadata == r.metadata);

  const auto dir = std::filesystem::temp_directory_path() / "qsr_test_sweep";
  std::filesystem::create_directories(dir);
  emit(r, OutputFormat::Json, (dir / "r.json").string());
  CHECK(read_json_file((dir / "r.json").string()).rows == r.rows);
  emit(r, OutputFormat::Csv, (dir / "r.csv").string());
  std::ifstream f(dir / "r.csv", std::ios::binary);
  std::stringstream ss;
  ss << f.rdbuf();
  CHECK(ss.str() == csv);
  CHECK_THROWS_AS(emit(r, OutputFormat::Csv, "/nonexistent/dir/r.csv"), Error);
  CHECK_THROWS_AS(from_json("{\"rows\": 3}"), Error);
}

TEST_CASE("parallel map restores order and rethrows") {
  const auto v = parallel_map(100, 4, [](std::size_t i) { return static_cast<int>(i * i); });
  for (std::size_t i = 0; i < v.size(); ++i) CHECK(v[i] == static_cast<int>(i * i));
  CHECK_THROWS_AS(parallel_map(10, 3,
                               [](std::size_t i) {
                                 if (i == 7) throw NoConvergence("boom");
                                 return 0;
                               }),
                  NoConvergence);
  CHECK(resolve_jobs(3) == 3);
  CHECK(resolve_jobs(0) >= 1);
}

TEST_CASE("canned figures") {
  const auto names = figures::names();
  CHECK(names.size() == 5);
  CHECK_THROWS_AS(figures::run("fig5", 1), InvalidArgument);

  // Fig. 2: E_F vanishes below the threshold and peaks strictly inside the range.
  const auto f2 = run_sweep(figures::fig2_spec(60));
  const auto eof = f2.series("eof");
  std::size_t arg = 0;
  for (std::size_t i = 0; i < eof.size(); ++i) {
    if (eof[i].first < 1.0 / 3.0 - 1e-6) CHECK(eof[i].second == 0.0);
    if (eof[i].second > eof[arg].second) arg = i;
  }
  CHECK(arg > 0);
  CHECK(arg + 1 < eof.size());
  for (const auto& [x, res] : f2.series("residual")) CHECK(res <= 1e-9);

  // Fig. 3: larger anisotropy gives a larger maximum and an earlier onset.
  double prev_max = 0.0, prev_onset = 1e300;
  for (const auto& ns : figures::fig3_specs(60)) {
    const auto e = run_sweep(ns.spec).series("eof");
    double mx = 0.0, onset = 1e300;
    for (const auto& [x, v] : e) {
      mx = std::max(mx, v);
      if (v > 0.0) onset = std::min(onset, x);
    }
    if (ns.label == "fig3_d=0") {
      CHECK(mx == 0.0);
      continue;
    }
    CHECK(mx > prev_max);
    CHECK(onset <= prev_onset);
    prev_max = mx;
    prev_onset = onset;
  }
}
