#include "qsr/figures.hpp"

#include <charconv>

#include "qsr/errors.hpp"

namespace qsr::figures {
namespace {

constexpr double kOmega = 1.0;
constexpr double kS = 1.5;

SweepSpec gamma_sweep(ArrayConfig base, std::vector<double> grid, std::vector<MeasureKind> measures) {
  SweepSpec s;
  s.base = std::move(base);
  s.axis = SweepAxis::GammaDecay;
  s.grid = std::move(grid);
  s.measures = std::move(measures);
  return s;
}

std::string label_value(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 6);
  return std::string(buf, res.ptr);
}

}  // namespace

SweepSpec fig2_spec(int points) {
  return gamma_sweep(ArrayConfig::homogeneous(2, kOmega, CouplingSpec::zz(kS * kOmega), 0.0),
                     make_grid(0.01, 100.0, points, GridSpacing::Log),
                     {MeasureKind::Eigenvalues, MeasureKind::Eof, MeasureKind::Residual});
}

std::vector<NamedSweep> fig3_specs(int points) {
  std::vector<NamedSweep> out;
  for (double d : {0.0, 1.0, 2.0, 3.0, 4.0}) {
    auto base = ArrayConfig::homogeneous(2, kOmega, CouplingSpec::xxyy(d * kOmega, 0.0), 0.0);
    out.push_back({"fig3_d=" + label_value(d),
                   gamma_sweep(base, make_grid(0.01, 100.0, points, GridSpacing::Log), {MeasureKind::Eof})});
  }
  return out;
}

std::vector<double> fig6_dephasing_rates(int count) { return make_grid(0.0, 0.9, count, GridSpacing::Linear); }

std::vector<NamedSweep> fig6_specs(int gamma_points, int dephasing_points) {
  std::vector<NamedSweep> out;
  for (double g : fig6_dephasing_rates(dephasing_points)) {
    auto base = ArrayConfig::homogeneous(2, kOmega, CouplingSpec::zz(kS * kOmega), 0.0, g);
    out.push_back({"fig6_gamma=" + label_value(g),
                   gamma_sweep(base, make_grid(0.05, 20.0, gamma_points, GridSpacing::Log), {MeasureKind::Eof})});
  }
  return out;
}

std::vector<NamedSweep> fig7_specs(int gamma_points) {
  std::vector<NamedSweep> out;
  for (double g : {0.0, 0.1, 0.3}) {
    auto base = ArrayConfig::homogeneous(6, kOmega, CouplingSpec::zz(kS * kOmega), 0.0, g);
    auto spec = gamma_sweep(base, make_grid(0.01, 30.0, gamma_points, GridSpacing::Log),
                            {MeasureKind::MutualInformation, MeasureKind::Residual});
    spec.cut = Bipartition{{0}, {1}};
    out.push_back({"fig7_gamma=" + label_value(g), std::move(spec)});
  }
  return out;
}

std::vector<double> fig4_s_grid() { return make_grid(0.25, 10.0, 40, GridSpacing::Linear); }

SweepResult fig4_result(unsigned jobs) {
  const auto grid = fig4_s_grid();
  SurfaceOptions zero;
  zero.omega = kOmega;
  zero.policy = DephasingPolicy::Zero;
  zero.jobs = jobs;
  SurfaceOptions equal = zero;
  equal.policy = DephasingPolicy::EqualToDecay;
  const auto rz = threshold_surface(grid, zero);
  const auto re = threshold_surface(grid, equal);

  SweepResult out;
  out.metadata = {{"tool", std::string(kToolName) + " " + kToolVersion},
                  {kTimestampKey, utc_timestamp()},
                  {"figure", "fig4"},
                  {"axis", "s=J/omega"},
                  {"n_qubits", "2"},
                  {"coupling.kind", "ZZ"},
                  {"note", "rows are omitted where an edge does not exist (never entangled or no finite upper edge)"}};
  for (std::size_t i = 0; i < grid.size(); ++i) {
    const double s = grid[i];
    out.rows.push_back({s, "analytic_no_dephasing", threshold_zz(kOmega, s * kOmega)});
    if (rz[i].gamma_lower) out.rows.push_back({s, "lower_no_dephasing", *rz[i].gamma_lower});
    if (rz[i].gamma_upper) out.rows.push_back({s, "upper_no_dephasing", *rz[i].gamma_upper});
    if (re[i].gamma_lower) out.rows.push_back({s, "lower_equal_dephasing", *re[i].gamma_lower});
    if (re[i].gamma_upper) out.rows.push_back({s, "upper_equal_dephasing", *re[i].gamma_upper});
    if (const auto w = approx_combined_window(s)) {
      out.rows.push_back({s, "approx_lower_equal_dephasing", w->first * kOmega});
      out.rows.push_back({s, "approx_upper_equal_dephasing", w->second * kOmega});
    }
  }
  return out;
}

std::vector<std::string> names() { return {"fig2", "fig3", "fig4", "fig6", "fig7"}; }

std::vector<FigureOutput> run(const std::string& name, unsigned jobs) {
  auto run_all = [&](std::vector<NamedSweep> specs) {
    std::vector<FigureOutput> out;
    for (auto& ns : specs) {
      ns.spec.jobs = jobs;
      auto r = run_sweep(ns.spec);
      r.metadata.insert(r.metadata.begin() + 1, {"figure", name});
      out.push_back({ns.label, std::move(r)});
    }
    return out;
  };
  if (name == "fig2") return run_all({{"fig2", fig2_spec()}});
  if (name == "fig3") return run_all(fig3_specs());
  if (name == "fig4") return {{"fig4", fig4_result(jobs)}};
  if (name == "fig6") return run_all(fig6_specs());
  if (name == "fig7") return run_all(fig7_specs());
  throw InvalidArgument("unknown figure '" + name + "' (expected fig2, fig3, fig4, fig6 or fig7)");
}

}  // namespace qsr::figures
