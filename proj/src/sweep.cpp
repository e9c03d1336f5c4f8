#include "qsr/sweep.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "qsr/errors.hpp"
#include "qsr/parallel.hpp"

namespace qsr {

std::string to_string(SweepAxis a) {
  switch (a) {
    case SweepAxis::GammaDecay: return "gamma_decay";
    case SweepAxis::GammaDephase: return "gamma_dephase";
    case SweepAxis::J: return "j";
    case SweepAxis::JPerp: return "j_perp";
    case SweepAxis::JPar: return "j_par";
    case SweepAxis::Detuning: return "detuning";
  }
  return "?";
}

std::string to_string(MeasureKind m) {
  switch (m) {
    case MeasureKind::Eof: return "eof";
    case MeasureKind::Concurrence: return "concurrence";
    case MeasureKind::Negativity: return "negativity";
    case MeasureKind::MutualInformation: return "mutual_information";
    case MeasureKind::Eigenvalues: return "eigenvalues";
    case MeasureKind::PZ: return "p_z";
    case MeasureKind::PX: return "p_x";
    case MeasureKind::Residual: return "residual";
  }
  return "?";
}

std::optional<SweepAxis> parse_axis(const std::string& name) {
  static const std::map<std::string, SweepAxis> names = {
      {"gamma_decay", SweepAxis::GammaDecay}, {"Gamma", SweepAxis::GammaDecay}, {"Γ", SweepAxis::GammaDecay},
      {"gamma_dephase", SweepAxis::GammaDephase}, {"gamma", SweepAxis::GammaDephase}, {"γ", SweepAxis::GammaDephase},
      {"j", SweepAxis::J}, {"J", SweepAxis::J},
      {"j_perp", SweepAxis::JPerp}, {"J_perp", SweepAxis::JPerp}, {"J⊥", SweepAxis::JPerp},
      {"j_par", SweepAxis::JPar}, {"J_par", SweepAxis::JPar}, {"J∥", SweepAxis::JPar},
      {"detuning", SweepAxis::Detuning}, {"delta", SweepAxis::Detuning}, {"δ", SweepAxis::Detuning},
  };
  if (auto it = names.find(name); it != names.end()) return it->second;
  return std::nullopt;
}

std::optional<MeasureKind> parse_measure(const std::string& name) {
  for (auto m : {MeasureKind::Eof, MeasureKind::Concurrence, MeasureKind::Negativity,
                 MeasureKind::MutualInformation, MeasureKind::Eigenvalues, MeasureKind::PZ, MeasureKind::PX,
                 MeasureKind::Residual})
    if (to_string(m) == name) return m;
  return std::nullopt;
}

std::vector<double> make_grid(double start, double stop, int count, GridSpacing spacing) {
  if (count < 2) throw InvalidArgument("grid count must be >= 2");
  if (!(start < stop)) throw InvalidArgument("grid start must be below stop");
  if (spacing == GridSpacing::Log && !(start > 0.0)) throw InvalidArgument("log grid needs start > 0");
  std::vector<double> g(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const double f = static_cast<double>(i) / static_cast<double>(count - 1);
    g[static_cast<std::size_t>(i)] = spacing == GridSpacing::Linear
                                         ? start + (stop - start) * f
                                         : std::exp(std::log(start) + (std::log(stop) - std::log(start)) * f);
  }
  g.front() = start;
  g.back() = stop;
  return g;
}

void SweepSpec::validate() const {
  base.validate();
  if (grid.size() < 2) throw InvalidArgument("sweep grid needs at least 2 points");
  for (std::size_t i = 1; i < grid.size(); ++i)
    if (!(grid[i] > grid[i - 1])) throw InvalidArgument("sweep grid must be strictly increasing");
  if (measures.empty()) throw InvalidArgument("sweep needs at least one measure");
  for (auto m : measures) {
    const bool two_qubit = m == MeasureKind::Eof || m == MeasureKind::Concurrence || m == MeasureKind::Negativity;
    if (two_qubit && base.n_qubits != 2)
      throw InvalidArgument("measure " + to_string(m) + " is defined for two-qubit arrays only");
    if (m == MeasureKind::MutualInformation) cut.validate(base.n_qubits);
    if ((m == MeasureKind::PZ || m == MeasureKind::PX) && site >= static_cast<std::size_t>(base.n_qubits))
      throw InvalidArgument("localization site out of range");
  }
  const bool rate_axis = axis == SweepAxis::GammaDecay || axis == SweepAxis::GammaDephase;
  if (rate_axis && grid.front() < 0.0) throw InvalidArgument("rate sweeps must be non-negative");
  if (tie_dephasing && axis == SweepAxis::GammaDephase)
    throw InvalidArgument("tie_dephasing cannot be combined with a gamma_dephase sweep");
  if ((axis == SweepAxis::JPerp) && base.coupling.kind == CouplingKind::ZZ)
    throw InvalidArgument("j_perp sweeps need an XXYY coupling");
}

ArrayConfig SweepSpec::config_at(double v) const {
  ArrayConfig c = base;
  switch (axis) {
    case SweepAxis::GammaDecay: std::fill(c.gamma_decay.begin(), c.gamma_decay.end(), v); break;
    case SweepAxis::GammaDephase: std::fill(c.gamma_dephase.begin(), c.gamma_dephase.end(), v); break;
    case SweepAxis::J:
    case SweepAxis::JPar: c.coupling.j_parallel = v; break;
    case SweepAxis::JPerp: c.coupling.j_perp = v; break;
    case SweepAxis::Detuning: std::fill(c.detuning.begin(), c.detuning.end(), v); break;
  }
  if (tie_dephasing) c.gamma_dephase = c.gamma_decay;
  return c;
}

std::size_t SweepResult::failure_count() const {
  return static_cast<std::size_t>(
      std::count_if(rows.begin(), rows.end(), [](const SweepRow& r) { return r.measure == kFailureMeasure; }));
}

std::vector<std::pair<double, double>> SweepResult::series(const std::string& measure) const {
  std::vector<std::pair<double, double>> out;
  for (const auto& r : rows)
    if (r.measure == measure) out.emplace_back(r.axis, r.value);
  return out;
}

std::vector<SweepRow> measure_rows(const SweepSpec& spec, double x, const SteadyStateReport& rep) {
  std::vector<SweepRow> rows;
  const DensityMatrix& rho = rep.state;
  for (auto m : spec.measures) {
    switch (m) {
      case MeasureKind::Eof: rows.push_back({x, "eof", entanglement_of_formation(rho)}); break;
      case MeasureKind::Concurrence: rows.push_back({x, "concurrence", concurrence(rho)}); break;
      case MeasureKind::Negativity: rows.push_back({x, "negativity", negativity(rho)}); break;
      case MeasureKind::MutualInformation:
        rows.push_back({x, "mutual_information", mutual_information(rho, spec.cut)});
        break;
      case MeasureKind::Eigenvalues: {
        const RealVector ev = hermitian_eigenvalues(rho.matrix());
        for (Eigen::Index i = 0; i < ev.size(); ++i)
          rows.push_back({x, "eigenvalue_" + std::to_string(i + 1), ev(i)});
        break;
      }
      case MeasureKind::PZ: rows.push_back({x, "p_z", localization_probabilities(rho, spec.site).p_z}); break;
      case MeasureKind::PX: rows.push_back({x, "p_x", localization_probabilities(rho, spec.site).p_x}); break;
      case MeasureKind::Residual: rows.push_back({x, "residual", rep.residual}); break;
    }
  }
  return rows;
}

std::vector<std::pair<std::string, std::string>> describe(const ArrayConfig& c) {
  auto list = [](const std::vector<double>& v) {
    std::string s = "[";
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? "," : "") + format_double(v[i]);
    return s + "]";
  };
  return {{"n_qubits", std::to_string(c.n_qubits)},
          {"omega_rabi", list(c.omega_rabi)},
          {"detuning", list(c.detuning)},
          {"gamma_decay", list(c.gamma_decay)},
          {"gamma_dephase", list(c.gamma_dephase)},
          {"nbar", list(c.nbar)},
          {"coupling.kind", to_string(c.coupling.kind)},
          {"coupling.j_par", format_double(c.coupling.j_parallel)},
          {"coupling.j_perp", format_double(c.coupling.j_perp)}};
}

SweepResult run_sweep(const SweepSpec& spec) {
  spec.validate();
  struct Point {
    std::vector<SweepRow> rows;
    std::string failure;
    std::string method;
  };
  auto eval = [&](std::size_t i) {
    const double x = spec.grid[i];
    Point p;
    try {
      const SteadyStateReport rep = solve_steady_numeric(spec.config_at(x), spec.solver);
      p.rows = measure_rows(spec, x, rep);
      p.method = to_string(rep.method);
    } catch (const Error& e) {
      p.rows = {{x, kFailureMeasure, 2.0}};
      p.failure = e.what();
    }
    return p;
  };
  const auto points = parallel_map(spec.grid.size(), spec.jobs, eval);

  SweepResult out;
  out.metadata.emplace_back("tool", std::string(kToolName) + " " + kToolVersion);
  out.metadata.emplace_back(kTimestampKey, utc_timestamp());
  out.metadata.emplace_back("axis", to_string(spec.axis));
  std::string ms;
  for (auto m : spec.measures) ms += (ms.empty() ? "" : ",") + to_string(m);
  out.metadata.emplace_back("measures", ms);
  if (spec.tie_dephasing) out.metadata.emplace_back("tie_dephasing", "true");
  for (auto& kv : describe(spec.base)) out.metadata.push_back(kv);
  std::string method;
  for (const auto& p : points)
    if (!p.method.empty()) {
      method = p.method;
      break;
    }
  out.metadata.emplace_back("solver.method", method.empty() ? "none" : method);
  out.metadata.emplace_back("solver.residual_tol", format_double(spec.solver.residual_tol));
  for (std::size_t i = 0; i < points.size(); ++i) {
    out.rows.insert(out.rows.end(), points[i].rows.begin(), points[i].rows.end());
    if (!points[i].failure.empty())
      out.metadata.emplace_back("failure." + format_double(spec.grid[i]), points[i].failure);
  }
  return out;
}

}  // namespace qsr
