#include "qsr/config.hpp"

#include <cmath>
#include <fstream>
#include <set>
#include <sstream>

#include <yaml-cpp/yaml.h>

#include "qsr/errors.hpp"

namespace qsr {
namespace {

void reject_unknown(const YAML::Node& node, const std::string& path, const std::set<std::string>& allowed) {
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError(path.empty() ? key : path + "." + key, "unknown field");
  }
}

double as_number(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ConfigError(path, "expected a number");
  try {
    const double v = n.as<double>();
    if (!std::isfinite(v)) throw ConfigError(path, "must be finite");
    return v;
  } catch (const YAML::Exception&) {
    throw ConfigError(path, "expected a number, got '" + n.as<std::string>() + "'");
  }
}

int as_int(const YAML::Node& n, const std::string& path) {
  const double v = as_number(n, path);
  if (v != std::floor(v)) throw ConfigError(path, "expected an integer");
  return static_cast<int>(v);
}

bool as_bool(const YAML::Node& n, const std::string& path) {
  try {
    return n.as<bool>();
  } catch (const YAML::Exception&) {
    throw ConfigError(path, "expected true or false");
  }
}

std::string as_string(const YAML::Node& n, const std::string& path) {
  if (!n.IsScalar()) throw ConfigError(path, "expected a string");
  return n.as<std::string>();
}

// Scalar (broadcast) or per-site list.
std::vector<double> per_site(const YAML::Node& n, const std::string& path, int n_qubits, double fallback,
                             bool nonneg) {
  std::vector<double> v;
  if (!n) {
    v.assign(static_cast<std::size_t>(n_qubits), fallback);
  } else if (n.IsSequence()) {
    if (static_cast<int>(n.size()) != n_qubits)
      throw ConfigError(path, "expected " + std::to_string(n_qubits) + " entries, got " + std::to_string(n.size()));
    for (std::size_t i = 0; i < n.size(); ++i) v.push_back(as_number(n[i], path + "[" + std::to_string(i) + "]"));
  } else {
    v.assign(static_cast<std::size_t>(n_qubits), as_number(n, path));
  }
  if (nonneg)
    for (std::size_t i = 0; i < v.size(); ++i)
      if (v[i] < 0.0) throw ConfigError(path, "must be non-negative (got " + format_double(v[i]) + ")");
  return v;
}

std::vector<std::size_t> site_list(const YAML::Node& n, const std::string& path, int n_qubits) {
  if (!n.IsSequence() || n.size() == 0) throw ConfigError(path, "expected a non-empty list of 1-based sites");
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < n.size(); ++i) {
    const int s = as_int(n[i], path + "[" + std::to_string(i) + "]");
    if (s < 1 || s > n_qubits) throw ConfigError(path, "site " + std::to_string(s) + " out of range 1.." + std::to_string(n_qubits));
    out.push_back(static_cast<std::size_t>(s - 1));
  }
  return out;
}

CouplingSpec parse_coupling(const YAML::Node& n) {
  if (!n) return CouplingSpec::zz(0.0);
  if (!n.IsMap()) throw ConfigError("coupling", "expected a mapping");
  reject_unknown(n, "coupling", {"kind", "j", "j_perp", "j_par", "jx", "jy", "jz"});
  const std::string kind = n["kind"] ? as_string(n["kind"], "coupling.kind") : "ZZ";
  auto num = [&](const char* key) { return n[key] ? as_number(n[key], std::string("coupling.") + key) : 0.0; };
  if (kind == "ZZ" || kind == "zz") return CouplingSpec::zz(n["j"] ? num("j") : num("j_par"));
  if (kind == "XXYY" || kind == "xxyy") return CouplingSpec::xxyy(num("j_perp"), num("j_par"));
  if (kind == "Heisenberg" || kind == "heisenberg" || kind == "XYZ") return CouplingSpec::heisenberg(num("jx"), num("jy"), num("jz"));
  throw ConfigError("coupling.kind", "unknown coupling kind '" + kind + "' (expected ZZ, XXYY or Heisenberg)");
}

SweepSpec parse_sweep(const YAML::Node& n, const ArrayConfig& base, const SolveOptions& solver) {
  if (!n.IsMap()) throw ConfigError("sweep", "expected a mapping");
  reject_unknown(n, "sweep", {"axis", "grid", "measures", "cut", "site", "tie_dephasing"});
  SweepSpec s;
  s.base = base;
  s.solver = solver;
  if (!n["axis"]) throw ConfigError("sweep.axis", "missing");
  const auto axis_name = as_string(n["axis"], "sweep.axis");
  const auto axis = parse_axis(axis_name);
  if (!axis) throw ConfigError("sweep.axis", "unknown axis '" + axis_name + "'");
  s.axis = *axis;

  const YAML::Node g = n["grid"];
  if (!g) throw ConfigError("sweep.grid", "missing");
  if (g.IsSequence()) {
    for (std::size_t i = 0; i < g.size(); ++i) s.grid.push_back(as_number(g[i], "sweep.grid[" + std::to_string(i) + "]"));
  } else if (g.IsMap()) {
    reject_unknown(g, "sweep.grid", {"start", "stop", "count", "spacing"});
    for (const char* key : {"start", "stop", "count"})
      if (!g[key]) throw ConfigError(std::string("sweep.grid.") + key, "missing");
    GridSpacing spacing = s.axis == SweepAxis::GammaDecay ? GridSpacing::Log : GridSpacing::Linear;
    if (g["spacing"]) {
      const auto sp = as_string(g["spacing"], "sweep.grid.spacing");
      if (sp == "log") spacing = GridSpacing::Log;
      else if (sp == "linear") spacing = GridSpacing::Linear;
      else throw ConfigError("sweep.grid.spacing", "expected linear or log");
    }
    const int count = as_int(g["count"], "sweep.grid.count");
    if (count < 2) throw ConfigError("sweep.grid.count", "must be >= 2");
    try {
      s.grid = make_grid(as_number(g["start"], "sweep.grid.start"), as_number(g["stop"], "sweep.grid.stop"), count, spacing);
    } catch (const InvalidArgument& e) {
      throw ConfigError("sweep.grid", e.what());
    }
  } else {
    throw ConfigError("sweep.grid", "expected a list of values or {start, stop, count, spacing}");
  }
  if (s.grid.size() < 2) throw ConfigError("sweep.grid", "needs at least 2 points");
  for (std::size_t i = 1; i < s.grid.size(); ++i)
    if (!(s.grid[i] > s.grid[i - 1])) throw ConfigError("sweep.grid", "must be strictly increasing");

  if (!n["measures"] || !n["measures"].IsSequence()) throw ConfigError("sweep.measures", "expected a list");
  for (std::size_t i = 0; i < n["measures"].size(); ++i) {
    const auto name = as_string(n["measures"][i], "sweep.measures[" + std::to_string(i) + "]");
    const auto m = parse_measure(name);
    if (!m) throw ConfigError("sweep.measures[" + std::to_string(i) + "]", "unknown measure '" + name + "'");
    s.measures.push_back(*m);
  }
  if (n["cut"]) {
    const YAML::Node c = n["cut"];
    if (!c.IsMap()) throw ConfigError("sweep.cut", "expected {a: [...], b: [...]}");
    reject_unknown(c, "sweep.cut", {"a", "b"});
    if (!c["a"]) throw ConfigError("sweep.cut.a", "missing");
    auto a = site_list(c["a"], "sweep.cut.a", base.n_qubits);
    s.cut = c["b"] ? Bipartition{a, site_list(c["b"], "sweep.cut.b", base.n_qubits)}
                   : Bipartition::complement_of(a, base.n_qubits);
  } else if (base.n_qubits >= 2) {
    s.cut = Bipartition{{0}, {1}};
  }
  if (n["site"]) {
    const int site = as_int(n["site"], "sweep.site");
    if (site < 1 || site > base.n_qubits) throw ConfigError("sweep.site", "out of range 1.." + std::to_string(base.n_qubits));
    s.site = static_cast<std::size_t>(site - 1);
  }
  if (n["tie_dephasing"]) s.tie_dephasing = as_bool(n["tie_dephasing"], "sweep.tie_dephasing");
  try {
    s.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("sweep", e.what());
  }
  return s;
}

}  // namespace

ParsedConfig parse_config_text(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError("<root>", std::string("parse error: ") + e.what());
  }
  if (!root.IsMap()) throw ConfigError("<root>", "expected a mapping at top level");
  reject_unknown(root, "", {"n_qubits", "omega", "omega_rabi", "detuning", "gamma_decay", "gamma_dephase", "nbar",
                            "temperature", "omega0", "coupling", "sweep", "threshold", "solver"});

  ParsedConfig out;
  if (!root["n_qubits"]) throw ConfigError("n_qubits", "missing");
  const int n = as_int(root["n_qubits"], "n_qubits");
  if (n < 1 || n > kMaxQubits) throw ConfigError("n_qubits", "must be in 1.." + std::to_string(kMaxQubits));

  ArrayConfig& a = out.array;
  a.n_qubits = n;
  if (root["omega"] && root["omega_rabi"]) throw ConfigError("omega", "give either omega or omega_rabi");
  const YAML::Node om = root["omega"] ? root["omega"] : root["omega_rabi"];
  if (!om) throw ConfigError("omega", "missing");
  a.omega_rabi = per_site(om, root["omega"] ? "omega" : "omega_rabi", n, 0.0, true);
  a.detuning = per_site(root["detuning"], "detuning", n, 0.0, false);
  a.gamma_decay = per_site(root["gamma_decay"], "gamma_decay", n, 0.0, true);
  a.gamma_dephase = per_site(root["gamma_dephase"], "gamma_dephase", n, 0.0, true);

  if (root["nbar"] && root["temperature"]) throw ConfigError("nbar", "give either nbar or temperature");
  if (const YAML::Node t = root["temperature"]) {
    if (!t.IsMap()) throw ConfigError("temperature", "expected {omega0: ..., T: ...}");
    reject_unknown(t, "temperature", {"omega0", "T"});
    if (!t["omega0"] || !t["T"]) throw ConfigError("temperature", "needs omega0 and T");
    const double w0 = as_number(t["omega0"], "temperature.omega0");
    const double temp = as_number(t["T"], "temperature.T");
    if (!(w0 > 0.0)) throw ConfigError("temperature.omega0", "must be positive");
    if (temp < 0.0) throw ConfigError("temperature.T", "must be non-negative");
    a.nbar.assign(static_cast<std::size_t>(n), nbar_from_temperature(w0, temp));
  } else {
    a.nbar = per_site(root["nbar"], "nbar", n, 0.0, true);
  }
  a.coupling = parse_coupling(root["coupling"]);
  if (a.coupling.kind == CouplingKind::Heisenberg && a.coupling.j_perp != a.coupling.j_y)
    throw ConfigError("coupling", "general Heisenberg coupling (jx != jy) has no time-independent rotating-frame form");

  if (root["omega0"]) {
    const double w0 = as_number(root["omega0"], "omega0");
    if (!(w0 > 0.0)) throw ConfigError("omega0", "must be positive");
    out.omega0 = w0;
  }
  if (const YAML::Node s = root["solver"]) {
    if (!s.IsMap()) throw ConfigError("solver", "expected a mapping");
    reject_unknown(s, "solver", {"residual_tol"});
    if (s["residual_tol"]) {
      out.solver.residual_tol = as_number(s["residual_tol"], "solver.residual_tol");
      if (!(out.solver.residual_tol > 0.0)) throw ConfigError("solver.residual_tol", "must be positive");
    }
  }
  if (const YAML::Node t = root["threshold"]) {
    if (!t.IsMap()) throw ConfigError("threshold", "expected a mapping");
    reject_unknown(t, "threshold", {"bracket", "tie_dephasing", "tol"});
    if (t["bracket"]) {
      if (!t["bracket"].IsSequence() || t["bracket"].size() != 2) throw ConfigError("threshold.bracket", "expected [lo, hi]");
      out.threshold.bracket = {as_number(t["bracket"][0], "threshold.bracket[0]"), as_number(t["bracket"][1], "threshold.bracket[1]")};
      if (!(out.threshold.bracket.first >= 0.0 && out.threshold.bracket.first < out.threshold.bracket.second))
        throw ConfigError("threshold.bracket", "need 0 <= lo < hi");
    }
    if (t["tie_dephasing"]) out.threshold.tie_dephasing = as_bool(t["tie_dephasing"], "threshold.tie_dephasing");
    if (t["tol"]) {
      out.threshold.tol = as_number(t["tol"], "threshold.tol");
      if (!(out.threshold.tol > 0.0)) throw ConfigError("threshold.tol", "must be positive");
    }
  }
  try {
    a.validate();
  } catch (const InvalidArgument& e) {
    throw ConfigError("<array>", e.what());
  }
  if (root["sweep"]) out.sweep = parse_sweep(root["sweep"], a, out.solver);
  return out;
}

ParsedConfig parse_config_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw ConfigError("<file>", "cannot open " + path);
  std::ostringstream ss;
  ss << f.rdbuf();
  return parse_config_text(ss.str());
}

}  // namespace qsr
