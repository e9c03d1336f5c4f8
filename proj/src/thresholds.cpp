#include "qsr/thresholds.hpp"

#include <cmath>

#include "qsr/errors.hpp"
#include "qsr/measures.hpp"
#include "qsr/parallel.hpp"
#include "qsr/steady.hpp"
#include "qsr/tolerance.hpp"

namespace qsr {

std::string to_string(ThresholdMethod m) {
  switch (m) {
    case ThresholdMethod::Analytic: return "analytic";
    case ThresholdMethod::Approximate: return "approximate";
    case ThresholdMethod::Bisection: return "bisection";
  }
  return "?";
}

double threshold_zz(double omega, double j) {
  if (!(omega > 0.0)) throw InvalidArgument("threshold_zz: omega must be positive");
  if (j < 0.0) throw InvalidArgument("threshold_zz: J must be non-negative");
  if (j == 0.0) return kNeverEntangled;
  return omega * omega / (2.0 * j);
}

double threshold_xxyy(double omega, double j_perp, double j_par) {
  if (!(omega > 0.0)) throw InvalidArgument("threshold_xxyy: omega must be positive");
  return threshold_zz(omega, std::abs(j_perp - j_par));
}

double approx_combined_boundary(double r) {
  if (!(r > 0.0)) throw InvalidArgument("approx_combined_boundary: r must be positive");
  return 1.0 / (2.0 * r) + (32.0 * r + 2.0) / 5.0;
}

std::optional<std::pair<double, double>> approx_combined_window(double s) {
  if (!(s > 0.0)) throw InvalidArgument("approx_combined_window: s must be positive");
  const double disc = 25.0 * s * s - 20.0 * s - 316.0;
  if (disc < 0.0) return std::nullopt;
  const double mid = -1.0 / 32.0 + 5.0 * s / 64.0;
  const double half = std::sqrt(disc) / 64.0;
  return std::make_pair(mid - half, mid + half);
}

bool steady_state_entangled(const ArrayConfig& config) {
  return concurrence(solve_steady_numeric(config).state) > tol::entanglement_band;
}

ThresholdResult scan_threshold_bisection(const GammaFamily& family, std::pair<double, double> bracket,
                                         double tol) {
  auto [lo, hi] = bracket;
  if (!(lo < hi) || lo < 0.0) throw InvalidArgument("scan_threshold_bisection: invalid bracket");
  if (!(tol > 0.0)) throw InvalidArgument("scan_threshold_bisection: tol must be positive");
  const bool ent_lo = steady_state_entangled(family(lo));
  const bool ent_hi = steady_state_entangled(family(hi));
  if (ent_lo == ent_hi)
    throw NoSignChange("entanglement status is the same (" + std::string(ent_lo ? "entangled" : "separable") +
                       ") at both bracket ends");
  while (hi - lo > tol) {
    const double mid = 0.5 * (lo + hi);
    if (steady_state_entangled(family(mid)) == ent_lo)
      lo = mid;
    else
      hi = mid;
  }
  const double edge = 0.5 * (lo + hi);
  ThresholdResult out;
  out.method = ThresholdMethod::Bisection;
  out.tolerance = tol;
  if (ent_lo)
    out.upper = edge;
  else
    out.lower = edge;
  return out;
}

GammaFamily zz_gamma_family(double omega, double s, DephasingPolicy policy, double fixed_gamma) {
  return [=](double gamma) {
    const double deph = policy == DephasingPolicy::Zero           ? 0.0
                        : policy == DephasingPolicy::EqualToDecay ? gamma
                                                                  : fixed_gamma;
    return ArrayConfig::homogeneous(2, omega, CouplingSpec::zz(s * omega), gamma, deph);
  };
}

std::vector<SurfaceRow> threshold_surface(const std::vector<double>& s_grid, const SurfaceOptions& o) {
  if (o.grid_points < 2 || !(o.gamma_min > 0.0) || !(o.gamma_max > o.gamma_min))
    throw InvalidArgument("threshold_surface: invalid Gamma grid");
  for (double s : s_grid)
    if (!(s >= 0.0)) throw InvalidArgument("threshold_surface: s must be non-negative");

  auto row_for = [&](std::size_t idx) {
    const double s = s_grid[idx];
    SurfaceRow row;
    row.s = s;
    const GammaFamily fam = zz_gamma_family(o.omega, s, o.policy, o.fixed_gamma);
    std::vector<double> grid(static_cast<std::size_t>(o.grid_points));
    const double a = std::log(o.gamma_min * o.omega), b = std::log(o.gamma_max * o.omega);
    for (std::size_t k = 0; k < grid.size(); ++k)
      grid[k] = std::exp(a + (b - a) * static_cast<double>(k) / static_cast<double>(grid.size() - 1));

    std::vector<bool> ent(grid.size());
    for (std::size_t k = 0; k < grid.size(); ++k) ent[k] = steady_state_entangled(fam(grid[k]));
    std::size_t first = grid.size();
    for (std::size_t k = 0; k < grid.size(); ++k)
      if (ent[k]) {
        first = k;
        break;
      }
    if (first == grid.size()) return row;
    std::size_t last = first;
    while (last + 1 < grid.size() && ent[last + 1]) ++last;

    if (first > 0) {
      row.gamma_lower = *scan_threshold_bisection(fam, {grid[first - 1], grid[first]}, o.tol).lower;
    } else {
      // Entangled at the bottom of the grid: walk down until separable.
      double lo = grid[0];
      for (int tries = 0; tries < 8 && steady_state_entangled(fam(lo)); ++tries) lo /= 10.0;
      row.gamma_lower = *scan_threshold_bisection(fam, {lo, grid[0]}, o.tol).lower;
    }
    if (last + 1 < grid.size()) {
      row.gamma_upper = scan_threshold_bisection(fam, {grid[last], grid[last + 1]}, o.tol).upper;
    } else if (o.policy != DephasingPolicy::Zero) {
      const double cap = 100.0 * o.omega;
      if (cap > grid[last] && !steady_state_entangled(fam(cap)))
        row.gamma_upper = scan_threshold_bisection(fam, {grid[last], cap}, o.tol).upper;
    }
    return row;
  };
  return parallel_map(s_grid.size(), o.jobs, row_for);
}

}  // namespace qsr
