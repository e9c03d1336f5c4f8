#pragma once

// Separability thresholds: closed forms for pure decay, the approximate
// combined-noise window, and a bisection scanner over numerically solved
// steady states.

#include <functional>
#include <limits>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "qsr/generator.hpp"

namespace qsr {

inline constexpr double kNeverEntangled = std::numeric_limits<double>::infinity();

enum class ThresholdMethod { Analytic, Approximate, Bisection };
std::string to_string(ThresholdMethod m);

/// Entangled window in Gamma. `lower` empty means entangled from the start
/// of the scanned range; `upper` = +inf means no return to separability was
/// found.
struct ThresholdResult {
  std::optional<double> lower;
  double upper = std::numeric_limits<double>::infinity();
  ThresholdMethod method = ThresholdMethod::Bisection;
  double tolerance = 0.0;
};

/// Omega^2 / (2J); J = 0 gives kNeverEntangled.
double threshold_zz(double omega, double j);

/// Omega^2 / (2 |J_perp - J_par|); isotropic coupling gives kNeverEntangled.
double threshold_xxyy(double omega, double j_perp, double j_par);

/// Approximate entangled r = Gamma/Omega window for gamma = Gamma at
/// s = J/Omega: roots of 1/(2r) + (32r + 2)/5 = s. Empty when
/// 25 s^2 - 20 s - 316 < 0.
std::optional<std::pair<double, double>> approx_combined_window(double s);

/// 1/(2r) + (32r + 2)/5, the approximate boundary s(r).
double approx_combined_boundary(double r);

using GammaFamily = std::function<ArrayConfig(double gamma)>;

/// True when the steady state at this config has concurrence above the
/// 1e-10 dead band.
bool steady_state_entangled(const ArrayConfig& config);

/// Locate the entanglement boundary between bracket ends of opposite
/// entanglement status to absolute accuracy `tol` in Gamma.
/// Separable -> entangled fills `lower`; entangled -> separable fills `upper`.
/// Throws NoSignChange when both ends agree.
ThresholdResult scan_threshold_bisection(const GammaFamily& family, std::pair<double, double> bracket,
                                         double tol);

enum class DephasingPolicy { Zero, EqualToDecay, Fixed };

struct SurfaceOptions {
  double omega = 1.0;
  DephasingPolicy policy = DephasingPolicy::Zero;
  double fixed_gamma = 0.0;  ///< used with DephasingPolicy::Fixed
  double gamma_min = 0.01;   ///< in units of omega
  double gamma_max = 100.0;  ///< in units of omega
  int grid_points = 80;      ///< log-spaced coarse scan
  double tol = 1e-7;         ///< bisection tolerance in Gamma
  unsigned jobs = 0;         ///< 0 = hardware concurrency
};

struct SurfaceRow {
  double s = 0.0;
  std::optional<double> gamma_lower;  ///< empty: never entangled on the grid
  std::optional<double> gamma_upper;  ///< empty: no finite upper edge
};

/// Two-qubit ZZ entangled window in Gamma for each s = J/Omega.
std::vector<SurfaceRow> threshold_surface(const std::vector<double>& s_grid, const SurfaceOptions& opts);

/// Two-qubit ZZ family at fixed s, Gamma varying, dephasing set by policy.
GammaFamily zz_gamma_family(double omega, double s, DephasingPolicy policy, double fixed_gamma = 0.0);

}  // namespace qsr
