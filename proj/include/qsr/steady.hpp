#pragma once

#include <array>
#include <string>

#include "qsr/generator.hpp"
#include "qsr/kernels/kernels.hpp"
#include "qsr/opalg.hpp"

namespace qsr {

/// Dimensionless parameters of the two-qubit closed form:
/// r = Gamma/Omega, s = J/Omega (or d), t = r^2 + 1, k = 3 + 2r^2 + t^2 + 4 r^2 s^2.
struct ReducedParams {
  double r = 0.0;
  double s = 0.0;
  double t = 1.0;
  double k = 4.0;

  static ReducedParams from(double r, double s);
};

enum class SteadyMethod { NullSpace, LinearSolve, Analytic, Propagation };

std::string to_string(SteadyMethod m);

struct SteadyStateReport {
  DensityMatrix state;
  double residual = 0.0;  ///< ||L vec(rho)||_2 of the returned state
  int null_space_dim = 1;
  SteadyMethod method = SteadyMethod::NullSpace;
};

struct SolveOptions {
  double residual_tol = 1e-9;
  /// Superoperator dimension up to which the dense SVD null space is used.
  Eigen::Index dense_limit = 256;
  /// Force a strategy; Analytic/Propagation are not valid here.
  enum class Strategy { Auto, Dense, Sparse } strategy = Strategy::Auto;
};

/// Steady state of a Liouvillian. Dense SVD null space for small systems,
/// otherwise a sparse LU solve with the first row replaced by the trace
/// constraint. Throws NonUniqueSteadyState / NoConvergence.
SteadyStateReport solve_steady_numeric(const Liouvillian& l, const SolveOptions& opts = {});

/// Convenience: build the Liouvillian and solve.
SteadyStateReport solve_steady_numeric(const ArrayConfig& config, const SolveOptions& opts = {});

/// Closed-form two-qubit steady state for ZZ coupling at zero detuning and
/// zero temperature, r = Gamma/Omega, s = J/Omega.
DensityMatrix analytic_steady_zz(double r, double s);

/// XXYY closed form: the ZZ form with s replaced by d = s_perp - s_par.
DensityMatrix analytic_steady_xxyy(double r, double s_perp, double s_par);

/// Closed-form eigenvalues (lambda_1, lambda_2, lambda_3, lambda_4) of
/// analytic_steady_zz. lambda_1 = lambda_2; lambda_3 and lambda_4 are the
/// minus and plus branches.
std::array<double, 4> steady_spectrum_analytic(double r, double s);

struct PropagateOptions {
  double t_max = 0.0;  ///< required, > 0
  double dt = 0.0;     ///< 0 selects 0.01 / max(total rate, ||H_coh||)
  /// Steps between convergence checks.
  int window = 200;
  /// Stop once ||rho(t + window*dt) - rho(t)||_F drops below this.
  double converge_tol = 1e-12;
  kernels::Backend backend = kernels::active();
};

struct PropagationResult {
  DensityMatrix state;
  double residual = 0.0;  ///< ||L vec(rho_final)||_2
  double t_final = 0.0;
  bool converged = false;
};

/// Fixed-step RK4 integration of d vec(rho)/dt = L vec(rho).
/// Throws StepSizeUnstable when the trace drifts by more than 1e-6.
PropagationResult propagate_to_steady(const Liouvillian& l, const DensityMatrix& rho0,
                                      const PropagateOptions& opts);

/// Default RK4 step for a configuration.
double default_time_step(const ArrayConfig& config);

struct UniquenessReport {
  bool unique = false;
  int null_dim = 0;
};

/// Null-space dimension from the singular-value gap (sigma_i < 1e-10 sigma_max)
/// for superoperator dimension <= 1024; above that a nonsingular
/// trace-replaced LU certifies null_dim = 1 and failure reports 2 (a lower bound).
UniquenessReport check_uniqueness(const Liouvillian& l);

/// ||L vec(rho)||_2
double steady_residual(const Liouvillian& l, const ComplexMatrix& rho);

}  // namespace qsr
