#pragma once

// Single registry for every numerical tolerance used across the library.
namespace qsr::tol {

/// Comparisons against exact closed-form expressions.
inline constexpr double exact = 1e-10;
/// Outputs of eigen-solvers and null-space solves.
inline constexpr double eigen = 1e-9;
/// Hermiticity precondition for hermitian_eigensystem.
inline constexpr double hermitian_input = 1e-8;
/// Eigenvalues in [-entropy_floor, 0) count as zero inside entropy sums.
inline constexpr double entropy_floor = 1e-12;
/// Relative singular-value cutoff for null-space dimension estimates.
inline constexpr double null_space = 1e-10;
/// Concurrence / PT eigenvalue dead band: |x| <= band is separable.
inline constexpr double entanglement_band = 1e-10;
/// Accepted steady-state residual ||L vec(rho)||_2.
inline constexpr double residual = 1e-9;
/// Trace drift that marks a propagation step as unstable.
inline constexpr double trace_drift = 1e-6;

}  // namespace qsr::tol
