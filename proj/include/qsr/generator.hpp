#pragma once

// Rotating-frame Hamiltonians, jump operators and the vectorized Liouvillian
// of a driven nearest-neighbour qubit chain under local decay and dephasing.
//
// Vectorization is column stacking: vec(A X B) = (B^T (x) A) vec(X).

#include <string>
#include <vector>

#include <Eigen/SparseCore>

#include "qsr/opalg.hpp"

namespace qsr {

enum class CouplingKind {
  ZZ,         ///< +J sigma_z sigma_z per bond (J = j_parallel)
  XXYY,       ///< -J_perp (xx + yy) - J_par zz per bond
  Heisenberg  ///< -Jx xx - Jy yy - Jz zz; only accepted when Jx == Jy
};

struct CouplingSpec {
  CouplingKind kind = CouplingKind::ZZ;
  double j_parallel = 0.0;  ///< J for ZZ, J_par for XXYY, Jz for Heisenberg
  double j_perp = 0.0;      ///< J_perp for XXYY, Jx for Heisenberg; unused for ZZ
  double j_y = 0.0;         ///< Jy for Heisenberg only

  static CouplingSpec zz(double j) { return {CouplingKind::ZZ, j, 0.0, 0.0}; }
  static CouplingSpec xxyy(double j_perp, double j_par) {
    return {CouplingKind::XXYY, j_par, j_perp, 0.0};
  }
  static CouplingSpec heisenberg(double jx, double jy, double jz) {
    return {CouplingKind::Heisenberg, jz, jx, jy};
  }

  /// Anisotropy d = J_perp - J_par that fixes the two-qubit steady state.
  /// For ZZ this is J itself.
  double anisotropy() const;
};

std::string to_string(CouplingKind kind);

/// Full parameterization of an N-qubit array. Every per-site vector has
/// length n_qubits.
struct ArrayConfig {
  int n_qubits = 1;
  std::vector<double> omega_rabi;
  std::vector<double> detuning;
  std::vector<double> gamma_decay;
  std::vector<double> gamma_dephase;
  std::vector<double> nbar;
  CouplingSpec coupling;

  /// All sites share the same parameters.
  static ArrayConfig homogeneous(int n_qubits, double omega, CouplingSpec coupling,
                                 double gamma_decay, double gamma_dephase = 0.0,
                                 double nbar = 0.0, double detuning = 0.0);

  /// Throws InvalidArgument on length mismatches, negative rates or N out of [1, 8].
  void validate() const;

  Eigen::Index hilbert_dim() const { return Eigen::Index{1} << n_qubits; }
};

inline constexpr int kMaxQubits = 8;

/// Vectorized generator: d vec(rho)/dt = matrix * vec(rho).
struct Liouvillian {
  Eigen::SparseMatrix<cplx> matrix;
  Eigen::Index hilbert_dim = 0;
  ArrayConfig config;

  Eigen::Index dim() const { return matrix.rows(); }
  ComplexMatrix dense() const { return ComplexMatrix(matrix); }
  /// Unvectorize L(rho) for a hilbert_dim x hilbert_dim operator.
  ComplexMatrix apply(const ComplexMatrix& rho) const;
};

ComplexMatrix build_coherent_hamiltonian(const ArrayConfig& config);
ComplexMatrix build_effective_hamiltonian(const ArrayConfig& config);
std::vector<ComplexMatrix> build_jump_operators(const ArrayConfig& config);

/// Assembled from the non-Hermitian H_eff plus sandwich terms L rho L^dagger.
Liouvillian build_liouvillian(const ArrayConfig& config);

/// Assembled from H_coh plus standard dissipators
/// L rho L^dagger - 1/2 {L^dagger L, rho}. Equal to build_liouvillian.
Liouvillian build_liouvillian_standard(const ArrayConfig& config);

/// Bose-Einstein occupation 1/(exp(omega0/T) - 1) with k_B = 1; 0 at T = 0.
double nbar_from_temperature(double omega0, double temperature);

/// Advisory warnings when Omega_j, Gamma_j nbar_j, delta_j or J exceed
/// 0.1 omega0 (boundary inclusive, i.e. exactly 0.1 is fine).
std::vector<std::string> validate_regime(const ArrayConfig& config, double omega0);

/// vec(m) by column stacking.
ComplexVector vectorize(const ComplexMatrix& m);
ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim);

}  // namespace qsr
