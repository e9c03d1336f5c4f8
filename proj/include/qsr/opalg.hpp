#pragma once

// Dense multi-qubit operator algebra.
//
// Qubit ordering: site 0 is the leftmost (most significant) tensor factor, so
// basis index b = b_0 b_1 ... b_{N-1} in binary, with b_j = 0 meaning the
// sigma_z = +1 eigenstate on site j. Site arguments are 0-based throughout the
// C++ API.

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include <Eigen/Dense>

namespace qsr {

using cplx = std::complex<double>;
using ComplexMatrix = Eigen::MatrixXcd;
using ComplexVector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

/// Throws InvalidArgument unless `m` is square, non-empty and finite.
void require_valid(const ComplexMatrix& m, const char* what = "matrix");

/// Number of qubits N with dim = 2^N; throws if dim is not a power of two.
int qubit_count_for_dim(Eigen::Index dim);

namespace pauli {
ComplexMatrix identity();
ComplexMatrix x();
ComplexMatrix y();
ComplexMatrix z();
/// Lowering operator |0><1|: annihilates the sigma_z = +1 (ground) state.
ComplexMatrix lower();
/// Raising operator |1><0|.
ComplexMatrix raise();
}  // namespace pauli

/// Trace-one, Hermitian, positive-semidefinite matrix on N qubits.
///
/// Construction validates trace (1e-10), Hermiticity (1e-10 entrywise) and
/// the minimum eigenvalue (>= -1e-9). Values are immutable afterwards.
class DensityMatrix {
 public:
  explicit DensityMatrix(ComplexMatrix m);

  /// Hermitize, clip eigenvalues in [-clip, 0) to zero and renormalize before
  /// validating. Used on solver outputs.
  static DensityMatrix from_numeric(const ComplexMatrix& m, double clip = 1e-9);

  static DensityMatrix pure(const ComplexVector& psi);
  static DensityMatrix maximally_mixed(int n_qubits);
  /// |b><b| for computational basis index b.
  static DensityMatrix basis_state(int n_qubits, Eigen::Index b);

  const ComplexMatrix& matrix() const noexcept { return m_; }
  int n_qubits() const noexcept { return n_; }
  Eigen::Index dim() const noexcept { return m_.rows(); }
  cplx operator()(Eigen::Index i, Eigen::Index j) const { return m_(i, j); }

 private:
  struct Unchecked {};
  DensityMatrix(ComplexMatrix m, int n, Unchecked) : m_(std::move(m)), n_(n) {}

  ComplexMatrix m_;
  int n_;
};

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

/// Kronecker product of a list, left to right.
ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors);

/// I^{(site)} (x) op (x) I^{(N-site-1)} for a 2x2 operator.
ComplexMatrix embed_local(const ComplexMatrix& op, std::size_t site, int n_qubits);

/// Two-site operator a_i b_j on distinct sites i, j.
ComplexMatrix embed_pair(const ComplexMatrix& a, std::size_t site_a,
                         const ComplexMatrix& b, std::size_t site_b, int n_qubits);

/// Reduced state on `keep` (strictly increasing, non-empty site list).
/// The returned state orders kept sites as given.
DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep);

/// Same on a raw matrix of dimension 2^n_qubits (no validation of positivity).
ComplexMatrix partial_trace(const ComplexMatrix& m, int n_qubits,
                            std::span<const std::size_t> keep);

/// Transpose on one tensor factor.
ComplexMatrix partial_transpose(const ComplexMatrix& m, int n_qubits, std::size_t site);
ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t site);

struct Eigensystem {
  RealVector values;     ///< ascending
  ComplexMatrix vectors; ///< orthonormal columns, vectors.col(i) pairs with values(i)
};

/// Throws InvalidArgument when max |m - m^dagger| exceeds 1e-8.
Eigensystem hermitian_eigensystem(const ComplexMatrix& m);

/// Eigenvalues only, ascending.
RealVector hermitian_eigenvalues(const ComplexMatrix& m);

/// max_ij |m_ij - conj(m_ji)|
double hermiticity_defect(const ComplexMatrix& m);

}  // namespace qsr
