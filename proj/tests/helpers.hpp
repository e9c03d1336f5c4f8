#pragma once

#include <random>

#include "qsr/opalg.hpp"

namespace qsr::test {

inline cplx I1(0.0, 1.0);

inline double frob(const ComplexMatrix& a, const ComplexMatrix& b) { return (a - b).norm(); }

inline ComplexMatrix random_complex(std::mt19937_64& rng, Eigen::Index rows, Eigen::Index cols) {
  std::normal_distribution<double> g;
  ComplexMatrix m(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) m(i, j) = cplx(g(rng), g(rng));
  return m;
}

// Ginibre ensemble with rank `rank` (full rank by default).
inline DensityMatrix random_state(std::mt19937_64& rng, int n_qubits, Eigen::Index rank = 0) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  const ComplexMatrix g = random_complex(rng, d, rank > 0 ? rank : d);
  ComplexMatrix rho = g * g.adjoint();
  rho /= rho.trace().real();
  return DensityMatrix::from_numeric(rho);
}

inline ComplexMatrix random_hermitian(std::mt19937_64& rng, Eigen::Index d) {
  const ComplexMatrix g = random_complex(rng, d, d);
  return (g + g.adjoint()) / 2.0;
}

inline ComplexMatrix random_unitary(std::mt19937_64& rng, Eigen::Index d) {
  Eigen::HouseholderQR<ComplexMatrix> qr(random_complex(rng, d, d));
  return qr.householderQ() * ComplexMatrix::Identity(d, d);
}

inline DensityMatrix bell_phi_plus() {
  ComplexVector psi = ComplexVector::Zero(4);
  psi(0) = psi(3) = 1.0 / std::sqrt(2.0);
  return DensityMatrix::pure(psi);
}

}  // namespace qsr::test
