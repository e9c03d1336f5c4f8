#include "qsr/opalg.hpp"

#include <bit>
#include <cmath>
#include <string>

#include "qsr/errors.hpp"
#include "qsr/tolerance.hpp"

namespace qsr {

void require_valid(const ComplexMatrix& m, const char* what) {
  if (m.rows() == 0 || m.rows() != m.cols())
    throw InvalidArgument(std::string(what) + " must be square and non-empty");
  if (!m.allFinite()) throw InvalidArgument(std::string(what) + " has non-finite entries");
}

int qubit_count_for_dim(Eigen::Index dim) {
  const auto u = static_cast<unsigned long long>(dim);
  if (dim < 2 || !std::has_single_bit(u))
    throw InvalidArgument("dimension " + std::to_string(dim) + " is not 2^N with N >= 1");
  return std::countr_zero(u);
}

namespace pauli {
ComplexMatrix identity() { return ComplexMatrix::Identity(2, 2); }
ComplexMatrix x() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 1, 0;
  return m;
}
ComplexMatrix y() {
  ComplexMatrix m(2, 2);
  m << 0, cplx(0, -1), cplx(0, 1), 0;
  return m;
}
ComplexMatrix z() {
  ComplexMatrix m(2, 2);
  m << 1, 0, 0, -1;
  return m;
}
ComplexMatrix lower() {
  ComplexMatrix m(2, 2);
  m << 0, 1, 0, 0;
  return m;
}
ComplexMatrix raise() {
  ComplexMatrix m(2, 2);
  m << 0, 0, 1, 0;
  return m;
}
}  // namespace pauli

double hermiticity_defect(const ComplexMatrix& m) {
  if (m.size() == 0) return 0.0;
  return (m - m.adjoint()).cwiseAbs().maxCoeff();
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : m_(std::move(m)), n_(0) {
  require_valid(m_, "density matrix");
  n_ = qubit_count_for_dim(m_.rows());
  const cplx tr = m_.trace();
  if (std::abs(tr - 1.0) > tol::exact)
    throw InvalidArgument("density matrix trace " + std::to_string(tr.real()) + " differs from 1");
  if (hermiticity_defect(m_) > tol::exact)
    throw InvalidArgument("density matrix is not Hermitian");
  const double min_ev = hermitian_eigenvalues(m_)(0);
  if (min_ev < -tol::eigen)
    throw InvalidArgument("density matrix has negative eigenvalue " + std::to_string(min_ev));
}

DensityMatrix DensityMatrix::from_numeric(const ComplexMatrix& m, double clip) {
  require_valid(m, "density matrix");
  const int n = qubit_count_for_dim(m.rows());
  ComplexMatrix h = 0.5 * (m + m.adjoint());
  const cplx tr = h.trace();
  if (std::abs(tr) < 1e-300) throw InvalidArgument("numeric state has zero trace");
  h /= tr.real();

  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(h);
  RealVector ev = es.eigenvalues();
  if (ev(0) < -clip)
    throw InvalidArgument("numeric state has eigenvalue " + std::to_string(ev(0)) +
                          " below the clipping floor");
  if (ev(0) < 0.0) {
    for (auto& v : ev) v = std::max(v, 0.0);
    h = es.eigenvectors() * ev.asDiagonal() * es.eigenvectors().adjoint();
    h = 0.5 * (h + h.adjoint());
    h /= h.trace().real();
  }
  return DensityMatrix(std::move(h), n, Unchecked{});
}

DensityMatrix DensityMatrix::pure(const ComplexVector& psi) {
  const double nrm = psi.norm();
  if (nrm == 0.0) throw InvalidArgument("zero state vector");
  const ComplexVector v = psi / nrm;
  return DensityMatrix(v * v.adjoint());
}

DensityMatrix DensityMatrix::maximally_mixed(int n_qubits) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  return DensityMatrix(ComplexMatrix::Identity(d, d) / static_cast<double>(d));
}

DensityMatrix DensityMatrix::basis_state(int n_qubits, Eigen::Index b) {
  const Eigen::Index d = Eigen::Index{1} << n_qubits;
  if (b < 0 || b >= d) throw InvalidArgument("basis index out of range");
  ComplexMatrix m = ComplexMatrix::Zero(d, d);
  m(b, b) = 1.0;
  return DensityMatrix(std::move(m));
}

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_valid(a, "left factor");
  require_valid(b, "right factor");
  const Eigen::Index ra = a.rows(), rb = b.rows();
  ComplexMatrix out(ra * rb, ra * rb);
  for (Eigen::Index i = 0; i < ra; ++i)
    for (Eigen::Index j = 0; j < ra; ++j) out.block(i * rb, j * rb, rb, rb) = a(i, j) * b;
  return out;
}

ComplexMatrix tensor_product(std::span<const ComplexMatrix> factors) {
  if (factors.empty()) throw InvalidArgument("empty tensor product");
  ComplexMatrix acc = factors.front();
  for (std::size_t k = 1; k < factors.size(); ++k) acc = tensor_product(acc, factors[k]);
  return acc;
}

ComplexMatrix embed_local(const ComplexMatrix& op, std::size_t site, int n_qubits) {
  if (op.rows() != 2 || op.cols() != 2) throw InvalidArgument("embed_local expects a 2x2 operator");
  if (n_qubits < 1 || site >= static_cast<std::size_t>(n_qubits))
    throw InvalidArgument("site " + std::to_string(site) + " out of range");
  const Eigen::Index left = Eigen::Index{1} << site;
  const Eigen::Index right = Eigen::Index{1} << (n_qubits - 1 - static_cast<int>(site));
  return tensor_product(tensor_product(ComplexMatrix::Identity(left, left), op),
                        ComplexMatrix::Identity(right, right));
}

ComplexMatrix embed_pair(const ComplexMatrix& a, std::size_t site_a, const ComplexMatrix& b,
                         std::size_t site_b, int n_qubits) {
  if (site_a == site_b) throw InvalidArgument("embed_pair needs distinct sites");
  return embed_local(a, site_a, n_qubits) * embed_local(b, site_b, n_qubits);
}

namespace {

// Bit position (from the least significant end) of a 0-based site.
inline int bit_of(std::size_t site, int n) { return n - 1 - static_cast<int>(site); }

void check_keep(std::span<const std::size_t> keep, int n) {
  if (keep.empty()) throw InvalidArgument("partial_trace: keep set is empty");
  for (std::size_t k = 0; k < keep.size(); ++k) {
    if (keep[k] >= static_cast<std::size_t>(n))
      throw InvalidArgument("partial_trace: site " + std::to_string(keep[k]) + " out of range");
    if (k > 0 && keep[k] <= keep[k - 1])
      throw InvalidArgument("partial_trace: keep set must be strictly increasing");
  }
}

}  // namespace

ComplexMatrix partial_trace(const ComplexMatrix& m, int n, std::span<const std::size_t> keep) {
  check_keep(keep, n);
  if (m.rows() != (Eigen::Index{1} << n)) throw InvalidArgument("partial_trace: dimension mismatch");

  std::vector<int> kept_bits, traced_bits;
  for (int s = 0; s < n; ++s) {
    bool kept = false;
    for (auto k : keep) kept |= (k == static_cast<std::size_t>(s));
    (kept ? kept_bits : traced_bits).push_back(bit_of(static_cast<std::size_t>(s), n));
  }
  const Eigen::Index dk = Eigen::Index{1} << kept_bits.size();
  const Eigen::Index dt = Eigen::Index{1} << traced_bits.size();

  // Scatter a compact index over a set of bit positions (most significant first).
  auto scatter = [](Eigen::Index compact, const std::vector<int>& bits) {
    Eigen::Index full = 0;
    const auto nb = bits.size();
    for (std::size_t i = 0; i < nb; ++i)
      if ((compact >> (nb - 1 - i)) & 1) full |= Eigen::Index{1} << bits[i];
    return full;
  };
  std::vector<Eigen::Index> kept_off(dk), traced_off(dt);
  for (Eigen::Index a = 0; a < dk; ++a) kept_off[a] = scatter(a, kept_bits);
  for (Eigen::Index t = 0; t < dt; ++t) traced_off[t] = scatter(t, traced_bits);

  ComplexMatrix out = ComplexMatrix::Zero(dk, dk);
  for (Eigen::Index a = 0; a < dk; ++a)
    for (Eigen::Index b = 0; b < dk; ++b) {
      cplx acc = 0;
      for (Eigen::Index t = 0; t < dt; ++t) acc += m(kept_off[a] | traced_off[t], kept_off[b] | traced_off[t]);
      out(a, b) = acc;
    }
  return out;
}

DensityMatrix partial_trace(const DensityMatrix& rho, std::span<const std::size_t> keep) {
  return DensityMatrix::from_numeric(partial_trace(rho.matrix(), rho.n_qubits(), keep));
}

ComplexMatrix partial_transpose(const ComplexMatrix& m, int n, std::size_t site) {
  if (site >= static_cast<std::size_t>(n))
    throw InvalidArgument("partial_transpose: site " + std::to_string(site) + " out of range");
  if (m.rows() != (Eigen::Index{1} << n) || m.cols() != m.rows())
    throw InvalidArgument("partial_transpose: dimension mismatch");
  const Eigen::Index mask = Eigen::Index{1} << bit_of(site, n);
  ComplexMatrix out(m.rows(), m.cols());
  for (Eigen::Index i = 0; i < m.rows(); ++i)
    for (Eigen::Index j = 0; j < m.cols(); ++j) {
      // Swap the chosen site's bit between row and column index.
      const Eigen::Index bi = i & mask, bj = j & mask;
      out((i & ~mask) | bj, (j & ~mask) | bi) = m(i, j);
    }
  return out;
}

ComplexMatrix partial_transpose(const DensityMatrix& rho, std::size_t site) {
  return partial_transpose(rho.matrix(), rho.n_qubits(), site);
}

Eigensystem hermitian_eigensystem(const ComplexMatrix& m) {
  require_valid(m, "hermitian_eigensystem input");
  if (hermiticity_defect(m) > tol::hermitian_input)
    throw InvalidArgument("hermitian_eigensystem: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()));
  if (es.info() != Eigen::Success) throw NoConvergence("hermitian_eigensystem did not converge");
  return {es.eigenvalues(), es.eigenvectors()};
}

RealVector hermitian_eigenvalues(const ComplexMatrix& m) {
  require_valid(m, "hermitian_eigenvalues input");
  if (hermiticity_defect(m) > tol::hermitian_input)
    throw InvalidArgument("hermitian_eigenvalues: input is not Hermitian");
  Eigen::SelfAdjointEigenSolver<ComplexMatrix> es(0.5 * (m + m.adjoint()), Eigen::EigenvaluesOnly);
  return es.eigenvalues();
}

}  // namespace qsr
