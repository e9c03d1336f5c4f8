#include "qsr/generator.hpp"

#include <cmath>
#include <sstream>

#include "qsr/errors.hpp"

namespace qsr {

using SparseC = Eigen::SparseMatrix<cplx>;

double CouplingSpec::anisotropy() const {
  switch (kind) {
    case CouplingKind::ZZ: return j_parallel;
    case CouplingKind::XXYY:
    case CouplingKind::Heisenberg: return j_perp - j_parallel;
  }
  return 0.0;
}

std::string to_string(CouplingKind kind) {
  switch (kind) {
    case CouplingKind::ZZ: return "ZZ";
    case CouplingKind::XXYY: return "XXYY";
    case CouplingKind::Heisenberg: return "Heisenberg";
  }
  return "?";
}

ArrayConfig ArrayConfig::homogeneous(int n, double omega, CouplingSpec coupling, double gamma_decay,
                                     double gamma_dephase, double nbar, double detuning) {
  ArrayConfig c;
  c.n_qubits = n;
  const auto len = static_cast<std::size_t>(std::max(n, 0));
  c.omega_rabi.assign(len, omega);
  c.detuning.assign(len, detuning);
  c.gamma_decay.assign(len, gamma_decay);
  c.gamma_dephase.assign(len, gamma_dephase);
  c.nbar.assign(len, nbar);
  c.coupling = coupling;
  return c;
}

void ArrayConfig::validate() const {
  if (n_qubits < 1) throw InvalidArgument("n_qubits must be >= 1");
  if (n_qubits > kMaxQubits)
    throw InvalidArgument("n_qubits = " + std::to_string(n_qubits) + " exceeds the supported maximum of " +
                          std::to_string(kMaxQubits) + " (superoperator dimension 4^N)");
  const auto n = static_cast<std::size_t>(n_qubits);
  auto check = [&](const std::vector<double>& v, const char* name, bool nonneg) {
    if (v.size() != n)
      throw InvalidArgument(std::string(name) + " has length " + std::to_string(v.size()) +
                            ", expected " + std::to_string(n));
    for (double x : v) {
      if (!std::isfinite(x)) throw InvalidArgument(std::string(name) + " has a non-finite entry");
      if (nonneg && x < 0.0) throw InvalidArgument(std::string(name) + " must be non-negative");
    }
  };
  check(omega_rabi, "omega_rabi", true);
  check(detuning, "detuning", false);
  check(gamma_decay, "gamma_decay", true);
  check(gamma_dephase, "gamma_dephase", true);
  check(nbar, "nbar", true);
  if (!std::isfinite(coupling.j_parallel) || !std::isfinite(coupling.j_perp) || !std::isfinite(coupling.j_y))
    throw InvalidArgument("coupling constants must be finite");
}

namespace {

SparseC to_sparse(const ComplexMatrix& m) {
  SparseC s = m.sparseView();
  s.makeCompressed();
  return s;
}

SparseC kron(const SparseC& a, const SparseC& b) {
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(a.nonZeros() * b.nonZeros()));
  for (int ka = 0; ka < a.outerSize(); ++ka)
    for (SparseC::InnerIterator ia(a, ka); ia; ++ia)
      for (int kb = 0; kb < b.outerSize(); ++kb)
        for (SparseC::InnerIterator ib(b, kb); ib; ++ib)
          trips.emplace_back(ia.row() * b.rows() + ib.row(), ia.col() * b.cols() + ib.col(),
                             ia.value() * ib.value());
  SparseC out(a.rows() * b.rows(), a.cols() * b.cols());
  out.setFromTriplets(trips.begin(), trips.end());
  return out;
}

SparseC sparse_identity(Eigen::Index d) {
  SparseC id(d, d);
  id.setIdentity();
  return id;
}

void add_bond_terms(ComplexMatrix& h, const ArrayConfig& c) {
  const int n = c.n_qubits;
  const auto& cp = c.coupling;
  if (cp.kind == CouplingKind::Heisenberg && cp.j_perp != cp.j_y)
    throw InvalidArgument(
        "general Heisenberg coupling with Jx != Jy has no time-independent rotating-frame form; "
        "only the XXYY case (Jx == Jy) is supported");
  for (int j = 0; j + 1 < n; ++j) {
    const auto a = static_cast<std::size_t>(j), b = a + 1;
    const ComplexMatrix zz = embed_pair(pauli::z(), a, pauli::z(), b, n);
    if (cp.kind == CouplingKind::ZZ) {
      h += cp.j_parallel * zz;
    } else {
      const ComplexMatrix xx = embed_pair(pauli::x(), a, pauli::x(), b, n);
      const ComplexMatrix yy = embed_pair(pauli::y(), a, pauli::y(), b, n);
      h -= cp.j_perp * (xx + yy) + cp.j_parallel * zz;
    }
  }
}

// rho -> A rho B as a column-stacked superoperator.
SparseC sandwich(const SparseC& a, const SparseC& b) {
  return kron(SparseC(b.transpose()), a);
}

}  // namespace

ComplexVector vectorize(const ComplexMatrix& m) {
  return Eigen::Map<const ComplexVector>(m.data(), m.size());
}

ComplexMatrix unvectorize(const ComplexVector& v, Eigen::Index dim) {
  if (v.size() != dim * dim) throw InvalidArgument("unvectorize: size mismatch");
  return Eigen::Map<const ComplexMatrix>(v.data(), dim, dim);
}

ComplexMatrix Liouvillian::apply(const ComplexMatrix& rho) const {
  return unvectorize(matrix * vectorize(rho), hilbert_dim);
}

ComplexMatrix build_coherent_hamiltonian(const ArrayConfig& c) {
  c.validate();
  const int n = c.n_qubits;
  const Eigen::Index d = c.hilbert_dim();
  ComplexMatrix h = ComplexMatrix::Zero(d, d);
  for (int j = 0; j < n; ++j) {
    const auto s = static_cast<std::size_t>(j);
    if (c.detuning[s] != 0.0) h -= 0.5 * c.detuning[s] * embed_local(pauli::z(), s, n);
    if (c.omega_rabi[s] != 0.0) h += c.omega_rabi[s] * embed_local(pauli::x(), s, n);
  }
  add_bond_terms(h, c);
  return h;
}

ComplexMatrix build_effective_hamiltonian(const ArrayConfig& c) {
  ComplexMatrix h = build_coherent_hamiltonian(c);
  const int n = c.n_qubits;
  const cplx i1(0.0, 1.0);
  const ComplexMatrix excited = pauli::raise() * pauli::lower();  // sigma_+ sigma_-
  const ComplexMatrix ground = pauli::lower() * pauli::raise();   // sigma_- sigma_+
  for (int j = 0; j < n; ++j) {
    const auto s = static_cast<std::size_t>(j);
    const double g = c.gamma_decay[s], nb = c.nbar[s];
    if (g * (nb + 1.0) != 0.0) h -= i1 * g * (nb + 1.0) * embed_local(excited, s, n);
    if (g * nb != 0.0) h -= i1 * g * nb * embed_local(ground, s, n);
    if (c.gamma_dephase[s] != 0.0)
      h -= i1 * c.gamma_dephase[s] * ComplexMatrix::Identity(h.rows(), h.cols());
  }
  return h;
}

std::vector<ComplexMatrix> build_jump_operators(const ArrayConfig& c) {
  c.validate();
  const int n = c.n_qubits;
  std::vector<ComplexMatrix> ops;
  for (int j = 0; j < n; ++j) {
    const auto s = static_cast<std::size_t>(j);
    const double down = 2.0 * c.gamma_decay[s] * (c.nbar[s] + 1.0);
    const double up = 2.0 * c.gamma_decay[s] * c.nbar[s];
    const double deph = 2.0 * c.gamma_dephase[s];
    if (down > 0.0) ops.push_back(std::sqrt(down) * embed_local(pauli::lower(), s, n));
    if (up > 0.0) ops.push_back(std::sqrt(up) * embed_local(pauli::raise(), s, n));
    if (deph > 0.0) ops.push_back(std::sqrt(deph) * embed_local(pauli::z(), s, n));
  }
  return ops;
}

Liouvillian build_liouvillian(const ArrayConfig& c) {
  const ComplexMatrix heff = build_effective_hamiltonian(c);
  const auto jumps = build_jump_operators(c);
  const Eigen::Index d = c.hilbert_dim();
  const SparseC id = sparse_identity(d);
  const SparseC h = to_sparse(heff);
  const SparseC hd = to_sparse(heff.adjoint());
  const cplx i1(0.0, 1.0);

  // -i (H_eff rho - rho H_eff^dagger)
  SparseC l = -i1 * (sandwich(h, id) - sandwich(id, hd));
  for (const auto& jop : jumps) {
    const SparseC a = to_sparse(jop);
    l += sandwich(a, to_sparse(jop.adjoint()));
  }
  l.prune(cplx(0.0));
  l.makeCompressed();
  return {std::move(l), d, c};
}

Liouvillian build_liouvillian_standard(const ArrayConfig& c) {
  const ComplexMatrix hcoh = build_coherent_hamiltonian(c);
  const auto jumps = build_jump_operators(c);
  const Eigen::Index d = c.hilbert_dim();
  const SparseC id = sparse_identity(d);
  const SparseC h = to_sparse(hcoh);
  const cplx i1(0.0, 1.0);

  SparseC l = -i1 * (sandwich(h, id) - sandwich(id, h));
  for (const auto& jop : jumps) {
    const SparseC a = to_sparse(jop);
    const SparseC ad = to_sparse(jop.adjoint());
    const SparseC ada = to_sparse(jop.adjoint() * jop);
    l += sandwich(a, ad) - 0.5 * sandwich(ada, id) - 0.5 * sandwich(id, ada);
  }
  l.prune(cplx(0.0));
  l.makeCompressed();
  return {std::move(l), d, c};
}

double nbar_from_temperature(double omega0, double temperature) {
  if (!(omega0 > 0.0)) throw InvalidArgument("nbar_from_temperature: omega0 must be positive");
  if (temperature < 0.0) throw InvalidArgument("nbar_from_temperature: temperature must be >= 0");
  if (temperature == 0.0) return 0.0;
  return 1.0 / std::expm1(omega0 / temperature);
}

std::vector<std::string> validate_regime(const ArrayConfig& c, double omega0) {
  if (!(omega0 > 0.0)) throw InvalidArgument("validate_regime: omega0 must be positive");
  constexpr double limit = 0.1;
  std::vector<std::string> warnings;
  auto warn = [&](const std::string& what, std::size_t site, double ratio) {
    std::ostringstream os;
    os << what << " on site " << site + 1 << " is " << ratio << " of omega0 (> " << limit << ")";
    warnings.push_back(os.str());
  };
  const auto n = std::min<std::size_t>({c.omega_rabi.size(), c.detuning.size(), c.gamma_decay.size(),
                                        c.nbar.size()});
  for (std::size_t s = 0; s < n; ++s) {
    if (c.omega_rabi[s] / omega0 > limit) warn("Omega/omega0", s, c.omega_rabi[s] / omega0);
    if (c.gamma_decay[s] * c.nbar[s] / omega0 > limit)
      warn("Gamma*nbar/omega0", s, c.gamma_decay[s] * c.nbar[s] / omega0);
    if (std::abs(c.detuning[s]) / omega0 > limit) warn("delta/omega0", s, std::abs(c.detuning[s]) / omega0);
  }
  const double jmax = std::max({std::abs(c.coupling.j_parallel), std::abs(c.coupling.j_perp),
                                std::abs(c.coupling.j_y)});
  if (c.n_qubits > 1 && jmax / omega0 > limit) {
    std::ostringstream os;
    os << "J/omega0 is " << jmax / omega0 << " (> " << limit << ")";
    warnings.push_back(os.str());
  }
  return warnings;
}

}  // namespace qsr
