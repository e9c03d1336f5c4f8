#include "qsr/measures.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "qsr/errors.hpp"
#include "qsr/steady.hpp"
#include "qsr/tolerance.hpp"

namespace qsr {

namespace {

void require_two_qubits(const DensityMatrix& rho, const char* what) {
  if (rho.n_qubits() != 2)
    throw InvalidArgument(std::string(what) + " needs a two-qubit state, got " +
                          std::to_string(rho.n_qubits()) + " qubits");
}

double entropy_of_spectrum(const RealVector& ev) {
  double s = 0.0;
  for (double l : ev) {
    if (l <= tol::entropy_floor) continue;
    s -= l * std::log2(l);
  }
  return std::max(s, 0.0);
}

}  // namespace

Bipartition Bipartition::complement_of(std::vector<std::size_t> part_a, int n_qubits) {
  Bipartition b;
  std::sort(part_a.begin(), part_a.end());
  for (std::size_t s = 0; s < static_cast<std::size_t>(n_qubits); ++s)
    if (!std::binary_search(part_a.begin(), part_a.end(), s)) b.part_b.push_back(s);
  b.part_a = std::move(part_a);
  return b;
}

void Bipartition::validate(int n_qubits) const {
  if (part_a.empty() || part_b.empty()) throw InvalidArgument("bipartition parts must be non-empty");
  std::vector<bool> seen(static_cast<std::size_t>(n_qubits), false);
  for (const auto* part : {&part_a, &part_b})
    for (auto s : *part) {
      if (s >= static_cast<std::size_t>(n_qubits))
        throw InvalidArgument("bipartition site " + std::to_string(s + 1) + " out of range");
      if (seen[s]) throw InvalidArgument("bipartition parts overlap at site " + std::to_string(s + 1));
      seen[s] = true;
    }
}

double von_neumann_entropy(const DensityMatrix& rho) {
  return entropy_of_spectrum(hermitian_eigenvalues(rho.matrix()));
}

double binary_entropy(double x) {
  if (x <= 0.0 || x >= 1.0) return 0.0;
  return -x * std::log2(x) - (1.0 - x) * std::log2(1.0 - x);
}

double mutual_information(const DensityMatrix& rho, const Bipartition& cut) {
  const int n = rho.n_qubits();
  cut.validate(n);
  auto sorted = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return v;
  };
  const auto a = sorted(cut.part_a);
  const auto b = sorted(cut.part_b);
  auto ab = a;
  ab.insert(ab.end(), b.begin(), b.end());
  std::sort(ab.begin(), ab.end());

  // Reduce to A u B first; entropies of the marginals follow from that.
  const ComplexMatrix rho_ab = static_cast<int>(ab.size()) == n ? rho.matrix() : partial_trace(rho.matrix(), n, ab);
  const int nab = static_cast<int>(ab.size());
  auto local = [&](const std::vector<std::size_t>& part) {
    std::vector<std::size_t> idx;
    for (auto s : part) idx.push_back(static_cast<std::size_t>(std::lower_bound(ab.begin(), ab.end(), s) - ab.begin()));
    return partial_trace(rho_ab, nab, idx);
  };
  const double s_a = entropy_of_spectrum(hermitian_eigenvalues(local(a)));
  const double s_b = entropy_of_spectrum(hermitian_eigenvalues(local(b)));
  const double s_ab = entropy_of_spectrum(hermitian_eigenvalues(rho_ab));
  return std::max(s_a + s_b - s_ab, 0.0);
}

double concurrence(const DensityMatrix& rho) {
  require_two_qubits(rho, "concurrence");
  const ComplexMatrix yy = tensor_product(pauli::y(), pauli::y());
  const ComplexMatrix tilde = yy * rho.matrix().conjugate() * yy;

  // The square roots of eig(rho * tilde) are the eigenvalues of
  // sqrt(sqrt(rho) tilde sqrt(rho)), which is Hermitian and better conditioned.
  const Eigensystem es = hermitian_eigensystem(rho.matrix());
  RealVector sq = es.values.cwiseMax(0.0).cwiseSqrt();
  const ComplexMatrix root = es.vectors * sq.asDiagonal() * es.vectors.adjoint();
  const ComplexMatrix h = root * tilde * root;
  RealVector mu = hermitian_eigenvalues(0.5 * (h + h.adjoint())).cwiseMax(0.0).cwiseSqrt();
  std::sort(mu.data(), mu.data() + mu.size(), std::greater<>());
  const double c = mu(0) - mu(1) - mu(2) - mu(3);
  return std::clamp(c, 0.0, 1.0);
}

double eof_from_concurrence(double c) {
  if (c < 0.0 || c > 1.0 + 1e-12) throw InvalidArgument("concurrence must lie in [0, 1]");
  c = std::min(c, 1.0);
  return binary_entropy(0.5 * (1.0 + std::sqrt(1.0 - c * c)));
}

double entanglement_of_formation(const DensityMatrix& rho) { return eof_from_concurrence(concurrence(rho)); }

PptResult ppt_test(const DensityMatrix& rho) {
  require_two_qubits(rho, "ppt_test");
  const double mn = hermitian_eigenvalues(partial_transpose(rho, 1))(0);
  return {mn < -tol::entanglement_band, mn};
}

double negativity(const DensityMatrix& rho) {
  require_two_qubits(rho, "negativity");
  const RealVector ev = hermitian_eigenvalues(partial_transpose(rho, 1));
  double neg = 0.0;
  for (double l : ev)
    if (l < 0.0) neg -= l;
  return neg;
}

LocalizationProbabilities localization_probabilities(const DensityMatrix& rho, std::size_t site) {
  if (site >= static_cast<std::size_t>(rho.n_qubits()))
    throw InvalidArgument("localization_probabilities: site " + std::to_string(site) + " out of range");
  const std::size_t keep[] = {site};
  const ComplexMatrix q = rho.n_qubits() == 1 ? rho.matrix() : partial_trace(rho.matrix(), rho.n_qubits(), keep);
  const double p00 = q(0, 0).real(), p11 = q(1, 1).real();
  // <+|q|+> = 1/2 + Re q01, <-|q|-> = 1/2 - Re q01.
  const double re01 = q(0, 1).real();
  return {std::clamp(std::max(p00, p11), 0.5, 1.0), std::clamp(0.5 + std::abs(re01), 0.5, 1.0)};
}

std::vector<std::pair<double, double>> steady_entanglement_curve(
    const std::function<ArrayConfig(double)>& config_at, const std::vector<double>& gammas) {
  std::vector<std::pair<double, double>> out;
  out.reserve(gammas.size());
  for (double g : gammas) {
    const ArrayConfig c = config_at(g);
    if (c.n_qubits != 2) throw InvalidArgument("steady_entanglement_curve needs two-qubit configs");
    out.emplace_back(g, entanglement_of_formation(solve_steady_numeric(c).state));
  }
  return out;
}

}  // namespace qsr
