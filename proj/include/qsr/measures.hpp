#pragma once

// Correlation and entanglement diagnostics. Entropies are in bits.

#include <cstddef>
#include <functional>
#include <utility>
#include <vector>

#include "qsr/generator.hpp"
#include "qsr/opalg.hpp"

namespace qsr {

/// Disjoint, non-empty site sets. Sites not in either part are traced out
/// before the entropies are taken, so {0}|{1} on a 6-qubit chain is the
/// mutual information of the reduced pair state.
struct Bipartition {
  std::vector<std::size_t> part_a;
  std::vector<std::size_t> part_b;

  /// part_a against every remaining site.
  static Bipartition complement_of(std::vector<std::size_t> part_a, int n_qubits);
  /// Throws InvalidArgument on overlap, empty parts or out-of-range sites.
  void validate(int n_qubits) const;
};

double von_neumann_entropy(const DensityMatrix& rho);

/// Binary entropy -x log2 x - (1-x) log2 (1-x).
double binary_entropy(double x);

double mutual_information(const DensityMatrix& rho, const Bipartition& cut);

/// Wootters concurrence of a two-qubit state, clipped to [0, 1].
double concurrence(const DensityMatrix& rho);

/// Entanglement of formation from the concurrence.
double eof_from_concurrence(double c);
double entanglement_of_formation(const DensityMatrix& rho);

struct PptResult {
  bool entangled = false;
  double min_pt_eigenvalue = 0.0;
};

/// Partial-transpose test on the second qubit; eigenvalues within 1e-10 of
/// zero count as separable.
PptResult ppt_test(const DensityMatrix& rho);

/// (||rho^{T_B}||_1 - 1) / 2 for a two-qubit state.
double negativity(const DensityMatrix& rho);

struct LocalizationProbabilities {
  double p_z = 0.5;
  double p_x = 0.5;
};

/// Largest overlap of the single-site reduced state with an eigenstate of
/// sigma_z (p_z) or sigma_x (p_x). Both lie in [1/2, 1].
LocalizationProbabilities localization_probabilities(const DensityMatrix& rho, std::size_t site);

/// E_F of the numerically solved steady state at each Gamma of a family
/// `config_at(Gamma)`. Requires two-qubit configs.
std::vector<std::pair<double, double>> steady_entanglement_curve(
    const std::function<ArrayConfig(double)>& config_at, const std::vector<double>& gammas);

}  // namespace qsr
