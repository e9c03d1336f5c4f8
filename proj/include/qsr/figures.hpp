#pragma once

// Canned sweeps that regenerate the data behind the published figures.
// All quantities are in units of the Rabi frequency (Omega = 1).

#include <string>
#include <vector>

#include "qsr/sweep.hpp"
#include "qsr/thresholds.hpp"

namespace qsr::figures {

struct NamedSweep {
  std::string label;  ///< file stem, e.g. "fig3_d=2"
  SweepSpec spec;
};

struct FigureOutput {
  std::string label;
  SweepResult result;
};

/// fig2: N=2, ZZ s=1.5, pure decay; eigenvalues and E_F over Gamma.
SweepSpec fig2_spec(int points = 200);
/// fig3: N=2, XXYY with d = J_perp in {0,1,2,3,4}; E_F over Gamma.
std::vector<NamedSweep> fig3_specs(int points = 200);
/// fig6: N=2, ZZ s=1.5; E_F over Gamma for a family of dephasing rates.
std::vector<NamedSweep> fig6_specs(int gamma_points = 20, int dephasing_points = 10);
/// fig7: N=6 ZZ chain, s=1.5; mutual information of sites 1|2 over Gamma for
/// gamma in {0, 0.1, 0.3}.
std::vector<NamedSweep> fig7_specs(int gamma_points = 50);

/// Dephasing rates used by fig6.
std::vector<double> fig6_dephasing_rates(int count = 10);
/// s grid used by fig4.
std::vector<double> fig4_s_grid();
/// fig4: entangled Gamma window per s, with and without gamma = Gamma.
SweepResult fig4_result(unsigned jobs = 0);

std::vector<std::string> names();
/// Runs a named figure; throws InvalidArgument for unknown names.
std::vector<FigureOutput> run(const std::string& name, unsigned jobs = 0);

}  // namespace qsr::figures
