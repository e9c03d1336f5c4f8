// Acceptance suite: one PASS/FAIL line per criterion. Exit status is the
// number of failed criteria.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "helpers.hpp"
#include "qsr/errors.hpp"
#include "qsr/figures.hpp"
#include "qsr/measures.hpp"
#include "qsr/steady.hpp"
#include "qsr/sweep.hpp"
#include "qsr/thresholds.hpp"

using namespace qsr;
using Clock = std::chrono::steady_clock;

namespace {

struct Outcome {
  bool pass = true;
  std::ostringstream detail;
  Outcome() { detail.precision(10); }
  void require(bool ok, const std::string& why) {
    if (!ok) {
      pass = false;
      detail << " [failed: " << why << "]";
    }
  }
};

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

int failures = 0;

void report(int id, const std::string& title, const std::function<void(Outcome&)>& body) {
  Outcome o;
  try {
    body(o);
  } catch (const std::exception& e) {
    o.pass = false;
    o.detail << " [exception: " << e.what() << "]";
  }
  std::printf("%s criterion %d: %s:%s\n", o.pass ? "PASS" : "FAIL", id, title.c_str(), o.detail.str().c_str());
  std::fflush(stdout);
  if (!o.pass) ++failures;
}

ArrayConfig zz_pair(double r, double s, double gamma = 0.0) {
  return ArrayConfig::homogeneous(2, 1.0, CouplingSpec::zz(s), r, gamma);
}

// Index of the maximum, and whether the sequence rises strictly to it and
// falls strictly after it (ignoring a leading run of exact zeros).
struct Shape {
  std::size_t argmax = 0;
  std::size_t first_nonzero = 0;
  bool unimodal = true;
};

Shape shape_of(const std::vector<double>& v) {
  Shape s;
  while (s.first_nonzero < v.size() && v[s.first_nonzero] == 0.0) ++s.first_nonzero;
  for (std::size_t i = 0; i < v.size(); ++i)
    if (v[i] > v[s.argmax]) s.argmax = i;
  for (std::size_t i = s.first_nonzero + 1; i <= s.argmax && i < v.size(); ++i) s.unimodal &= v[i] > v[i - 1];
  for (std::size_t i = s.argmax + 1; i < v.size(); ++i) s.unimodal &= v[i] < v[i - 1];
  return s;
}

std::vector<double> values(const std::vector<std::pair<double, double>>& series) {
  std::vector<double> out;
  for (const auto& p : series) out.push_back(p.second);
  return out;
}

// Entangled r-window for gamma = Gamma at fixed s: coarse log scan of r in
// [0.01, 10], then bisection at each edge.
std::vector<std::pair<double, double>> combined_windows(double s) {
  const auto fam = zz_gamma_family(1.0, s, DephasingPolicy::EqualToDecay);
  const auto grid = make_grid(0.01, 10.0, 120, GridSpacing::Log);
  std::vector<bool> ent;
  for (double r : grid) ent.push_back(steady_state_entangled(fam(r)));
  std::vector<std::pair<double, double>> out;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    if (!ent[i] || (i > 0 && ent[i - 1])) continue;
    std::size_t j = i;
    while (j + 1 < grid.size() && ent[j + 1]) ++j;
    const double lo = i == 0 ? grid[0] : *scan_threshold_bisection(fam, {grid[i - 1], grid[i]}, 1e-9).lower;
    const double hi = j + 1 == grid.size() ? grid.back()
                                           : scan_threshold_bisection(fam, {grid[j], grid[j + 1]}, 1e-9).upper;
    out.emplace_back(lo, hi);
  }
  return out;
}

}  // namespace

int main() {
  std::printf("kernel backend: %s\n", std::string(kernels::name(kernels::active())).c_str());

  report(1, "numerical steady state equals the closed form on the 18-point (r, s) grid", [](Outcome& o) {
    const auto t0 = Clock::now();
    double worst = 0.0;
    for (double r : {0.1, 0.25, 0.5, 1.0, 2.0, 5.0})
      for (double s : {0.5, 1.5, 4.0}) {
        const auto rep = solve_steady_numeric(zz_pair(r, s));
        worst = std::max(worst, test::frob(rep.state.matrix(), analytic_steady_zz(r, s).matrix()));
      }
    const double elapsed = seconds_since(t0);
    o.detail << " max Frobenius " << worst << ", " << elapsed << " s";
    o.require(worst <= 1e-9, "Frobenius distance above 1e-9");
    o.require(elapsed < 1.0, "runtime of 1 s exceeded");
  });

  report(2, "bisection reproduces Gamma_th = Omega^2/(2J)", [](Outcome& o) {
    double worst = 0.0;
    for (double s : {0.5, 1.0, 1.5, 2.0, 4.0}) {
      const auto res = scan_threshold_bisection(zz_gamma_family(1.0, s, DephasingPolicy::Zero), {0.01, 5.0}, 1e-6);
      o.require(res.lower.has_value(), "no lower edge found");
      if (res.lower) worst = std::max(worst, std::abs(*res.lower - threshold_zz(1.0, s)));
    }
    o.detail << " max |bisection - closed form| " << worst << " Omega; Gamma_th(s=1.5) = " << threshold_zz(1.0, 1.5);
    o.require(worst <= 1e-6, "bisection error above 1e-6 Omega");
    o.require(threshold_zz(1.0, 1.5) == 1.0 / 3.0, "Gamma_th at s = 1.5 is not Omega/3");
  });

  report(3, "isotropic XXYY stays separable, anisotropy d = 1.5 reproduces the threshold", [](Outcome& o) {
    const auto grid = make_grid(0.01, 50.0, 20, GridSpacing::Log);
    double worst = 0.0;
    for (double j : {0.5, 1.5, 3.0})
      for (double g : grid) {
        const auto rep = solve_steady_numeric(ArrayConfig::homogeneous(2, 1.0, CouplingSpec::xxyy(j, j), g));
        worst = std::max(worst, concurrence(rep.state));
      }
    auto fam = [](double g) { return ArrayConfig::homogeneous(2, 1.0, CouplingSpec::xxyy(2.0, 0.5), g); };
    const auto res = scan_threshold_bisection(fam, {0.01, 5.0}, 1e-6);
    const double err = res.lower ? std::abs(*res.lower - 1.0 / 3.0) : 1.0;
    o.detail << " max isotropic concurrence " << worst << " over 60 solves; d = 1.5 threshold error " << err;
    o.require(worst < 1e-12, "isotropic concurrence not below 1e-12");
    o.require(err <= 1e-6, "anisotropic threshold off by more than 1e-6");
  });

  report(4, "dephasing-only steady state is maximally mixed and unique", [](Outcome& o) {
    const auto c2 = ArrayConfig::homogeneous(2, 1.0, CouplingSpec::zz(1.5), 0.0, 0.5);
    const auto r2 = solve_steady_numeric(c2);
    const double d2 = test::frob(r2.state.matrix(), ComplexMatrix::Identity(4, 4) / 4.0);
    const auto u2 = check_uniqueness(build_liouvillian(c2));

    const auto c6 = ArrayConfig::homogeneous(6, 1.0, CouplingSpec::zz(1.5), 0.0, 0.5);
    const auto l6 = build_liouvillian(c6);
    const auto r6 = solve_steady_numeric(l6);
    std::mt19937_64 rng(64);
    std::uniform_int_distribution<int> pick(0, 63);
    double d6 = 0.0;
    for (int k = 0; k < 10; ++k) {
      const int i = pick(rng);
      d6 = std::max(d6, std::abs(r6.state(i, i) - 1.0 / 64.0));
    }
    const auto u6 = check_uniqueness(l6);
    o.detail << " N=2 Frobenius " << d2 << " (null_dim " << u2.null_dim << "); N=6 max sampled diagonal error " << d6
             << " (null_dim " << u6.null_dim << ")";
    o.require(d2 <= 1e-9, "N=2 state differs from I/4");
    o.require(d6 <= 1e-9, "N=6 diagonal differs from 1/64");
    o.require(u2.null_dim == 1 && u6.null_dim == 1, "null space dimension is not 1");
  });

  report(5, "spectral localization and E_F shape on r in [0.1, 100] at s = 1.5", [](Outcome& o) {
    const auto grid = make_grid(0.1, 100.0, 30, GridSpacing::Log);
    std::vector<double> l4, ef;
    double fidelity = 0.0;
    for (double r : grid) {
      const auto rep = solve_steady_numeric(zz_pair(r, 1.5));
      const auto es = hermitian_eigensystem(rep.state.matrix());
      l4.push_back(es.values(3));
      ef.push_back(entanglement_of_formation(rep.state));
      if (r == grid.back()) fidelity = std::norm(es.vectors(0, 3));
    }
    bool increasing = true;
    for (std::size_t i = 1; i < l4.size(); ++i) increasing &= l4[i] > l4[i - 1];
    const auto sh = shape_of(ef);
    o.detail << " lambda4(100) = " << l4.back() << ", ground-state fidelity " << fidelity << ", E_F zero for "
             << sh.first_nonzero << " points, argmax at r = " << grid[sh.argmax];
    o.require(increasing, "lambda4 not strictly increasing");
    o.require(l4.back() > 0.999, "lambda4(100) <= 0.999");
    o.require(fidelity > 0.999, "ground-state fidelity <= 0.999");
    o.require(sh.first_nonzero > 0, "E_F does not start at zero");
    o.require(sh.argmax > sh.first_nonzero && sh.argmax + 1 < ef.size(), "E_F maximum not interior");
    o.require(sh.unimodal, "E_F is not zero-rise-fall");
  });

  report(6, "combined-noise window at s = 5 agrees with the approximation within 15%", [](Outcome& o) {
    const auto approx = *approx_combined_window(5.0);
    const auto win = combined_windows(5.0);
    o.require(win.size() == 1, "expected one entangled window at s = 5");
    if (win.size() == 1) {
      const double el = std::abs(win[0].first - approx.first) / approx.first;
      const double eu = std::abs(win[0].second - approx.second) / approx.second;
      o.detail << " numerical (" << win[0].first << ", " << win[0].second << ") vs approximate (" << approx.first
               << ", " << approx.second << "), edge deviations " << 100 * el << "% / " << 100 * eu << "%";
      o.require(el <= 0.15 && eu <= 0.15, "edge deviation above 15%");
      o.require(win[0].first < approx.second && approx.first < win[0].second, "windows do not overlap");
    }
    const auto w3 = combined_windows(3.0);
    o.detail << "; s = 3: approximation empty, numerical scan finds "
             << (w3.empty() ? std::string("no window (consistent)") : std::to_string(w3.size()) + " window(s)");
    for (const auto& [lo, hi] : w3) o.detail << " (" << lo << ", " << hi << ") [reported, not failed]";
  });

  report(7, "E_F nonincreasing in gamma on the 20x10 grid with a finite gamma_c", [](Outcome& o) {
    const auto specs = figures::fig6_specs(20, 10);
    const auto rates = figures::fig6_dephasing_rates(10);
    std::vector<std::vector<double>> ef;
    for (const auto& ns : specs) {
      const auto res = run_sweep(ns.spec);
      o.require(res.failure_count() == 0, "solver failure in " + ns.label);
      ef.push_back(values(res.series("eof")));
    }
    std::size_t violations = 0;
    for (std::size_t k = 1; k < ef.size(); ++k)
      for (std::size_t i = 0; i < ef[k].size(); ++i) violations += ef[k][i] > ef[k - 1][i];
    std::size_t c = ef.size();
    while (c > 0 && std::all_of(ef[c - 1].begin(), ef[c - 1].end(), [](double v) { return v == 0.0; })) --c;
    o.detail << " " << violations << " monotonicity violations";
    if (c < ef.size())
      o.detail << ", E_F = 0 for all Gamma once gamma >= " << rates[c] << " (last entangled gamma " << rates[c - 1]
               << ")";
    o.require(violations == 0, "E_F increases with gamma somewhere");
    o.require(c > 0 && c < ef.size(), "no finite gamma_c on the grid");
  });

  report(8, "N=6 mutual information has one interior maximum per gamma, maxima decrease", [](Outcome& o) {
    const auto t0 = Clock::now();
    std::vector<double> maxima;
    for (const auto& ns : figures::fig7_specs(30)) {
      const auto res = run_sweep(ns.spec);
      o.require(res.failure_count() == 0, "solver failure in " + ns.label);
      for (const auto& [x, r] : res.series("residual")) o.require(r <= 1e-9, "residual above 1e-9");
      const auto mi = values(res.series("mutual_information"));
      const auto sh = shape_of(mi);
      o.require(sh.first_nonzero == 0 && sh.argmax > 0 && sh.argmax + 1 < mi.size() && sh.unimodal,
                ns.label + " is not single-peaked with an interior maximum");
      maxima.push_back(mi[sh.argmax]);
      o.detail << " " << ns.label << " max " << mi[sh.argmax] << " at Gamma = " << res.series("mutual_information")[sh.argmax].first << ";";
    }
    for (std::size_t k = 1; k < maxima.size(); ++k) o.require(maxima[k] < maxima[k - 1], "maxima not decreasing");
    const double elapsed = seconds_since(t0);
    o.detail << " " << elapsed << " s";
    o.require(elapsed < 1800.0, "runtime of 30 min exceeded");
  });

  report(9, "propagation from |0...0> agrees with the null-space solve", [](Outcome& o) {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> u(0.0, 1.0);
    double worst = 0.0;
    for (int k = 0; k < 5; ++k) {
      const int n = 2 + k % 2;
      auto c = ArrayConfig::homogeneous(n, 0.5 + u(rng), k % 2 ? CouplingSpec::zz(2.0 * u(rng))
                                                                 : CouplingSpec::xxyy(2.0 * u(rng), u(rng)),
                                        0.3 + u(rng), 0.5 * u(rng), 0.3 * u(rng), 0.4 * (u(rng) - 0.5));
      const auto l = build_liouvillian(c);
      PropagateOptions opts;
      opts.t_max = 400.0;
      const auto prop = propagate_to_steady(l, DensityMatrix::basis_state(n, 0), opts);
      const auto ss = solve_steady_numeric(l);
      const double d = test::frob(prop.state.matrix(), ss.state.matrix());
      worst = std::max(worst, d);
      o.require(prop.converged, "propagation did not converge");
    }
    o.detail << " max Frobenius " << worst << " over 5 configs";
    o.require(worst <= 1e-6, "difference above 1e-6");
  });

  report(10, "measure sanity: concurrence vs PPT on 200 random states and reference values", [](Outcome& o) {
    std::mt19937_64 rng(10);
    int agree = 0, entangled = 0;
    for (int k = 0; k < 200; ++k) {
      const auto rho = test::random_state(rng, 2, 1 + k % 4);
      const bool c = concurrence(rho) > 1e-10;
      agree += c == ppt_test(rho).entangled;
      entangled += c;
    }
    const auto bell = test::bell_phi_plus();
    ComplexVector prod = ComplexVector::Zero(4);
    prod(1) = 1.0;
    const auto product = DensityMatrix::pure(prod);
    const auto mixed = DensityMatrix::maximally_mixed(2);
    const Bipartition cut{{0}, {1}};
    const double cb = concurrence(bell), ib = mutual_information(bell, cut), nb = ppt_test(bell).min_pt_eigenvalue;
    const double cp = concurrence(product), ip = mutual_information(product, cut);
    const double cm = concurrence(mixed), im = mutual_information(mixed, cut);
    o.detail << " " << agree << "/200 agree (" << entangled << " entangled); Bell C=" << cb << " I_M=" << ib
             << " min PT eigenvalue=" << nb << "; product C=" << cp << " I_M=" << ip << "; I/4 C=" << cm
             << " I_M=" << im;
    o.require(agree == 200, "concurrence and PPT disagree");
    constexpr double e = 1e-10;
    o.require(std::abs(cb - 1.0) < e && std::abs(ib - 2.0) < e && std::abs(nb + 0.5) < e, "Bell reference values");
    o.require(cp < e && ip < e && cm < e && im < e, "product / mixed reference values");
  });

  std::printf("%d criteria failed\n", failures);
  return failures;
}
