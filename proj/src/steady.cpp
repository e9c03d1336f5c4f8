#include "qsr/steady.hpp"

#include <cmath>
#include <vector>

#include <Eigen/SVD>
#include <Eigen/SparseLU>
#ifdef QSR_HAVE_UMFPACK
#include <Eigen/UmfPackSupport>
#endif

#include "qsr/errors.hpp"
#include "qsr/tolerance.hpp"

namespace qsr {

using SparseC = Eigen::SparseMatrix<cplx>;
#ifdef QSR_HAVE_UMFPACK
using SparseSolver = Eigen::UmfPackLU<SparseC>;
#else
using SparseSolver = Eigen::SparseLU<SparseC, Eigen::COLAMDOrdering<int>>;
#endif

ReducedParams ReducedParams::from(double r, double s) {
  if (!(r >= 0.0) || !std::isfinite(r)) throw InvalidArgument("r = Gamma/Omega must be finite and >= 0");
  if (!std::isfinite(s)) throw InvalidArgument("s must be finite");
  ReducedParams p;
  p.r = r;
  p.s = s;
  p.t = r * r + 1.0;
  p.k = 3.0 + 2.0 * r * r + p.t * p.t + 4.0 * r * r * s * s;
  return p;
}

std::string to_string(SteadyMethod m) {
  switch (m) {
    case SteadyMethod::NullSpace: return "nullspace";
    case SteadyMethod::LinearSolve: return "linear-solve";
    case SteadyMethod::Analytic: return "analytic";
    case SteadyMethod::Propagation: return "propagation";
  }
  return "?";
}

double steady_residual(const Liouvillian& l, const ComplexMatrix& rho) {
  return (l.matrix * vectorize(rho)).norm();
}

namespace {

bool has_noise(const ArrayConfig& c) {
  for (std::size_t j = 0; j < c.gamma_decay.size(); ++j)
    if (c.gamma_decay[j] > 0.0 || c.gamma_dephase[j] > 0.0) return true;
  return false;
}

int null_dim_from_singular_values(const RealVector& sv) {
  if (sv.size() == 0) return 0;
  const double cutoff = tol::null_space * sv(0);
  int count = 0;
  for (Eigen::Index i = 0; i < sv.size(); ++i)
    if (sv(i) < cutoff || sv(0) == 0.0) ++count;
  return count;
}

SparseC trace_replaced(const Liouvillian& l) {
  const Eigen::Index d = l.hilbert_dim;
  std::vector<Eigen::Triplet<cplx>> trips;
  trips.reserve(static_cast<std::size_t>(l.matrix.nonZeros() + d));
  for (int k = 0; k < l.matrix.outerSize(); ++k)
    for (SparseC::InnerIterator it(l.matrix, k); it; ++it)
      if (it.row() != 0) trips.emplace_back(it.row(), it.col(), it.value());
  for (Eigen::Index i = 0; i < d; ++i) trips.emplace_back(0, i * d + i, cplx(1.0));
  SparseC a(l.dim(), l.dim());
  a.setFromTriplets(trips.begin(), trips.end());
  a.makeCompressed();
  return a;
}

SteadyStateReport finish(const Liouvillian& l, const ComplexVector& v, int null_dim, SteadyMethod method,
                         double tol) {
  ComplexMatrix rho = unvectorize(v, l.hilbert_dim);
  const cplx tr = rho.trace();
  if (std::abs(tr) < 1e-300) throw NoConvergence("steady-state candidate has zero trace");
  rho /= tr;
  DensityMatrix state = [&] {
    try {
      return DensityMatrix::from_numeric(rho);
    } catch (const InvalidArgument& e) {
      throw NoConvergence(std::string("steady-state candidate is not a valid state: ") + e.what());
    }
  }();
  const double res = steady_residual(l, state.matrix());
  if (!(res <= tol))
    throw NoConvergence("steady-state residual " + std::to_string(res) + " exceeds " + std::to_string(tol));
  return {std::move(state), res, null_dim, method};
}

SteadyStateReport solve_dense(const Liouvillian& l, double tol) {
  const ComplexMatrix a = l.dense();
  Eigen::BDCSVD<ComplexMatrix> svd(a, Eigen::ComputeFullV);
  const int nd = null_dim_from_singular_values(svd.singularValues());
  if (nd > 1) throw NonUniqueSteadyState(nd, "Liouvillian null space has dimension " + std::to_string(nd));
  const ComplexVector v = svd.matrixV().col(a.cols() - 1);
  return finish(l, v, 1, SteadyMethod::NullSpace, tol);
}

SteadyStateReport solve_sparse(const Liouvillian& l, double tol) {
  const SparseC a = trace_replaced(l);
  SparseSolver lu;
  lu.compute(a);
  if (lu.info() != Eigen::Success) throw NonUniqueSteadyState(2, "trace-constrained Liouvillian is singular");
  ComplexVector b = ComplexVector::Zero(a.rows());
  b(0) = 1.0;
  ComplexVector x = lu.solve(b);
  // A couple of refinement sweeps recover digits lost to pivot growth.
  for (int it = 0; it < 2; ++it) {
    const ComplexVector r = b - a * x;
    if (r.norm() < 1e-15) break;
    x += lu.solve(r);
  }
  return finish(l, x, 1, SteadyMethod::LinearSolve, tol);
}

}  // namespace

SteadyStateReport solve_steady_numeric(const Liouvillian& l, const SolveOptions& opts) {
  const bool dense = opts.strategy == SolveOptions::Strategy::Dense ||
                     (opts.strategy == SolveOptions::Strategy::Auto && l.dim() <= opts.dense_limit);
  if (!has_noise(l.config) && !dense)
    throw NonUniqueSteadyState(2, "no noise channel is active; the steady state is not unique");
  return dense ? solve_dense(l, opts.residual_tol) : solve_sparse(l, opts.residual_tol);
}

SteadyStateReport solve_steady_numeric(const ArrayConfig& config, const SolveOptions& opts) {
  return solve_steady_numeric(build_liouvillian(config), opts);
}

DensityMatrix analytic_steady_zz(double r, double s) {
  const auto p = ReducedParams::from(r, s);
  const double t = p.t;
  const cplx i1(0.0, 1.0);
  const cplx a = 2.0 * s * r * r + i1 * r * t;  // (0,1), (0,2)
  const cplx c = 2.0 * i1 * r * s - r * r;      // (0,3)
  const cplx e = i1 * r;                        // (1,3), (2,3)
  ComplexMatrix m(4, 4);
  m << t * t + 4.0 * s * s * r * r, a, a, c,
       std::conj(a), t, r * r, e,
       std::conj(a), r * r, t, e,
       std::conj(c), std::conj(e), std::conj(e), 1.0;
  return DensityMatrix(m / p.k);
}

DensityMatrix analytic_steady_xxyy(double r, double s_perp, double s_par) {
  return analytic_steady_zz(r, s_perp - s_par);
}

std::array<double, 4> steady_spectrum_analytic(double r, double s) {
  const auto p = ReducedParams::from(r, s);
  const double t = p.t, r2 = r * r, s2 = s * s;
  const double den = 4.0 * r2 * s2 + (1.0 + t) * (1.0 + t);
  const double l12 = 1.0 / den;
  const double base = 1.0 + r2 * (2.0 + 4.0 * s2) + t * t;
  const double root = std::sqrt(4.0 * r2 * (1.0 + s2) + (t - 1.0) * (t - 1.0)) * std::sqrt(den);
  return {l12, l12, (base - root) / (2.0 * den), (base + root) / (2.0 * den)};
}

double default_time_step(const ArrayConfig& c) {
  double rate = 0.0;
  for (std::size_t j = 0; j < c.gamma_decay.size(); ++j)
    rate += 2.0 * c.gamma_decay[j] * (2.0 * c.nbar[j] + 1.0) + 2.0 * c.gamma_dephase[j];
  const RealVector ev = hermitian_eigenvalues(build_coherent_hamiltonian(c));
  const double hnorm = std::max(std::abs(ev(0)), std::abs(ev(ev.size() - 1)));
  const double scale = std::max(rate, hnorm);
  if (scale == 0.0) return 0.0;
  return 0.01 / scale;
}

PropagationResult propagate_to_steady(const Liouvillian& l, const DensityMatrix& rho0,
                                      const PropagateOptions& opts) {
  if (rho0.dim() != l.hilbert_dim) throw InvalidArgument("propagate_to_steady: state dimension mismatch");
  if (l.matrix.nonZeros() == 0) return {rho0, 0.0, 0.0, true};
  if (!(opts.t_max > 0.0)) throw InvalidArgument("propagate_to_steady: t_max must be positive");
  const double dt = opts.dt > 0.0 ? opts.dt : default_time_step(l.config);
  if (!(dt > 0.0)) throw InvalidArgument("propagate_to_steady: cannot derive a time step");

  const auto n = static_cast<std::size_t>(l.dim());
  const kernels::Backend be = opts.backend;

  // Small superoperators go through the dense row-major kernel, larger ones CSR.
  const bool dense = l.dim() <= 256;
  std::vector<cplx> dense_a;
  Eigen::SparseMatrix<cplx, Eigen::RowMajor> csr;
  kernels::CsrView view;
  if (dense) {
    const ComplexMatrix a = l.dense();
    dense_a.resize(n * n);
    Eigen::Map<Eigen::Matrix<cplx, Eigen::Dynamic, Eigen::Dynamic, Eigen::RowMajor>>(
        dense_a.data(), l.dim(), l.dim()) = a;
  } else {
    csr = l.matrix;
    csr.makeCompressed();
    view.rows = csr.rows();
    view.row_ptr = {csr.outerIndexPtr(), static_cast<std::size_t>(csr.rows()) + 1};
    view.col = {csr.innerIndexPtr(), static_cast<std::size_t>(csr.nonZeros())};
    view.val = {csr.valuePtr(), static_cast<std::size_t>(csr.nonZeros())};
  }
  auto apply = [&](std::span<const cplx> x, std::span<cplx> y) {
    if (dense)
      kernels::dense_matvec(be, dense_a, x, y);
    else
      kernels::csr_matvec(be, view, x, y);
  };

  std::vector<cplx> y(n), k1(n), k2(n), k3(n), k4(n), tmp(n), last(n);
  {
    const ComplexVector v = vectorize(rho0.matrix());
    std::copy(v.data(), v.data() + v.size(), y.begin());
  }
  last = y;
  const Eigen::Index d = l.hilbert_dim;
  auto trace_of = [&](const std::vector<cplx>& v) {
    cplx tr = 0;
    for (Eigen::Index i = 0; i < d; ++i) tr += v[static_cast<std::size_t>(i * d + i)];
    return tr;
  };

  const auto steps = static_cast<long long>(std::ceil(opts.t_max / dt));
  const int window = std::max(1, opts.window);
  double t = 0.0;
  bool converged = false;
  for (long long step = 1; step <= steps; ++step) {
    apply(y, k1);
    tmp = y;
    kernels::axpy(be, 0.5 * dt, k1, tmp);
    apply(tmp, k2);
    tmp = y;
    kernels::axpy(be, 0.5 * dt, k2, tmp);
    apply(tmp, k3);
    tmp = y;
    kernels::axpy(be, dt, k3, tmp);
    apply(tmp, k4);
    kernels::axpy(be, dt / 6.0, k1, y);
    kernels::axpy(be, dt / 3.0, k2, y);
    kernels::axpy(be, dt / 3.0, k3, y);
    kernels::axpy(be, dt / 6.0, k4, y);
    t = static_cast<double>(step) * dt;

    if (step % window == 0 || step == steps) {
      const cplx tr = trace_of(y);
      if (!std::isfinite(tr.real()) || std::abs(tr - 1.0) > tol::trace_drift)
        throw StepSizeUnstable("trace drifted to " + std::to_string(tr.real()) + " at t = " + std::to_string(t));
      tmp = y;
      kernels::axpy(be, -1.0, last, tmp);
      const double change = std::sqrt(kernels::squared_norm(be, tmp));
      last = y;
      if (change < opts.converge_tol) {
        converged = true;
        break;
      }
    }
  }

  const ComplexVector v = Eigen::Map<const ComplexVector>(y.data(), static_cast<Eigen::Index>(n));
  DensityMatrix state = DensityMatrix::from_numeric(unvectorize(v, d));
  const double res = steady_residual(l, state.matrix());
  return {std::move(state), res, t, converged};
}

UniquenessReport check_uniqueness(const Liouvillian& l) {
  if (l.dim() <= 1024) {
    Eigen::BDCSVD<ComplexMatrix> svd(l.dense());
    const int nd = null_dim_from_singular_values(svd.singularValues());
    return {nd == 1, nd};
  }
  const SparseC a = trace_replaced(l);
  SparseSolver lu;
  lu.compute(a);
  const bool ok = lu.info() == Eigen::Success;
  return {ok, ok ? 1 : 2};
}

}  // namespace qsr
