#include "backends.hpp"

namespace qsr::kernels::scalar {

void dense_matvec(const cplx* a, const cplx* x, cplx* y, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) {
    const cplx* row = a + i * n;
    double re = 0.0, im = 0.0;
    for (std::int64_t j = 0; j < n; ++j) {
      const double ar = row[j].real(), ai = row[j].imag();
      const double xr = x[j].real(), xi = x[j].imag();
      re += ar * xr - ai * xi;
      im += ar * xi + ai * xr;
    }
    y[i] = {re, im};
  }
}

void csr_matvec(const CsrView& a, const cplx* x, cplx* y) {
  for (std::int64_t i = 0; i < a.rows; ++i) {
    double re = 0.0, im = 0.0;
    for (int k = a.row_ptr[static_cast<std::size_t>(i)]; k < a.row_ptr[static_cast<std::size_t>(i) + 1]; ++k) {
      const cplx v = a.val[static_cast<std::size_t>(k)];
      const cplx xv = x[a.col[static_cast<std::size_t>(k)]];
      re += v.real() * xv.real() - v.imag() * xv.imag();
      im += v.real() * xv.imag() + v.imag() * xv.real();
    }
    y[i] = {re, im};
  }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::int64_t n) {
  const double ar = alpha.real(), ai = alpha.imag();
  for (std::int64_t i = 0; i < n; ++i) {
    const double xr = x[i].real(), xi = x[i].imag();
    y[i] += cplx(ar * xr - ai * xi, ar * xi + ai * xr);
  }
}

double squared_norm(const cplx* x, std::int64_t n) {
  double acc = 0.0;
  for (std::int64_t i = 0; i < n; ++i) acc += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
  return acc;
}

}  // namespace qsr::kernels::scalar
