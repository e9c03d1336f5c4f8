#pragma once

// Per-backend entry points. Callers go through kernels.hpp; these exist so the
// dispatcher and the equivalence tests can name a variant directly.

#include "qsr/kernels/kernels.hpp"

namespace qsr::kernels::scalar {
void dense_matvec(const cplx* a, const cplx* x, cplx* y, std::int64_t n);
void csr_matvec(const CsrView& a, const cplx* x, cplx* y);
void axpy(cplx alpha, const cplx* x, cplx* y, std::int64_t n);
double squared_norm(const cplx* x, std::int64_t n);
}  // namespace qsr::kernels::scalar

#if defined(QSR_HAVE_AVX2)
namespace qsr::kernels::avx2 {
void dense_matvec(const cplx* a, const cplx* x, cplx* y, std::int64_t n);
void csr_matvec(const CsrView& a, const cplx* x, cplx* y);
void axpy(cplx alpha, const cplx* x, cplx* y, std::int64_t n);
double squared_norm(const cplx* x, std::int64_t n);
}  // namespace qsr::kernels::avx2
#endif
