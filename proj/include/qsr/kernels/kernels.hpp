#pragma once

// Complex BLAS-1/2 kernels used by the time propagator and residual checks.
//
// Every kernel has a portable scalar reference and, on x86-64, an AVX2/FMA
// variant. The active backend is chosen once at startup from CPUID and can be
// pinned with the QSR_KERNELS environment variable ("scalar" or "avx2") or
// per call.

#include <complex>
#include <cstdint>
#include <span>
#include <string_view>

namespace qsr::kernels {

using cplx = std::complex<double>;

enum class Backend { Scalar, Avx2 };

std::string_view name(Backend b);

/// True when the backend was compiled in and the CPU supports it.
bool available(Backend b);

/// Backend used by the overloads without an explicit Backend argument.
Backend active();

/// Compressed sparse row view (0-based, int32 indices).
struct CsrView {
  std::span<const int> row_ptr;  ///< rows + 1 entries
  std::span<const int> col;
  std::span<const cplx> val;
  std::int64_t rows = 0;
};

/// y = A x for a row-major n x n matrix.
void dense_matvec(Backend b, std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y);
/// y = A x
void csr_matvec(Backend b, const CsrView& a, std::span<const cplx> x, std::span<cplx> y);
/// y += alpha x
void axpy(Backend b, cplx alpha, std::span<const cplx> x, std::span<cplx> y);
/// sum |x_i|^2
double squared_norm(Backend b, std::span<const cplx> x);

inline void dense_matvec(std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y) {
  dense_matvec(active(), a, x, y);
}
inline void csr_matvec(const CsrView& a, std::span<const cplx> x, std::span<cplx> y) {
  csr_matvec(active(), a, x, y);
}
inline void axpy(cplx alpha, std::span<const cplx> x, std::span<cplx> y) { axpy(active(), alpha, x, y); }
inline double squared_norm(std::span<const cplx> x) { return squared_norm(active(), x); }

}  // namespace qsr::kernels
