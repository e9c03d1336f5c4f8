// Compiled with -mavx2 -mfma; only reached when the CPU reports both.

#include <immintrin.h>

#include "backends.hpp"

namespace qsr::kernels::avx2 {
namespace {

// Two packed complex products: [a0*b0, a1*b1].
inline __m256d cmul(__m256d a, __m256d b) {
  const __m256d a_re = _mm256_movedup_pd(a);         // [a0r a0r a1r a1r]
  const __m256d a_im = _mm256_permute_pd(a, 0xF);    // [a0i a0i a1i a1i]
  const __m256d b_sw = _mm256_permute_pd(b, 0x5);    // [b0i b0r b1i b1r]
  return _mm256_fmaddsub_pd(a_re, b, _mm256_mul_pd(a_im, b_sw));
}

inline cplx hsum(__m256d acc) {
  const __m128d lo = _mm256_castpd256_pd128(acc);
  const __m128d hi = _mm256_extractf128_pd(acc, 1);
  const __m128d s = _mm_add_pd(lo, hi);
  alignas(16) double out[2];
  _mm_store_pd(out, s);
  return {out[0], out[1]};
}

inline const double* dp(const cplx* p) { return reinterpret_cast<const double*>(p); }
inline double* dp(cplx* p) { return reinterpret_cast<double*>(p); }

}  // namespace

void dense_matvec(const cplx* a, const cplx* x, cplx* y, std::int64_t n) {
  for (std::int64_t i = 0; i < n; ++i) {
    const cplx* row = a + i * n;
    __m256d acc0 = _mm256_setzero_pd();
    __m256d acc1 = _mm256_setzero_pd();
    std::int64_t j = 0;
    for (; j + 4 <= n; j += 4) {
      acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(dp(row + j)), _mm256_loadu_pd(dp(x + j))));
      acc1 = _mm256_add_pd(acc1, cmul(_mm256_loadu_pd(dp(row + j + 2)), _mm256_loadu_pd(dp(x + j + 2))));
    }
    for (; j + 2 <= n; j += 2)
      acc0 = _mm256_add_pd(acc0, cmul(_mm256_loadu_pd(dp(row + j)), _mm256_loadu_pd(dp(x + j))));
    cplx s = hsum(_mm256_add_pd(acc0, acc1));
    for (; j < n; ++j) s += row[j] * x[j];
    y[i] = s;
  }
}

void csr_matvec(const CsrView& a, const cplx* x, cplx* y) {
  for (std::int64_t i = 0; i < a.rows; ++i) {
    int k = a.row_ptr[static_cast<std::size_t>(i)];
    const int end = a.row_ptr[static_cast<std::size_t>(i) + 1];
    __m256d acc = _mm256_setzero_pd();
    for (; k + 2 <= end; k += 2) {
      const __m256d v = _mm256_loadu_pd(dp(a.val.data() + k));
      const __m128d x0 = _mm_loadu_pd(dp(x + a.col[static_cast<std::size_t>(k)]));
      const __m128d x1 = _mm_loadu_pd(dp(x + a.col[static_cast<std::size_t>(k) + 1]));
      acc = _mm256_add_pd(acc, cmul(v, _mm256_set_m128d(x1, x0)));
    }
    cplx s = hsum(acc);
    for (; k < end; ++k) s += a.val[static_cast<std::size_t>(k)] * x[a.col[static_cast<std::size_t>(k)]];
    y[i] = s;
  }
}

void axpy(cplx alpha, const cplx* x, cplx* y, std::int64_t n) {
  const __m256d al = _mm256_setr_pd(alpha.real(), alpha.imag(), alpha.real(), alpha.imag());
  std::int64_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d prod = cmul(al, _mm256_loadu_pd(dp(x + i)));
    _mm256_storeu_pd(dp(y + i), _mm256_add_pd(_mm256_loadu_pd(dp(y + i)), prod));
  }
  for (; i < n; ++i) y[i] += alpha * x[i];
}

double squared_norm(const cplx* x, std::int64_t n) {
  __m256d acc = _mm256_setzero_pd();
  std::int64_t i = 0;
  for (; i + 2 <= n; i += 2) {
    const __m256d v = _mm256_loadu_pd(dp(x + i));
    acc = _mm256_fmadd_pd(v, v, acc);
  }
  const cplx h = hsum(acc);
  double s = h.real() + h.imag();
  for (; i < n; ++i) s += std::norm(x[i]);
  return s;
}

}  // namespace qsr::kernels::avx2
