#include <cstdlib>
#include <stdexcept>
#include <string>

#include "backends.hpp"

namespace qsr::kernels {
namespace {

bool cpu_has_avx2() {
#if defined(QSR_HAVE_AVX2) && (defined(__GNUC__) || defined(__clang__))
  __builtin_cpu_init();
  return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
  return false;
#endif
}

Backend detect() {
  if (const char* env = std::getenv("QSR_KERNELS")) {
    const std::string v(env);
    if (v == "scalar") return Backend::Scalar;
    if (v == "avx2" && cpu_has_avx2()) return Backend::Avx2;
  }
  return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
}

void require(Backend b) {
  if (!available(b)) throw std::invalid_argument("kernel backend " + std::string(name(b)) + " unavailable");
}

void check_same(std::size_t a, std::size_t b, const char* what) {
  if (a != b) throw std::invalid_argument(std::string("kernel size mismatch: ") + what);
}

}  // namespace

std::string_view name(Backend b) { return b == Backend::Avx2 ? "avx2" : "scalar"; }

bool available(Backend b) { return b == Backend::Scalar || cpu_has_avx2(); }

Backend active() {
  static const Backend b = detect();
  return b;
}

void dense_matvec(Backend b, std::span<const cplx> a, std::span<const cplx> x, std::span<cplx> y) {
  check_same(x.size(), y.size(), "dense_matvec x/y");
  check_same(a.size(), x.size() * x.size(), "dense_matvec a");
  const auto n = static_cast<std::int64_t>(x.size());
  require(b);
#if defined(QSR_HAVE_AVX2)
  if (b == Backend::Avx2) return avx2::dense_matvec(a.data(), x.data(), y.data(), n);
#endif
  scalar::dense_matvec(a.data(), x.data(), y.data(), n);
}

void csr_matvec(Backend b, const CsrView& a, std::span<const cplx> x, std::span<cplx> y) {
  check_same(static_cast<std::size_t>(a.rows), y.size(), "csr_matvec rows");
  check_same(a.row_ptr.size(), static_cast<std::size_t>(a.rows) + 1, "csr_matvec row_ptr");
  require(b);
#if defined(QSR_HAVE_AVX2)
  if (b == Backend::Avx2) return avx2::csr_matvec(a, x.data(), y.data());
#endif
  scalar::csr_matvec(a, x.data(), y.data());
}

void axpy(Backend b, cplx alpha, std::span<const cplx> x, std::span<cplx> y) {
  check_same(x.size(), y.size(), "axpy");
  require(b);
  const auto n = static_cast<std::int64_t>(x.size());
#if defined(QSR_HAVE_AVX2)
  if (b == Backend::Avx2) return avx2::axpy(alpha, x.data(), y.data(), n);
#endif
  scalar::axpy(alpha, x.data(), y.data(), n);
}

double squared_norm(Backend b, std::span<const cplx> x) {
  require(b);
  const auto n = static_cast<std::int64_t>(x.size());
#if defined(QSR_HAVE_AVX2)
  if (b == Backend::Avx2) return avx2::squared_norm(x.data(), n);
#endif
  return scalar::squared_norm(x.data(), n);
}

}  // namespace qsr::kernels
