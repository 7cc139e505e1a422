#pragma once

#include <complex>
#include <cstddef>

// Vector kernels behind the dense linear algebra. Each kernel has a scalar
// reference implementation and, on x86-64, an AVX2+FMA variant. The active
// variant is chosen once at startup from CPUID; tests compare the two paths
// on random data. Results are deterministic for a fixed backend.

namespace sps::kernels {

enum class Backend { scalar, avx2 };

/// Backend currently used by the dispatch table.
Backend active_backend();

/// Force a backend; returns false (and leaves the table unchanged) if the
/// CPU cannot run it. Not meant to be called concurrently with compute.
bool set_backend(Backend b);

const char* backend_name(Backend b);

using zd = std::complex<double>;

// Dispatched entry points.
double dot(std::size_t n, const double* x, const double* y);
double nrm2sq(std::size_t n, const double* x);
void axpy(std::size_t n, double alpha, const double* x, double* y);
void scal(std::size_t n, double alpha, double* x);
/// In-place 2-column rotation: (x, y) <- (axx*x + axy*y, ayx*x + ayy*y).
void mix2(std::size_t n, double* x, double* y,
          double axx, double axy, double ayx, double ayy);

zd dotc(std::size_t n, const zd* x, const zd* y);  // sum conj(x[i]) * y[i]
double nrm2sq(std::size_t n, const zd* x);
void axpy(std::size_t n, zd alpha, const zd* x, zd* y);
void scal(std::size_t n, zd alpha, zd* x);
void mix2(std::size_t n, zd* x, zd* y, zd axx, zd axy, zd ayx, zd ayy);

// Reference path, exposed so the equivalence tests can pin the SIMD
// variants against it directly.
namespace scalar {
double dot(std::size_t n, const double* x, const double* y);
double nrm2sq(std::size_t n, const double* x);
void axpy(std::size_t n, double alpha, const double* x, double* y);
void scal(std::size_t n, double alpha, double* x);
void mix2(std::size_t n, double* x, double* y,
          double axx, double axy, double ayx, double ayy);
zd dotc(std::size_t n, const zd* x, const zd* y);
double nrm2sq(std::size_t n, const zd* x);
void axpy(std::size_t n, zd alpha, const zd* x, zd* y);
void scal(std::size_t n, zd alpha, zd* x);
void mix2(std::size_t n, zd* x, zd* y, zd axx, zd axy, zd ayx, zd ayy);
}  // namespace scalar

#if defined(__x86_64__) || defined(_M_X64)
namespace avx2 {
double dot(std::size_t n, const double* x, const double* y);
double nrm2sq(std::size_t n, const double* x);
void axpy(std::size_t n, double alpha, const double* x, double* y);
void scal(std::size_t n, double alpha, double* x);
void mix2(std::size_t n, double* x, double* y,
          double axx, double axy, double ayx, double ayy);
zd dotc(std::size_t n, const zd* x, const zd* y);
double nrm2sq(std::size_t n, const zd* x);
void axpy(std::size_t n, zd alpha, const zd* x, zd* y);
void scal(std::size_t n, zd alpha, zd* x);
void mix2(std::size_t n, zd* x, zd* y, zd axx, zd axy, zd ayx, zd ayy);
}  // namespace avx2
#endif

// Generic front used by templated code: picks the real or complex entry.
template <typename T>
T dot_conj(std::size_t n, const T* x, const T* y) {
    if constexpr (std::is_same_v<T, double>)
        return dot(n, x, y);
    else
        return dotc(n, x, y);
}

}  // namespace sps::kernels
