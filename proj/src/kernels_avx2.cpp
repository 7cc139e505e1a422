#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include "sps/kernels.hpp"

namespace sps::kernels::avx2 {

namespace {

inline double hsum(__m256d v) {
    __m128d lo = _mm256_castpd256_pd128(v);
    __m128d hi = _mm256_extractf128_pd(v, 1);
    lo = _mm_add_pd(lo, hi);
    __m128d sh = _mm_unpackhi_pd(lo, lo);
    return _mm_cvtsd_f64(_mm_add_sd(lo, sh));
}

// alpha * v for interleaved complex lanes, alpha = (ar, ai) broadcast.
inline __m256d cmul(__m256d ar, __m256d ai, __m256d v) {
    __m256d sw = _mm256_permute_pd(v, 0x5);  // swap (re, im) in each pair
    return _mm256_addsub_pd(_mm256_mul_pd(ar, v), _mm256_mul_pd(ai, sw));
}

}  // namespace

double dot(std::size_t n, const double* x, const double* y) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i), acc);
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq(std::size_t n, const double* x) {
    __m256d acc = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_loadu_pd(x + i);
        acc = _mm256_fmadd_pd(v, v, acc);
    }
    double s = hsum(acc);
    for (; i < n; ++i) s += x[i] * x[i];
    return s;
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
    const __m256d a = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d v = _mm256_fmadd_pd(a, _mm256_loadu_pd(x + i), _mm256_loadu_pd(y + i));
        _mm256_storeu_pd(y + i, v);
    }
    for (; i < n; ++i) y[i] += alpha * x[i];
}

void scal(std::size_t n, double alpha, double* x) {
    const __m256d a = _mm256_set1_pd(alpha);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(a, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= alpha;
}

void mix2(std::size_t n, double* x, double* y,
          double axx, double axy, double ayx, double ayy) {
    const __m256d vxx = _mm256_set1_pd(axx), vxy = _mm256_set1_pd(axy);
    const __m256d vyx = _mm256_set1_pd(ayx), vyy = _mm256_set1_pd(ayy);
    std::size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d xi = _mm256_loadu_pd(x + i);
        __m256d yi = _mm256_loadu_pd(y + i);
        _mm256_storeu_pd(x + i, _mm256_fmadd_pd(vxx, xi, _mm256_mul_pd(vxy, yi)));
        _mm256_storeu_pd(y + i, _mm256_fmadd_pd(vyx, xi, _mm256_mul_pd(vyy, yi)));
    }
    for (; i < n; ++i) {
        const double xi = x[i], yi = y[i];
        x[i] = axx * xi + axy * yi;
        y[i] = ayx * xi + ayy * yi;
    }
}

zd dotc(std::size_t n, const zd* x, const zd* y) {
    const double* xr = reinterpret_cast<const double*>(x);
    const double* yr = reinterpret_cast<const double*>(y);
    const __m256d sign = _mm256_set_pd(-1.0, 1.0, -1.0, 1.0);
    __m256d acc_re = _mm256_setzero_pd();
    __m256d acc_im = _mm256_setzero_pd();
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xr + 2 * i);
        __m256d yv = _mm256_loadu_pd(yr + 2 * i);
        acc_re = _mm256_fmadd_pd(xv, yv, acc_re);
        __m256d ysw = _mm256_permute_pd(yv, 0x5);
        acc_im = _mm256_fmadd_pd(_mm256_mul_pd(xv, sign), ysw, acc_im);
    }
    double re = hsum(acc_re);
    double im = hsum(acc_im);
    for (; i < n; ++i) {
        const double a = x[i].real(), b = x[i].imag();
        const double c = y[i].real(), d = y[i].imag();
        re += a * c + b * d;
        im += a * d - b * c;
    }
    return {re, im};
}

double nrm2sq(std::size_t n, const zd* x) {
    return nrm2sq(2 * n, reinterpret_cast<const double*>(x));
}

void axpy(std::size_t n, zd alpha, const zd* x, zd* y) {
    const double* xr = reinterpret_cast<const double*>(x);
    double* yr = reinterpret_cast<double*>(y);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xr + 2 * i);
        __m256d yv = _mm256_loadu_pd(yr + 2 * i);
        _mm256_storeu_pd(yr + 2 * i, _mm256_add_pd(yv, cmul(ar, ai, xv)));
    }
    const double a = alpha.real(), b = alpha.imag();
    for (; i < n; ++i) {
        const double c = x[i].real(), d = x[i].imag();
        y[i] += zd(a * c - b * d, a * d + b * c);
    }
}

void scal(std::size_t n, zd alpha, zd* x) {
    double* xr = reinterpret_cast<double*>(x);
    const __m256d ar = _mm256_set1_pd(alpha.real());
    const __m256d ai = _mm256_set1_pd(alpha.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2)
        _mm256_storeu_pd(xr + 2 * i, cmul(ar, ai, _mm256_loadu_pd(xr + 2 * i)));
    const double a = alpha.real(), b = alpha.imag();
    for (; i < n; ++i) {
        const double c = x[i].real(), d = x[i].imag();
        x[i] = zd(a * c - b * d, a * d + b * c);
    }
}

void mix2(std::size_t n, zd* x, zd* y, zd axx, zd axy, zd ayx, zd ayy) {
    double* xr = reinterpret_cast<double*>(x);
    double* yr = reinterpret_cast<double*>(y);
    const __m256d xx_r = _mm256_set1_pd(axx.real()), xx_i = _mm256_set1_pd(axx.imag());
    const __m256d xy_r = _mm256_set1_pd(axy.real()), xy_i = _mm256_set1_pd(axy.imag());
    const __m256d yx_r = _mm256_set1_pd(ayx.real()), yx_i = _mm256_set1_pd(ayx.imag());
    const __m256d yy_r = _mm256_set1_pd(ayy.real()), yy_i = _mm256_set1_pd(ayy.imag());
    std::size_t i = 0;
    for (; i + 2 <= n; i += 2) {
        __m256d xv = _mm256_loadu_pd(xr + 2 * i);
        __m256d yv = _mm256_loadu_pd(yr + 2 * i);
        _mm256_storeu_pd(xr + 2 * i,
                         _mm256_add_pd(cmul(xx_r, xx_i, xv), cmul(xy_r, xy_i, yv)));
        _mm256_storeu_pd(yr + 2 * i,
                         _mm256_add_pd(cmul(yx_r, yx_i, xv), cmul(yy_r, yy_i, yv)));
    }
    for (; i < n; ++i) {
        const zd xi = x[i], yi = y[i];
        x[i] = axx * xi + axy * yi;
        y[i] = ayx * xi + ayy * yi;
    }
}

}  // namespace sps::kernels::avx2

#endif  // x86-64
