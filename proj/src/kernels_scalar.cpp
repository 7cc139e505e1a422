#include "sps/kernels.hpp"

namespace sps::kernels::scalar {

double dot(std::size_t n, const double* x, const double* y) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * y[i];
    return s;
}

double nrm2sq(std::size_t n, const double* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i) s += x[i] * x[i];
    return s;
}

void axpy(std::size_t n, double alpha, const double* x, double* y) {
    for (std::size_t i = 0; i < n; ++i) y[i] += alpha * x[i];
}

void scal(std::size_t n, double alpha, double* x) {
    for (std::size_t i = 0; i < n; ++i) x[i] *= alpha;
}

void mix2(std::size_t n, double* x, double* y,
          double axx, double axy, double ayx, double ayy) {
    for (std::size_t i = 0; i < n; ++i) {
        const double xi = x[i];
        const double yi = y[i];
        x[i] = axx * xi + axy * yi;
        y[i] = ayx * xi + ayy * yi;
    }
}

zd dotc(std::size_t n, const zd* x, const zd* y) {
    double re = 0.0, im = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        const double yr = y[i].real(), yi = y[i].imag();
        re += xr * yr + xi * yi;
        im += xr * yi - xi * yr;
    }
    return {re, im};
}

double nrm2sq(std::size_t n, const zd* x) {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        s += x[i].real() * x[i].real() + x[i].imag() * x[i].imag();
    return s;
}

void axpy(std::size_t n, zd alpha, const zd* x, zd* y) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        y[i] += zd(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void scal(std::size_t n, zd alpha, zd* x) {
    const double ar = alpha.real(), ai = alpha.imag();
    for (std::size_t i = 0; i < n; ++i) {
        const double xr = x[i].real(), xi = x[i].imag();
        x[i] = zd(ar * xr - ai * xi, ar * xi + ai * xr);
    }
}

void mix2(std::size_t n, zd* x, zd* y, zd axx, zd axy, zd ayx, zd ayy) {
    for (std::size_t i = 0; i < n; ++i) {
        const zd xi = x[i];
        const zd yi = y[i];
        x[i] = axx * xi + axy * yi;
        y[i] = ayx * xi + ayy * yi;
    }
}

}  // namespace sps::kernels::scalar
