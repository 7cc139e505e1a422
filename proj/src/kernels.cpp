#include "sps/kernels.hpp"

namespace sps::kernels {

namespace {

struct DispatchTable {
    double (*dot_d)(std::size_t, const double*, const double*);
    double (*nrm2sq_d)(std::size_t, const double*);
    void (*axpy_d)(std::size_t, double, const double*, double*);
    void (*scal_d)(std::size_t, double, double*);
    void (*mix2_d)(std::size_t, double*, double*, double, double, double, double);
    zd (*dotc_z)(std::size_t, const zd*, const zd*);
    double (*nrm2sq_z)(std::size_t, const zd*);
    void (*axpy_z)(std::size_t, zd, const zd*, zd*);
    void (*scal_z)(std::size_t, zd, zd*);
    void (*mix2_z)(std::size_t, zd*, zd*, zd, zd, zd, zd);
};

constexpr DispatchTable kScalarTable = {
    scalar::dot,  scalar::nrm2sq, scalar::axpy, scalar::scal, scalar::mix2,
    scalar::dotc, scalar::nrm2sq, scalar::axpy, scalar::scal, scalar::mix2,
};

#if defined(__x86_64__) || defined(_M_X64)
constexpr DispatchTable kAvx2Table = {
    avx2::dot,  avx2::nrm2sq, avx2::axpy, avx2::scal, avx2::mix2,
    avx2::dotc, avx2::nrm2sq, avx2::axpy, avx2::scal, avx2::mix2,
};
#endif

bool cpu_has_avx2() {
#if defined(__x86_64__) || defined(_M_X64)
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
#else
    return false;
#endif
}

Backend g_backend = cpu_has_avx2() ? Backend::avx2 : Backend::scalar;

const DispatchTable* table_for(Backend b) {
#if defined(__x86_64__) || defined(_M_X64)
    if (b == Backend::avx2) return &kAvx2Table;
#endif
    (void)b;
    return &kScalarTable;
}

const DispatchTable* g_table = table_for(g_backend);

}  // namespace

Backend active_backend() { return g_backend; }

bool set_backend(Backend b) {
    if (b == Backend::avx2 && !cpu_has_avx2()) return false;
    g_backend = b;
    g_table = table_for(b);
    return true;
}

const char* backend_name(Backend b) {
    switch (b) {
        case Backend::scalar: return "scalar";
        case Backend::avx2: return "avx2";
    }
    return "unknown";
}

double dot(std::size_t n, const double* x, const double* y) { return g_table->dot_d(n, x, y); }
double nrm2sq(std::size_t n, const double* x) { return g_table->nrm2sq_d(n, x); }
void axpy(std::size_t n, double alpha, const double* x, double* y) { g_table->axpy_d(n, alpha, x, y); }
void scal(std::size_t n, double alpha, double* x) { g_table->scal_d(n, alpha, x); }
void mix2(std::size_t n, double* x, double* y, double axx, double axy, double ayx, double ayy) {
    g_table->mix2_d(n, x, y, axx, axy, ayx, ayy);
}

zd dotc(std::size_t n, const zd* x, const zd* y) { return g_table->dotc_z(n, x, y); }
double nrm2sq(std::size_t n, const zd* x) { return g_table->nrm2sq_z(n, x); }
void axpy(std::size_t n, zd alpha, const zd* x, zd* y) { g_table->axpy_z(n, alpha, x, y); }
void scal(std::size_t n, zd alpha, zd* x) { g_table->scal_z(n, alpha, x); }
void mix2(std::size_t n, zd* x, zd* y, zd axx, zd axy, zd ayx, zd ayy) {
    g_table->mix2_z(n, x, y, axx, axy, ayx, ayy);
}

}  // namespace sps::kernels
