#include "bavt/kernels.hpp"

#include <cstring>
#include <stdexcept>

#include "kernels_internal.hpp"

namespace bavt::kern {

namespace detail {

void axpy_scalar(double a, const double* x, double* y, size_t n) {
    for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

void scale_scalar(double a, double* x, size_t n) {
    for (size_t i = 0; i < n; ++i) x[i] *= a;
}

double dot_scalar(const double* a, const double* b, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += a[i] * b[i];
    return s;
}

double sum_scalar(const double* x, size_t n) {
    double s = 0.0;
    for (size_t i = 0; i < n; ++i) s += x[i];
    return s;
}

// C (+)= A * B via row-wise axpy: for each output row, walk k and stream
// B's rows. Element-wise accumulation order over k matches the AVX2 path.
void matmul_scalar(const double* a, const double* b, double* c, int m, int k,
                   int n, bool accumulate) {
    for (int i = 0; i < m; ++i) {
        double* crow = c + static_cast<size_t>(i) * n;
        if (!accumulate) std::memset(crow, 0, sizeof(double) * n);
        const double* arow = a + static_cast<size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double av = arow[p];
            const double* brow = b + static_cast<size_t>(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

void matmul_nt_scalar(const double* a, const double* bt, double* c, int m,
                      int k, int n, bool accumulate) {
    for (int i = 0; i < m; ++i) {
        const double* arow = a + static_cast<size_t>(i) * k;
        double* crow = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const double* brow = bt + static_cast<size_t>(j) * k;
            double s = 0.0;
            for (int p = 0; p < k; ++p) s += arow[p] * brow[p];
            crow[j] = accumulate ? crow[j] + s : s;
        }
    }
}

void matmul_tn_scalar(const double* at, const double* b, double* c, int m,
                      int k, int n, bool accumulate) {
    for (int i = 0; i < m; ++i) {
        double* crow = c + static_cast<size_t>(i) * n;
        if (!accumulate) std::memset(crow, 0, sizeof(double) * n);
        for (int p = 0; p < k; ++p) {
            const double av = at[static_cast<size_t>(p) * m + i];
            const double* brow = b + static_cast<size_t>(p) * n;
            for (int j = 0; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

}  // namespace detail

#if defined(__GNUC__) && (defined(__x86_64__) || defined(__i386__))
bool cpu_has_avx2() {
    return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
}
#else
bool cpu_has_avx2() { return false; }
#endif

namespace {

Backend g_backend = Backend::Auto;

Backend resolve(Backend b) {
    if (b == Backend::Auto) return cpu_has_avx2() ? Backend::Avx2 : Backend::Scalar;
    return b;
}

inline bool use_avx2() { return resolve(g_backend) == Backend::Avx2; }

}  // namespace

void set_backend(Backend b) {
    if (b == Backend::Avx2 && !cpu_has_avx2())
        throw std::invalid_argument("kern::set_backend: avx2 not supported on this cpu");
    g_backend = b;
}

Backend active_backend() { return resolve(g_backend); }

const char* backend_name() {
    return active_backend() == Backend::Avx2 ? "avx2" : "scalar";
}

#if defined(__x86_64__) || defined(__i386__)
#define BAVT_DISPATCH(fn, ...)                      \
    do {                                            \
        if (use_avx2())                             \
            return detail::fn##_avx2(__VA_ARGS__);  \
        return detail::fn##_scalar(__VA_ARGS__);    \
    } while (0)
#else
#define BAVT_DISPATCH(fn, ...) return detail::fn##_scalar(__VA_ARGS__)
#endif

void axpy(double a, const double* x, double* y, size_t n) {
    BAVT_DISPATCH(axpy, a, x, y, n);
}

void scale(double a, double* x, size_t n) { BAVT_DISPATCH(scale, a, x, n); }

double dot(const double* a, const double* b, size_t n) {
    BAVT_DISPATCH(dot, a, b, n);
}

double sum(const double* x, size_t n) { BAVT_DISPATCH(sum, x, n); }

void matmul(const double* a, const double* b, double* c, int m, int k, int n,
            bool accumulate) {
    BAVT_DISPATCH(matmul, a, b, c, m, k, n, accumulate);
}

void matmul_nt(const double* a, const double* bt, double* c, int m, int k,
               int n, bool accumulate) {
    BAVT_DISPATCH(matmul_nt, a, bt, c, m, k, n, accumulate);
}

void matmul_tn(const double* at, const double* b, double* c, int m, int k,
               int n, bool accumulate) {
    BAVT_DISPATCH(matmul_tn, at, b, c, m, k, n, accumulate);
}

#undef BAVT_DISPATCH

}  // namespace bavt::kern
