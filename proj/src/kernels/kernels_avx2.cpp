// AVX2+FMA variants, compiled via per-function target attributes so the rest
// of the build stays at the baseline ISA. Only called when CPUID reports
// avx2+fma.

#include "kernels_internal.hpp"

#if defined(__x86_64__) || defined(__i386__)

#include <immintrin.h>

#include <cstring>

#define BAVT_AVX2 __attribute__((target("avx2,fma")))

namespace bavt::kern::detail {

BAVT_AVX2 void axpy_avx2(double a, const double* x, double* y, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4) {
        __m256d vy = _mm256_loadu_pd(y + i);
        vy = _mm256_fmadd_pd(va, _mm256_loadu_pd(x + i), vy);
        _mm256_storeu_pd(y + i, vy);
    }
    for (; i < n; ++i) y[i] += a * x[i];
}

BAVT_AVX2 void scale_avx2(double a, double* x, size_t n) {
    const __m256d va = _mm256_set1_pd(a);
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        _mm256_storeu_pd(x + i, _mm256_mul_pd(va, _mm256_loadu_pd(x + i)));
    for (; i < n; ++i) x[i] *= a;
}

// 4 lane accumulators, reduced low-to-high at the end; tail added last.
BAVT_AVX2 double dot_avx2(const double* a, const double* b, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4)
        acc = _mm256_fmadd_pd(_mm256_loadu_pd(a + i), _mm256_loadu_pd(b + i), acc);
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) s += a[i] * b[i];
    return s;
}

BAVT_AVX2 double sum_avx2(const double* x, size_t n) {
    __m256d acc = _mm256_setzero_pd();
    size_t i = 0;
    for (; i + 4 <= n; i += 4) acc = _mm256_add_pd(acc, _mm256_loadu_pd(x + i));
    alignas(32) double lanes[4];
    _mm256_store_pd(lanes, acc);
    double s = ((lanes[0] + lanes[1]) + lanes[2]) + lanes[3];
    for (; i < n; ++i) s += x[i];
    return s;
}

BAVT_AVX2 void matmul_avx2(const double* a, const double* b, double* c, int m,
                           int k, int n, bool accumulate) {
    for (int i = 0; i < m; ++i) {
        double* crow = c + static_cast<size_t>(i) * n;
        if (!accumulate) std::memset(crow, 0, sizeof(double) * n);
        const double* arow = a + static_cast<size_t>(i) * k;
        for (int p = 0; p < k; ++p) {
            const double* brow = b + static_cast<size_t>(p) * n;
            const __m256d av = _mm256_set1_pd(arow[p]);
            int j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d vc = _mm256_loadu_pd(crow + j);
                vc = _mm256_fmadd_pd(av, _mm256_loadu_pd(brow + j), vc);
                _mm256_storeu_pd(crow + j, vc);
            }
            for (; j < n; ++j) crow[j] += arow[p] * brow[j];
        }
    }
}

BAVT_AVX2 void matmul_nt_avx2(const double* a, const double* bt, double* c,
                              int m, int k, int n, bool accumulate) {
    for (int i = 0; i < m; ++i) {
        const double* arow = a + static_cast<size_t>(i) * k;
        double* crow = c + static_cast<size_t>(i) * n;
        for (int j = 0; j < n; ++j) {
            const double s = dot_avx2(arow, bt + static_cast<size_t>(j) * k,
                                      static_cast<size_t>(k));
            crow[j] = accumulate ? crow[j] + s : s;
        }
    }
}

BAVT_AVX2 void matmul_tn_avx2(const double* at, const double* b, double* c,
                              int m, int k, int n, bool accumulate) {
    for (int i = 0; i < m; ++i) {
        double* crow = c + static_cast<size_t>(i) * n;
        if (!accumulate) std::memset(crow, 0, sizeof(double) * n);
        for (int p = 0; p < k; ++p) {
            const double av = at[static_cast<size_t>(p) * m + i];
            const double* brow = b + static_cast<size_t>(p) * n;
            const __m256d vav = _mm256_set1_pd(av);
            int j = 0;
            for (; j + 4 <= n; j += 4) {
                __m256d vc = _mm256_loadu_pd(crow + j);
                vc = _mm256_fmadd_pd(vav, _mm256_loadu_pd(brow + j), vc);
                _mm256_storeu_pd(crow + j, vc);
            }
            for (; j < n; ++j) crow[j] += av * brow[j];
        }
    }
}

}  // namespace bavt::kern::detail

#endif  // x86
