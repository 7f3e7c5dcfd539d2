#pragma once

#include <cstddef>

// Data-parallel inner loops behind the model and losses. Every primitive has
// a scalar reference implementation and an AVX2+FMA variant; the active
// backend is resolved once at runtime from CPUID and can be pinned for
// equivalence testing. Within a backend, accumulation order is fixed, so
// results are bit-stable run to run.
namespace bavt::kern {

enum class Backend {
    Auto,    // pick the widest supported variant
    Scalar,  // reference loops
    Avx2,    // AVX2 + FMA
};

void set_backend(Backend b);     // throws std::invalid_argument if unsupported
Backend active_backend();        // resolved (never Auto)
const char* backend_name();      // "scalar" | "avx2"
bool cpu_has_avx2();

// y[i] += a * x[i]
void axpy(double a, const double* x, double* y, size_t n);

// x[i] *= a
void scale(double a, double* x, size_t n);

double dot(const double* a, const double* b, size_t n);
double sum(const double* x, size_t n);

// Row-major matrix products. C is m x n.
//   matmul:    C (+)= A[m x k] * B[k x n]
//   matmul_nt: C (+)= A[m x k] * B'[n x k]^T   (B supplied transposed)
//   matmul_tn: C (+)= A'[k x m]^T * B[k x n]   (A supplied transposed)
// accumulate=false overwrites C, true adds into it. Per-element accumulation
// order over k is identical across backends for matmul; nt/tn variants use
// lane-split partial sums in the AVX2 path.
void matmul(const double* a, const double* b, double* c, int m, int k, int n,
            bool accumulate = false);
void matmul_nt(const double* a, const double* bt, double* c, int m, int k, int n,
               bool accumulate = false);
void matmul_tn(const double* at, const double* b, double* c, int m, int k, int n,
               bool accumulate = false);

}  // namespace bavt::kern
