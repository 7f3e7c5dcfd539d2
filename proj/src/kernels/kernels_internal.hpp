#pragma once

#include <cstddef>

// Per-backend entry points; dispatch lives in kernels.cpp.
namespace bavt::kern::detail {

void axpy_scalar(double a, const double* x, double* y, size_t n);
void scale_scalar(double a, double* x, size_t n);
double dot_scalar(const double* a, const double* b, size_t n);
double sum_scalar(const double* x, size_t n);
void matmul_scalar(const double* a, const double* b, double* c, int m, int k,
                   int n, bool accumulate);
void matmul_nt_scalar(const double* a, const double* bt, double* c, int m,
                      int k, int n, bool accumulate);
void matmul_tn_scalar(const double* at, const double* b, double* c, int m,
                      int k, int n, bool accumulate);

#if defined(__x86_64__) || defined(__i386__)
void axpy_avx2(double a, const double* x, double* y, size_t n);
void scale_avx2(double a, double* x, size_t n);
double dot_avx2(const double* a, const double* b, size_t n);
double sum_avx2(const double* x, size_t n);
void matmul_avx2(const double* a, const double* b, double* c, int m, int k,
                 int n, bool accumulate);
void matmul_nt_avx2(const double* a, const double* bt, double* c, int m, int k,
                    int n, bool accumulate);
void matmul_tn_avx2(const double* at, const double* b, double* c, int m, int k,
                    int n, bool accumulate);
#endif

}  // namespace bavt::kern::detail
