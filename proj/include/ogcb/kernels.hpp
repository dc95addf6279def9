// Dense float kernels behind the network stack. Scalar reference plus AVX2 and
// AVX-512 variants selected at runtime; all variants honour the same
// accumulation contract so their results are bit-identical:
//
//   * gemm / column_sums: each output element is one chain over k in ascending
//     order (fused multiply-add for gemm, plain adds for column sums). SIMD
//     variants vectorize across independent output elements, never across k.
//   * elementwise ops use the exact operation sequence written in the scalar
//     reference (IEEE mul/add/fma/sqrt/div/compare only).
//
// Kernel translation units are compiled with -ffp-contract=off so the written
// operation sequence is what runs.

#pragma once

#include <cstddef>

namespace ogcb::kernels {

enum class Variant { scalar, avx2, avx512 };

// Active variant. Resolved once: OGCB_KERNELS=scalar|avx2|avx512 overrides,
// otherwise the best supported instruction set wins.
Variant active();
const char* variant_name(Variant v);
bool supported(Variant v);
// Force a specific variant (throws std::invalid_argument if unsupported).
void set_variant(Variant v);

// Row-major, no aliasing between inputs and outputs.

// c[m x n] = a[m x k] * b[k x n]
void gemm(int m, int n, int k, const float* a, const float* b, float* c);

// out[cols x rows] = a[rows x cols]^T
void transpose(int rows, int cols, const float* a, float* out);

// x[r][c] = (x[r][c] + bias[c] > 0) ? x[r][c] + bias[c] : 0
void add_bias_relu(int rows, int cols, float* x, const float* bias);

// x[r][c] += bias[c]
void add_bias(int rows, int cols, float* x, const float* bias);

// grad[r][c] = act[r][c] > 0 ? grad[r][c] : 0
void relu_mask_backward(int rows, int cols, const float* act, float* grad);

// out[c] = sum over rows of x[r][c], row-ascending adds
void column_sums(int rows, int cols, const float* x, float* out);

// Bias-corrected Adam. inv_bc1 = 1/(1-beta1^t), inv_bc2 = 1/(1-beta2^t).
void adam_update(int n, float* p, float* m, float* v, const float* g, float lr,
                 float beta1, float beta2, float eps, float inv_bc1,
                 float inv_bc2);

// target = coef * target + (1 - coef) * online
void polyak_mix(int n, float* target, const float* online, float coef);

// Double-precision scalar references for the templated network code. These are
// not dispatched; they exist so the same algorithms can run in f64 where tests
// need headroom below f32 rounding.
void gemm(int m, int n, int k, const double* a, const double* b, double* c);
void transpose(int rows, int cols, const double* a, double* out);
void add_bias_relu(int rows, int cols, double* x, const double* bias);
void add_bias(int rows, int cols, double* x, const double* bias);
void relu_mask_backward(int rows, int cols, const double* act, double* grad);
void column_sums(int rows, int cols, const double* x, double* out);

} // namespace ogcb::kernels
