// Scalar reference kernels. Every SIMD variant must reproduce these outputs
// bit for bit; keep the operation sequences exactly as written.

#include "ogcb/kernels.hpp"
#include "kernels_internal.hpp"

#include <cmath>
#include <cstring>

namespace ogcb::kernels {
namespace {

template <typename T>
void gemm_ref(int m, int n, int k, const T* a, const T* b, T* c) {
    // Row block accumulated in the C row buffer; per output element this is a
    // fused multiply-add chain over ascending k.
    for (int r = 0; r < m; ++r) {
        T* crow = c + static_cast<std::size_t>(r) * n;
        std::memset(crow, 0, sizeof(T) * static_cast<std::size_t>(n));
        const T* arow = a + static_cast<std::size_t>(r) * k;
        for (int kk = 0; kk < k; ++kk) {
            const T av = arow[kk];
            const T* brow = b + static_cast<std::size_t>(kk) * n;
            for (int cc = 0; cc < n; ++cc)
                crow[cc] = std::fma(av, brow[cc], crow[cc]);
        }
    }
}

template <typename T>
void transpose_ref(int rows, int cols, const T* a, T* out) {
    constexpr int kBlock = 32;
    for (int r0 = 0; r0 < rows; r0 += kBlock)
        for (int c0 = 0; c0 < cols; c0 += kBlock) {
            const int r1 = (r0 + kBlock < rows) ? r0 + kBlock : rows;
            const int c1 = (c0 + kBlock < cols) ? c0 + kBlock : cols;
            for (int r = r0; r < r1; ++r)
                for (int c = c0; c < c1; ++c)
                    out[static_cast<std::size_t>(c) * rows + r] =
                        a[static_cast<std::size_t>(r) * cols + c];
        }
}

template <typename T>
void add_bias_relu_ref(int rows, int cols, T* x, const T* bias) {
    for (int r = 0; r < rows; ++r) {
        T* row = x + static_cast<std::size_t>(r) * cols;
        for (int c = 0; c < cols; ++c) {
            const T t = row[c] + bias[c];
            row[c] = (t > T(0)) ? t : T(0);
        }
    }
}

template <typename T>
void add_bias_ref(int rows, int cols, T* x, const T* bias) {
    for (int r = 0; r < rows; ++r) {
        T* row = x + static_cast<std::size_t>(r) * cols;
        for (int c = 0; c < cols; ++c)
            row[c] = row[c] + bias[c];
    }
}

template <typename T>
void relu_mask_backward_ref(int rows, int cols, const T* act, T* grad) {
    const std::size_t total = static_cast<std::size_t>(rows) * cols;
    for (std::size_t i = 0; i < total; ++i)
        grad[i] = (act[i] > T(0)) ? grad[i] : T(0);
}

template <typename T>
void column_sums_ref(int rows, int cols, const T* x, T* out) {
    for (int c = 0; c < cols; ++c)
        out[c] = T(0);
    for (int r = 0; r < rows; ++r) {
        const T* row = x + static_cast<std::size_t>(r) * cols;
        for (int c = 0; c < cols; ++c)
            out[c] = out[c] + row[c];
    }
}

void adam_update_ref(int n, float* p, float* m, float* v, const float* g,
                     float lr, float beta1, float beta2, float eps,
                     float inv_bc1, float inv_bc2) {
    const float one_m_b1 = 1.0f - beta1;
    const float one_m_b2 = 1.0f - beta2;
    for (int i = 0; i < n; ++i) {
        const float gi = g[i];
        m[i] = std::fmaf(beta1, m[i], one_m_b1 * gi);
        const float gg = gi * gi;
        v[i] = std::fmaf(beta2, v[i], one_m_b2 * gg);
        const float mhat = m[i] * inv_bc1;
        const float vhat = v[i] * inv_bc2;
        p[i] = p[i] - lr * (mhat / (std::sqrt(vhat) + eps));
    }
}

void polyak_mix_ref(int n, float* target, const float* online, float coef) {
    const float one_m_c = 1.0f - coef;
    for (int i = 0; i < n; ++i)
        target[i] = std::fmaf(coef, target[i], one_m_c * online[i]);
}

} // namespace

const KernelTable& scalar_table() {
    static const KernelTable table = {
        &gemm_ref<float>,          &add_bias_relu_ref<float>,
        &add_bias_ref<float>,      &relu_mask_backward_ref<float>,
        &column_sums_ref<float>,   &adam_update_ref,
        &polyak_mix_ref,
    };
    return table;
}

void transpose(int rows, int cols, const float* a, float* out) {
    transpose_ref(rows, cols, a, out);
}

void gemm(int m, int n, int k, const double* a, const double* b, double* c) {
    gemm_ref(m, n, k, a, b, c);
}
void transpose(int rows, int cols, const double* a, double* out) {
    transpose_ref(rows, cols, a, out);
}
void add_bias_relu(int rows, int cols, double* x, const double* bias) {
    add_bias_relu_ref(rows, cols, x, bias);
}
void add_bias(int rows, int cols, double* x, const double* bias) {
    add_bias_ref(rows, cols, x, bias);
}
void relu_mask_backward(int rows, int cols, const double* act, double* grad) {
    relu_mask_backward_ref(rows, cols, act, grad);
}
void column_sums(int rows, int cols, const double* x, double* out) {
    column_sums_ref(rows, cols, x, out);
}

} // namespace ogcb::kernels
