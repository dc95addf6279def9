// AVX2+FMA kernel variant. Vector lanes map to independent output elements;
// the per-element fma chain over k matches the scalar reference exactly.

#include "ogcb/kernels.hpp"
#include "kernels_internal.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace ogcb::kernels {
namespace {

template <int MR>
inline void gemm_block_n16(int k, const float* a, int lda, const float* b,
                           int ldb, float* c, int ldc) {
    __m256 acc0[MR], acc1[MR];
    for (int r = 0; r < MR; ++r) {
        acc0[r] = _mm256_setzero_ps();
        acc1[r] = _mm256_setzero_ps();
    }
    for (int kk = 0; kk < k; ++kk) {
        const __m256 b0 = _mm256_loadu_ps(b + static_cast<std::size_t>(kk) * ldb);
        const __m256 b1 =
            _mm256_loadu_ps(b + static_cast<std::size_t>(kk) * ldb + 8);
        for (int r = 0; r < MR; ++r) {
            const __m256 av =
                _mm256_broadcast_ss(a + static_cast<std::size_t>(r) * lda + kk);
            acc0[r] = _mm256_fmadd_ps(av, b0, acc0[r]);
            acc1[r] = _mm256_fmadd_ps(av, b1, acc1[r]);
        }
    }
    for (int r = 0; r < MR; ++r) {
        _mm256_storeu_ps(c + static_cast<std::size_t>(r) * ldc, acc0[r]);
        _mm256_storeu_ps(c + static_cast<std::size_t>(r) * ldc + 8, acc1[r]);
    }
}

template <int MR>
inline void gemm_block_n8(int k, const float* a, int lda, const float* b,
                          int ldb, float* c, int ldc) {
    __m256 acc[MR];
    for (int r = 0; r < MR; ++r)
        acc[r] = _mm256_setzero_ps();
    for (int kk = 0; kk < k; ++kk) {
        const __m256 b0 = _mm256_loadu_ps(b + static_cast<std::size_t>(kk) * ldb);
        for (int r = 0; r < MR; ++r) {
            const __m256 av =
                _mm256_broadcast_ss(a + static_cast<std::size_t>(r) * lda + kk);
            acc[r] = _mm256_fmadd_ps(av, b0, acc[r]);
        }
    }
    for (int r = 0; r < MR; ++r)
        _mm256_storeu_ps(c + static_cast<std::size_t>(r) * ldc, acc[r]);
}

inline void gemm_rows(int mr, int n, int k, const float* a, int lda,
                      const float* b, int ldb, float* c, int ldc) {
    int cc = 0;
    switch (mr) {
    case 6:
        for (; cc + 16 <= n; cc += 16)
            gemm_block_n16<6>(k, a, lda, b + cc, ldb, c + cc, ldc);
        for (; cc + 8 <= n; cc += 8)
            gemm_block_n8<6>(k, a, lda, b + cc, ldb, c + cc, ldc);
        break;
    case 5:
        for (; cc + 16 <= n; cc += 16)
            gemm_block_n16<5>(k, a, lda, b + cc, ldb, c + cc, ldc);
        for (; cc + 8 <= n; cc += 8)
            gemm_block_n8<5>(k, a, lda, b + cc, ldb, c + cc, ldc);
        break;
    case 4:
        for (; cc + 16 <= n; cc += 16)
            gemm_block_n16<4>(k, a, lda, b + cc, ldb, c + cc, ldc);
        for (; cc + 8 <= n; cc += 8)
            gemm_block_n8<4>(k, a, lda, b + cc, ldb, c + cc, ldc);
        break;
    case 3:
        for (; cc + 16 <= n; cc += 16)
            gemm_block_n16<3>(k, a, lda, b + cc, ldb, c + cc, ldc);
        for (; cc + 8 <= n; cc += 8)
            gemm_block_n8<3>(k, a, lda, b + cc, ldb, c + cc, ldc);
        break;
    case 2:
        for (; cc + 16 <= n; cc += 16)
            gemm_block_n16<2>(k, a, lda, b + cc, ldb, c + cc, ldc);
        for (; cc + 8 <= n; cc += 8)
            gemm_block_n8<2>(k, a, lda, b + cc, ldb, c + cc, ldc);
        break;
    default:
        for (; cc + 16 <= n; cc += 16)
            gemm_block_n16<1>(k, a, lda, b + cc, ldb, c + cc, ldc);
        for (; cc + 8 <= n; cc += 8)
            gemm_block_n8<1>(k, a, lda, b + cc, ldb, c + cc, ldc);
        break;
    }
    // Ragged column tail: same per-element fma chain; rows interleaved so the
    // independent chains overlap.
    for (; cc < n; ++cc) {
        float acc[6] = {0, 0, 0, 0, 0, 0};
        for (int kk = 0; kk < k; ++kk) {
            const float bv = b[static_cast<std::size_t>(kk) * ldb + cc];
            for (int r = 0; r < mr; ++r)
                acc[r] = std::fmaf(a[static_cast<std::size_t>(r) * lda + kk], bv,
                                   acc[r]);
        }
        for (int r = 0; r < mr; ++r)
            c[static_cast<std::size_t>(r) * ldc + cc] = acc[r];
    }
}

void gemm_avx2(int m, int n, int k, const float* a, const float* b, float* c) {
    int r = 0;
    for (; r + 6 <= m; r += 6)
        gemm_rows(6, n, k, a + static_cast<std::size_t>(r) * k, k, b, n,
                  c + static_cast<std::size_t>(r) * n, n);
    if (m - r > 0)
        gemm_rows(m - r, n, k, a + static_cast<std::size_t>(r) * k, k, b, n,
                  c + static_cast<std::size_t>(r) * n, n);
}

void add_bias_relu_avx2(int rows, int cols, float* x, const float* bias) {
    const __m256 zero = _mm256_setzero_ps();
    for (int r = 0; r < rows; ++r) {
        float* row = x + static_cast<std::size_t>(r) * cols;
        int c = 0;
        for (; c + 8 <= cols; c += 8) {
            const __m256 t =
                _mm256_add_ps(_mm256_loadu_ps(row + c), _mm256_loadu_ps(bias + c));
            const __m256 keep = _mm256_cmp_ps(t, zero, _CMP_GT_OQ);
            _mm256_storeu_ps(row + c, _mm256_and_ps(t, keep));
        }
        for (; c < cols; ++c) {
            const float t = row[c] + bias[c];
            row[c] = (t > 0.0f) ? t : 0.0f;
        }
    }
}

void add_bias_avx2(int rows, int cols, float* x, const float* bias) {
    for (int r = 0; r < rows; ++r) {
        float* row = x + static_cast<std::size_t>(r) * cols;
        int c = 0;
        for (; c + 8 <= cols; c += 8)
            _mm256_storeu_ps(
                row + c,
                _mm256_add_ps(_mm256_loadu_ps(row + c), _mm256_loadu_ps(bias + c)));
        for (; c < cols; ++c)
            row[c] = row[c] + bias[c];
    }
}

void relu_mask_backward_avx2(int rows, int cols, const float* act, float* grad) {
    const std::size_t total = static_cast<std::size_t>(rows) * cols;
    const __m256 zero = _mm256_setzero_ps();
    std::size_t i = 0;
    for (; i + 8 <= total; i += 8) {
        const __m256 keep = _mm256_cmp_ps(_mm256_loadu_ps(act + i), zero, _CMP_GT_OQ);
        _mm256_storeu_ps(grad + i, _mm256_and_ps(_mm256_loadu_ps(grad + i), keep));
    }
    for (; i < total; ++i)
        grad[i] = (act[i] > 0.0f) ? grad[i] : 0.0f;
}

void column_sums_avx2(int rows, int cols, const float* x, float* out) {
    std::memset(out, 0, sizeof(float) * static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        const float* row = x + static_cast<std::size_t>(r) * cols;
        int c = 0;
        for (; c + 8 <= cols; c += 8)
            _mm256_storeu_ps(
                out + c,
                _mm256_add_ps(_mm256_loadu_ps(out + c), _mm256_loadu_ps(row + c)));
        for (; c < cols; ++c)
            out[c] = out[c] + row[c];
    }
}

void adam_update_avx2(int n, float* p, float* m, float* v, const float* g,
                      float lr, float beta1, float beta2, float eps,
                      float inv_bc1, float inv_bc2) {
    const __m256 vb1 = _mm256_set1_ps(beta1);
    const __m256 vb2 = _mm256_set1_ps(beta2);
    const __m256 vomb1 = _mm256_set1_ps(1.0f - beta1);
    const __m256 vomb2 = _mm256_set1_ps(1.0f - beta2);
    const __m256 vlr = _mm256_set1_ps(lr);
    const __m256 veps = _mm256_set1_ps(eps);
    const __m256 vibc1 = _mm256_set1_ps(inv_bc1);
    const __m256 vibc2 = _mm256_set1_ps(inv_bc2);
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 gi = _mm256_loadu_ps(g + i);
        __m256 mi = _mm256_loadu_ps(m + i);
        __m256 vi = _mm256_loadu_ps(v + i);
        mi = _mm256_fmadd_ps(vb1, mi, _mm256_mul_ps(vomb1, gi));
        const __m256 gg = _mm256_mul_ps(gi, gi);
        vi = _mm256_fmadd_ps(vb2, vi, _mm256_mul_ps(vomb2, gg));
        _mm256_storeu_ps(m + i, mi);
        _mm256_storeu_ps(v + i, vi);
        const __m256 mhat = _mm256_mul_ps(mi, vibc1);
        const __m256 vhat = _mm256_mul_ps(vi, vibc2);
        const __m256 denom = _mm256_add_ps(_mm256_sqrt_ps(vhat), veps);
        const __m256 step = _mm256_mul_ps(vlr, _mm256_div_ps(mhat, denom));
        _mm256_storeu_ps(p + i, _mm256_sub_ps(_mm256_loadu_ps(p + i), step));
    }
    for (; i < n; ++i) {
        const float gi = g[i];
        m[i] = std::fmaf(beta1, m[i], (1.0f - beta1) * gi);
        const float gg = gi * gi;
        v[i] = std::fmaf(beta2, v[i], (1.0f - beta2) * gg);
        const float mhat = m[i] * inv_bc1;
        const float vhat = v[i] * inv_bc2;
        p[i] = p[i] - lr * (mhat / (std::sqrt(vhat) + eps));
    }
}

void polyak_mix_avx2(int n, float* target, const float* online, float coef) {
    const __m256 vc = _mm256_set1_ps(coef);
    const __m256 vomc = _mm256_set1_ps(1.0f - coef);
    int i = 0;
    for (; i + 8 <= n; i += 8) {
        const __m256 t = _mm256_loadu_ps(target + i);
        const __m256 o = _mm256_loadu_ps(online + i);
        _mm256_storeu_ps(target + i,
                         _mm256_fmadd_ps(vc, t, _mm256_mul_ps(vomc, o)));
    }
    for (; i < n; ++i)
        target[i] = std::fmaf(coef, target[i], (1.0f - coef) * online[i]);
}

} // namespace

const KernelTable& avx2_table() {
    static const KernelTable table = {
        &gemm_avx2,        &add_bias_relu_avx2, &add_bias_avx2,
        &relu_mask_backward_avx2, &column_sums_avx2, &adam_update_avx2,
        &polyak_mix_avx2,
    };
    return table;
}

} // namespace ogcb::kernels

#endif
