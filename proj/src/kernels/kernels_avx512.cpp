// AVX-512F kernel variant. Same per-element operation chains as the scalar
// reference; wider lanes and deeper row blocking than the AVX2 path.

#include "ogcb/kernels.hpp"
#include "kernels_internal.hpp"

#if defined(__x86_64__) || defined(_M_X64)

#include <immintrin.h>

#include <cmath>
#include <cstring>

namespace ogcb::kernels {
namespace {

template <int MR>
inline void gemm_block_n32(int k, const float* a, int lda, const float* b,
                           int ldb, float* c, int ldc) {
    __m512 acc0[MR], acc1[MR];
    for (int r = 0; r < MR; ++r) {
        acc0[r] = _mm512_setzero_ps();
        acc1[r] = _mm512_setzero_ps();
    }
    for (int kk = 0; kk < k; ++kk) {
        const __m512 b0 = _mm512_loadu_ps(b + static_cast<std::size_t>(kk) * ldb);
        const __m512 b1 =
            _mm512_loadu_ps(b + static_cast<std::size_t>(kk) * ldb + 16);
        for (int r = 0; r < MR; ++r) {
            const __m512 av =
                _mm512_set1_ps(a[static_cast<std::size_t>(r) * lda + kk]);
            acc0[r] = _mm512_fmadd_ps(av, b0, acc0[r]);
            acc1[r] = _mm512_fmadd_ps(av, b1, acc1[r]);
        }
    }
    for (int r = 0; r < MR; ++r) {
        _mm512_storeu_ps(c + static_cast<std::size_t>(r) * ldc, acc0[r]);
        _mm512_storeu_ps(c + static_cast<std::size_t>(r) * ldc + 16, acc1[r]);
    }
}

template <int MR>
inline void gemm_block_n16(int k, const float* a, int lda, const float* b,
                           int ldb, float* c, int ldc) {
    __m512 acc[MR];
    for (int r = 0; r < MR; ++r)
        acc[r] = _mm512_setzero_ps();
    for (int kk = 0; kk < k; ++kk) {
        const __m512 b0 = _mm512_loadu_ps(b + static_cast<std::size_t>(kk) * ldb);
        for (int r = 0; r < MR; ++r) {
            const __m512 av =
                _mm512_set1_ps(a[static_cast<std::size_t>(r) * lda + kk]);
            acc[r] = _mm512_fmadd_ps(av, b0, acc[r]);
        }
    }
    for (int r = 0; r < MR; ++r)
        _mm512_storeu_ps(c + static_cast<std::size_t>(r) * ldc, acc[r]);
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

template <int MR>
inline void gemm_rows_t(int n, int k, const float* a, int lda, const float* b,
                        int ldb, float* c, int ldc) {
    int cc = 0;
    for (; cc + 32 <= n; cc += 32)
        gemm_block_n32<MR>(k, a, lda, b + cc, ldb, c + cc, ldc);
    for (; cc + 16 <= n; cc += 16)
        gemm_block_n16<MR>(k, a, lda, b + cc, ldb, c + cc, ldc);
    for (; cc + 8 <= n; cc += 8)
        gemm_block_n8<MR>(k, a, lda, b + cc, ldb, c + cc, ldc);
    for (; cc < n; ++cc) {
        float acc[MR] = {};
        for (int kk = 0; kk < k; ++kk) {
            const float bv = b[static_cast<std::size_t>(kk) * ldb + cc];
            for (int r = 0; r < MR; ++r)
                acc[r] = std::fmaf(a[static_cast<std::size_t>(r) * lda + kk], bv,
                                   acc[r]);
        }
        for (int r = 0; r < MR; ++r)
            c[static_cast<std::size_t>(r) * ldc + cc] = acc[r];
    }
}

inline void gemm_rows(int mr, int n, int k, const float* a, int lda,
                      const float* b, int ldb, float* c, int ldc) {
    switch (mr) {
    case 8: gemm_rows_t<8>(n, k, a, lda, b, ldb, c, ldc); break;
    case 7: gemm_rows_t<7>(n, k, a, lda, b, ldb, c, ldc); break;
    case 6: gemm_rows_t<6>(n, k, a, lda, b, ldb, c, ldc); break;
    case 5: gemm_rows_t<5>(n, k, a, lda, b, ldb, c, ldc); break;
    case 4: gemm_rows_t<4>(n, k, a, lda, b, ldb, c, ldc); break;
    case 3: gemm_rows_t<3>(n, k, a, lda, b, ldb, c, ldc); break;
    case 2: gemm_rows_t<2>(n, k, a, lda, b, ldb, c, ldc); break;
    default: gemm_rows_t<1>(n, k, a, lda, b, ldb, c, ldc); break;
    }
}

void gemm_avx512(int m, int n, int k, const float* a, const float* b, float* c) {
    int r = 0;
    for (; r + 8 <= m; r += 8)
        gemm_rows(8, n, k, a + static_cast<std::size_t>(r) * k, k, b, n,
                  c + static_cast<std::size_t>(r) * n, n);
    if (m - r > 0)
        gemm_rows(m - r, n, k, a + static_cast<std::size_t>(r) * k, k, b, n,
                  c + static_cast<std::size_t>(r) * n, n);
}

void add_bias_relu_avx512(int rows, int cols, float* x, const float* bias) {
    const __m512 zero = _mm512_setzero_ps();
    for (int r = 0; r < rows; ++r) {
        float* row = x + static_cast<std::size_t>(r) * cols;
        int c = 0;
        for (; c + 16 <= cols; c += 16) {
            const __m512 t =
                _mm512_add_ps(_mm512_loadu_ps(row + c), _mm512_loadu_ps(bias + c));
            const __mmask16 keep = _mm512_cmp_ps_mask(t, zero, _CMP_GT_OQ);
            _mm512_storeu_ps(row + c, _mm512_maskz_mov_ps(keep, t));
        }
        for (; c < cols; ++c) {
            const float t = row[c] + bias[c];
            row[c] = (t > 0.0f) ? t : 0.0f;
        }
    }
}

void add_bias_avx512(int rows, int cols, float* x, const float* bias) {
    for (int r = 0; r < rows; ++r) {
        float* row = x + static_cast<std::size_t>(r) * cols;
        int c = 0;
        for (; c + 16 <= cols; c += 16)
            _mm512_storeu_ps(row + c,
                             _mm512_add_ps(_mm512_loadu_ps(row + c),
                                           _mm512_loadu_ps(bias + c)));
        for (; c < cols; ++c)
            row[c] = row[c] + bias[c];
    }
}

void relu_mask_backward_avx512(int rows, int cols, const float* act,
                               float* grad) {
    const std::size_t total = static_cast<std::size_t>(rows) * cols;
    const __m512 zero = _mm512_setzero_ps();
    std::size_t i = 0;
    for (; i + 16 <= total; i += 16) {
        const __mmask16 keep =
            _mm512_cmp_ps_mask(_mm512_loadu_ps(act + i), zero, _CMP_GT_OQ);
        _mm512_storeu_ps(grad + i,
                         _mm512_maskz_mov_ps(keep, _mm512_loadu_ps(grad + i)));
    }
    for (; i < total; ++i)
        grad[i] = (act[i] > 0.0f) ? grad[i] : 0.0f;
}

void column_sums_avx512(int rows, int cols, const float* x, float* out) {
    std::memset(out, 0, sizeof(float) * static_cast<std::size_t>(cols));
    for (int r = 0; r < rows; ++r) {
        const float* row = x + static_cast<std::size_t>(r) * cols;
        int c = 0;
        for (; c + 16 <= cols; c += 16)
            _mm512_storeu_ps(out + c, _mm512_add_ps(_mm512_loadu_ps(out + c),
                                                    _mm512_loadu_ps(row + c)));
        for (; c < cols; ++c)
            out[c] = out[c] + row[c];
    }
}

void adam_update_avx512(int n, float* p, float* m, float* v, const float* g,
                        float lr, float beta1, float beta2, float eps,
                        float inv_bc1, float inv_bc2) {
    const __m512 vb1 = _mm512_set1_ps(beta1);
    const __m512 vb2 = _mm512_set1_ps(beta2);
    const __m512 vomb1 = _mm512_set1_ps(1.0f - beta1);
    const __m512 vomb2 = _mm512_set1_ps(1.0f - beta2);
    const __m512 vlr = _mm512_set1_ps(lr);
    const __m512 veps = _mm512_set1_ps(eps);
    const __m512 vibc1 = _mm512_set1_ps(inv_bc1);
    const __m512 vibc2 = _mm512_set1_ps(inv_bc2);
    int i = 0;
    for (; i + 16 <= n; i += 16) {
        const __m512 gi = _mm512_loadu_ps(g + i);
        __m512 mi = _mm512_loadu_ps(m + i);
        __m512 vi = _mm512_loadu_ps(v + i);
        mi = _mm512_fmadd_ps(vb1, mi, _mm512_mul_ps(vomb1, gi));
        const __m512 gg = _mm512_mul_ps(gi, gi);
        vi = _mm512_fmadd_ps(vb2, vi, _mm512_mul_ps(vomb2, gg));
        _mm512_storeu_ps(m + i, mi);
        _mm512_storeu_ps(v + i, vi);
        const __m512 mhat = _mm512_mul_ps(mi, vibc1);
        const __m512 vhat = _mm512_mul_ps(vi, vibc2);
        const __m512 denom = _mm512_add_ps(_mm512_sqrt_ps(vhat), veps);
        const __m512 step = _mm512_mul_ps(vlr, _mm512_div_ps(mhat, denom));
        _mm512_storeu_ps(p + i, _mm512_sub_ps(_mm512_loadu_ps(p + i), step));
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

void polyak_mix_avx512(int n, float* target, const float* online, float coef) {
    const __m512 vc = _mm512_set1_ps(coef);
    const __m512 vomc = _mm512_set1_ps(1.0f - coef);
    int i = 0;
    for (; i + 16 <= n; i += 16) {
        const __m512 t = _mm512_loadu_ps(target + i);
        const __m512 o = _mm512_loadu_ps(online + i);
        _mm512_storeu_ps(target + i,
                         _mm512_fmadd_ps(vc, t, _mm512_mul_ps(vomc, o)));
    }
    for (; i < n; ++i)
        target[i] = std::fmaf(coef, target[i], (1.0f - coef) * online[i]);
}

} // namespace

const KernelTable& avx512_table() {
    static const KernelTable table = {
        &gemm_avx512,        &add_bias_relu_avx512, &add_bias_avx512,
        &relu_mask_backward_avx512, &column_sums_avx512, &adam_update_avx512,
        &polyak_mix_avx512,
    };
    return table;
}

} // namespace ogcb::kernels

#endif
