#pragma once

namespace ogcb::kernels {

struct KernelTable {
    void (*gemm)(int, int, int, const float*, const float*, float*);
    void (*add_bias_relu)(int, int, float*, const float*);
    void (*add_bias)(int, int, float*, const float*);
    void (*relu_mask_backward)(int, int, const float*, float*);
    void (*column_sums)(int, int, const float*, float*);
    void (*adam_update)(int, float*, float*, float*, const float*, float, float,
                        float, float, float, float);
    void (*polyak_mix)(int, float*, const float*, float);
};

const KernelTable& scalar_table();

#if defined(__x86_64__) || defined(_M_X64)
#define OGCB_HAVE_X86_KERNELS 1
const KernelTable& avx2_table();
const KernelTable& avx512_table();
#endif

} // namespace ogcb::kernels
