#include "ogcb/kernels.hpp"
#include "kernels_internal.hpp"

#include <atomic>
#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace ogcb::kernels {
namespace {

bool cpu_has(Variant v) {
    switch (v) {
    case Variant::scalar:
        return true;
#ifdef OGCB_HAVE_X86_KERNELS
    case Variant::avx2:
        return __builtin_cpu_supports("avx2") && __builtin_cpu_supports("fma");
    case Variant::avx512:
        return __builtin_cpu_supports("avx512f");
#endif
    default:
        return false;
    }
}

const KernelTable* table_for(Variant v) {
    switch (v) {
    case Variant::scalar:
        return &scalar_table();
#ifdef OGCB_HAVE_X86_KERNELS
    case Variant::avx2:
        return &avx2_table();
    case Variant::avx512:
        return &avx512_table();
#endif
    default:
        return nullptr;
    }
}

Variant pick_default() {
    if (const char* env = std::getenv("OGCB_KERNELS")) {
        const std::string s(env);
        Variant v;
        if (s == "scalar")
            v = Variant::scalar;
        else if (s == "avx2")
            v = Variant::avx2;
        else if (s == "avx512")
            v = Variant::avx512;
        else
            throw std::invalid_argument("OGCB_KERNELS: unknown variant '" + s + "'");
        if (!cpu_has(v))
            throw std::invalid_argument("OGCB_KERNELS: variant '" + s +
                                        "' not supported on this host");
        return v;
    }
    if (cpu_has(Variant::avx512))
        return Variant::avx512;
    if (cpu_has(Variant::avx2))
        return Variant::avx2;
    return Variant::scalar;
}

struct Dispatch {
    Variant variant;
    const KernelTable* table;
    Dispatch() : variant(pick_default()), table(table_for(variant)) {}
};

Dispatch& dispatch() {
    static Dispatch d;
    return d;
}

} // namespace

Variant active() { return dispatch().variant; }

const char* variant_name(Variant v) {
    switch (v) {
    case Variant::scalar:
        return "scalar";
    case Variant::avx2:
        return "avx2";
    case Variant::avx512:
        return "avx512";
    }
    return "?";
}

bool supported(Variant v) { return cpu_has(v) && table_for(v) != nullptr; }

void set_variant(Variant v) {
    if (!supported(v))
        throw std::invalid_argument(std::string("kernel variant not supported: ") +
                                    variant_name(v));
    dispatch().variant = v;
    dispatch().table = table_for(v);
}

void gemm(int m, int n, int k, const float* a, const float* b, float* c) {
    dispatch().table->gemm(m, n, k, a, b, c);
}
void add_bias_relu(int rows, int cols, float* x, const float* bias) {
    dispatch().table->add_bias_relu(rows, cols, x, bias);
}
void add_bias(int rows, int cols, float* x, const float* bias) {
    dispatch().table->add_bias(rows, cols, x, bias);
}
void relu_mask_backward(int rows, int cols, const float* act, float* grad) {
    dispatch().table->relu_mask_backward(rows, cols, act, grad);
}
void column_sums(int rows, int cols, const float* x, float* out) {
    dispatch().table->column_sums(rows, cols, x, out);
}
void adam_update(int n, float* p, float* m, float* v, const float* g, float lr,
                 float beta1, float beta2, float eps, float inv_bc1,
                 float inv_bc2) {
    dispatch().table->adam_update(n, p, m, v, g, lr, beta1, beta2, eps, inv_bc1,
                                  inv_bc2);
}
void polyak_mix(int n, float* target, const float* online, float coef) {
    dispatch().table->polyak_mix(n, target, online, coef);
}

} // namespace ogcb::kernels
