// Rough throughput check for the gemm kernel variants at training-shaped sizes.

#include "ogcb/kernels.hpp"

#include <chrono>
#include <cstdio>
#include <random>
#include <vector>

using namespace ogcb;

static double bench_gemm(int m, int n, int k, int reps) {
    std::mt19937 rng(42);
    std::uniform_real_distribution<float> dist(-1.0f, 1.0f);
    std::vector<float> a(static_cast<size_t>(m) * k), b(static_cast<size_t>(k) * n),
        c(static_cast<size_t>(m) * n);
    for (auto& x : a) x = dist(rng);
    for (auto& x : b) x = dist(rng);

    kernels::gemm(m, n, k, a.data(), b.data(), c.data()); // warm up
    const auto t0 = std::chrono::steady_clock::now();
    for (int i = 0; i < reps; ++i)
        kernels::gemm(m, n, k, a.data(), b.data(), c.data());
    const auto t1 = std::chrono::steady_clock::now();
    const double secs = std::chrono::duration<double>(t1 - t0).count();
    const double flops = 2.0 * m * n * k * reps;
    return flops / secs * 1e-9;
}

int main() {
    const kernels::Variant variants[] = {kernels::Variant::scalar,
                                         kernels::Variant::avx2,
                                         kernels::Variant::avx512};
    struct Shape { int m, n, k; int reps; } shapes[] = {
        {128, 256, 256, 2000}, {128, 256, 6, 20000}, {256, 256, 128, 2000},
        {128, 2, 256, 20000},  {100, 256, 256, 2000},
    };
    for (auto v : variants) {
        if (!kernels::supported(v)) {
            std::printf("%-7s unsupported\n", kernels::variant_name(v));
            continue;
        }
        kernels::set_variant(v);
        for (const auto& s : shapes) {
            const int reps = (v == kernels::Variant::scalar) ? s.reps / 20 : s.reps;
            const double gf = bench_gemm(s.m, s.n, s.k, reps > 0 ? reps : 1);
            std::printf("%-7s gemm %4dx%4dx%4d  %8.2f GFLOP/s\n",
                        kernels::variant_name(v), s.m, s.n, s.k, gf);
        }
    }
    return 0;
}
