// Dense ReLU network stack built on the kernels module: forward/backward for
// fixed MLP architectures, Adam, Polyak target mixing, input normalization and
// checkpoint IO. The forward/backward core is templated on the scalar type;
// float runs through the dispatched kernels, double through the scalar
// references (used where tests need precision headroom below f32 rounding).

#pragma once

#include "ogcb/blob_io.hpp"
#include "ogcb/kernels.hpp"
#include "ogcb/rng.hpp"

#include <nlohmann/json_fwd.hpp>

#include <cmath>
#include <cstdint>
#include <cstring>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace ogcb::nn {

enum class OutputActivation { linear, bounded };

OutputActivation activation_from_string(const std::string& s);
std::string to_string(OutputActivation a);

template <typename T>
struct MlpLayerT {
    int in = 0;
    int out = 0;
    std::vector<T> w; // [in][out] row-major
    std::vector<T> b; // [out]
};

template <typename T>
struct MlpParamsT {
    std::vector<MlpLayerT<T>> layers;
    OutputActivation output_activation = OutputActivation::linear;

    int input_dim() const { return layers.empty() ? 0 : layers.front().in; }
    int output_dim() const { return layers.empty() ? 0 : layers.back().out; }
    std::int64_t param_count() const {
        std::int64_t n = 0;
        for (const auto& l : layers)
            n += static_cast<std::int64_t>(l.w.size()) + l.b.size();
        return n;
    }
    std::vector<int> dims() const {
        std::vector<int> d;
        if (layers.empty())
            return d;
        d.push_back(layers.front().in);
        for (const auto& l : layers)
            d.push_back(l.out);
        return d;
    }
};

using MlpParams = MlpParamsT<float>;

// Hidden layers use ReLU; weights are U(+-1/sqrt(fan_in)), biases zero.
MlpParams init_mlp(const std::vector<int>& dims, OutputActivation act,
                   rng::Engine& eng);

MlpParamsT<double> to_double(const MlpParams& p);

template <typename T>
struct MlpCacheT {
    int batch = 0;
    // act[0] is the input copy, act[l+1] the post-activation output of layer l.
    std::vector<std::vector<T>> act;
    const T* output() const { return act.back().data(); }
};

using MlpCache = MlpCacheT<float>;

template <typename T>
struct MlpGradsT {
    std::vector<MlpLayerT<T>> layers;
};

template <typename T>
struct MlpScratchT {
    std::vector<T> dz;
    std::vector<T> dz_prev;
    std::vector<T> tr;
};

template <typename T>
void mlp_forward(const MlpParamsT<T>& p, const T* input, int batch,
                 MlpCacheT<T>& cache) {
    if (p.layers.empty())
        throw std::invalid_argument("mlp_forward: empty network");
    if (batch <= 0)
        throw std::invalid_argument("mlp_forward: batch must be positive");
    const std::size_t n_acts = p.layers.size() + 1;
    cache.batch = batch;
    cache.act.resize(n_acts);
    cache.act[0].resize(static_cast<std::size_t>(batch) * p.layers[0].in);
    std::memcpy(cache.act[0].data(), input,
                sizeof(T) * static_cast<std::size_t>(batch) * p.layers[0].in);
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        const auto& layer = p.layers[l];
        auto& out = cache.act[l + 1];
        out.resize(static_cast<std::size_t>(batch) * layer.out);
        kernels::gemm(batch, layer.out, layer.in, cache.act[l].data(),
                      layer.w.data(), out.data());
        if (l + 1 < p.layers.size()) {
            kernels::add_bias_relu(batch, layer.out, out.data(), layer.b.data());
        } else {
            kernels::add_bias(batch, layer.out, out.data(), layer.b.data());
            if (p.output_activation == OutputActivation::bounded)
                for (auto& v : out)
                    v = std::tanh(v);
        }
    }
}

template <typename T>
void mlp_backward(const MlpParamsT<T>& p, const MlpCacheT<T>& cache,
                  const T* grad_output, MlpGradsT<T>& grads,
                  MlpScratchT<T>& scratch) {
    const int batch = cache.batch;
    if (batch <= 0 || cache.act.size() != p.layers.size() + 1)
        throw std::invalid_argument("mlp_backward: cache does not match forward");
    grads.layers.resize(p.layers.size());
    const int last = static_cast<int>(p.layers.size()) - 1;

    auto& dz = scratch.dz;
    dz.resize(static_cast<std::size_t>(batch) * p.layers[last].out);
    std::memcpy(dz.data(), grad_output, sizeof(T) * dz.size());
    if (p.output_activation == OutputActivation::bounded) {
        const auto& y = cache.act[last + 1];
        for (std::size_t i = 0; i < dz.size(); ++i)
            dz[i] *= (T(1) - y[i] * y[i]);
    }

    for (int l = last; l >= 0; --l) {
        const auto& layer = p.layers[l];
        auto& g = grads.layers[l];
        g.in = layer.in;
        g.out = layer.out;
        g.w.resize(layer.w.size());
        g.b.resize(layer.b.size());

        // dW = X^T dZ, db = column sums of dZ
        scratch.tr.resize(static_cast<std::size_t>(batch) * layer.in);
        kernels::transpose(batch, layer.in, cache.act[l].data(), scratch.tr.data());
        kernels::gemm(layer.in, layer.out, batch, scratch.tr.data(), dz.data(),
                      g.w.data());
        kernels::column_sums(batch, layer.out, dz.data(), g.b.data());

        if (l > 0) {
            // dX = dZ W^T, then the ReLU mask of the producing layer
            scratch.tr.resize(layer.w.size());
            kernels::transpose(layer.in, layer.out, layer.w.data(),
                               scratch.tr.data());
            scratch.dz_prev.resize(static_cast<std::size_t>(batch) * layer.in);
            kernels::gemm(batch, layer.in, layer.out, dz.data(), scratch.tr.data(),
                          scratch.dz_prev.data());
            kernels::relu_mask_backward(batch, layer.in, cache.act[l].data(),
                                        scratch.dz_prev.data());
            std::swap(dz, scratch.dz_prev);
        }
    }
}

struct AdamState {
    std::vector<float> m;
    std::vector<float> v;
    std::int64_t step = 0;
};

AdamState make_adam(const MlpParams& p);

void adam_step(MlpParams& p, const MlpGradsT<float>& grads, AdamState& state,
               float lr, float beta1 = 0.9f, float beta2 = 0.999f,
               float eps = 1e-8f);

// target <- coef * target + (1 - coef) * online, elementwise.
void polyak_update(MlpParams& target, const MlpParams& online, float coef);

// Running per-dimension statistics over inputs; normalized outputs are
// clipped to +-5 and the standard deviation is floored at 1e-2. A fresh
// normalizer behaves as mean 0, std 1.
struct Normalizer {
    int dim = 0;
    double count = 0.0;
    std::vector<double> sum;
    std::vector<double> sumsq;

    static constexpr double kStdFloor = 1e-2;
    static constexpr float kClip = 5.0f;

    Normalizer() = default;
    explicit Normalizer(int dim_);

    void update(const float* rows, int n);
    void apply(const float* in, float* out, int n) const;
    double mean(int i) const;
    double stddev(int i) const;
};

// Checkpoint pieces shared with the agent checkpoint format.
nlohmann::json mlp_manifest(const MlpParams& p);
MlpParams mlp_from_manifest(const nlohmann::json& j);
void write_mlp_blob(std::ostream& out, const MlpParams& p);
void read_mlp_blob(std::istream& in, MlpParams& p);
nlohmann::json normalizer_to_json(const Normalizer& n);
Normalizer normalizer_from_json(const nlohmann::json& j);

// Standalone network checkpoint: manifest line + one f32 blob.
void save_mlp(const std::string& path, const MlpParams& p,
              const Normalizer* norm = nullptr);
struct LoadedMlp {
    MlpParams params;
    std::optional<Normalizer> norm;
};
LoadedMlp load_mlp(const std::string& path);

} // namespace ogcb::nn
