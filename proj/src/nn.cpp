#include "ogcb/nn.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <fstream>

namespace ogcb::nn {

using nlohmann::json;

OutputActivation activation_from_string(const std::string& s) {
    if (s == "linear")
        return OutputActivation::linear;
    if (s == "bounded")
        return OutputActivation::bounded;
    throw std::invalid_argument("unknown output activation: " + s);
}

std::string to_string(OutputActivation a) {
    return a == OutputActivation::linear ? "linear" : "bounded";
}

MlpParams init_mlp(const std::vector<int>& dims, OutputActivation act,
                   rng::Engine& eng) {
    if (dims.size() < 2)
        throw std::invalid_argument("init_mlp: need at least input and output dims");
    MlpParams p;
    p.output_activation = act;
    p.layers.resize(dims.size() - 1);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        auto& layer = p.layers[l];
        layer.in = dims[l];
        layer.out = dims[l + 1];
        if (layer.in <= 0 || layer.out <= 0)
            throw std::invalid_argument("init_mlp: non-positive layer dim");
        layer.w.resize(static_cast<std::size_t>(layer.in) * layer.out);
        layer.b.assign(layer.out, 0.0f);
        const float bound = 1.0f / std::sqrt(static_cast<float>(layer.in));
        for (auto& w : layer.w)
            w = rng::uniformf(eng, -bound, bound);
    }
    return p;
}

MlpParamsT<double> to_double(const MlpParams& p) {
    MlpParamsT<double> d;
    d.output_activation = p.output_activation;
    d.layers.resize(p.layers.size());
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        d.layers[l].in = p.layers[l].in;
        d.layers[l].out = p.layers[l].out;
        d.layers[l].w.assign(p.layers[l].w.begin(), p.layers[l].w.end());
        d.layers[l].b.assign(p.layers[l].b.begin(), p.layers[l].b.end());
    }
    return d;
}

AdamState make_adam(const MlpParams& p) {
    AdamState s;
    s.m.assign(static_cast<std::size_t>(p.param_count()), 0.0f);
    s.v.assign(static_cast<std::size_t>(p.param_count()), 0.0f);
    return s;
}

void adam_step(MlpParams& p, const MlpGradsT<float>& grads, AdamState& state,
               float lr, float beta1, float beta2, float eps) {
    if (grads.layers.size() != p.layers.size())
        throw std::invalid_argument("adam_step: gradient shape mismatch");
    state.step += 1;
    const double t = static_cast<double>(state.step);
    const float inv_bc1 =
        static_cast<float>(1.0 / (1.0 - std::pow(static_cast<double>(beta1), t)));
    const float inv_bc2 =
        static_cast<float>(1.0 / (1.0 - std::pow(static_cast<double>(beta2), t)));
    std::size_t off = 0;
    for (std::size_t l = 0; l < p.layers.size(); ++l) {
        auto& layer = p.layers[l];
        const auto& g = grads.layers[l];
        if (g.w.size() != layer.w.size() || g.b.size() != layer.b.size())
            throw std::invalid_argument("adam_step: gradient shape mismatch");
        kernels::adam_update(static_cast<int>(layer.w.size()), layer.w.data(),
                             state.m.data() + off, state.v.data() + off,
                             g.w.data(), lr, beta1, beta2, eps, inv_bc1, inv_bc2);
        off += layer.w.size();
        kernels::adam_update(static_cast<int>(layer.b.size()), layer.b.data(),
                             state.m.data() + off, state.v.data() + off,
                             g.b.data(), lr, beta1, beta2, eps, inv_bc1, inv_bc2);
        off += layer.b.size();
    }
}

void polyak_update(MlpParams& target, const MlpParams& online, float coef) {
    if (target.layers.size() != online.layers.size())
        throw std::invalid_argument("polyak_update: shape mismatch");
    if (coef < 0.0f || coef > 1.0f)
        throw std::invalid_argument("polyak_update: coefficient outside [0,1]");
    for (std::size_t l = 0; l < target.layers.size(); ++l) {
        auto& t = target.layers[l];
        const auto& o = online.layers[l];
        if (t.w.size() != o.w.size() || t.b.size() != o.b.size())
            throw std::invalid_argument("polyak_update: shape mismatch");
        kernels::polyak_mix(static_cast<int>(t.w.size()), t.w.data(), o.w.data(),
                            coef);
        kernels::polyak_mix(static_cast<int>(t.b.size()), t.b.data(), o.b.data(),
                            coef);
    }
}

Normalizer::Normalizer(int dim_) : dim(dim_), sum(dim_, 0.0), sumsq(dim_, 0.0) {}

void Normalizer::update(const float* rows, int n) {
    for (int r = 0; r < n; ++r)
        for (int i = 0; i < dim; ++i) {
            const double x = rows[static_cast<std::size_t>(r) * dim + i];
            sum[i] += x;
            sumsq[i] += x * x;
        }
    count += n;
}

double Normalizer::mean(int i) const {
    return count > 0.0 ? sum[i] / count : 0.0;
}

double Normalizer::stddev(int i) const {
    if (count <= 0.0)
        return 1.0;
    const double m = sum[i] / count;
    const double var = std::max(sumsq[i] / count - m * m, 0.0);
    return std::max(std::sqrt(var), kStdFloor);
}

void Normalizer::apply(const float* in, float* out, int n) const {
    for (int i = 0; i < dim; ++i) {
        const float m = static_cast<float>(mean(i));
        const float s = static_cast<float>(stddev(i));
        for (int r = 0; r < n; ++r) {
            const std::size_t idx = static_cast<std::size_t>(r) * dim + i;
            out[idx] = std::clamp((in[idx] - m) / s, -kClip, kClip);
        }
    }
}

json mlp_manifest(const MlpParams& p) {
    return json{{"dims", p.dims()},
                {"output_activation", to_string(p.output_activation)}};
}

MlpParams mlp_from_manifest(const json& j) {
    MlpParams p;
    p.output_activation =
        activation_from_string(j.at("output_activation").get<std::string>());
    const auto dims = j.at("dims").get<std::vector<int>>();
    if (dims.size() < 2)
        throw io::shape_error("network manifest: bad dims");
    p.layers.resize(dims.size() - 1);
    for (std::size_t l = 0; l + 1 < dims.size(); ++l) {
        p.layers[l].in = dims[l];
        p.layers[l].out = dims[l + 1];
        if (dims[l] <= 0 || dims[l + 1] <= 0)
            throw io::shape_error("network manifest: bad dims");
        p.layers[l].w.resize(static_cast<std::size_t>(dims[l]) * dims[l + 1]);
        p.layers[l].b.resize(dims[l + 1]);
    }
    return p;
}

void write_mlp_blob(std::ostream& out, const MlpParams& p) {
    std::vector<float> flat;
    flat.reserve(static_cast<std::size_t>(p.param_count()));
    for (const auto& l : p.layers) {
        flat.insert(flat.end(), l.w.begin(), l.w.end());
        flat.insert(flat.end(), l.b.begin(), l.b.end());
    }
    io::write_block_f32(out, flat.data(), flat.size());
}

void read_mlp_blob(std::istream& in, MlpParams& p) {
    const auto flat =
        io::read_block_f32(in, static_cast<std::uint64_t>(p.param_count()));
    std::size_t off = 0;
    for (auto& l : p.layers) {
        std::copy_n(flat.begin() + off, l.w.size(), l.w.begin());
        off += l.w.size();
        std::copy_n(flat.begin() + off, l.b.size(), l.b.begin());
        off += l.b.size();
    }
}

json normalizer_to_json(const Normalizer& n) {
    return json{
        {"dim", n.dim}, {"count", n.count}, {"sum", n.sum}, {"sumsq", n.sumsq}};
}

Normalizer normalizer_from_json(const json& j) {
    Normalizer n(j.at("dim").get<int>());
    n.count = j.at("count").get<double>();
    n.sum = j.at("sum").get<std::vector<double>>();
    n.sumsq = j.at("sumsq").get<std::vector<double>>();
    if (static_cast<int>(n.sum.size()) != n.dim ||
        static_cast<int>(n.sumsq.size()) != n.dim)
        throw io::shape_error("normalizer: stats do not match dim");
    return n;
}

void save_mlp(const std::string& path, const MlpParams& p,
              const Normalizer* norm) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out)
        throw std::runtime_error("cannot open for writing: " + path);
    json j = mlp_manifest(p);
    j["format_version"] = 1;
    j["normalizer"] = norm ? normalizer_to_json(*norm) : json(nullptr);
    out << j.dump() << '\n';
    write_mlp_blob(out, p);
    if (!out)
        throw std::runtime_error("write failed: " + path);
}

LoadedMlp load_mlp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in)
        throw std::runtime_error("cannot open for reading: " + path);
    const json j = json::parse(io::read_manifest_line(in), nullptr, false);
    if (j.is_discarded())
        throw io::shape_error("network checkpoint: manifest is not valid JSON");
    if (j.at("format_version").get<int>() != 1)
        throw io::version_error("network checkpoint: unsupported format_version");
    LoadedMlp loaded;
    loaded.params = mlp_from_manifest(j);
    if (!j.at("normalizer").is_null())
        loaded.norm = normalizer_from_json(j.at("normalizer"));
    read_mlp_blob(in, loaded.params);
    io::expect_eof(in);
    return loaded;
}

} // namespace ogcb::nn
