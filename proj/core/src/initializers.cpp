#include "lightnn/initializers.hpp"

#include <cmath>

#include "lightnn/errors.hpp"

namespace lightnn {

std::string InitializerSpec::name() const {
    switch (kind) {
        case Kind::GlorotUniform: return "glorot-uniform";
        case Kind::HeNormal: return "he-normal";
        case Kind::TruncatedNormal: return "truncated-normal";
        case Kind::Lightning: return "lightning";
    }
    return "unknown";
}

Matrix init_glorot_uniform(int fan_in, int fan_out, Rng& rng) {
    if (fan_in <= 0 || fan_out <= 0) throw ConfigError("fan dimensions must be positive");
    const double limit = std::sqrt(6.0 / (fan_in + fan_out));
    Matrix w(fan_in, fan_out);
    for (int i = 0; i < fan_in; ++i)
        for (int j = 0; j < fan_out; ++j) w(i, j) = rng.uniform(-limit, limit);
    return w;
}

Matrix init_he_normal(int fan_in, int fan_out, Rng& rng) {
    if (fan_in <= 0 || fan_out <= 0) throw ConfigError("fan dimensions must be positive");
    const double std = std::sqrt(2.0 / fan_in);
    Matrix w(fan_in, fan_out);
    for (int i = 0; i < fan_in; ++i)
        for (int j = 0; j < fan_out; ++j) w(i, j) = rng.normal(0.0, std);
    return w;
}

Matrix init_truncated_normal(int fan_in, int fan_out, double std, Rng& rng) {
    if (fan_in <= 0 || fan_out <= 0) throw ConfigError("fan dimensions must be positive");
    if (std <= 0.0) throw ConfigError("truncated-normal std must be > 0");
    Matrix w(fan_in, fan_out);
    for (int i = 0; i < fan_in; ++i)
        for (int j = 0; j < fan_out; ++j) {
            double draw = rng.normal(0.0, std);
            while (std::abs(draw) > 2.0 * std) draw = rng.normal(0.0, std);
            w(i, j) = draw;
        }
    return w;
}

std::vector<Matrix> init_lightning(const std::vector<int>& layer_sizes,
                                   const LightningConfig& config) {
    if (layer_sizes.size() < 2) throw ConfigError("lightning needs at least 2 layers");
    for (int size : layer_sizes)
        if (size <= 0) throw ConfigError("layer sizes must be positive");
    if (config.n_lightnings < 0) throw ConfigError("n_lightnings must be >= 0");
    if (config.strength <= 0.0) throw ConfigError("lightning strength must be > 0");

    std::vector<Matrix> weights;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l)
        weights.emplace_back(Matrix::Zero(layer_sizes[l], layer_sizes[l + 1]));

    Rng rng(config.rng_seed);
    std::vector<std::size_t> path(layer_sizes.size());
    for (int n = 0; n < config.n_lightnings; ++n) {
        for (std::size_t l = 0; l < layer_sizes.size(); ++l)
            path[l] = rng.index(static_cast<std::size_t>(layer_sizes[l]));
        for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l) {
            double& w = weights[l](static_cast<long>(path[l]), static_cast<long>(path[l + 1]));
            // Sign is fixed at the edge's first touch; overlapping paths
            // neither resample it nor sum strengths.
            if (w == 0.0) w = rng.coin() ? config.strength : -config.strength;
        }
    }
    return weights;
}

void apply_initializer(DenseNetwork& net, const InitializerSpec& spec) {
    net.validate();
    if (spec.kind == InitializerSpec::Kind::Lightning) {
        auto weights = init_lightning(net.layer_sizes(), spec.lightning);
        for (std::size_t l = 0; l < net.layers.size(); ++l)
            net.layers[l].weights = std::move(weights[l]);
        return;
    }
    Rng rng(spec.rng_seed);
    for (auto& layer : net.layers) {
        switch (spec.kind) {
            case InitializerSpec::Kind::GlorotUniform:
                layer.weights = init_glorot_uniform(layer.fan_in(), layer.fan_out(), rng);
                break;
            case InitializerSpec::Kind::HeNormal:
                layer.weights = init_he_normal(layer.fan_in(), layer.fan_out(), rng);
                break;
            case InitializerSpec::Kind::TruncatedNormal:
                layer.weights =
                    init_truncated_normal(layer.fan_in(), layer.fan_out(), spec.truncated_std, rng);
                break;
            case InitializerSpec::Kind::Lightning: break;  // handled above
        }
    }
}

} // namespace lightnn
