#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "lightnn/network.hpp"
#include "lightnn/rng.hpp"
#include "lightnn/types.hpp"

namespace lightnn {

/// Parameters of the path-seeding initializer: how many random
/// input-to-output paths to draw and the magnitude given to their edges.
struct LightningConfig {
    int n_lightnings = 1000;
    double strength = 0.5;
    std::uint64_t rng_seed = 0;
};

struct InitializerSpec {
    enum class Kind { GlorotUniform, HeNormal, TruncatedNormal, Lightning };

    Kind kind = Kind::GlorotUniform;
    double truncated_std = 0.01;   // TruncatedNormal only
    LightningConfig lightning;     // Lightning only
    std::uint64_t rng_seed = 0;

    std::string name() const;
};

/// Uniform on +-sqrt(6 / (fan_in + fan_out)).
Matrix init_glorot_uniform(int fan_in, int fan_out, Rng& rng);

/// Normal with std sqrt(2 / fan_in).
Matrix init_he_normal(int fan_in, int fan_out, Rng& rng);

/// Normal(0, std) with any draw beyond 2*std redrawn.
Matrix init_truncated_normal(int fan_in, int fan_out, double std, Rng& rng);

/// Seeds `config.n_lightnings` random complete paths. Every edge on a
/// sampled path gets magnitude exactly `strength`; overlaps do not sum.
/// Each touched edge's sign is a fair coin drawn at first touch; all
/// untouched edges stay 0. All edges remain trainable.
std::vector<Matrix> init_lightning(const std::vector<int>& layer_sizes,
                                   const LightningConfig& config);

/// Applies `spec` to every layer of `net` (weights only; biases stay zero,
/// masks stay all-ones). The lightning kind uses spec.lightning.rng_seed;
/// the others draw from a single Rng seeded with spec.rng_seed.
void apply_initializer(DenseNetwork& net, const InitializerSpec& spec);

} // namespace lightnn
