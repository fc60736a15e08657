#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include "lightnn/dataset.hpp"
#include "lightnn/network.hpp"

namespace lightnn {

struct TrainConfig {
    double learning_rate = 0.05;
    int batch_size = 100;
    int epochs = 30;
    std::uint64_t rng_seed = 0;
    bool shuffle_each_epoch = true;
};

/// One per-epoch metrics row.
struct ExperimentRecord {
    int epoch = 0;
    double train_loss = 0.0;
    double train_accuracy = 0.0;
    double val_accuracy = 0.0;
    double wall_time_s = 0.0;
    /// (k, fraction-on-complete-paths) pairs filled in by hooks.
    std::vector<std::pair<int, double>> path_fractions;

    std::optional<double> path_fraction(int k) const;
};

/// Called after each epoch with the current network and the epoch's record.
using EpochHook = std::function<void(const DenseNetwork&, ExperimentRecord&)>;

/// Runs masked SGD for `config.epochs` epochs. Deterministic for a given
/// (seed, config, data). Throws DivergenceError if the loss turns NaN.
std::vector<ExperimentRecord> train(DenseNetwork& net, const Dataset& train_set,
                                    const Dataset& val_set, const TrainConfig& config,
                                    const std::vector<EpochHook>& hooks = {});

} // namespace lightnn
