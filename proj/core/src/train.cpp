#include "lightnn/train.hpp"

#include <algorithm>
#include <chrono>
#include <numeric>
#include <random>

#include "lightnn/errors.hpp"

namespace lightnn {

std::optional<double> ExperimentRecord::path_fraction(int k) const {
    for (const auto& [key, value] : path_fractions)
        if (key == k) return value;
    return std::nullopt;
}

std::vector<ExperimentRecord> train(DenseNetwork& net, const Dataset& train_set,
                                    const Dataset& val_set, const TrainConfig& config,
                                    const std::vector<EpochHook>& hooks) {
    net.validate();
    if (config.learning_rate <= 0.0) throw ConfigError("learning_rate must be > 0");
    if (config.batch_size <= 0) throw ConfigError("batch_size must be positive");
    if (config.epochs < 0) throw ConfigError("epochs must be non-negative");
    if (config.batch_size > train_set.size())
        throw ConfigError("batch_size exceeds training-set size");

    const long n = train_set.size();
    const int n_classes = net.layers.back().fan_out();
    std::mt19937_64 shuffle_rng(config.rng_seed);

    std::vector<long> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0L);

    std::vector<ExperimentRecord> records;
    records.reserve(static_cast<std::size_t>(config.epochs));

    for (int epoch = 1; epoch <= config.epochs; ++epoch) {
        const auto epoch_start = std::chrono::steady_clock::now();
        if (config.shuffle_each_epoch) std::shuffle(order.begin(), order.end(), shuffle_rng);

        double loss_sum = 0.0;
        long batches = 0;
        long train_correct = 0;

        for (long start = 0; start < n; start += config.batch_size) {
            const long count = std::min<long>(config.batch_size, n - start);
            Matrix inputs(count, train_set.images.cols());
            Matrix targets = Matrix::Zero(count, n_classes);
            std::vector<int> batch_labels(static_cast<std::size_t>(count));
            for (long i = 0; i < count; ++i) {
                const long idx = order[static_cast<std::size_t>(start + i)];
                inputs.row(i) = train_set.images.row(idx);
                const int label = train_set.labels[static_cast<std::size_t>(idx)];
                targets(i, label) = 1.0;
                batch_labels[static_cast<std::size_t>(i)] = label;
            }

            LossAndGradients lg;
            try {
                lg = loss_and_gradients(net, inputs, targets);
            } catch (const NumericalError& e) {
                throw DivergenceError("training diverged in epoch " + std::to_string(epoch) +
                                          ": " + e.what(),
                                      epoch);
            }
            loss_sum += lg.loss;
            ++batches;

            const Matrix& out = lg.probabilities;
            for (long i = 0; i < count; ++i) {
                int best = 0;
                for (int c = 1; c < n_classes; ++c)
                    if (out(i, c) > out(i, best)) best = c;
                if (best == batch_labels[static_cast<std::size_t>(i)]) ++train_correct;
            }

            sgd_step(net, lg.grads, config.learning_rate);
        }

        ExperimentRecord record;
        record.epoch = epoch;
        record.train_loss = loss_sum / static_cast<double>(batches);
        record.train_accuracy = static_cast<double>(train_correct) / static_cast<double>(n);
        record.val_accuracy = evaluate(net, val_set.images, val_set.labels);
        record.wall_time_s =
            std::chrono::duration<double>(std::chrono::steady_clock::now() - epoch_start).count();
        for (const auto& hook : hooks) hook(net, record);
        records.push_back(std::move(record));
    }
    return records;
}

} // namespace lightnn
