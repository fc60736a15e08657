#pragma once

// Shared test utilities: toy data, random nets, and the independent oracles
// (finite differences, brute-force path enumeration, direct-formula Pearson)
// the implementation is checked against. None of these call into the code
// paths they verify.

#include <cmath>
#include <random>
#include <vector>

#include "lightnn/dataset.hpp"
#include "lightnn/network.hpp"
#include "lightnn/sparse_graph.hpp"

namespace lightnn::testing {

/// Gaussian blobs, one per class, linearly separable for wide separation.
inline Dataset make_toy_dataset(int n_per_class, int n_classes, int dims, std::uint64_t seed,
                                double separation = 4.0) {
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> noise(0.0, 0.5);
    Dataset set;
    set.images.resize(static_cast<long>(n_per_class) * n_classes, dims);
    long row = 0;
    for (int c = 0; c < n_classes; ++c)
        for (int i = 0; i < n_per_class; ++i, ++row) {
            for (int d = 0; d < dims; ++d)
                set.images(row, d) = (d % n_classes == c ? separation : 0.0) + noise(gen);
            set.labels.push_back(c);
        }
    return set;
}

inline DenseNetwork random_small_net(const std::vector<int>& sizes, std::uint64_t seed) {
    DenseNetwork net = DenseNetwork::mlp(sizes);
    std::mt19937_64 gen(seed);
    std::normal_distribution<double> dist(0.0, 0.5);
    for (auto& layer : net.layers) {
        for (long i = 0; i < layer.weights.rows(); ++i)
            for (long j = 0; j < layer.weights.cols(); ++j) layer.weights(i, j) = dist(gen);
        for (long j = 0; j < layer.biases.size(); ++j) layer.biases(j) = dist(gen);
    }
    return net;
}

/// Central finite difference of the loss with respect to one parameter.
template <typename GetSet>
double finite_difference(DenseNetwork& net, const Matrix& inputs, const Matrix& targets,
                         GetSet&& param, double eps = 1e-5) {
    const double original = param(net);
    param(net) = original + eps;
    const double up = loss_and_gradients(net, inputs, targets).loss;
    param(net) = original - eps;
    const double down = loss_and_gradients(net, inputs, targets).loss;
    param(net) = original;
    return (up - down) / (2.0 * eps);
}

/// Exponential-time ground truth: enumerates every input-to-output path over
/// active edges with depth-first search and marks the edges it crosses.
struct BruteForcePaths {
    std::vector<CategoryMatrix> on_path;
    double fraction = 0.0;

    explicit BruteForcePaths(const SparseGraphView& view) {
        const auto levels = view.layer_sizes.size();
        for (const auto& c : view.categories)
            on_path.emplace_back(CategoryMatrix::Zero(c.rows(), c.cols()));

        std::vector<int> path(levels, 0);
        auto active = [&](std::size_t l, int i, int j) {
            return view.categories[l](i, j) != 0;
        };
        // dfs from every input neuron
        auto dfs = [&](auto&& self, std::size_t level, int node) -> void {
            if (level + 1 == levels) {
                for (std::size_t l = 0; l + 1 < levels; ++l)
                    on_path[l](path[l], path[l + 1]) = 1;
                return;
            }
            path[level] = node;
            for (int next = 0; next < view.layer_sizes[level + 1]; ++next)
                if (active(level, node, next)) {
                    path[level + 1] = next;
                    self(self, level + 1, next);
                }
        };
        for (int input = 0; input < view.layer_sizes[0]; ++input) dfs(dfs, 0, input);

        long active_total = 0, on_total = 0;
        for (std::size_t l = 0; l + 1 < levels; ++l)
            for (long i = 0; i < view.categories[l].rows(); ++i)
                for (long j = 0; j < view.categories[l].cols(); ++j) {
                    if (view.categories[l](i, j) != 0) ++active_total;
                    if (on_path[l](i, j)) ++on_total;
                }
        fraction = active_total == 0
                       ? 0.0
                       : static_cast<double>(on_total) / static_cast<double>(active_total);
    }
};

/// Random sparse view over a small layered graph.
inline SparseGraphView random_view(const std::vector<int>& sizes, double density,
                                   std::uint64_t seed) {
    std::mt19937_64 gen(seed);
    std::uniform_real_distribution<double> uni(0.0, 1.0);
    SparseGraphView view;
    view.layer_sizes = sizes;
    view.threshold = 0.5;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const bool last = (l + 2 == sizes.size());
        view.layer_names.push_back(last ? "output" : "hidden " + std::to_string(l));
        view.activations.push_back(last ? Activation::Softmax : Activation::Relu);
        CategoryMatrix c(sizes[l], sizes[l + 1]);
        Matrix w(sizes[l], sizes[l + 1]);
        for (long i = 0; i < c.rows(); ++i)
            for (long j = 0; j < c.cols(); ++j) {
                if (uni(gen) < density) {
                    const bool positive = uni(gen) < 0.5;
                    c(i, j) = positive ? 1 : 2;
                    w(i, j) = positive ? 1.0 : -1.0;
                } else {
                    c(i, j) = 0;
                    w(i, j) = 0.0;
                }
            }
        view.categories.push_back(std::move(c));
        view.source_weights.push_back(std::move(w));
    }
    return view;
}

/// Pearson r evaluated directly from the textbook formula in extended
/// precision; the oracle for analysis::pearson.
inline long double pearson_direct(const std::vector<double>& x, const std::vector<double>& y) {
    const auto n = static_cast<long double>(x.size());
    long double sx = 0, sy = 0, sxy = 0, sxx = 0, syy = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        sx += x[i];
        sy += y[i];
        sxy += static_cast<long double>(x[i]) * y[i];
        sxx += static_cast<long double>(x[i]) * x[i];
        syy += static_cast<long double>(y[i]) * y[i];
    }
    return (n * sxy - sx * sy) / (std::sqrt(n * sxx - sx * sx) * std::sqrt(n * syy - sy * sy));
}

} // namespace lightnn::testing
