#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lightnn/types.hpp"

namespace lightnn {

enum class Activation { Relu, Softmax, Linear };

/// One fully connected layer. `mask` marks trainable entries; entries with
/// mask 0 are pruned and are held at exactly 0 by every update.
struct DenseLayer {
    Matrix weights;   // fan_in x fan_out
    Vector biases;    // fan_out
    Activation activation = Activation::Relu;
    Matrix mask;      // fan_in x fan_out, entries 0 or 1

    DenseLayer() = default;
    DenseLayer(int fan_in, int fan_out, Activation act);

    int fan_in() const { return static_cast<int>(weights.rows()); }
    int fan_out() const { return static_cast<int>(weights.cols()); }
};

/// Stack of dense layers. Layer names follow the "hidden 0", "hidden 1", ...,
/// "output" convention.
struct DenseNetwork {
    std::vector<DenseLayer> layers;
    std::vector<std::string> layer_names;

    /// Builds a ReLU multilayer perceptron with a softmax output layer,
    /// zero weights and default names. `sizes` lists neuron counts per layer
    /// (inputs included), e.g. {784, 300, 100, 10}.
    static DenseNetwork mlp(const std::vector<int>& sizes);

    std::vector<int> layer_sizes() const;
    long total_edges() const;

    /// Checks dimension compatibility and that softmax appears only last.
    /// Throws ConfigError on violation.
    void validate() const;
};

/// Intermediate values of one forward pass, kept for backpropagation.
struct ForwardCache {
    std::vector<Matrix> activations;      // activations[0] is the input batch
    std::vector<Matrix> pre_activations;  // one per layer
};

struct Gradients {
    std::vector<Matrix> weights;
    std::vector<Vector> biases;
};

/// Forward pass over a batch (rows are samples). If `cache` is non-null the
/// per-layer pre-activations and activations are stored there.
Matrix forward(const DenseNetwork& net, const Matrix& inputs, ForwardCache* cache = nullptr);

struct LossAndGradients {
    double loss = 0.0;
    Gradients grads;
    Matrix probabilities;  // softmax outputs of the forward pass
};

/// Mean categorical cross-entropy and exact backpropagated gradients.
/// Requires a softmax output layer. Gradients are reported for every entry
/// including masked ones; sgd_step is responsible for zeroing those.
LossAndGradients loss_and_gradients(const DenseNetwork& net, const Matrix& inputs,
                                    const Matrix& one_hot_targets);

/// In-place masked SGD update: w -= lr * g where mask is 1; masked entries
/// are forced back to exactly 0.
void sgd_step(DenseNetwork& net, const Gradients& grads, double learning_rate);

/// Classification accuracy; argmax ties resolve to the lowest class index.
double evaluate(const DenseNetwork& net, const Matrix& inputs, const std::vector<int>& labels);

Matrix one_hot(const std::vector<int>& labels, int n_classes);

void save_network(const DenseNetwork& net, const std::filesystem::path& path);
DenseNetwork load_network(const std::filesystem::path& path);

} // namespace lightnn
