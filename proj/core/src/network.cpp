#include "lightnn/network.hpp"

#include <cmath>
#include <cstdint>
#include <fstream>

#include "lightnn/errors.hpp"

namespace lightnn {

DenseLayer::DenseLayer(int fan_in, int fan_out, Activation act)
    : weights(Matrix::Zero(fan_in, fan_out)),
      biases(Vector::Zero(fan_out)),
      activation(act),
      mask(Matrix::Ones(fan_in, fan_out)) {
    if (fan_in <= 0 || fan_out <= 0)
        throw ConfigError("layer dimensions must be strictly positive");
}

DenseNetwork DenseNetwork::mlp(const std::vector<int>& sizes) {
    if (sizes.size() < 2) throw ConfigError("an MLP needs at least 2 layers of neurons");
    DenseNetwork net;
    for (std::size_t l = 0; l + 1 < sizes.size(); ++l) {
        const bool last = (l + 2 == sizes.size());
        net.layers.emplace_back(sizes[l], sizes[l + 1],
                                last ? Activation::Softmax : Activation::Relu);
        net.layer_names.push_back(last ? "output" : "hidden " + std::to_string(l));
    }
    return net;
}

std::vector<int> DenseNetwork::layer_sizes() const {
    std::vector<int> sizes;
    if (layers.empty()) return sizes;
    sizes.push_back(layers.front().fan_in());
    for (const auto& layer : layers) sizes.push_back(layer.fan_out());
    return sizes;
}

long DenseNetwork::total_edges() const {
    long total = 0;
    for (const auto& layer : layers) total += layer.weights.size();
    return total;
}

void DenseNetwork::validate() const {
    if (layers.empty()) throw ConfigError("network has no layers");
    for (std::size_t l = 0; l < layers.size(); ++l) {
        const auto& layer = layers[l];
        if (layer.fan_in() <= 0 || layer.fan_out() <= 0)
            throw ConfigError("layer " + std::to_string(l) + " has non-positive dimensions");
        if (layer.biases.size() != layer.fan_out())
            throw ConfigError("layer " + std::to_string(l) + " bias size mismatch");
        if (layer.mask.rows() != layer.weights.rows() || layer.mask.cols() != layer.weights.cols())
            throw ConfigError("layer " + std::to_string(l) + " mask shape mismatch");
        if (l + 1 < layers.size()) {
            if (layer.fan_out() != layers[l + 1].fan_in())
                throw ConfigError("layers " + std::to_string(l) + " and " + std::to_string(l + 1) +
                                  " are dimension-incompatible");
            if (layer.activation == Activation::Softmax)
                throw ConfigError("softmax is permitted only on the final layer");
        }
    }
}

namespace {

void softmax_rows(Matrix& z) {
    for (Eigen::Index r = 0; r < z.rows(); ++r) {
        const double m = z.row(r).maxCoeff();
        z.row(r) = (z.row(r).array() - m).exp();
        z.row(r) /= z.row(r).sum();
    }
}

} // namespace

Matrix forward(const DenseNetwork& net, const Matrix& inputs, ForwardCache* cache) {
    if (net.layers.empty()) throw ConfigError("network has no layers");
    if (inputs.cols() != net.layers.front().fan_in())
        throw ConfigError("input width does not match first layer fan_in");
    if (!inputs.allFinite()) throw InputError("non-finite value in input batch");

    if (cache) {
        cache->activations.assign(1, inputs);
        cache->pre_activations.clear();
    }
    Matrix a = inputs;
    for (const auto& layer : net.layers) {
        Matrix z = (a * layer.weights).rowwise() + layer.biases.transpose();
        if (cache) cache->pre_activations.push_back(z);
        switch (layer.activation) {
            case Activation::Relu: a = z.cwiseMax(0.0); break;
            case Activation::Linear: a = std::move(z); break;
            case Activation::Softmax:
                softmax_rows(z);
                a = std::move(z);
                break;
        }
        if (cache) cache->activations.push_back(a);
    }
    return a;
}

LossAndGradients loss_and_gradients(const DenseNetwork& net, const Matrix& inputs,
                                    const Matrix& one_hot_targets) {
    if (inputs.rows() == 0) throw InputError("empty batch");
    if (net.layers.back().activation != Activation::Softmax)
        throw ConfigError("cross-entropy loss requires a softmax output layer");
    if (one_hot_targets.rows() != inputs.rows() ||
        one_hot_targets.cols() != net.layers.back().fan_out())
        throw InputError("target shape does not match batch/output dimensions");

    ForwardCache cache;
    const Matrix probs = forward(net, inputs, &cache);
    const Eigen::Index batch = inputs.rows();

    // Stable per-row cross-entropy from the pre-activations.
    const Matrix& z = cache.pre_activations.back();
    double loss = 0.0;
    for (Eigen::Index r = 0; r < batch; ++r) {
        const double m = z.row(r).maxCoeff();
        const double lse = m + std::log((z.row(r).array() - m).exp().sum());
        const double row_loss = lse - z.row(r).dot(one_hot_targets.row(r));
        if (!std::isfinite(row_loss))
            throw NumericalError("NaN in cross-entropy loss", static_cast<long>(r));
        loss += row_loss;
    }
    loss /= static_cast<double>(batch);

    LossAndGradients result;
    result.loss = loss;
    const auto n_layers = net.layers.size();
    result.grads.weights.resize(n_layers);
    result.grads.biases.resize(n_layers);

    // delta for softmax + cross-entropy, averaged over the batch.
    Matrix delta = (probs - one_hot_targets) / static_cast<double>(batch);
    result.probabilities = probs;
    for (std::size_t l = n_layers; l-- > 0;) {
        result.grads.weights[l] = cache.activations[l].transpose() * delta;
        result.grads.biases[l] = delta.colwise().sum().transpose();
        if (l > 0) {
            delta = delta * net.layers[l].weights.transpose();
            if (net.layers[l - 1].activation == Activation::Relu)
                delta = delta.cwiseProduct(
                    (cache.pre_activations[l - 1].array() > 0.0).cast<double>().matrix());
        }
    }
    return result;
}

void sgd_step(DenseNetwork& net, const Gradients& grads, double learning_rate) {
    if (grads.weights.size() != net.layers.size() || grads.biases.size() != net.layers.size())
        throw InputError("gradient count does not match layer count");
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        auto& layer = net.layers[l];
        if (grads.weights[l].rows() != layer.weights.rows() ||
            grads.weights[l].cols() != layer.weights.cols())
            throw InputError("gradient shape mismatch at layer " + std::to_string(l));
        layer.weights -= learning_rate * grads.weights[l].cwiseProduct(layer.mask);
        // Pruned entries are pinned at exactly 0.
        layer.weights = layer.weights.cwiseProduct(layer.mask);
        layer.biases -= learning_rate * grads.biases[l];
    }
}

double evaluate(const DenseNetwork& net, const Matrix& inputs, const std::vector<int>& labels) {
    if (inputs.rows() == 0) throw InputError("empty evaluation set");
    if (static_cast<long>(labels.size()) != inputs.rows())
        throw InputError("label count does not match input rows");
    const Matrix out = forward(net, inputs);
    long correct = 0;
    for (Eigen::Index r = 0; r < out.rows(); ++r) {
        int best = 0;
        for (Eigen::Index c = 1; c < out.cols(); ++c)
            if (out(r, c) > out(r, best)) best = static_cast<int>(c);
        if (best == labels[static_cast<std::size_t>(r)]) ++correct;
    }
    return static_cast<double>(correct) / static_cast<double>(out.rows());
}

Matrix one_hot(const std::vector<int>& labels, int n_classes) {
    Matrix targets = Matrix::Zero(static_cast<long>(labels.size()), n_classes);
    for (std::size_t i = 0; i < labels.size(); ++i) {
        if (labels[i] < 0 || labels[i] >= n_classes)
            throw InputError("label out of range: " + std::to_string(labels[i]));
        targets(static_cast<long>(i), labels[i]) = 1.0;
    }
    return targets;
}

namespace {

constexpr std::uint32_t kWeightsMagic = 0x4c4e4e57;  // "LNNW"
constexpr std::uint32_t kWeightsVersion = 1;

template <typename T>
void write_pod(std::ofstream& out, const T& value) {
    out.write(reinterpret_cast<const char*>(&value), sizeof(T));
}

template <typename T>
T read_pod(std::ifstream& in) {
    T value{};
    in.read(reinterpret_cast<char*>(&value), sizeof(T));
    if (!in) throw IoError("truncated network file");
    return value;
}

} // namespace

void save_network(const DenseNetwork& net, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    write_pod(out, kWeightsMagic);
    write_pod(out, kWeightsVersion);
    write_pod(out, static_cast<std::uint32_t>(net.layers.size()));
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const auto& layer = net.layers[l];
        write_pod(out, static_cast<std::uint32_t>(layer.fan_in()));
        write_pod(out, static_cast<std::uint32_t>(layer.fan_out()));
        write_pod(out, static_cast<std::uint32_t>(layer.activation));
        const auto name = net.layer_names[l];
        write_pod(out, static_cast<std::uint32_t>(name.size()));
        out.write(name.data(), static_cast<std::streamsize>(name.size()));
        out.write(reinterpret_cast<const char*>(layer.weights.data()),
                  static_cast<std::streamsize>(sizeof(double) * layer.weights.size()));
        out.write(reinterpret_cast<const char*>(layer.biases.data()),
                  static_cast<std::streamsize>(sizeof(double) * layer.biases.size()));
        out.write(reinterpret_cast<const char*>(layer.mask.data()),
                  static_cast<std::streamsize>(sizeof(double) * layer.mask.size()));
    }
    if (!out) throw IoError("failed writing " + path.string());
}

DenseNetwork load_network(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    if (read_pod<std::uint32_t>(in) != kWeightsMagic)
        throw IoError("not a network weights file: " + path.string());
    if (read_pod<std::uint32_t>(in) != kWeightsVersion)
        throw IoError("unsupported weights file version in " + path.string());
    const auto n_layers = read_pod<std::uint32_t>(in);
    DenseNetwork net;
    for (std::uint32_t l = 0; l < n_layers; ++l) {
        const auto fan_in = static_cast<int>(read_pod<std::uint32_t>(in));
        const auto fan_out = static_cast<int>(read_pod<std::uint32_t>(in));
        const auto act = static_cast<Activation>(read_pod<std::uint32_t>(in));
        const auto name_len = read_pod<std::uint32_t>(in);
        std::string name(name_len, '\0');
        in.read(name.data(), name_len);
        DenseLayer layer(fan_in, fan_out, act);
        in.read(reinterpret_cast<char*>(layer.weights.data()),
                static_cast<std::streamsize>(sizeof(double) * layer.weights.size()));
        in.read(reinterpret_cast<char*>(layer.biases.data()),
                static_cast<std::streamsize>(sizeof(double) * layer.biases.size()));
        in.read(reinterpret_cast<char*>(layer.mask.data()),
                static_cast<std::streamsize>(sizeof(double) * layer.mask.size()));
        if (!in) throw IoError("truncated network file: " + path.string());
        net.layers.push_back(std::move(layer));
        net.layer_names.push_back(std::move(name));
    }
    net.validate();
    return net;
}

} // namespace lightnn
