#pragma once

#include <Eigen/Dense>
#include <cstdint>

namespace lightnn {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CategoryMatrix = Eigen::Matrix<std::uint8_t, Eigen::Dynamic, Eigen::Dynamic>;

/// Addresses one weight: (layer index, source neuron, target neuron).
struct EdgeRef {
    int layer;
    int src;
    int dst;

    friend bool operator==(const EdgeRef&, const EdgeRef&) = default;
    friend auto operator<=>(const EdgeRef&, const EdgeRef&) = default;
};

} // namespace lightnn
