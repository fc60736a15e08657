#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lightnn/network.hpp"
#include "lightnn/types.hpp"

namespace lightnn {

enum class EdgeCategory : std::uint8_t { Inactive = 0, Activating = 1, Inhibiting = 2 };

/// Categorized snapshot of a network: per edge one of activating (strong
/// positive), inhibiting (strong negative) or inactive (below threshold).
struct SparseGraphView {
    std::vector<int> layer_sizes;
    std::vector<std::string> layer_names;
    std::vector<Activation> activations;
    std::vector<CategoryMatrix> categories;   // fan_in x fan_out per layer
    std::vector<Matrix> source_weights;       // snapshot copy
    double threshold = 0.0;

    EdgeCategory category(const EdgeRef& e) const {
        return static_cast<EdgeCategory>(categories[e.layer](e.src, e.dst));
    }
    long total_edges() const;
    long active_count() const;
    double active_fraction() const;
};

/// Smallest |w| such that exactly ceil(fraction * total) edges, pooled over
/// all layers, satisfy |w| >= threshold (up to ties at the cutoff).
/// fraction must lie in (0, 1]; fraction 1 returns 0.
double threshold_for_fraction(const DenseNetwork& net, double fraction);

/// Pure threshold categorization: activating iff w > 0 and |w| >= threshold,
/// inhibiting iff w < 0 and |w| >= threshold, otherwise inactive. Weights
/// that are exactly 0 are always inactive.
SparseGraphView categorize(const DenseNetwork& net, double threshold);

/// Keeps exactly the k largest-magnitude edges active, breaking ties at the
/// cutoff magnitude by edge order (layer, then row, then column), keeping
/// earlier edges.
SparseGraphView categorize_top_k(const DenseNetwork& net, long k);

/// Reachability analysis on the layered DAG of active edges.
struct PathReport {
    std::vector<CategoryMatrix> on_complete_path;        // 0/1 per edge
    std::vector<std::vector<std::uint8_t>> reachable_from_input;  // per neuron
    std::vector<std::vector<std::uint8_t>> reaches_output;        // per neuron
    double fraction_on_complete_paths = 0.0;  // over active edges; 0 if none
    long dead_neuron_count = 0;               // hidden neurons lacking either property
};

/// BFS from all inputs over active edges and from all outputs over reversed
/// active edges; an active edge u->v is on a complete path iff u is
/// input-reachable and v output-reaching.
PathReport path_report(const SparseGraphView& view);

/// Child network: +magnitude for activating, -magnitude for inhibiting,
/// 0 with mask 0 (pruned) for inactive. Biases zero, activations copied.
DenseNetwork reinit_from_view(const SparseGraphView& view, double magnitude);

/// Compact on-disk form: header with layer sizes and threshold, body of
/// per-edge category codes 0/1/2 in row-major layer order.
void save_view(const SparseGraphView& view, const std::filesystem::path& path);
SparseGraphView load_view(const std::filesystem::path& path);

} // namespace lightnn
