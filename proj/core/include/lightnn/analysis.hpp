#pragma once

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "lightnn/initializers.hpp"
#include "lightnn/network.hpp"
#include "lightnn/sparse_graph.hpp"
#include "lightnn/train.hpp"

namespace lightnn {

/// Per-layer and pooled statistics comparing a trained child against the
/// parent view it was reinitialized from.
struct ChangeRateReport {
    std::vector<std::string> layer_names;
    std::vector<double> per_layer_rate;
    double overall_rate = 0.0;
    std::vector<std::optional<double>> per_layer_pearson;
    std::optional<double> overall_pearson;
    double child_accuracy = 0.0;
};

/// Fraction of parent-active edges whose trained child weight has the wrong
/// sign for its parent category (a weight of exactly 0 counts as changed).
/// Fills the rate fields only.
ChangeRateReport change_rate(const SparseGraphView& parent_view, const DenseNetwork& child);

/// Adds per-layer and pooled Pearson coefficients over the parent-active
/// edge positions (parent snapshot weight vs trained child weight).
void fill_pearson(ChangeRateReport& report, const SparseGraphView& parent_view,
                  const DenseNetwork& child);

/// Sample Pearson correlation; nullopt when either side has zero variance.
/// Throws InputError on length mismatch or fewer than 2 points.
std::optional<double> pearson(std::span<const double> x, std::span<const double> y);

/// Empirical CDF of absolute weight values for one layer.
struct CdfSeries {
    std::string layer_name;
    std::vector<double> values;      // |w| sorted ascending
    std::vector<double> cumulative;  // i/N, strictly increasing to 1
};

std::vector<CdfSeries> cdf_by_layer(const DenseNetwork& net);

/// True when the series shows two plateaus: at least `min_mass` probability
/// mass on both sides of a value interval that is at least `min_gap_span`
/// of the full value range wide yet contains less than `max_gap_mass` mass.
bool has_bimodal_gap(const CdfSeries& series, double min_mass = 0.30,
                     double max_gap_mass = 0.01, double min_gap_span = 0.10);

/// Mean fraction-on-complete-paths per active-edge-count grid point,
/// averaged over independent initialization draws.
struct PathCurve {
    std::vector<long> grid;
    std::vector<double> mean_fraction;
    std::vector<double> std_fraction;
    int trials = 0;
};

/// For each trial: fresh weights from `spec` with seed rng_seed + trial,
/// then for each k in `grid` the k largest-|w| edges form the active set and
/// the complete-path fraction is measured. Trials can run on several
/// threads; results are identical regardless of scheduling.
PathCurve path_curve(const std::vector<int>& layer_sizes, const InitializerSpec& spec,
                     const std::vector<long>& grid, int trials, int n_threads = 1);

/// Per-epoch hook recording fraction-on-complete-paths for each k in
/// `k_values` into the epoch's record.
EpochHook paths_vs_accuracy_hook(const std::vector<int>& k_values);

} // namespace lightnn
