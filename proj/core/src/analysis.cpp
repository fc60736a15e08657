#include "lightnn/analysis.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <thread>

#include "lightnn/errors.hpp"

namespace lightnn {

namespace {

bool sign_matches(EdgeCategory category, double weight) {
    switch (category) {
        case EdgeCategory::Activating: return weight > 0.0;
        case EdgeCategory::Inhibiting: return weight < 0.0;
        case EdgeCategory::Inactive: return true;  // not counted
    }
    return true;
}

} // namespace

ChangeRateReport change_rate(const SparseGraphView& parent_view, const DenseNetwork& child) {
    if (child.layers.size() + 1 != parent_view.layer_sizes.size())
        throw InputError("parent view and child network have different depths");
    ChangeRateReport report;
    report.layer_names = parent_view.layer_names;
    long changed_total = 0;
    long active_total = 0;
    for (std::size_t l = 0; l < child.layers.size(); ++l) {
        const auto& c = parent_view.categories[l];
        const Matrix& w = child.layers[l].weights;
        if (w.rows() != c.rows() || w.cols() != c.cols())
            throw InputError("parent view and child network shapes differ at layer " +
                             std::to_string(l));
        long changed = 0;
        long active = 0;
        for (long i = 0; i < c.rows(); ++i)
            for (long j = 0; j < c.cols(); ++j) {
                const auto cat = static_cast<EdgeCategory>(c(i, j));
                if (cat == EdgeCategory::Inactive) continue;
                ++active;
                if (!sign_matches(cat, w(i, j)) || w(i, j) == 0.0) ++changed;
            }
        report.per_layer_rate.push_back(
            active == 0 ? 0.0 : static_cast<double>(changed) / static_cast<double>(active));
        changed_total += changed;
        active_total += active;
    }
    report.overall_rate = active_total == 0 ? 0.0
                                            : static_cast<double>(changed_total) /
                                                  static_cast<double>(active_total);
    report.per_layer_pearson.assign(child.layers.size(), std::nullopt);
    return report;
}

void fill_pearson(ChangeRateReport& report, const SparseGraphView& parent_view,
                  const DenseNetwork& child) {
    std::vector<double> all_parent, all_child;
    for (std::size_t l = 0; l < child.layers.size(); ++l) {
        const auto& c = parent_view.categories[l];
        const Matrix& parent_w = parent_view.source_weights[l];
        const Matrix& child_w = child.layers[l].weights;
        std::vector<double> px, cx;
        for (long i = 0; i < c.rows(); ++i)
            for (long j = 0; j < c.cols(); ++j)
                if (static_cast<EdgeCategory>(c(i, j)) != EdgeCategory::Inactive) {
                    px.push_back(parent_w(i, j));
                    cx.push_back(child_w(i, j));
                }
        report.per_layer_pearson[l] = px.size() >= 2 ? pearson(px, cx) : std::nullopt;
        all_parent.insert(all_parent.end(), px.begin(), px.end());
        all_child.insert(all_child.end(), cx.begin(), cx.end());
    }
    report.overall_pearson =
        all_parent.size() >= 2 ? pearson(all_parent, all_child) : std::nullopt;
}

std::optional<double> pearson(std::span<const double> x, std::span<const double> y) {
    if (x.size() != y.size()) throw InputError("pearson: length mismatch");
    if (x.size() < 2) throw InputError("pearson: need at least 2 points");
    const double n = static_cast<double>(x.size());
    const double mean_x = std::accumulate(x.begin(), x.end(), 0.0) / n;
    const double mean_y = std::accumulate(y.begin(), y.end(), 0.0) / n;
    double sxy = 0.0, sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        const double dx = x[i] - mean_x;
        const double dy = y[i] - mean_y;
        sxy += dx * dy;
        sxx += dx * dx;
        syy += dy * dy;
    }
    if (sxx == 0.0 || syy == 0.0) return std::nullopt;
    return sxy / std::sqrt(sxx * syy);
}

std::vector<CdfSeries> cdf_by_layer(const DenseNetwork& net) {
    std::vector<CdfSeries> result;
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        CdfSeries series;
        series.layer_name = net.layer_names[l];
        const Matrix& w = net.layers[l].weights;
        series.values.reserve(static_cast<std::size_t>(w.size()));
        for (long i = 0; i < w.rows(); ++i)
            for (long j = 0; j < w.cols(); ++j) series.values.push_back(std::abs(w(i, j)));
        std::sort(series.values.begin(), series.values.end());
        const double n = static_cast<double>(series.values.size());
        series.cumulative.resize(series.values.size());
        for (std::size_t i = 0; i < series.values.size(); ++i)
            series.cumulative[i] = static_cast<double>(i + 1) / n;
        result.push_back(std::move(series));
    }
    return result;
}

bool has_bimodal_gap(const CdfSeries& series, double min_mass, double max_gap_mass,
                     double min_gap_span) {
    const auto& v = series.values;
    const std::size_t n = v.size();
    if (n < 3) return false;
    const double range = v.back() - v.front();
    if (range <= 0.0) return false;

    // For each lower bound, extend the interval as far as the mass budget
    // allows and check the span and the flanking masses.
    std::size_t j = 0;
    for (std::size_t i = 0; i < n; ++i) {
        if (j < i + 1) j = i + 1;
        // values in (v[i], v[j-1]] form the interior; keep its mass < budget
        while (j < n && static_cast<double>(j - i - 1) / static_cast<double>(n) < max_gap_mass)
            ++j;
        const std::size_t hi = j - 1;  // first value treated as the upper cluster
        const double lower_mass = static_cast<double>(i + 1) / static_cast<double>(n);
        const double upper_mass = static_cast<double>(n - hi) / static_cast<double>(n);
        if (lower_mass >= min_mass && upper_mass >= min_mass &&
            (v[hi] - v[i]) >= min_gap_span * range)
            return true;
    }
    return false;
}

PathCurve path_curve(const std::vector<int>& layer_sizes, const InitializerSpec& spec,
                     const std::vector<long>& grid, int trials, int n_threads) {
    if (trials < 1) throw InputError("trials must be >= 1");
    if (grid.empty()) throw InputError("grid must be nonempty");
    long total_edges = 0;
    for (std::size_t l = 0; l + 1 < layer_sizes.size(); ++l)
        total_edges += static_cast<long>(layer_sizes[l]) * layer_sizes[l + 1];
    for (std::size_t g = 0; g < grid.size(); ++g) {
        if (grid[g] < 0 || grid[g] > total_edges)
            throw InputError("grid value exceeds total edge count");
        if (g > 0 && grid[g] <= grid[g - 1]) throw InputError("grid must be strictly increasing");
    }

    // fractions[t][g]
    std::vector<std::vector<double>> fractions(static_cast<std::size_t>(trials),
                                               std::vector<double>(grid.size(), 0.0));

    auto run_trial = [&](int trial) {
        InitializerSpec trial_spec = spec;
        trial_spec.rng_seed = spec.rng_seed + static_cast<std::uint64_t>(trial);
        trial_spec.lightning.rng_seed =
            spec.lightning.rng_seed + static_cast<std::uint64_t>(trial);
        DenseNetwork net = DenseNetwork::mlp(layer_sizes);
        apply_initializer(net, trial_spec);

        // Edge indices sorted by magnitude descending, ties in edge order.
        std::vector<double> mags;
        mags.reserve(static_cast<std::size_t>(total_edges));
        for (const auto& layer : net.layers)
            for (long i = 0; i < layer.weights.rows(); ++i)
                for (long j = 0; j < layer.weights.cols(); ++j)
                    mags.push_back(std::abs(layer.weights(i, j)));
        std::vector<long> order(mags.size());
        std::iota(order.begin(), order.end(), 0L);
        std::stable_sort(order.begin(), order.end(), [&](long a, long b) {
            return mags[static_cast<std::size_t>(a)] > mags[static_cast<std::size_t>(b)];
        });

        // Flat index -> (layer, row, col) in edge order.
        std::vector<long> layer_offset;
        long offset = 0;
        for (const auto& layer : net.layers) {
            layer_offset.push_back(offset);
            offset += layer.weights.size();
        }
        SparseGraphView view;
        view.layer_sizes = layer_sizes;
        view.layer_names = net.layer_names;
        for (const auto& layer : net.layers) {
            view.activations.push_back(layer.activation);
            view.categories.emplace_back(
                CategoryMatrix::Zero(layer.weights.rows(), layer.weights.cols()));
        }

        long activated = 0;
        for (std::size_t g = 0; g < grid.size(); ++g) {
            while (activated < grid[g]) {
                const long flat = order[static_cast<std::size_t>(activated)];
                std::size_t l = net.layers.size() - 1;
                while (flat < layer_offset[l]) --l;
                const long local = flat - layer_offset[l];
                const long cols = net.layers[l].weights.cols();
                const long i = local / cols;
                const long j = local % cols;
                const double w = net.layers[l].weights(i, j);
                // Exactly-zero weights carry no sign and stay inactive.
                if (w != 0.0)
                    view.categories[l](i, j) =
                        w > 0.0 ? static_cast<std::uint8_t>(EdgeCategory::Activating)
                                : static_cast<std::uint8_t>(EdgeCategory::Inhibiting);
                ++activated;
            }
            fractions[static_cast<std::size_t>(trial)][g] =
                path_report(view).fraction_on_complete_paths;
        }
    };

    if (n_threads <= 1) {
        for (int t = 0; t < trials; ++t) run_trial(t);
    } else {
        std::vector<std::thread> workers;
        std::atomic<int> next{0};
        for (int w = 0; w < n_threads; ++w)
            workers.emplace_back([&] {
                for (int t = next.fetch_add(1); t < trials; t = next.fetch_add(1)) run_trial(t);
            });
        for (auto& worker : workers) worker.join();
    }

    PathCurve curve;
    curve.grid = grid;
    curve.trials = trials;
    for (std::size_t g = 0; g < grid.size(); ++g) {
        double sum = 0.0;
        for (int t = 0; t < trials; ++t) sum += fractions[static_cast<std::size_t>(t)][g];
        const double mean = sum / trials;
        double var = 0.0;
        for (int t = 0; t < trials; ++t) {
            const double d = fractions[static_cast<std::size_t>(t)][g] - mean;
            var += d * d;
        }
        curve.mean_fraction.push_back(mean);
        curve.std_fraction.push_back(trials > 1 ? std::sqrt(var / (trials - 1)) : 0.0);
    }
    return curve;
}

EpochHook paths_vs_accuracy_hook(const std::vector<int>& k_values) {
    return [k_values](const DenseNetwork& net, ExperimentRecord& record) {
        for (int k : k_values) {
            const auto view = categorize_top_k(net, k);
            record.path_fractions.emplace_back(k, path_report(view).fraction_on_complete_paths);
        }
    };
}

} // namespace lightnn
