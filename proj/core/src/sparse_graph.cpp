#include "lightnn/sparse_graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <fstream>

#include "lightnn/errors.hpp"

namespace lightnn {

long SparseGraphView::total_edges() const {
    long total = 0;
    for (const auto& c : categories) total += c.size();
    return total;
}

long SparseGraphView::active_count() const {
    long active = 0;
    for (const auto& c : categories)
        active += (c.array() != static_cast<std::uint8_t>(EdgeCategory::Inactive)).count();
    return active;
}

double SparseGraphView::active_fraction() const {
    const long total = total_edges();
    return total == 0 ? 0.0 : static_cast<double>(active_count()) / static_cast<double>(total);
}

namespace {

std::vector<double> pooled_magnitudes(const DenseNetwork& net) {
    std::vector<double> mags;
    mags.reserve(static_cast<std::size_t>(net.total_edges()));
    for (const auto& layer : net.layers)
        for (long i = 0; i < layer.weights.rows(); ++i)
            for (long j = 0; j < layer.weights.cols(); ++j)
                mags.push_back(std::abs(layer.weights(i, j)));
    return mags;
}

SparseGraphView view_skeleton(const DenseNetwork& net, double threshold) {
    SparseGraphView view;
    view.layer_sizes = net.layer_sizes();
    view.layer_names = net.layer_names;
    view.threshold = threshold;
    for (const auto& layer : net.layers) {
        view.activations.push_back(layer.activation);
        view.source_weights.push_back(layer.weights);
        view.categories.emplace_back(
            CategoryMatrix::Zero(layer.weights.rows(), layer.weights.cols()));
    }
    return view;
}

std::uint8_t categorize_weight(double w, double threshold) {
    if (w > 0.0 && w >= threshold) return static_cast<std::uint8_t>(EdgeCategory::Activating);
    if (w < 0.0 && -w >= threshold) return static_cast<std::uint8_t>(EdgeCategory::Inhibiting);
    return static_cast<std::uint8_t>(EdgeCategory::Inactive);
}

} // namespace

double threshold_for_fraction(const DenseNetwork& net, double fraction) {
    if (net.layers.empty()) throw ConfigError("network has no layers");
    if (!(fraction > 0.0) || fraction > 1.0)
        throw InputError("active fraction must lie in (0, 1]");
    if (fraction == 1.0) return 0.0;

    auto mags = pooled_magnitudes(net);
    const long total = static_cast<long>(mags.size());
    const long k = static_cast<long>(std::ceil(fraction * static_cast<double>(total)));
    std::nth_element(mags.begin(), mags.begin() + (k - 1), mags.end(), std::greater<>());
    return mags[static_cast<std::size_t>(k - 1)];
}

SparseGraphView categorize(const DenseNetwork& net, double threshold) {
    if (threshold < 0.0) throw InputError("threshold must be >= 0");
    SparseGraphView view = view_skeleton(net, threshold);
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Matrix& w = net.layers[l].weights;
        for (long i = 0; i < w.rows(); ++i)
            for (long j = 0; j < w.cols(); ++j)
                view.categories[l](i, j) = categorize_weight(w(i, j), threshold);
    }
    return view;
}

SparseGraphView categorize_top_k(const DenseNetwork& net, long k) {
    const long total = net.total_edges();
    if (k < 0 || k > total) throw InputError("k out of range");
    if (k == 0) {
        SparseGraphView view = view_skeleton(net, 0.0);
        view.threshold = std::numeric_limits<double>::infinity();
        return view;
    }

    auto mags = pooled_magnitudes(net);
    std::nth_element(mags.begin(), mags.begin() + (k - 1), mags.end(), std::greater<>());
    const double threshold = mags[static_cast<std::size_t>(k - 1)];

    SparseGraphView view = view_skeleton(net, threshold);
    long strictly_above = 0;
    for (double m : mags)
        if (m > threshold) ++strictly_above;
    long tie_quota = k - strictly_above;

    // Edge order (layer, row, column): earlier tied edges win.
    for (std::size_t l = 0; l < net.layers.size(); ++l) {
        const Matrix& w = net.layers[l].weights;
        for (long i = 0; i < w.rows(); ++i)
            for (long j = 0; j < w.cols(); ++j) {
                const double m = std::abs(w(i, j));
                if (m > threshold) {
                    view.categories[l](i, j) = categorize_weight(w(i, j), threshold);
                } else if (m == threshold && tie_quota > 0) {
                    const auto cat = categorize_weight(w(i, j), threshold);
                    if (cat != static_cast<std::uint8_t>(EdgeCategory::Inactive)) {
                        view.categories[l](i, j) = cat;
                        --tie_quota;
                    }
                }
            }
    }
    return view;
}

PathReport path_report(const SparseGraphView& view) {
    const auto n_levels = view.layer_sizes.size();
    PathReport report;
    report.reachable_from_input.resize(n_levels);
    report.reaches_output.resize(n_levels);
    for (std::size_t l = 0; l < n_levels; ++l) {
        report.reachable_from_input[l].assign(static_cast<std::size_t>(view.layer_sizes[l]), 0);
        report.reaches_output[l].assign(static_cast<std::size_t>(view.layer_sizes[l]), 0);
    }
    std::fill(report.reachable_from_input.front().begin(),
              report.reachable_from_input.front().end(), 1);
    std::fill(report.reaches_output.back().begin(), report.reaches_output.back().end(), 1);

    const auto active = [&](std::size_t l, long i, long j) {
        return view.categories[l](i, j) != static_cast<std::uint8_t>(EdgeCategory::Inactive);
    };

    // Layer-by-layer sweeps; on a layered DAG this is exactly BFS.
    for (std::size_t l = 0; l + 1 < n_levels; ++l) {
        const auto& c = view.categories[l];
        for (long i = 0; i < c.rows(); ++i) {
            if (!report.reachable_from_input[l][static_cast<std::size_t>(i)]) continue;
            for (long j = 0; j < c.cols(); ++j)
                if (active(l, i, j))
                    report.reachable_from_input[l + 1][static_cast<std::size_t>(j)] = 1;
        }
    }
    for (std::size_t l = n_levels - 1; l-- > 0;) {
        const auto& c = view.categories[l];
        for (long i = 0; i < c.rows(); ++i)
            for (long j = 0; j < c.cols(); ++j)
                if (active(l, i, j) && report.reaches_output[l + 1][static_cast<std::size_t>(j)])
                    report.reaches_output[l][static_cast<std::size_t>(i)] = 1;
    }

    long active_total = 0;
    long on_path_total = 0;
    for (std::size_t l = 0; l + 1 < n_levels; ++l) {
        const auto& c = view.categories[l];
        report.on_complete_path.emplace_back(CategoryMatrix::Zero(c.rows(), c.cols()));
        for (long i = 0; i < c.rows(); ++i)
            for (long j = 0; j < c.cols(); ++j)
                if (active(l, i, j)) {
                    ++active_total;
                    if (report.reachable_from_input[l][static_cast<std::size_t>(i)] &&
                        report.reaches_output[l + 1][static_cast<std::size_t>(j)]) {
                        report.on_complete_path[l](i, j) = 1;
                        ++on_path_total;
                    }
                }
    }
    report.fraction_on_complete_paths =
        active_total == 0 ? 0.0
                          : static_cast<double>(on_path_total) / static_cast<double>(active_total);

    for (std::size_t l = 1; l + 1 < n_levels; ++l)
        for (std::size_t i = 0; i < report.reachable_from_input[l].size(); ++i)
            if (!report.reachable_from_input[l][i] || !report.reaches_output[l][i])
                ++report.dead_neuron_count;
    return report;
}

DenseNetwork reinit_from_view(const SparseGraphView& view, double magnitude) {
    if (magnitude <= 0.0) throw InputError("reinit magnitude must be > 0");
    DenseNetwork net;
    net.layer_names = view.layer_names;
    for (std::size_t l = 0; l + 1 < view.layer_sizes.size(); ++l) {
        DenseLayer layer(view.layer_sizes[l], view.layer_sizes[l + 1], view.activations[l]);
        const auto& c = view.categories[l];
        for (long i = 0; i < c.rows(); ++i)
            for (long j = 0; j < c.cols(); ++j) {
                switch (static_cast<EdgeCategory>(c(i, j))) {
                    case EdgeCategory::Activating: layer.weights(i, j) = magnitude; break;
                    case EdgeCategory::Inhibiting: layer.weights(i, j) = -magnitude; break;
                    case EdgeCategory::Inactive:
                        layer.weights(i, j) = 0.0;
                        layer.mask(i, j) = 0.0;  // pruned, untrainable
                        break;
                }
            }
        net.layers.push_back(std::move(layer));
    }
    return net;
}

namespace {

constexpr char kViewMagic[4] = {'L', 'N', 'S', 'G'};
constexpr std::uint32_t kViewVersion = 1;

} // namespace

void save_view(const SparseGraphView& view, const std::filesystem::path& path) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw IoError("cannot open " + path.string() + " for writing");
    out.write(kViewMagic, 4);
    out.write(reinterpret_cast<const char*>(&kViewVersion), sizeof(kViewVersion));
    const auto n_levels = static_cast<std::uint32_t>(view.layer_sizes.size());
    out.write(reinterpret_cast<const char*>(&n_levels), sizeof(n_levels));
    for (int size : view.layer_sizes) {
        const auto s = static_cast<std::uint32_t>(size);
        out.write(reinterpret_cast<const char*>(&s), sizeof(s));
    }
    out.write(reinterpret_cast<const char*>(&view.threshold), sizeof(double));
    // Category codes in row-major layer order.
    for (const auto& c : view.categories)
        for (long i = 0; i < c.rows(); ++i)
            for (long j = 0; j < c.cols(); ++j)
                out.put(static_cast<char>(c(i, j)));
    if (!out) throw IoError("failed writing " + path.string());
}

SparseGraphView load_view(const std::filesystem::path& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open " + path.string());
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kViewMagic))
        throw IoError("not a sparse-graph view file: " + path.string());
    std::uint32_t version = 0;
    in.read(reinterpret_cast<char*>(&version), sizeof(version));
    if (version != kViewVersion) throw IoError("unsupported view file version");
    std::uint32_t n_levels = 0;
    in.read(reinterpret_cast<char*>(&n_levels), sizeof(n_levels));
    if (!in || n_levels < 2) throw IoError("corrupt view file header");

    SparseGraphView view;
    for (std::uint32_t l = 0; l < n_levels; ++l) {
        std::uint32_t size = 0;
        in.read(reinterpret_cast<char*>(&size), sizeof(size));
        view.layer_sizes.push_back(static_cast<int>(size));
    }
    in.read(reinterpret_cast<char*>(&view.threshold), sizeof(double));
    for (std::uint32_t l = 0; l + 1 < n_levels; ++l) {
        const bool last = (l + 2 == n_levels);
        view.layer_names.push_back(last ? "output" : "hidden " + std::to_string(l));
        view.activations.push_back(last ? Activation::Softmax : Activation::Relu);
        CategoryMatrix c(view.layer_sizes[l], view.layer_sizes[l + 1]);
        for (long i = 0; i < c.rows(); ++i)
            for (long j = 0; j < c.cols(); ++j) {
                const int byte = in.get();
                if (byte < 0) throw IoError("truncated view file: " + path.string());
                if (byte > 2) throw IoError("invalid category code in " + path.string());
                c(i, j) = static_cast<std::uint8_t>(byte);
            }
        view.categories.push_back(std::move(c));
    }
    if (in.get() != std::ifstream::traits_type::eof())
        throw IoError("trailing bytes in view file: " + path.string());
    return view;
}

} // namespace lightnn
