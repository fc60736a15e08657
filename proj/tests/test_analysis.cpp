#include <doctest.h>

#include <algorithm>
#include <cmath>

#include "helpers.hpp"
#include "lightnn/analysis.hpp"
#include "lightnn/errors.hpp"
#include "lightnn/initializers.hpp"

using namespace lightnn;

TEST_CASE("change_rate is zero when the child still matches the parent") {
    const auto view = testing::random_view({4, 5, 3}, 0.5, 5);
    const auto child = reinit_from_view(view, 0.2);
    const auto report = change_rate(view, child);
    CHECK(report.overall_rate == 0.0);
    for (double r : report.per_layer_rate) CHECK(r == 0.0);
}

TEST_CASE("change_rate hand example: one of two active edges flips") {
    SparseGraphView view;
    view.layer_sizes = {2, 1};
    view.layer_names = {"output"};
    view.activations = {Activation::Softmax};
    CategoryMatrix c(2, 1);
    c(0, 0) = 1;  // activating
    c(1, 0) = 2;  // inhibiting
    Matrix w(2, 1);
    w << 0.4, -0.4;
    view.categories.push_back(c);
    view.source_weights.push_back(w);

    DenseNetwork child = DenseNetwork::mlp({2, 1});
    child.layers[0].weights(0, 0) = -0.3;  // flipped
    child.layers[0].weights(1, 0) = -0.2;  // kept
    CHECK(change_rate(view, child).overall_rate == doctest::Approx(0.5));

    // a trained weight of exactly zero counts as changed
    child.layers[0].weights(0, 0) = 0.0;
    CHECK(change_rate(view, child).overall_rate == doctest::Approx(0.5));
}

TEST_CASE("pearson against the direct-formula oracle") {
    SUBCASE("perfect positive and negative correlation") {
        const std::vector<double> x{1, 2, 3, 4};
        const std::vector<double> up{2, 4, 6, 8};
        const std::vector<double> down{8, 6, 4, 2};
        CHECK(*pearson(x, up) == doctest::Approx(1.0).epsilon(1e-12));
        CHECK(*pearson(x, down) == doctest::Approx(-1.0).epsilon(1e-12));
    }
    SUBCASE("textbook values") {
        const std::vector<double> x{1, 2, 3, 5};
        const std::vector<double> y{2, 4, 5, 9};
        const double expected = static_cast<double>(testing::pearson_direct(x, y));
        CHECK(*pearson(x, y) == doctest::Approx(expected).epsilon(1e-12));
    }
    SUBCASE("random data matches the oracle") {
        std::mt19937_64 gen(17);
        std::normal_distribution<double> dist;
        std::vector<double> x(500), y(500);
        for (std::size_t i = 0; i < x.size(); ++i) {
            x[i] = dist(gen);
            y[i] = 0.3 * x[i] + dist(gen);
        }
        const double expected = static_cast<double>(testing::pearson_direct(x, y));
        const double got = *pearson(x, y);
        CHECK(got == doctest::Approx(expected).epsilon(1e-12));
        CHECK(std::abs(got) <= 1.0);
    }
    SUBCASE("zero variance gives no value") {
        const std::vector<double> flat{3, 3, 3};
        const std::vector<double> y{1, 2, 3};
        CHECK_FALSE(pearson(flat, y).has_value());
        CHECK_FALSE(pearson(y, flat).has_value());
    }
    SUBCASE("affine transforms leave r unchanged") {
        const std::vector<double> x{0.1, 0.9, 0.4, 0.7, 0.2};
        const std::vector<double> y{1.0, 0.2, 0.6, 0.1, 0.9};
        std::vector<double> x2(x.size());
        std::transform(x.begin(), x.end(), x2.begin(),
                       [](double v) { return 5.0 * v - 3.0; });
        CHECK(*pearson(x, y) == doctest::Approx(*pearson(x2, y)).epsilon(1e-12));
    }
    SUBCASE("input validation") {
        const std::vector<double> one{1.0};
        const std::vector<double> two{1.0, 2.0};
        const std::vector<double> three{1.0, 2.0, 3.0};
        CHECK_THROWS_AS(pearson(one, one), InputError);
        CHECK_THROWS_AS(pearson(two, three), InputError);
    }
}

TEST_CASE("fill_pearson recovers the per-layer correlation over active edges") {
    const auto view = testing::random_view({6, 8, 4}, 0.5, 31);
    // child = parent weights scaled: correlation must be exactly 1 per layer
    DenseNetwork child = DenseNetwork::mlp(view.layer_sizes);
    for (std::size_t l = 0; l < view.source_weights.size(); ++l)
        child.layers[l].weights = view.source_weights[l] * 0.7;
    auto report = change_rate(view, child);
    fill_pearson(report, view, child);
    REQUIRE(report.overall_pearson.has_value());
    CHECK(*report.overall_pearson == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("cdf_by_layer is a proper empirical distribution") {
    DenseNetwork net = DenseNetwork::mlp({1, 3});
    net.layers[0].weights << 0.5, -0.2, 0.2;
    const auto series = cdf_by_layer(net);
    REQUIRE(series.size() == 1);
    REQUIRE(series[0].values.size() == 3);
    CHECK(series[0].values[0] == doctest::Approx(0.2));
    CHECK(series[0].values[2] == doctest::Approx(0.5));
    CHECK(std::is_sorted(series[0].values.begin(), series[0].values.end()));
    CHECK(series[0].cumulative.back() == doctest::Approx(1.0));
    CHECK(series[0].cumulative[0] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("cdf of a glorot layer is close to the uniform law") {
    auto net = DenseNetwork::mlp({300, 300});
    InitializerSpec spec;
    spec.rng_seed = 4;
    apply_initializer(net, spec);
    const auto series = cdf_by_layer(net);
    const double bound = std::sqrt(6.0 / 600.0);
    // |U(-b,b)| is uniform on [0,b]; Kolmogorov distance should be tiny
    double worst = 0.0;
    for (std::size_t i = 0; i < series[0].values.size(); ++i)
        worst = std::max(worst, std::abs(series[0].cumulative[i] - series[0].values[i] / bound));
    CHECK(worst < 0.01);
}

TEST_CASE("bimodal gap detector") {
    SUBCASE("two tight clusters separated by a wide gap") {
        CdfSeries s;
        s.layer_name = "x";
        for (int i = 0; i < 50; ++i) s.values.push_back(0.01 + 1e-5 * i);
        for (int i = 0; i < 50; ++i) s.values.push_back(0.50 + 1e-5 * i);
        std::sort(s.values.begin(), s.values.end());
        for (std::size_t i = 0; i < s.values.size(); ++i)
            s.cumulative.push_back(static_cast<double>(i + 1) / s.values.size());
        CHECK(has_bimodal_gap(s));
    }
    SUBCASE("uniform spread has no gap") {
        CdfSeries s;
        s.layer_name = "x";
        for (int i = 0; i < 200; ++i) s.values.push_back(0.001 * (i + 1));
        for (std::size_t i = 0; i < s.values.size(); ++i)
            s.cumulative.push_back(static_cast<double>(i + 1) / s.values.size());
        CHECK_FALSE(has_bimodal_gap(s));
    }
    SUBCASE("lightning-style weights show the gap, glorot does not") {
        // sized so both plateaus (zeros and the seeded 0.5s) hold over 30%
        // of each layer's mass
        auto lit = DenseNetwork::mlp({10, 8, 6});
        InitializerSpec spec;
        spec.kind = InitializerSpec::Kind::Lightning;
        spec.lightning.n_lightnings = 40;
        spec.lightning.rng_seed = 6;
        apply_initializer(lit, spec);
        const auto lit_cdf = cdf_by_layer(lit);
        // every layer holds only 0 and 0.5 magnitudes
        for (const auto& s : lit_cdf) CHECK(has_bimodal_gap(s));

        auto smooth = DenseNetwork::mlp({50, 30, 10});
        InitializerSpec g;
        g.rng_seed = 6;
        apply_initializer(smooth, g);
        for (const auto& s : cdf_by_layer(smooth)) CHECK_FALSE(has_bimodal_gap(s));
    }
}

TEST_CASE("path_curve endpoints and determinism") {
    const std::vector<int> sizes{10, 8, 6};
    const long total = 10 * 8 + 8 * 6;
    InitializerSpec spec;
    spec.rng_seed = 12;

    const auto curve = path_curve(sizes, spec, {1, total / 2, total}, 8, 1);
    REQUIRE(curve.grid.size() == 3);
    // with every edge active, every edge is on a complete path
    CHECK(curve.mean_fraction[2] == doctest::Approx(1.0));
    // a single active edge in a multi-layer net cannot span input to output
    CHECK(curve.mean_fraction[0] == doctest::Approx(0.0));
    CHECK(curve.std_fraction[2] == doctest::Approx(0.0));

    const auto threaded = path_curve(sizes, spec, {1, total / 2, total}, 8, 4);
    for (std::size_t i = 0; i < curve.grid.size(); ++i) {
        CHECK(curve.mean_fraction[i] == threaded.mean_fraction[i]);
        CHECK(curve.std_fraction[i] == threaded.std_fraction[i]);
    }
}

TEST_CASE("paths_vs_accuracy hook records the full-k fraction as 1") {
    auto net = testing::random_small_net({6, 5, 3}, 44);
    const long total = 6 * 5 + 5 * 3;
    auto hook = paths_vs_accuracy_hook({static_cast<int>(total)});
    ExperimentRecord record;
    hook(net, record);
    REQUIRE(record.path_fractions.size() == 1);
    CHECK(record.path_fractions[0].first == total);
    CHECK(record.path_fractions[0].second == doctest::Approx(1.0));
}
