#include <doctest.h>

#include <zlib.h>

#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "lightnn/csv.hpp"
#include "lightnn/errors.hpp"
#include "lightnn/experiment.hpp"
#include "lightnn/idx.hpp"

using namespace lightnn;
namespace fs = std::filesystem;

namespace {

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buffer;
    buffer << in.rdbuf();
    return buffer.str();
}

// Full-size synthetic MNIST stand-in; lets the runners work offline.
fs::path synthetic_cache() {
    static const fs::path root = [] {
        const fs::path dir = fs::temp_directory_path() / "lightnn_exp_cache";
        fs::remove_all(dir);
        fs::create_directories(dir / "mnist");
        auto images = [&](int count, const char* name) {
            IdxImages raw;
            raw.count = count;
            raw.rows = 28;
            raw.cols = 28;
            raw.pixels.resize(static_cast<std::size_t>(count) * 784);
            for (std::size_t i = 0; i < raw.pixels.size(); ++i)
                raw.pixels[i] = static_cast<std::uint8_t>((i * 31) % 253);
            const auto bytes = encode_idx_images(raw);
            std::ofstream out(dir / "mnist" / name, std::ios::binary);
            out.write(reinterpret_cast<const char*>(bytes.data()),
                      static_cast<std::streamsize>(bytes.size()));
        };
        auto labels = [&](int count, const char* name) {
            std::vector<std::uint8_t> raw(static_cast<std::size_t>(count));
            for (int i = 0; i < count; ++i)
                raw[static_cast<std::size_t>(i)] = static_cast<std::uint8_t>(i % 10);
            const auto bytes = encode_idx_labels(raw);
            std::ofstream out(dir / "mnist" / name, std::ios::binary);
            out.write(reinterpret_cast<const char*>(bytes.data()),
                      static_cast<std::streamsize>(bytes.size()));
        };
        images(60000, "train-images");
        labels(60000, "train-labels");
        images(10000, "t10k-images");
        labels(10000, "t10k-labels");
        return dir;
    }();
    return root;
}

ExperimentConfig tiny_train_config(const fs::path& out) {
    ExperimentConfig c;
    c.name = "tiny";
    c.layer_sizes = {784, 16, 10};
    c.training.epochs = 1;
    c.training.rng_seed = 3;
    c.repeats = 2;
    c.cache_dir = synthetic_cache();
    c.offline = true;
    c.out_dir = out;
    return c;
}

int run_cli(const std::string& args) {
    const std::string command = std::string(LIGHTNN_CLI_PATH) + " " + args + " > /dev/null 2>&1";
    const int status = std::system(command.c_str());
    REQUIRE(status != -1);
    return WEXITSTATUS(status);
}

} // namespace

TEST_CASE("every preset survives a JSON round trip") {
    for (const auto& name : preset_names()) {
        const ExperimentConfig original = preset(name);
        const ExperimentConfig loaded = config_from_json(config_to_json(original));
        CHECK(loaded.name == original.name);
        CHECK(loaded.kind == original.kind);
        CHECK(loaded.layer_sizes == original.layer_sizes);
        CHECK(loaded.initializer.kind == original.initializer.kind);
        CHECK(loaded.training.epochs == original.training.epochs);
        CHECK(loaded.training.learning_rate == original.training.learning_rate);
        CHECK(loaded.repeats == original.repeats);
        CHECK(loaded.active_fractions == original.active_fractions);
        CHECK(loaded.study_lightnings == original.study_lightnings);
        CHECK(loaded.study_strengths == original.study_strengths);
        CHECK(loaded.curve_trials == original.curve_trials);
    }
    CHECK_THROWS_AS(preset("no-such-preset"), ConfigError);
}

TEST_CASE("config parsing rejects bad input") {
    CHECK_THROWS_AS(config_from_json("not json"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"schema_version\": 999}"), ConfigError);
    CHECK_THROWS_AS(config_from_json("{\"schema_version\": 1, \"repeats\": 0}"), ConfigError);
}

TEST_CASE("run_train writes artifacts and reproduces metrics.csv byte for byte") {
    const fs::path out = fs::temp_directory_path() / "lightnn_run_train";
    fs::remove_all(out);
    const auto config = tiny_train_config(out);
    run_train(config);

    CHECK(fs::exists(out / "metrics.csv"));
    CHECK(fs::exists(out / "timing.csv"));
    CHECK(fs::exists(out / "weights_0.bin"));
    CHECK(fs::exists(out / "weights_1.bin"));

    const auto manifest = load_manifest(out / "manifest.json");
    CHECK(manifest.repeat_seeds == std::vector<std::uint64_t>{3, 4});
    CHECK(manifest.config.name == "tiny");

    const auto table = read_csv(out / "metrics.csv");
    CHECK(table.rows.size() == 2);  // 2 repeats x 1 epoch

    const std::string first = slurp(out / "metrics.csv");
    const fs::path out2 = fs::temp_directory_path() / "lightnn_run_train_again";
    fs::remove_all(out2);
    auto config2 = config;
    config2.out_dir = out2;
    run_train(config2);
    CHECK(slurp(out2 / "metrics.csv") == first);

    fs::remove_all(out);
    fs::remove_all(out2);
}

TEST_CASE("run_cdf exports a per-layer cdf table and run_plot consumes it") {
    const fs::path train_out = fs::temp_directory_path() / "lightnn_run_cdf_src";
    fs::remove_all(train_out);
    auto config = tiny_train_config(train_out);
    config.repeats = 1;
    run_train(config);

    const fs::path cdf_out = fs::temp_directory_path() / "lightnn_run_cdf";
    fs::remove_all(cdf_out);
    run_cdf(train_out / "weights_0.bin", cdf_out);
    const auto table =
        read_csv(cdf_out / "cdf.csv", {"layer", "abs_weight", "cumulative_fraction"});
    CHECK(table.rows.size() == 784 * 16 + 16 * 10);

    const auto plot_dir = run_plot(cdf_out);
    CHECK(fs::exists(plot_dir / "series.csv"));
    CHECK(fs::exists(plot_dir / "plot_manifest.json"));

    // train runs are plottable too
    const auto train_plot = run_plot(train_out);
    const auto series = read_csv(train_plot / "series.csv", {"series", "x", "y"});
    CHECK(series.rows.size() == 1);

    CHECK_THROWS_AS(run_cdf(cdf_out / "missing.bin", cdf_out), ConfigError);

    fs::remove_all(train_out);
    fs::remove_all(cdf_out);
}

TEST_CASE("run_prune_reinit writes per-fraction views, children and a summary table") {
    const fs::path out = fs::temp_directory_path() / "lightnn_run_prune";
    fs::remove_all(out);
    auto config = tiny_train_config(out);
    config.kind = ExperimentConfig::Kind::PruneReinit;
    config.repeats = 1;
    config.active_fractions = {0.5};
    config.retrain_epochs = 1;
    run_prune_reinit(config);

    CHECK(fs::exists(out / "parent_weights.bin"));
    CHECK(fs::exists(out / "view_0.sg"));
    CHECK(fs::exists(out / "child_weights_0.bin"));

    const auto table = read_csv(out / "prune_reinit.csv");
    REQUIRE(table.rows.size() == 2);  // reinit + retrained rows
    CHECK(table.rows[0][1] == "reinit");
    CHECK(table.rows[1][1] == "retrained");
    // a freshly reinitialized child matches its parent view exactly;
    // columns: fraction, stage, rate per layer (2), rate_overall, ...
    CHECK(table.rows[0][4] == "0");

    const auto view = load_view(out / "view_0.sg");
    const long total = 784 * 16 + 16 * 10;
    CHECK(view.active_count() == static_cast<long>(std::ceil(0.5 * total)));

    auto bad = config;
    bad.active_fractions = {1.5};
    CHECK_THROWS_AS(run_prune_reinit(bad), ConfigError);
    fs::remove_all(out);
}

TEST_CASE("run_path_curve honours a custom grid and plots") {
    const fs::path out = fs::temp_directory_path() / "lightnn_run_curve";
    fs::remove_all(out);
    auto config = tiny_train_config(out);
    config.kind = ExperimentConfig::Kind::PathCurve;
    const long total = 784 * 16 + 16 * 10;
    config.curve_grid = {100, total / 2, total};
    config.curve_trials = 3;
    run_path_curve(config);

    const auto table = read_csv(out / "path_curve.csv",
                                {"k", "total_edge_fraction", "mean_path_fraction",
                                 "std_path_fraction"});
    REQUIRE(table.rows.size() == 3);
    CHECK(std::stod(table.rows[2][2]) == doctest::Approx(1.0));  // all edges active

    const auto plot_dir = run_plot(out);
    CHECK(fs::exists(plot_dir / "series.csv"));

    auto bad = config;
    bad.curve_grid = {total + 1};
    CHECK_THROWS_AS(run_path_curve(bad), ConfigError);
    fs::remove_all(out);
}

TEST_CASE("run_param_study covers the grid and validates it") {
    const fs::path out = fs::temp_directory_path() / "lightnn_run_study";
    fs::remove_all(out);
    auto config = tiny_train_config(out);
    config.kind = ExperimentConfig::Kind::ParamStudy;
    config.repeats = 1;
    config.study_lightnings = {10, 50};
    config.study_strengths = {0.5};
    run_param_study(config);

    const auto table = read_csv(out / "param_study.csv",
                                {"n_lightnings", "strength", "mean_best_accuracy",
                                 "wrong_answer_capped"});
    REQUIRE(table.rows.size() == 2);
    CHECK(std::stod(table.rows[0][3]) <= 0.10);  // capped

    auto bad = config;
    bad.study_lightnings.clear();
    CHECK_THROWS_AS(run_param_study(bad), ConfigError);
    fs::remove_all(out);
}

TEST_CASE("run_plot rejects a directory with no recognizable artifacts") {
    const fs::path empty = fs::temp_directory_path() / "lightnn_plot_empty";
    fs::remove_all(empty);
    fs::create_directories(empty);
    CHECK_THROWS_AS(run_plot(empty), IoError);
    fs::remove_all(empty);
}

TEST_CASE("csv reader enforces the expected header") {
    const fs::path p = fs::temp_directory_path() / "lightnn_schema.csv";
    {
        CsvWriter csv(p, {"a", "b"});
        csv.cell(1L).cell(2L).end_row();
    }
    CHECK_THROWS_AS(read_csv(p, {"a", "c"}), IoError);
    const auto table = read_csv(p, {"a", "b"});
    CHECK(table.rows.size() == 1);
    fs::remove(p);
}

TEST_CASE("cli exit codes") {
    SUBCASE("usage errors exit with 2") {
        CHECK(run_cli("train") == 2);                       // no config or preset
        CHECK(run_cli("train --preset no-such-preset") == 2);
        CHECK(run_cli("cdf --weights /nonexistent.bin --out /tmp/lightnn_cli_cdf") == 2);
    }
    SUBCASE("plot on an empty directory exits with 2") {
        const fs::path empty = fs::temp_directory_path() / "lightnn_cli_plot_empty";
        fs::remove_all(empty);
        fs::create_directories(empty);
        CHECK(run_cli("plot " + empty.string()) == 2);
        fs::remove_all(empty);
    }
    SUBCASE("successful help exits with 0") {
        CHECK(run_cli("--help") == 0);
        CHECK(run_cli("presets") == 0);
    }
}
