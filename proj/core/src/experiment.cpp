#include "lightnn/experiment.hpp"

#include <atomic>
#include <chrono>
#include <cmath>
#include <ctime>
#include <fstream>
#include <mutex>
#include <thread>

#include <nlohmann/json.hpp>

#include "lightnn/csv.hpp"
#include "lightnn/dataset.hpp"
#include "lightnn/errors.hpp"

namespace lightnn {

namespace {

using nlohmann::json;

constexpr const char* kToolkitVersion = "0.1.0";

std::string kind_to_string(ExperimentConfig::Kind kind) {
    switch (kind) {
        case ExperimentConfig::Kind::Train: return "train";
        case ExperimentConfig::Kind::PruneReinit: return "prune-reinit";
        case ExperimentConfig::Kind::PathCurve: return "path-curve";
        case ExperimentConfig::Kind::ParamStudy: return "param-study";
        case ExperimentConfig::Kind::CdfExport: return "cdf";
    }
    return "train";
}

ExperimentConfig::Kind kind_from_string(const std::string& s) {
    if (s == "train") return ExperimentConfig::Kind::Train;
    if (s == "prune-reinit") return ExperimentConfig::Kind::PruneReinit;
    if (s == "path-curve") return ExperimentConfig::Kind::PathCurve;
    if (s == "param-study") return ExperimentConfig::Kind::ParamStudy;
    if (s == "cdf") return ExperimentConfig::Kind::CdfExport;
    throw ConfigError("unknown experiment kind: " + s);
}

InitializerSpec::Kind init_kind_from_string(const std::string& s) {
    if (s == "glorot-uniform") return InitializerSpec::Kind::GlorotUniform;
    if (s == "he-normal") return InitializerSpec::Kind::HeNormal;
    if (s == "truncated-normal") return InitializerSpec::Kind::TruncatedNormal;
    if (s == "lightning") return InitializerSpec::Kind::Lightning;
    throw ConfigError("unknown initializer kind: " + s);
}

json initializer_to_json(const InitializerSpec& spec) {
    json j;
    j["kind"] = spec.name();
    j["seed"] = spec.rng_seed;
    if (spec.kind == InitializerSpec::Kind::TruncatedNormal) j["std"] = spec.truncated_std;
    if (spec.kind == InitializerSpec::Kind::Lightning) {
        j["n_lightnings"] = spec.lightning.n_lightnings;
        j["strength"] = spec.lightning.strength;
    }
    return j;
}

InitializerSpec initializer_from_json(const json& j) {
    InitializerSpec spec;
    spec.kind = init_kind_from_string(j.at("kind").get<std::string>());
    spec.rng_seed = j.value("seed", std::uint64_t{0});
    spec.truncated_std = j.value("std", 0.01);
    spec.lightning.n_lightnings = j.value("n_lightnings", 1000);
    spec.lightning.strength = j.value("strength", 0.5);
    spec.lightning.rng_seed = spec.rng_seed;
    return spec;
}

json config_to_json_obj(const ExperimentConfig& c) {
    json j;
    j["schema_version"] = kSchemaVersion;
    j["name"] = c.name;
    j["kind"] = kind_to_string(c.kind);
    j["layer_sizes"] = c.layer_sizes;
    j["initializer"] = initializer_to_json(c.initializer);
    j["training"] = {{"learning_rate", c.training.learning_rate},
                     {"batch_size", c.training.batch_size},
                     {"epochs", c.training.epochs},
                     {"seed", c.training.rng_seed},
                     {"shuffle_each_epoch", c.training.shuffle_each_epoch}};
    j["repeats"] = c.repeats;
    j["hook_k_values"] = c.hook_k_values;
    j["active_fractions"] = c.active_fractions;
    j["reinit_magnitude"] = c.reinit_magnitude;
    j["retrain_epochs"] = c.retrain_epochs;
    j["curve_grid"] = c.curve_grid;
    j["curve_trials"] = c.curve_trials;
    j["study_lightnings"] = c.study_lightnings;
    j["study_strengths"] = c.study_strengths;
    j["out_dir"] = c.out_dir.string();
    j["cache_dir"] = c.cache_dir.string();
    j["offline"] = c.offline;
    j["threads"] = c.threads;
    return j;
}

ExperimentConfig config_from_json_obj(const json& j) {
    if (j.value("schema_version", 0) != kSchemaVersion)
        throw ConfigError("config schema version mismatch");
    ExperimentConfig c;
    c.name = j.value("name", "unnamed");
    c.kind = kind_from_string(j.value("kind", "train"));
    c.layer_sizes = j.value("layer_sizes", std::vector<int>{784, 300, 100, 10});
    if (j.contains("initializer")) c.initializer = initializer_from_json(j.at("initializer"));
    if (j.contains("training")) {
        const auto& t = j.at("training");
        c.training.learning_rate = t.value("learning_rate", 0.05);
        c.training.batch_size = t.value("batch_size", 100);
        c.training.epochs = t.value("epochs", 30);
        c.training.rng_seed = t.value("seed", std::uint64_t{0});
        c.training.shuffle_each_epoch = t.value("shuffle_each_epoch", true);
    }
    c.repeats = j.value("repeats", 1);
    if (c.repeats < 1) throw ConfigError("repeats must be >= 1");
    c.hook_k_values = j.value("hook_k_values", std::vector<int>{});
    c.active_fractions = j.value("active_fractions", std::vector<double>{0.1, 0.2, 0.3, 0.4, 0.5});
    c.reinit_magnitude = j.value("reinit_magnitude", 0.1);
    c.retrain_epochs = j.value("retrain_epochs", 0);
    c.curve_grid = j.value("curve_grid", std::vector<long>{});
    c.curve_trials = j.value("curve_trials", 50);
    c.study_lightnings = j.value("study_lightnings", std::vector<int>{});
    c.study_strengths = j.value("study_strengths", std::vector<double>{});
    c.out_dir = j.value("out_dir", std::string("runs"));
    c.cache_dir = j.value("cache_dir", std::string(""));
    c.offline = j.value("offline", false);
    c.threads = j.value("threads", 1);
    return c;
}

std::string timestamp_now() {
    const auto now = std::chrono::system_clock::now();
    const std::time_t t = std::chrono::system_clock::to_time_t(now);
    char buffer[32];
    std::tm tm_utc{};
    gmtime_r(&t, &tm_utc);
    std::strftime(buffer, sizeof(buffer), "%Y-%m-%dT%H:%M:%SZ", &tm_utc);
    return buffer;
}

std::pair<Dataset, Dataset> load_data(const ExperimentConfig& config) {
    const auto cache = config.cache_dir.empty() ? default_cache_dir() : config.cache_dir;
    return fetch_or_load(cache, config.offline);
}

std::string sanitize(const std::string& name) {
    std::string out = name;
    for (char& ch : out)
        if (ch == ' ') ch = '_';
    return out;
}

const std::vector<std::string> kMetricsHeader = {
    "repeat", "epoch",    "train_loss",         "train_accuracy",
    "val_accuracy", "path_fraction_1000", "path_fraction_10000"};

void write_metrics_csv(const std::filesystem::path& path,
                       const std::vector<std::vector<ExperimentRecord>>& per_repeat) {
    CsvWriter csv(path, kMetricsHeader);
    for (std::size_t r = 0; r < per_repeat.size(); ++r)
        for (const auto& record : per_repeat[r]) {
            csv.cell(static_cast<long>(r)).cell(record.epoch);
            csv.cell(record.train_loss).cell(record.train_accuracy).cell(record.val_accuracy);
            for (int k : {1000, 10000}) {
                if (auto f = record.path_fraction(k))
                    csv.cell(*f);
                else
                    csv.blank();
            }
            csv.end_row();
        }
}

// Wall times are kept out of metrics.csv so a re-run reproduces it
// byte-identically; they land here instead.
void write_timing_csv(const std::filesystem::path& path,
                      const std::vector<std::vector<ExperimentRecord>>& per_repeat) {
    CsvWriter csv(path, {"repeat", "epoch", "wall_time_s"});
    for (std::size_t r = 0; r < per_repeat.size(); ++r)
        for (const auto& record : per_repeat[r])
            csv.cell(static_cast<long>(r)).cell(record.epoch).cell(record.wall_time_s).end_row();
}

RunManifest make_manifest(const ExperimentConfig& config) {
    RunManifest manifest;
    manifest.config = config;
    manifest.toolkit_version = kToolkitVersion;
    manifest.started_at = timestamp_now();
    return manifest;
}

void finish_manifest(RunManifest& manifest, const std::filesystem::path& dir) {
    manifest.finished_at = timestamp_now();
    save_manifest(manifest, dir / "manifest.json");
}

} // namespace

std::string config_to_json(const ExperimentConfig& config) {
    return config_to_json_obj(config).dump(2) + "\n";
}

ExperimentConfig config_from_json(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config JSON: ") + e.what());
    }
    try {
        return config_from_json_obj(j);
    } catch (const json::exception& e) {
        throw ConfigError(std::string("invalid config contents: ") + e.what());
    }
}

ExperimentConfig load_config(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw ConfigError("cannot open config file " + path.string());
    return config_from_json(
        std::string(std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()));
}

std::vector<std::string> preset_names() {
    return {"mnist-lenet-300-100",      "mnist-lenet-300-100-lightning",
            "mnist-lenet-300-100-desk", "mnist-prune-reinit",
            "mnist-prune-reinit-desk",  "mnist-path-curve",
            "mnist-path-curve-desk",    "mnist-param-study",
            "mnist-param-study-desk"};
}

ExperimentConfig preset(const std::string& name) {
    ExperimentConfig c;
    c.name = name;
    c.hook_k_values = {1000, 10000};
    if (name == "mnist-lenet-300-100") {
        // Full-scale MNIST defaults: Glorot, SGD 0.05, batch 100, 30 epochs.
        return c;
    }
    if (name == "mnist-lenet-300-100-lightning") {
        c.initializer.kind = InitializerSpec::Kind::Lightning;
        return c;
    }
    if (name == "mnist-lenet-300-100-desk") {
        c.training.epochs = 2;
        c.hook_k_values.clear();
        return c;
    }
    if (name == "mnist-prune-reinit" || name == "mnist-prune-reinit-desk") {
        c.kind = ExperimentConfig::Kind::PruneReinit;
        c.hook_k_values.clear();
        if (name == "mnist-prune-reinit-desk") {
            c.training.epochs = 3;
            c.retrain_epochs = 2;
        } else {
            c.retrain_epochs = 10;
        }
        return c;
    }
    if (name == "mnist-path-curve" || name == "mnist-path-curve-desk") {
        c.kind = ExperimentConfig::Kind::PathCurve;
        c.hook_k_values.clear();
        c.curve_trials = name == "mnist-path-curve-desk" ? 10 : 250;
        return c;
    }
    if (name == "mnist-param-study" || name == "mnist-param-study-desk") {
        c.kind = ExperimentConfig::Kind::ParamStudy;
        c.hook_k_values.clear();
        c.initializer.kind = InitializerSpec::Kind::Lightning;
        if (name == "mnist-param-study-desk") {
            c.study_lightnings = {100, 1000};
            c.study_strengths = {0.05, 0.5};
            c.training.epochs = 2;
            c.repeats = 1;
        } else {
            c.study_lightnings = {100, 300, 1000, 3000, 10000};
            c.study_strengths = {0.05, 0.15, 0.5, 1.5, 5.0};
            c.training.epochs = 100;
            c.repeats = 5;
        }
        return c;
    }
    throw ConfigError("unknown preset: " + name);
}

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path) {
    json j;
    j["schema_version"] = manifest.schema_version;
    j["toolkit_version"] = manifest.toolkit_version;
    j["config"] = config_to_json_obj(manifest.config);
    j["repeat_seeds"] = manifest.repeat_seeds;
    j["artifacts"] = manifest.artifacts;
    j["started_at"] = manifest.started_at;
    j["finished_at"] = manifest.finished_at;
    std::ofstream out(path);
    if (!out) throw IoError("cannot write " + path.string());
    out << j.dump(2) << "\n";
}

RunManifest load_manifest(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw IoError("cannot open manifest " + path.string());
    json j;
    try {
        in >> j;
    } catch (const json::exception& e) {
        throw IoError(std::string("invalid manifest: ") + e.what());
    }
    RunManifest manifest;
    manifest.schema_version = j.value("schema_version", 0);
    if (manifest.schema_version != kSchemaVersion)
        throw IoError("manifest schema version mismatch in " + path.string());
    manifest.toolkit_version = j.value("toolkit_version", "");
    manifest.config = config_from_json_obj(j.at("config"));
    manifest.repeat_seeds = j.value("repeat_seeds", std::vector<std::uint64_t>{});
    manifest.artifacts = j.value("artifacts", std::vector<std::string>{});
    manifest.started_at = j.value("started_at", "");
    manifest.finished_at = j.value("finished_at", "");
    return manifest;
}

namespace {

struct RepeatResult {
    std::vector<ExperimentRecord> records;
    DenseNetwork net;
};

RepeatResult train_one_repeat(const ExperimentConfig& config, int repeat, const Dataset& train_set,
                              const Dataset& test_set) {
    DenseNetwork net = DenseNetwork::mlp(config.layer_sizes);
    InitializerSpec spec = config.initializer;
    spec.rng_seed += static_cast<std::uint64_t>(repeat);
    spec.lightning.rng_seed += static_cast<std::uint64_t>(repeat);
    apply_initializer(net, spec);

    TrainConfig tc = config.training;
    tc.rng_seed += static_cast<std::uint64_t>(repeat);

    std::vector<EpochHook> hooks;
    if (!config.hook_k_values.empty()) hooks.push_back(paths_vs_accuracy_hook(config.hook_k_values));

    RepeatResult result;
    result.records = train(net, train_set, test_set, tc, hooks);
    result.net = std::move(net);
    return result;
}

double best_val_accuracy(const std::vector<ExperimentRecord>& records) {
    double best = 0.0;
    for (const auto& r : records) best = std::max(best, r.val_accuracy);
    return best;
}

} // namespace

std::filesystem::path run_train(const ExperimentConfig& config) {
    const auto [train_set, test_set] = load_data(config);
    std::filesystem::create_directories(config.out_dir);
    RunManifest manifest = make_manifest(config);

    std::vector<RepeatResult> results(static_cast<std::size_t>(config.repeats));
    for (int r = 0; r < config.repeats; ++r)
        manifest.repeat_seeds.push_back(config.training.rng_seed + static_cast<std::uint64_t>(r));

    const int workers = std::max(1, std::min(config.threads, config.repeats));
    if (workers == 1) {
        for (int r = 0; r < config.repeats; ++r)
            results[static_cast<std::size_t>(r)] =
                train_one_repeat(config, r, train_set, test_set);
    } else {
        std::atomic<int> next{0};
        std::vector<std::thread> pool;
        std::exception_ptr error;
        std::mutex error_mutex;
        for (int w = 0; w < workers; ++w)
            pool.emplace_back([&] {
                for (int r = next.fetch_add(1); r < config.repeats; r = next.fetch_add(1)) {
                    try {
                        results[static_cast<std::size_t>(r)] =
                            train_one_repeat(config, r, train_set, test_set);
                    } catch (...) {
                        std::lock_guard lock(error_mutex);
                        if (!error) error = std::current_exception();
                    }
                }
            });
        for (auto& t : pool) t.join();
        if (error) std::rethrow_exception(error);
    }

    std::vector<std::vector<ExperimentRecord>> per_repeat;
    for (int r = 0; r < config.repeats; ++r) {
        auto& result = results[static_cast<std::size_t>(r)];
        const auto weights_name = "weights_" + std::to_string(r) + ".bin";
        save_network(result.net, config.out_dir / weights_name);
        manifest.artifacts.push_back(weights_name);
        per_repeat.push_back(std::move(result.records));
    }
    write_metrics_csv(config.out_dir / "metrics.csv", per_repeat);
    write_timing_csv(config.out_dir / "timing.csv", per_repeat);
    manifest.artifacts.insert(manifest.artifacts.begin(), {"metrics.csv", "timing.csv"});
    finish_manifest(manifest, config.out_dir);
    return config.out_dir;
}

std::filesystem::path run_prune_reinit(const ExperimentConfig& config) {
    for (double f : config.active_fractions)
        if (!(f > 0.0) || f > 1.0) throw ConfigError("active fractions must lie in (0, 1]");

    const auto [train_set, test_set] = load_data(config);
    std::filesystem::create_directories(config.out_dir);
    RunManifest manifest = make_manifest(config);
    manifest.repeat_seeds.push_back(config.training.rng_seed);

    RepeatResult parent = train_one_repeat(config, 0, train_set, test_set);
    save_network(parent.net, config.out_dir / "parent_weights.bin");
    const double parent_accuracy = best_val_accuracy(parent.records);

    std::vector<std::string> header = {"active_fraction", "stage"};
    for (const auto& name : parent.net.layer_names) header.push_back("rate_" + sanitize(name));
    header.push_back("rate_overall");
    for (const auto& name : parent.net.layer_names) header.push_back("pearson_" + sanitize(name));
    header.insert(header.end(), {"pearson_overall", "accuracy", "parent_accuracy"});
    CsvWriter csv(config.out_dir / "prune_reinit.csv", header);

    auto write_row = [&](double fraction, const std::string& stage,
                         const ChangeRateReport& report, double accuracy) {
        csv.cell(fraction).cell(stage);
        for (double rate : report.per_layer_rate) csv.cell(rate);
        csv.cell(report.overall_rate);
        for (const auto& p : report.per_layer_pearson) {
            if (p)
                csv.cell(*p);
            else
                csv.blank();
        }
        if (report.overall_pearson)
            csv.cell(*report.overall_pearson);
        else
            csv.blank();
        csv.cell(accuracy).cell(parent_accuracy);
        csv.end_row();
    };

    const long total = parent.net.total_edges();
    for (std::size_t i = 0; i < config.active_fractions.size(); ++i) {
        const double fraction = config.active_fractions[i];
        const long k = static_cast<long>(std::ceil(fraction * static_cast<double>(total)));
        SparseGraphView view = categorize_top_k(parent.net, k);
        save_view(view, config.out_dir / ("view_" + std::to_string(i) + ".sg"));

        DenseNetwork child = reinit_from_view(view, config.reinit_magnitude);
        child.layer_names = parent.net.layer_names;
        {
            ChangeRateReport fresh = change_rate(view, child);
            fill_pearson(fresh, view, child);
            write_row(fraction, "reinit", fresh, evaluate(child, test_set.images, test_set.labels));
        }

        // Retrain with the parent's setup; only epochs may be overridden.
        TrainConfig tc = config.training;
        if (config.retrain_epochs > 0) tc.epochs = config.retrain_epochs;
        tc.rng_seed = config.training.rng_seed + 1 + static_cast<std::uint64_t>(i);
        auto records = train(child, train_set, test_set, tc);

        ChangeRateReport trained = change_rate(view, child);
        fill_pearson(trained, view, child);
        trained.child_accuracy = best_val_accuracy(records);
        write_row(fraction, "retrained", trained, trained.child_accuracy);
        save_network(child, config.out_dir / ("child_weights_" + std::to_string(i) + ".bin"));
    }

    manifest.artifacts = {"prune_reinit.csv", "parent_weights.bin"};
    finish_manifest(manifest, config.out_dir);
    return config.out_dir;
}

std::filesystem::path run_path_curve(const ExperimentConfig& config) {
    DenseNetwork probe = DenseNetwork::mlp(config.layer_sizes);
    const long total = probe.total_edges();

    std::vector<long> grid = config.curve_grid;
    if (grid.empty()) {
        // Default grid: fine steps through the transition band, coarse above.
        for (double percent : {0.1, 0.5}) grid.push_back(static_cast<long>(total * percent / 100.0));
        for (double percent = 1.0; percent <= 10.0; percent += 0.5)
            grid.push_back(static_cast<long>(total * percent / 100.0));
        for (double percent : {15.0, 20.0, 30.0, 50.0, 100.0})
            grid.push_back(static_cast<long>(total * percent / 100.0));
    }
    for (long k : grid)
        if (k > total) throw ConfigError("curve grid value exceeds total edge count");

    std::filesystem::create_directories(config.out_dir);
    RunManifest manifest = make_manifest(config);

    const PathCurve curve = path_curve(config.layer_sizes, config.initializer, grid,
                                       config.curve_trials, config.threads);

    CsvWriter csv(config.out_dir / "path_curve.csv",
                  {"k", "total_edge_fraction", "mean_path_fraction", "std_path_fraction"});
    for (std::size_t g = 0; g < curve.grid.size(); ++g) {
        csv.cell(curve.grid[g])
            .cell(static_cast<double>(curve.grid[g]) / static_cast<double>(total))
            .cell(curve.mean_fraction[g])
            .cell(curve.std_fraction[g]);
        csv.end_row();
    }
    manifest.artifacts = {"path_curve.csv"};
    finish_manifest(manifest, config.out_dir);
    return config.out_dir;
}

std::filesystem::path run_param_study(const ExperimentConfig& config) {
    if (config.study_lightnings.empty() || config.study_strengths.empty())
        throw ConfigError("param study needs lightning and strength grids");

    const auto [train_set, test_set] = load_data(config);
    std::filesystem::create_directories(config.out_dir);
    RunManifest manifest = make_manifest(config);

    CsvWriter csv(config.out_dir / "param_study.csv",
                  {"n_lightnings", "strength", "mean_best_accuracy", "wrong_answer_capped"});
    for (int n : config.study_lightnings)
        for (double strength : config.study_strengths) {
            double accuracy_sum = 0.0;
            for (int r = 0; r < config.repeats; ++r) {
                ExperimentConfig cell = config;
                cell.initializer.kind = InitializerSpec::Kind::Lightning;
                cell.initializer.lightning.n_lightnings = n;
                cell.initializer.lightning.strength = strength;
                accuracy_sum +=
                    best_val_accuracy(train_one_repeat(cell, r, train_set, test_set).records);
            }
            const double mean_best = accuracy_sum / config.repeats;
            // Plot-friendly column: wrong-answer probability truncated to 10%.
            const double wrong_capped = std::min(1.0 - mean_best, 0.10);
            csv.cell(static_cast<long>(n)).cell(strength).cell(mean_best).cell(wrong_capped);
            csv.end_row();
        }
    manifest.artifacts = {"param_study.csv"};
    finish_manifest(manifest, config.out_dir);
    return config.out_dir;
}

std::filesystem::path run_cdf(const std::filesystem::path& weights_file,
                              const std::filesystem::path& out_dir) {
    if (!std::filesystem::exists(weights_file))
        throw ConfigError("weights file not found: " + weights_file.string());
    const DenseNetwork net = load_network(weights_file);
    std::filesystem::create_directories(out_dir);

    CsvWriter csv(out_dir / "cdf.csv", {"layer", "abs_weight", "cumulative_fraction"});
    for (const auto& series : cdf_by_layer(net))
        for (std::size_t i = 0; i < series.values.size(); ++i) {
            csv.cell(series.layer_name).cell(series.values[i]).cell(series.cumulative[i]);
            csv.end_row();
        }
    return out_dir;
}

std::filesystem::path run_plot(const std::filesystem::path& run_dir) {
    const auto manifest_path = run_dir / "manifest.json";
    std::filesystem::path csv_source;
    json plot_manifest;
    const auto plot_dir = run_dir / "plot";

    if (std::filesystem::exists(manifest_path)) {
        const RunManifest manifest = load_manifest(manifest_path);
        std::filesystem::create_directories(plot_dir);
        CsvWriter series(plot_dir / "series.csv", {"series", "x", "y"});
        switch (manifest.config.kind) {
            case ExperimentConfig::Kind::Train: {
                const auto table = read_csv(run_dir / "metrics.csv", kMetricsHeader);
                for (const auto& row : table.rows) {
                    series.cell("repeat " + row[0]).cell(row[1]);
                    series.cell(1.0 - std::stod(row[4]));
                    series.end_row();
                }
                plot_manifest = {{"x", "epoch"}, {"y", "wrong answer probability"}};
                break;
            }
            case ExperimentConfig::Kind::PathCurve: {
                const auto table = read_csv(run_dir / "path_curve.csv");
                for (const auto& row : table.rows)
                    series.cell("mean").cell(row[1]).cell(row[2]).end_row();
                plot_manifest = {{"x", "active edge fraction"},
                                 {"y", "fraction of edges on complete paths"}};
                break;
            }
            case ExperimentConfig::Kind::PruneReinit: {
                const auto table = read_csv(run_dir / "prune_reinit.csv");
                const std::size_t overall =
                    static_cast<std::size_t>(manifest.config.layer_sizes.size() - 1) + 2;
                for (const auto& row : table.rows)
                    if (row[1] == "retrained")
                        series.cell("overall change rate").cell(row[0]).cell(row[overall]).end_row();
                plot_manifest = {{"x", "active fraction"}, {"y", "changed connection rate"}};
                break;
            }
            case ExperimentConfig::Kind::ParamStudy: {
                const auto table = read_csv(run_dir / "param_study.csv");
                for (const auto& row : table.rows)
                    series.cell("strength " + row[1]).cell(row[0]).cell(row[3]).end_row();
                plot_manifest = {{"x", "number of lightnings"},
                                 {"y", "wrong answer probability (capped)"}};
                break;
            }
            default: throw IoError("run kind has no plottable artifacts");
        }
    } else if (std::filesystem::exists(run_dir / "cdf.csv")) {
        std::filesystem::create_directories(plot_dir);
        CsvWriter series(plot_dir / "series.csv", {"series", "x", "y"});
        const auto table =
            read_csv(run_dir / "cdf.csv", {"layer", "abs_weight", "cumulative_fraction"});
        for (const auto& row : table.rows)
            series.cell(row[0]).cell(row[1]).cell(row[2]).end_row();
        plot_manifest = {{"x", "absolute weight"}, {"y", "cumulative fraction"}};
    } else {
        throw IoError("unknown run layout: no manifest.json or cdf.csv in " + run_dir.string());
    }

    std::ofstream out(plot_dir / "plot_manifest.json");
    out << plot_manifest.dump(2) << "\n";
    return plot_dir;
}

} // namespace lightnn
