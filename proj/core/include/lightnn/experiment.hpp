#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "lightnn/analysis.hpp"
#include "lightnn/initializers.hpp"
#include "lightnn/train.hpp"

namespace lightnn {

/// Full description of one experiment; everything a runner needs to produce
/// a reproducible run directory.
struct ExperimentConfig {
    enum class Kind { Train, PruneReinit, PathCurve, ParamStudy, CdfExport };

    std::string name = "unnamed";
    Kind kind = Kind::Train;

    std::vector<int> layer_sizes = {784, 300, 100, 10};
    InitializerSpec initializer;
    TrainConfig training;
    int repeats = 1;
    std::vector<int> hook_k_values;   // per-epoch path tracking, e.g. {1000, 10000}

    // PruneReinit
    std::vector<double> active_fractions = {0.1, 0.2, 0.3, 0.4, 0.5};
    double reinit_magnitude = 0.1;
    int retrain_epochs = 0;           // 0 means "same as parent"

    // PathCurve
    std::vector<long> curve_grid;
    int curve_trials = 50;

    // ParamStudy
    std::vector<int> study_lightnings;
    std::vector<double> study_strengths;

    std::filesystem::path out_dir = "runs";
    std::filesystem::path cache_dir;  // empty -> default_cache_dir()
    bool offline = false;
    int threads = 1;
};

/// Named presets. "mnist-lenet-300-100" carries the full-scale MNIST
/// defaults; "-desk" variants are cut down for quick runs.
ExperimentConfig preset(const std::string& name);
std::vector<std::string> preset_names();

ExperimentConfig load_config(const std::filesystem::path& path);
std::string config_to_json(const ExperimentConfig& config);
ExperimentConfig config_from_json(const std::string& text);

inline constexpr int kSchemaVersion = 1;

/// Per-run bookkeeping written next to the artifacts; enough to re-run the
/// experiment bit-identically.
struct RunManifest {
    ExperimentConfig config;
    std::vector<std::uint64_t> repeat_seeds;
    std::vector<std::string> artifacts;
    std::string toolkit_version;
    int schema_version = kSchemaVersion;
    std::string started_at;
    std::string finished_at;
};

void save_manifest(const RunManifest& manifest, const std::filesystem::path& path);
RunManifest load_manifest(const std::filesystem::path& path);

/// Runners. Each creates the run directory (config.out_dir), writes its
/// CSV artifacts plus manifest.json, and returns the directory.
std::filesystem::path run_train(const ExperimentConfig& config);
std::filesystem::path run_prune_reinit(const ExperimentConfig& config);
std::filesystem::path run_path_curve(const ExperimentConfig& config);
std::filesystem::path run_param_study(const ExperimentConfig& config);
std::filesystem::path run_cdf(const std::filesystem::path& weights_file,
                              const std::filesystem::path& out_dir);

/// Converts a run directory's CSVs into long-format plot data plus a small
/// manifest describing the axes. Never renders images.
std::filesystem::path run_plot(const std::filesystem::path& run_dir);

} // namespace lightnn
