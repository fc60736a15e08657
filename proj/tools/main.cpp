#include <cstdint>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "lightnn/errors.hpp"
#include "lightnn/experiment.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;

struct CommonOptions {
    std::string config_file;
    std::string preset_name;
    std::string out_dir;
    std::string cache_dir;
    std::uint64_t seed = 0;
    bool seed_set = false;
    bool offline = false;
    int repeats = 0;
    int threads = 0;
};

void add_common(CLI::App* cmd, CommonOptions& opts) {
    cmd->add_option("--config", opts.config_file, "Experiment config file (JSON)");
    cmd->add_option("--preset", opts.preset_name, "Named preset (see `lightnn presets`)");
    cmd->add_option("--out", opts.out_dir, "Output run directory");
    cmd->add_option("--cache", opts.cache_dir, "Dataset cache directory");
    cmd->add_option("--seed", opts.seed, "Base RNG seed")->each([&](const std::string&) {
        opts.seed_set = true;
    });
    cmd->add_flag("--offline", opts.offline, "Never touch the network");
    cmd->add_option("--repeats", opts.repeats, "Number of repeats");
    cmd->add_option("--threads", opts.threads, "Worker threads for independent runs/trials");
}

lightnn::ExperimentConfig resolve(const CommonOptions& opts,
                                  lightnn::ExperimentConfig::Kind kind) {
    lightnn::ExperimentConfig config;
    if (!opts.config_file.empty())
        config = lightnn::load_config(opts.config_file);
    else if (!opts.preset_name.empty())
        config = lightnn::preset(opts.preset_name);
    else
        throw lightnn::ConfigError("either --config or --preset is required");
    config.kind = kind;
    if (!opts.out_dir.empty()) config.out_dir = opts.out_dir;
    if (!opts.cache_dir.empty()) config.cache_dir = opts.cache_dir;
    if (opts.seed_set) {
        config.training.rng_seed = opts.seed;
        config.initializer.rng_seed = opts.seed;
        config.initializer.lightning.rng_seed = opts.seed;
    }
    if (opts.offline) config.offline = true;
    if (opts.repeats > 0) config.repeats = opts.repeats;
    if (opts.threads > 0) config.threads = opts.threads;
    return config;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Dense-network training, sparse-graph analysis and lightning initialization"};
    app.require_subcommand(1);

    CommonOptions train_opts, prune_opts, curve_opts, study_opts;
    auto* cmd_train = app.add_subcommand("train", "Train networks and record per-epoch metrics");
    add_common(cmd_train, train_opts);
    auto* cmd_prune =
        app.add_subcommand("prune-reinit", "Train a parent, reinitialize pruned children, retrain");
    add_common(cmd_prune, prune_opts);
    auto* cmd_curve =
        app.add_subcommand("path-curve", "Monte Carlo complete-path fraction vs. active edges");
    add_common(cmd_curve, curve_opts);
    auto* cmd_study =
        app.add_subcommand("param-study", "Grid over lightning count and strength");
    add_common(cmd_study, study_opts);

    std::string cdf_weights, cdf_out = "cdf-out";
    auto* cmd_cdf = app.add_subcommand("cdf", "Per-layer cumulative |weight| distribution");
    cmd_cdf->add_option("--weights", cdf_weights, "Trained weights file")->required();
    cmd_cdf->add_option("--out", cdf_out, "Output directory");

    std::string plot_run_dir;
    auto* cmd_plot = app.add_subcommand("plot", "Convert a run directory into plot data");
    cmd_plot->add_option("run_dir", plot_run_dir, "Run directory")->required();

    auto* cmd_presets = app.add_subcommand("presets", "List available presets");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        return app.exit(e) == 0 ? kExitOk : kExitUsage;
    }

    try {
        std::filesystem::path dir;
        if (cmd_train->parsed())
            dir = lightnn::run_train(resolve(train_opts, lightnn::ExperimentConfig::Kind::Train));
        else if (cmd_prune->parsed())
            dir = lightnn::run_prune_reinit(
                resolve(prune_opts, lightnn::ExperimentConfig::Kind::PruneReinit));
        else if (cmd_curve->parsed())
            dir = lightnn::run_path_curve(
                resolve(curve_opts, lightnn::ExperimentConfig::Kind::PathCurve));
        else if (cmd_study->parsed())
            dir = lightnn::run_param_study(
                resolve(study_opts, lightnn::ExperimentConfig::Kind::ParamStudy));
        else if (cmd_cdf->parsed())
            dir = lightnn::run_cdf(cdf_weights, cdf_out);
        else if (cmd_plot->parsed())
            dir = lightnn::run_plot(plot_run_dir);
        else if (cmd_presets->parsed()) {
            for (const auto& name : lightnn::preset_names()) std::cout << name << "\n";
            return kExitOk;
        }
        std::cout << dir.string() << "\n";
        return kExitOk;
    } catch (const lightnn::DivergenceError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const lightnn::NumericalError& e) {
        std::cerr << "numerical failure: " << e.what() << "\n";
        return kExitNumerical;
    } catch (const lightnn::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return kExitUsage;
    }
}
