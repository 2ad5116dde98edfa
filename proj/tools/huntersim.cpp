#include <filesystem>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "hunter/harness/experiment.hpp"
#include "hunter/harness/plots.hpp"

namespace {

int cmd_run(const std::string& config_path, const std::string& scheduler,
            long long seed, const std::string& out_dir, bool plots) {
    hunter::ExperimentConfig cfg = hunter::load_config(config_path);
    if (!scheduler.empty()) cfg.scheduler = hunter::scheduler_from_name(scheduler);
    if (seed >= 0) {
        cfg.seed = static_cast<std::uint64_t>(seed);
        cfg.workload.seed = cfg.seed;
    }
    if (!out_dir.empty()) cfg.output_dir = out_dir;
    cfg.validate();

    auto artifacts = hunter::run_experiment(cfg, &std::cout);
    if (plots) {
        const auto files = hunter::emit_plots(
            artifacts.runs,
            (std::filesystem::path(cfg.output_dir) / "plots").string());
        std::cout << "wrote " << files.size() << " plot(s)\n";
    }
    std::cout << "scheduler=" << hunter::scheduler_name(cfg.scheduler)
              << " mean objective=" << artifacts.summary.metric_mean("objective")
              << " mean AEC=" << artifacts.summary.metric_mean("aec")
              << " mean SLAV=" << artifacts.summary.metric_mean("slav") << "\n";
    std::cout << "results in " << cfg.output_dir << "\n";
    return 0;
}

int cmd_pretrain(const std::string& config_path, const std::string& model_out) {
    hunter::ExperimentConfig cfg = hunter::load_config(config_path);
    const auto fleet = hunter::build_fleet(hunter::default_fleet_classes(cfg.fleet_scale));
    hunter::SimParams sim = cfg.sim;
    sim.cooling = hunter::default_cooling(fleet);
    hunter::ExperimentConfig pcfg = cfg;
    pcfg.sim = sim;
    const auto traces = hunter::build_trace_pool(cfg);
    auto art = hunter::pretrain_surrogate(pcfg, fleet, traces, &std::cout);

    const std::string path = !model_out.empty()          ? model_out
                             : !cfg.surrogate.weights_path.empty()
                                 ? cfg.surrogate.weights_path
                                 : (std::filesystem::path(cfg.output_dir) / "surrogate.bin")
                                       .string();
    std::filesystem::create_directories(std::filesystem::path(path).parent_path().empty()
                                            ? "."
                                            : std::filesystem::path(path).parent_path());
    hunter::save_model(art.model, path);
    std::filesystem::create_directories(cfg.output_dir);
    hunter::write_loss_curve_csv(
        (std::filesystem::path(cfg.output_dir) / "loss_curve.csv").string(), art.result);
    std::cout << "saved surrogate to " << path << "\n";
    return 0;
}

int cmd_report(const std::string& in_dir) {
    namespace fs = std::filesystem;
    std::vector<std::vector<hunter::IntervalRow>> runs;
    for (std::size_t rep = 0;; ++rep) {
        const fs::path p = fs::path(in_dir) / ("run_" + std::to_string(rep)) /
                           "intervals.csv";
        if (!fs::exists(p)) break;
        runs.push_back(hunter::load_intervals_csv(p.string()));
    }
    if (runs.empty()) {
        std::cerr << "no runs found under " << in_dir << "\n";
        return 1;
    }
    const auto summary = hunter::summarize(runs);
    const auto& names = hunter::row_metric_names();
    std::cout << "replications: " << runs.size() << ", intervals per run: "
              << runs[0].size() << "\n";
    std::printf("%-24s %14s %14s %10s\n", "metric", "mean", "stddev", "cov");
    for (std::size_t i = 0; i < names.size(); ++i)
        std::printf("%-24s %14.6g %14.6g %10.4g\n", names[i].c_str(), summary.mean[i],
                    summary.stddev[i], summary.cov[i]);
    return 0;
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"Sustainability-aware datacenter scheduling simulator"};
    app.require_subcommand(1);

    std::string config_path, scheduler, out_dir, model_out, in_dir;
    long long seed = -1;
    bool plots = false;

    auto* run = app.add_subcommand("run", "Run an experiment");
    run->add_option("--config", config_path, "Experiment config (JSON)")->required();
    run->add_option("--scheduler", scheduler, "hunter|random|bestfit");
    run->add_option("--seed", seed, "Override the experiment seed");
    run->add_option("--out", out_dir, "Output directory");
    run->add_flag("--plots", plots, "Also emit SVG plots");

    auto* pre = app.add_subcommand("pretrain", "Pretrain the QoS surrogate");
    pre->add_option("--config", config_path, "Experiment config (JSON)")->required();
    pre->add_option("--model-out", model_out, "Where to store the weights");

    auto* rep = app.add_subcommand("report", "Summarize a results directory");
    rep->add_option("--in", in_dir, "Results directory")->required();

    CLI11_PARSE(app, argc, argv);
    try {
        if (run->parsed()) return cmd_run(config_path, scheduler, seed, out_dir, plots);
        if (pre->parsed()) return cmd_pretrain(config_path, model_out);
        if (rep->parsed()) return cmd_report(in_dir);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 0;
}
