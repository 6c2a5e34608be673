#include <cstdint>
#include <filesystem>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "vlcsim/io.hpp"
#include "vlcsim/validation.hpp"

namespace {

struct CommonArgs {
    std::string config_path;
    std::optional<std::uint64_t> seed;
    std::optional<std::uint64_t> trials;
    std::string out_dir = "out";
    bool allow_floor = false;
    unsigned workers = 0;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool needs_config) {
    auto* cfg = cmd->add_option("--config", args.config_path, "scenario JSON file");
    if (needs_config) cfg->required();
    cmd->add_option("--seed", args.seed, "override the scenario seed");
    cmd->add_option("--trials", args.trials, "override the scenario trial count");
    cmd->add_option("--out", args.out_dir, "output directory");
    cmd->add_flag("--allow-floor", args.allow_floor,
                  "accept power allocations with a SIC error floor");
    cmd->add_option("--workers", args.workers, "worker threads (0 = hardware)");
}

vlcsim::ScenarioConfig load(const CommonArgs& args) {
    vlcsim::ScenarioConfig cfg = vlcsim::load_scenario(args.config_path, args.allow_floor);
    if (args.seed) cfg.seed = *args.seed;
    if (args.trials) cfg.trials = *args.trials;
    vlcsim::validate_scenario(cfg, args.allow_floor);
    return cfg;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Indoor visible-light link simulator: power-domain modulation with "
                 "successive interference cancellation, closed-form SER analysis, and a "
                 "spatial-shift-keying benchmark"};
    app.require_subcommand(1);

    CommonArgs gain_args, sweep_args, map_args;
    double rx_x = -1.0, rx_y = -1.0;

    CLI::App* gain = app.add_subcommand("gain", "per-LED channel gains at a receiver position");
    add_common(gain, gain_args, true);
    gain->add_option("--rx-x", rx_x, "receiver x override (m)");
    gain->add_option("--rx-y", rx_y, "receiver y override (m)");

    CLI::App* sweep = app.add_subcommand("ser-sweep", "SER vs transmit SNR, CSV output");
    add_common(sweep, sweep_args, true);

    CLI::App* heatmap =
        app.add_subcommand("heatmap", "normalized-throughput grid over the room floor");
    add_common(heatmap, map_args, true);

    std::uint64_t validate_seed = 1;
    unsigned validate_workers = 0;
    CLI::App* validate = app.add_subcommand("validate", "run the acceptance checks");
    validate->add_option("--seed", validate_seed, "Monte Carlo seed");
    validate->add_option("--workers", validate_workers, "worker threads (0 = hardware)");

    CLI11_PARSE(app, argc, argv);

    try {
        if (*gain) {
            vlcsim::ScenarioConfig cfg = load(gain_args);
            if (rx_x >= 0.0) cfg.rx_xy[0] = rx_x;
            if (rx_y >= 0.0) cfg.rx_xy[1] = rx_y;
            vlcsim::validate_scenario(cfg, gain_args.allow_floor);
            const std::filesystem::path dir = gain_args.out_dir;
            const bool write_files = gain->count("--out") > 0;
            const auto rec = vlcsim::cmd_gain(cfg, std::cout, write_files ? &dir : nullptr);
            std::cout << vlcsim::result_record_text(rec) << "\n";
        } else if (*sweep) {
            vlcsim::ScenarioConfig cfg = load(sweep_args);
            const auto rec = vlcsim::cmd_ser_sweep(cfg, sweep_args.out_dir, sweep_args.workers,
                                                   sweep_args.allow_floor);
            std::cout << vlcsim::result_record_text(rec) << "\n";
        } else if (*heatmap) {
            vlcsim::ScenarioConfig cfg = load(map_args);
            const auto rec = vlcsim::cmd_heatmap(cfg, map_args.out_dir, map_args.workers,
                                                 map_args.allow_floor);
            std::cout << vlcsim::result_record_text(rec) << "\n";
        } else if (*validate) {
            const int failures = vlcsim::run_validation_report(
                {validate_seed, validate_workers}, std::cout);
            return failures == 0 ? 0 : 1;
        }
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 0;
}
