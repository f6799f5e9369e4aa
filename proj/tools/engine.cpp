// engine — configuration-driven runner for energy sweeps, emission-spectrum
// maps, DSC comparison reports, and the validation suite.

#include <cstdio>
#include <string>

#include <CLI11.hpp>

#include "cqed/runner.hpp"

int main(int argc, char** argv) {
    CLI::App app{"cavity-QED engine: N two-level emitters coupled to a single mode"};
    app.require_subcommand(1);

    std::string config_path;
    std::string out_dir;
    int workers = 0;
    double tol_scale = 1.0;

    auto add_common = [&](CLI::App* cmd, bool config_required) {
        cmd->add_option("--config", config_path, "JSON config file")->required(config_required);
        cmd->add_option("--out", out_dir, "output directory (overrides config)");
        cmd->add_option("--workers", workers, "worker count (0 = auto, ENGINE_WORKERS respected)");
    };

    auto* sweep_cmd = app.add_subcommand("energy-sweep", "eigenlevel sweep over the coupling grid");
    add_common(sweep_cmd, true);
    auto* map_cmd = app.add_subcommand("spectrum-map", "emission spectra over (lambda, omega)");
    add_common(map_cmd, true);
    auto* dsc_cmd = app.add_subcommand("dsc-compare", "exact vs perturbative deep-strong-coupling levels");
    add_common(dsc_cmd, true);
    auto* val_cmd = app.add_subcommand("validate", "run the acceptance criteria");
    add_common(val_cmd, false);
    val_cmd->add_option("--tol-scale", tol_scale, "tolerance scale (1 = shipped, <1 tightens)");

    CLI11_PARSE(app, argc, argv);

    try {
        cqed::RunConfig cfg;
        if (!config_path.empty()) {
            cfg = cqed::load_config(config_path);
        } else {
            cfg.mode = cqed::RunMode::Validate;
            cfg.out_dir = "out";
        }
        if (sweep_cmd->parsed()) {
            if (cfg.mode != cqed::RunMode::EnergySweep) throw std::invalid_argument("config: $.mode does not match the energy-sweep subcommand");
        } else if (map_cmd->parsed()) {
            if (cfg.mode != cqed::RunMode::SpectrumMap) throw std::invalid_argument("config: $.mode does not match the spectrum-map subcommand");
        } else if (dsc_cmd->parsed()) {
            if (cfg.mode != cqed::RunMode::DscCompare) throw std::invalid_argument("config: $.mode does not match the dsc-compare subcommand");
        } else if (val_cmd->parsed()) {
            cfg.mode = cqed::RunMode::Validate;
            cfg.tol_scale = tol_scale;
        }
        if (!out_dir.empty()) cfg.out_dir = out_dir;
        if (workers > 0) cfg.workers = workers;
        return cqed::run_config(cfg);
    } catch (const std::exception& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return 1;
    }
}
