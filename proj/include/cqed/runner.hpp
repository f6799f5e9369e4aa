// runner.hpp — Mode orchestration behind the CLI: energy sweeps, spectrum
// maps, DSC comparison reports, and the validation suite. Deterministic
// outputs plus a manifest with the resolved config and per-task status.

#pragma once

#include <chrono>
#include <cstdio>
#include <filesystem>
#include <string>
#include <vector>

#include "cqed/config.hpp"
#include "cqed/dsc.hpp"
#include "cqed/emission.hpp"
#include "cqed/io.hpp"
#include "cqed/validate.hpp"
#include "cqed/version.hpp"

namespace cqed {

// exit codes: 0 ok, 2 partial (some per-point tasks failed), 1 error
inline int run_config(const RunConfig& cfg, std::FILE* log = stdout) {
    namespace fs = std::filesystem;
    const auto t_start = std::chrono::steady_clock::now();
    fs::create_directories(cfg.out_dir);
    json manifest{{"engine_version", engine_version}, {"config", resolved_config(cfg)}};
    json tasks = json::array();
    int exit_code = 0;

    auto elapsed = [&]() {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - t_start).count();
    };

    switch (cfg.mode) {
        case RunMode::EnergySweep: {
            SolverOptions opt = cfg.solver;
            auto sw = sweep(cfg.model, cfg.lambda_grid.points(), cfg.k_levels, opt, cfg.workers);
            auto xs = detect_crossings(sw, cfg.gap_ceiling, opt);
            write_levels_csv(sw, fs::path(cfg.out_dir) / "levels.csv");
            write_crossings_json(xs, fs::path(cfg.out_dir) / "crossings.json");
            tasks.push_back({{"task", "energy-sweep"},
                             {"status", "ok"},
                             {"grid_points", sw.lambda_grid.size()},
                             {"crossings", xs.size()},
                             {"seconds", elapsed()}});
            break;
        }
        case RunMode::SpectrumMap: {
            const auto lams = cfg.lambda_grid.points();
            const auto omegas = cfg.omega_grid.points();
            std::vector<std::vector<double>> values(lams.size());
            std::vector<std::string> status(lams.size(), "ok");
            BathSpec baths = cfg.baths;
            SpectrumSliceOptions sopt;
            sopt.energy_window = cfg.energy_window;
            sopt.solver = cfg.solver;
            parallel_for(lams.size(), cfg.workers, [&](std::size_t i) {
                try {
                    auto sl = spectrum_slice(cfg.model, lams[i], baths, omegas, sopt);
                    values[i] = sl.spectrum.values;
                } catch (const std::exception& e) {
                    status[i] = e.what(); // gap in the map, not an abort
                }
            });
            for (std::size_t i = 0; i < lams.size(); ++i) {
                tasks.push_back({{"task", "lambda=" + fmt_g(lams[i])}, {"status", status[i]}});
                if (status[i] != "ok") exit_code = 2;
            }
            for (const auto& f : cfg.formats) {
                if (f == "csv")
                    write_spectrum_csv(lams, omegas, values, fs::path(cfg.out_dir) / "spectrum.csv");
                else
                    write_binary_grid(lams, omegas, values, fs::path(cfg.out_dir) / "spectrum.bin");
            }
            break;
        }
        case RunMode::DscCompare: {
            ModelParams p = cfg.model;
            auto exact = adaptive_solve(p, 2 * cfg.dsc_n_max * (1 << p.n_emitters) / 2 + 8,
                                        cfg.solver.tol * 10, cfg.solver);
            std::string csv = "index,exact,order0,order1,order2,abs_diff_order2\n";
            auto lv0 = dsc::dsc_levels(p, cfg.dsc_n_max, 0);
            auto lv1 = dsc::dsc_levels(p, cfg.dsc_n_max, 1);
            auto lv2 = dsc::dsc_levels(p, cfg.dsc_n_max, 2);
            const int rows = std::min<int>(exact.size(), int(lv2.size()));
            for (int i = 0; i < rows; ++i) {
                csv += std::to_string(i) + ',' + fmt_g(exact.energies(i)) + ',' + fmt_g(lv0[i]) + ',' +
                       fmt_g(lv1[i]) + ',' + fmt_g(lv2[i]) + ',' +
                       fmt_g(std::abs(exact.energies(i) - lv2[i])) + '\n';
            }
            write_text_file(fs::path(cfg.out_dir) / "dsc_compare.csv", csv);
            tasks.push_back({{"task", "dsc-compare"}, {"status", "ok"}, {"rows", rows}});
            break;
        }
        case RunMode::Validate: {
            auto results = run_acceptance(cfg.tol_scale, cfg.workers);
            bool all = true;
            for (const auto& r : results) {
                std::fprintf(log, "%s  C%-2d %-28s %s  (%.1fs)\n", r.pass ? "PASS" : "FAIL", r.id,
                             r.name.c_str(), r.detail.c_str(), r.seconds);
                all = all && r.pass;
                tasks.push_back({{"task", "criterion " + std::to_string(r.id)},
                                 {"status", r.pass ? "pass" : "fail"},
                                 {"detail", r.detail},
                                 {"seconds", r.seconds}});
            }
            write_text_file(fs::path(cfg.out_dir) / "validation.json",
                            acceptance_report_json(results, cfg.tol_scale).dump(2) + "\n");
            if (!all) exit_code = 1;
            break;
        }
    }

    manifest["tasks"] = tasks;
    manifest["wall_seconds"] = elapsed();
    write_text_file(fs::path(cfg.out_dir) / "manifest.json", manifest.dump(2) + "\n");
    return exit_code;
}

} // namespace cqed
