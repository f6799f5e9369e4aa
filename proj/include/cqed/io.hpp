// io.hpp — Deterministic data-file output: CSV, flat binary grids with a JSON
// sidecar, and run manifests. Floats are printed with a fixed "%.12g" so that
// identical runs produce byte-identical files.

#pragma once

#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqed/spectrum.hpp"

namespace cqed {

using json = nlohmann::json;

inline std::string fmt_g(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.12g", v);
    return buf;
}

inline void write_text_file(const std::filesystem::path& path, const std::string& content) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    f << content;
    if (!f.good()) throw std::runtime_error("write failed: " + path.string());
}

// levels CSV: lambda, c_tilde, k_tilde, energy_rel, parity, cutoff_used
inline void write_levels_csv(const LevelSweep& sw, const std::filesystem::path& path) {
    std::string out = "lambda,c_tilde,k_tilde,energy_rel,parity,cutoff_used\n";
    for (std::size_t i = 0; i < sw.lambda_grid.size(); ++i)
        for (const auto& L : sw.levels[i]) {
            out += fmt_g(sw.lambda_grid[i]);
            out += ',' + std::to_string(L.c_tilde) + ',' + std::to_string(L.k_tilde);
            out += ',' + fmt_g(L.energy_rel) + ',' + std::to_string(L.parity) + ',' +
                   std::to_string(L.cutoff_used) + '\n';
        }
    write_text_file(path, out);
}

inline void write_crossings_json(const std::vector<AvoidedCrossing>& xs,
                                 const std::filesystem::path& path) {
    json arr = json::array();
    for (const auto& x : xs) {
        arr.push_back({{"lambda_star", x.lambda_star},
                       {"gap", x.gap},
                       {"a", {x.level_a.first, x.level_a.second}},
                       {"b", {x.level_b.first, x.level_b.second}}});
    }
    write_text_file(path, arr.dump(2) + "\n");
}

// spectrum CSV: lambda, omega, intensity (row-major over the lambda grid)
inline void write_spectrum_csv(const std::vector<double>& lambdas, const std::vector<double>& omegas,
                               const std::vector<std::vector<double>>& values,
                               const std::filesystem::path& path) {
    std::string out = "lambda,omega,intensity\n";
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = 0; j < omegas.size(); ++j) {
            out += fmt_g(lambdas[i]);
            out += ',' + fmt_g(omegas[j]) + ',';
            out += values[i].empty() ? "nan" : fmt_g(values[i][j]);
            out += '\n';
        }
    write_text_file(path, out);
}

// flat little-endian float64 grid, row-major, with a JSON sidecar
inline void write_binary_grid(const std::vector<double>& lambdas, const std::vector<double>& omegas,
                              const std::vector<std::vector<double>>& values,
                              const std::filesystem::path& path) {
    std::ofstream f(path, std::ios::binary);
    if (!f) throw std::runtime_error("cannot open for writing: " + path.string());
    const double nan = std::nan("");
    for (std::size_t i = 0; i < lambdas.size(); ++i)
        for (std::size_t j = 0; j < omegas.size(); ++j) {
            const double v = values[i].empty() ? nan : values[i][j];
            f.write(reinterpret_cast<const char*>(&v), sizeof(double)); // host is little-endian
        }
    if (!f.good()) throw std::runtime_error("write failed: " + path.string());
    json side{{"rows", lambdas.size()},
              {"cols", omegas.size()},
              {"dtype", "float64-le"},
              {"order", "row-major"},
              {"lambda", lambdas},
              {"omega", omegas}};
    write_text_file(path.string() + ".json", side.dump(2) + "\n");
}

} // namespace cqed
