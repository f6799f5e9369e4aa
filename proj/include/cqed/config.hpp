// config.hpp — JSON run configuration: schema validation with key-path error
// messages, defaults matching the standard damping/temperature choices
// (gamma_c = gamma_coll = gamma_ind = 1e-3 wc, T_a = 0.15, T_c = 0).

#pragma once

#include <cmath>
#include <filesystem>
#include <fstream>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "cqed/emission.hpp"
#include "cqed/models.hpp"

namespace cqed {

using json = nlohmann::json;

enum class RunMode { EnergySweep, SpectrumMap, DscCompare, Validate };

struct GridSpec {
    double start{0.0};
    double stop{1.0};
    int count{2};
    bool log_scale{false};

    std::vector<double> points() const {
        std::vector<double> p(count);
        if (count == 1) {
            p[0] = start;
            return p;
        }
        if (log_scale) {
            if (start <= 0.0 || stop <= 0.0)
                throw std::invalid_argument("grid: log scale requires positive endpoints");
            const double a = std::log(start), b = std::log(stop);
            for (int i = 0; i < count; ++i) p[i] = std::exp(a + (b - a) * i / (count - 1));
        } else {
            for (int i = 0; i < count; ++i) p[i] = start + (stop - start) * i / (count - 1);
        }
        return p;
    }
};

struct RunConfig {
    RunMode mode{RunMode::EnergySweep};
    ModelParams model;
    BathSpec baths;
    GridSpec lambda_grid;
    GridSpec omega_grid{0.2, 2.2, 401, false};
    int k_levels{12};
    double gap_ceiling{0.1};
    SolverOptions solver;
    double energy_window{6.0};
    int dsc_order{2};
    int dsc_n_max{3};
    std::string out_dir{"out"};
    std::vector<std::string> formats{"csv"};
    int workers{0};
    double tol_scale{1.0};
    bool dressed_cavity{false};
};

namespace cfgdetail {

inline std::invalid_argument bad(const std::string& path, const std::string& what) {
    return std::invalid_argument("config: " + path + ": " + what);
}

template <typename T>
inline T get_or(const json& j, const std::string& key, const std::string& path, T def) {
    if (!j.contains(key)) return def;
    try {
        return j.at(key).get<T>();
    } catch (const std::exception&) {
        throw bad(path + "." + key, "has the wrong type");
    }
}

inline GridSpec parse_grid(const json& j, const std::string& path) {
    GridSpec g;
    g.start = get_or<double>(j, "start", path, 0.0);
    g.stop = get_or<double>(j, "stop", path, 1.0);
    g.count = get_or<int>(j, "count", path, 2);
    const std::string scale = get_or<std::string>(j, "scale", path, "linear");
    if (scale == "log")
        g.log_scale = true;
    else if (scale != "linear")
        throw bad(path + ".scale", "must be 'linear' or 'log'");
    if (g.count < 1) throw bad(path + ".count", "must be >= 1");
    if (g.count > 1 && g.stop <= g.start) throw bad(path, "stop must exceed start");
    return g;
}

} // namespace cfgdetail

inline RunConfig parse_config(const json& j) {
    using namespace cfgdetail;
    RunConfig c;

    const std::string mode = get_or<std::string>(j, "mode", "$", std::string(""));
    if (mode == "energy-sweep") c.mode = RunMode::EnergySweep;
    else if (mode == "spectrum-map") c.mode = RunMode::SpectrumMap;
    else if (mode == "dsc-compare") c.mode = RunMode::DscCompare;
    else if (mode == "validate") c.mode = RunMode::Validate;
    else throw bad("$.mode", "must be one of energy-sweep, spectrum-map, dsc-compare, validate");

    if (j.contains("model")) {
        const json& m = j.at("model");
        const int N = get_or<int>(m, "n_emitters", "$.model", 1);
        c.model.n_emitters = N;
        c.model.omega_c = get_or<double>(m, "omega_c", "$.model", 1.0);
        if (m.contains("omega_a")) {
            if (m.at("omega_a").is_number()) {
                c.model.omega_a.assign(N, m.at("omega_a").get<double>());
            } else if (m.at("omega_a").is_array()) {
                c.model.omega_a = m.at("omega_a").get<std::vector<double>>();
            } else {
                throw bad("$.model.omega_a", "must be a number or an array");
            }
        } else {
            c.model.omega_a.assign(N, 1.0);
        }
        c.model.lambda = get_or<double>(m, "lambda", "$.model", 0.0);
        c.model.include_p2 = get_or<bool>(m, "include_p2", "$.model", true);
        const std::string gauge = get_or<std::string>(m, "gauge", "$.model", std::string("dipole"));
        if (gauge == "dipole") c.model.gauge = Gauge::Dipole;
        else if (gauge == "coulomb") c.model.gauge = Gauge::Coulomb;
        else throw bad("$.model.gauge", "must be 'dipole' or 'coulomb'");
        const std::string rep = get_or<std::string>(m, "spin_rep", "$.model", std::string("full"));
        if (rep == "full") c.model.spin = SpinRep::full_product(N);
        else if (rep == "dicke") c.model.spin = SpinRep::dicke(N);
        else throw bad("$.model.spin_rep", "must be 'full' or 'dicke'");
        try {
            c.model.validate();
        } catch (const std::exception& e) {
            throw bad("$.model", e.what());
        }
    } else if (c.mode != RunMode::Validate) {
        throw bad("$.model", "section is required for this mode");
    }

    if (j.contains("baths")) {
        const json& b = j.at("baths");
        c.baths.cavity = get_or<bool>(b, "cavity", "$.baths", true);
        c.baths.collective = get_or<bool>(b, "collective", "$.baths", false);
        c.baths.individual = get_or<bool>(b, "individual", "$.baths", false);
        c.baths.gamma_c = get_or<double>(b, "gamma_c", "$.baths", 1e-3);
        c.baths.gamma_coll = get_or<double>(b, "gamma_coll", "$.baths", 1e-3);
        c.baths.gamma_ind = get_or<double>(b, "gamma_ind", "$.baths", 1e-3);
        c.baths.temp_c = get_or<double>(b, "temp_c", "$.baths", 0.0);
        c.baths.temp_a = get_or<double>(b, "temp_a", "$.baths", 0.15);
        const std::string cav = get_or<std::string>(b, "cavity_coupling", "$.baths", std::string("bare"));
        if (cav == "dressed") c.baths.dressed_cavity = true;
        else if (cav != "bare") throw bad("$.baths.cavity_coupling", "must be 'bare' or 'dressed'");
        for (auto [k, v] : std::initializer_list<std::pair<const char*, double>>{
                 {"gamma_c", c.baths.gamma_c}, {"gamma_coll", c.baths.gamma_coll},
                 {"gamma_ind", c.baths.gamma_ind}})
            if (v < 0.0) throw bad(std::string("$.baths.") + k, "must be >= 0");
        if (c.baths.temp_c < 0.0) throw bad("$.baths.temp_c", "must be >= 0");
        if (c.baths.temp_a < 0.0) throw bad("$.baths.temp_a", "must be >= 0");
    } else if (c.mode == RunMode::SpectrumMap) {
        throw bad("$.baths", "section is required for spectrum-map");
    }

    if (j.contains("grids")) {
        const json& g = j.at("grids");
        if (g.contains("lambda")) c.lambda_grid = parse_grid(g.at("lambda"), "$.grids.lambda");
        else if (c.mode == RunMode::EnergySweep || c.mode == RunMode::SpectrumMap)
            throw bad("$.grids.lambda", "is required for this mode");
        if (g.contains("omega")) c.omega_grid = parse_grid(g.at("omega"), "$.grids.omega");
    } else if (c.mode == RunMode::EnergySweep || c.mode == RunMode::SpectrumMap) {
        throw bad("$.grids", "section is required for this mode");
    }

    if (j.contains("solver")) {
        const json& s = j.at("solver");
        c.solver.tol = get_or<double>(s, "tol", "$.solver", 1e-8);
        c.solver.cutoff_ceiling = get_or<int>(s, "cutoff_ceiling", "$.solver", 4096);
        c.solver.initial_cutoff = get_or<int>(s, "initial_cutoff", "$.solver", 0);
        c.energy_window = get_or<double>(s, "energy_window", "$.solver", 6.0);
        c.k_levels = get_or<int>(s, "k_levels", "$.solver", 12);
        c.gap_ceiling = get_or<double>(s, "gap_ceiling", "$.solver", 0.1);
        if (c.solver.tol <= 0.0) throw bad("$.solver.tol", "must be > 0");
        if (c.k_levels < 2) throw bad("$.solver.k_levels", "must be >= 2");
    }

    if (j.contains("dsc")) {
        const json& dj = j.at("dsc");
        c.dsc_order = get_or<int>(dj, "order", "$.dsc", 2);
        c.dsc_n_max = get_or<int>(dj, "n_max", "$.dsc", 3);
        if (c.dsc_order < 0 || c.dsc_order > 2) throw bad("$.dsc.order", "must be 0, 1, or 2");
    }

    if (j.contains("output")) {
        const json& o = j.at("output");
        c.out_dir = get_or<std::string>(o, "dir", "$.output", std::string("out"));
        c.formats = get_or<std::vector<std::string>>(o, "formats", "$.output",
                                                     std::vector<std::string>{"csv"});
        for (const auto& f : c.formats)
            if (f != "csv" && f != "bin") throw bad("$.output.formats", "entries must be 'csv' or 'bin'");
    }

    if (j.contains("parallelism"))
        c.workers = get_or<int>(j.at("parallelism"), "workers", "$.parallelism", 0);
    c.tol_scale = get_or<double>(j, "tol_scale", "$", 1.0);
    c.baths.dressed_cavity = c.baths.dressed_cavity || c.dressed_cavity;
    return c;
}

inline RunConfig load_config(const std::filesystem::path& path) {
    std::ifstream f(path);
    if (!f) throw std::invalid_argument("config: cannot read " + path.string());
    json j;
    try {
        f >> j;
    } catch (const std::exception& e) {
        throw std::invalid_argument("config: JSON parse error in " + path.string() + ": " + e.what());
    }
    return parse_config(j);
}

// The fully resolved configuration, for the manifest and for re-runs.
inline json resolved_config(const RunConfig& c) {
    json m{{"n_emitters", c.model.n_emitters},
           {"omega_c", c.model.omega_c},
           {"omega_a", c.model.omega_a},
           {"lambda", c.model.lambda},
           {"include_p2", c.model.include_p2},
           {"gauge", c.model.gauge == Gauge::Dipole ? "dipole" : "coulomb"},
           {"spin_rep", c.model.spin.kind == SpinKind::FullProduct ? "full" : "dicke"}};
    json b{{"cavity", c.baths.cavity},
           {"collective", c.baths.collective},
           {"individual", c.baths.individual},
           {"gamma_c", c.baths.gamma_c},
           {"gamma_coll", c.baths.gamma_coll},
           {"gamma_ind", c.baths.gamma_ind},
           {"temp_c", c.baths.temp_c},
           {"temp_a", c.baths.temp_a},
           {"cavity_coupling", c.baths.dressed_cavity ? "dressed" : "bare"}};
    auto grid_json = [](const GridSpec& g) {
        return json{{"start", g.start}, {"stop", g.stop}, {"count", g.count},
                    {"scale", g.log_scale ? "log" : "linear"}};
    };
    std::string mode;
    switch (c.mode) {
        case RunMode::EnergySweep: mode = "energy-sweep"; break;
        case RunMode::SpectrumMap: mode = "spectrum-map"; break;
        case RunMode::DscCompare: mode = "dsc-compare"; break;
        case RunMode::Validate: mode = "validate"; break;
    }
    return json{{"mode", mode},
                {"model", m},
                {"baths", b},
                {"grids", {{"lambda", grid_json(c.lambda_grid)}, {"omega", grid_json(c.omega_grid)}}},
                {"solver",
                 {{"tol", c.solver.tol},
                  {"cutoff_ceiling", c.solver.cutoff_ceiling},
                  {"initial_cutoff", c.solver.initial_cutoff},
                  {"energy_window", c.energy_window},
                  {"k_levels", c.k_levels},
                  {"gap_ceiling", c.gap_ceiling}}},
                {"dsc", {{"order", c.dsc_order}, {"n_max", c.dsc_n_max}}},
                {"output", {{"dir", c.out_dir}, {"formats", c.formats}}},
                {"parallelism", {{"workers", c.workers}}},
                {"tol_scale", c.tol_scale}};
}

} // namespace cqed
