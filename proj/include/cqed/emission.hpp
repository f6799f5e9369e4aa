// emission.hpp — Gauge-correct output field operators, photon emission rate
// W = <E^- E^+>, and quantum-regression-theorem spectra S(w) by resolvent.

#pragma once

#include <algorithm>
#include <cmath>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqed/open_system.hpp"
#include "cqed/spectrum.hpp"

namespace cqed {

// Solve enough levels to cover E - E0 < window, plus a little margin.
inline EigenSolution solve_window(const ModelParams& p, double window, const SolverOptions& opt = {},
                                  int k_cap = 160) {
    int k = 16;
    for (;;) {
        EigenSolution sol = adaptive_solve(p, k, opt.tol * 10, opt);
        if (sol.energies(k - 1) - sol.energies(0) > window || k >= k_cap) {
            int d = 0;
            while (d < k && sol.energies(d) - sol.energies(0) < window) ++d;
            sol.energies.conservativeResize(std::max(d, 2));
            sol.states.conservativeResize(Eigen::NoChange, std::max(d, 2));
            return sol;
        }
        k = std::min(k_cap, int(std::ceil(k * 1.6)));
    }
}

enum class FieldConstruction { Direct, TRK };

struct FieldOperators {
    Matrix E_plus, E_minus; // retained eigenbasis
    FieldConstruction construction{FieldConstruction::Direct};
    std::string gauge{"dipole"};
};

// E^+ = i sum_{k>j} <j|(a_D - a_D^dag)|k> |j><k|          (Direct)
// E^+ = i sum_{k>j} (w_kj/w_c) <j|(a_D + a_D^dag)|k> |j><k|  (TRK)
// Both couple higher states to lower ones only, so E^+ |GS> = 0 exactly.
inline FieldOperators field_ops(const EigenSolution& eig, const ModelParams& p, int d_keep,
                                FieldConstruction construction = FieldConstruction::Direct) {
    if (!eig.converged) throw std::invalid_argument("field_ops: eigensolution not converged");
    if (d_keep > eig.size()) throw std::invalid_argument("field_ops: d_keep exceeds eigenpairs");
    const Matrix V = eig.states.leftCols(d_keep);
    SparseOperator aD = dressed_photon_destroy(p, eig.space);
    const Matrix aE = V.adjoint() * (aD.mat * V);

    FieldOperators f;
    f.construction = construction;
    f.E_plus = Matrix::Zero(d_keep, d_keep);
    for (int j = 0; j < d_keep; ++j)
        for (int k = j + 1; k < d_keep; ++k) {
            if (construction == FieldConstruction::Direct) {
                f.E_plus(j, k) = I1 * (aE(j, k) - std::conj(aE(k, j)));
            } else {
                const double wkj = (eig.energies(k) - eig.energies(j)) / p.omega_c;
                f.E_plus(j, k) = I1 * wkj * (aE(j, k) + std::conj(aE(k, j)));
            }
        }
    f.E_minus = f.E_plus.adjoint();
    return f;
}

// W = Tr(E^- E^+ rho), real and nonnegative up to roundoff.
inline double emission_rate(const Matrix& rho, const FieldOperators& f) {
    return std::real((f.E_minus * f.E_plus * rho).trace());
}

struct SpectrumResult {
    std::vector<double> omega_grid;
    std::vector<double> values;         // clipped at zero
    double most_negative{0.0};          // most negative raw value seen
    bool clipped_beyond_tol{false};     // raw value below -1e-10 occurred
    bool regularized{false};            // resolvent needed a damping shift
};

// S(w) = Re Tr[E^- (i w - L)^{-1} (E^+ rho_ss)], evaluated per grid point
// through the shared Hessenberg factorization of L.
inline SpectrumResult qrt_spectrum(const GmeLiouvillian& g, const Matrix& rho_ss,
                                   const FieldOperators& f, const std::vector<double>& omega_grid,
                                   LiouvillianFactor* factor = nullptr) {
    const int d = g.d;
    if (rho_ss.rows() != d || f.E_plus.rows() != d)
        throw std::invalid_argument("qrt_spectrum: dimension mismatch");
    for (std::size_t i = 1; i < omega_grid.size(); ++i)
        if (omega_grid[i] <= omega_grid[i - 1])
            throw std::invalid_argument("qrt_spectrum: omega grid must be ascending");

    std::optional<LiouvillianFactor> local;
    if (!factor) {
        local.emplace(g.L);
        factor = &*local;
    }
    const Matrix B = f.E_plus * rho_ss;
    const Vector b = Eigen::Map<const Vector>(B.data(), d * d);
    // Tr[E^- M] = vec(E^-T)^T vec(M)
    const Matrix EmT = f.E_minus.transpose();
    const Eigen::RowVectorXcd r = Eigen::Map<const Vector>(EmT.data(), d * d).transpose();

    SpectrumResult out;
    out.omega_grid = omega_grid;
    out.values.resize(omega_grid.size());
    for (std::size_t i = 0; i < omega_grid.size(); ++i) {
        Vector x = factor->solve_shifted(cplx(0.0, omega_grid[i]), b);
        double v = std::real((r * x).value());
        if (!std::isfinite(v)) {
            // undamped pole on the axis: retreat by the smallest channel rate
            const double eps = g.min_gamma > 0.0 ? g.min_gamma : 1e-8;
            x = factor->solve_shifted(cplx(eps, omega_grid[i]), b);
            v = std::real((r * x).value());
            out.regularized = true;
        }
        out.most_negative = std::min(out.most_negative, v);
        if (v < -1e-10) out.clipped_beyond_tol = true;
        out.values[i] = std::max(v, 0.0);
    }
    return out;
}

// --------------------------- per-coupling pipeline ---------------------------

struct BathSpec {
    bool cavity{true};
    bool collective{false};
    bool individual{false};
    double gamma_c{1e-3};
    double gamma_coll{1e-3};
    double gamma_ind{1e-3};
    double temp_c{0.0};
    double temp_a{0.15};
    bool dressed_cavity{false};
    bool halve_when_both{true}; // gamma_coll, gamma_ind -> gamma/2 when both present
};

inline std::vector<BathChannel> make_channels(const ModelParams& p, const HilbertSpace& sp,
                                              const BathSpec& bs) {
    std::vector<BathChannel> ch;
    const bool both = bs.collective && bs.individual;
    const double gc = both && bs.halve_when_both ? 0.5 * bs.gamma_coll : bs.gamma_coll;
    const double gi = both && bs.halve_when_both ? 0.5 * bs.gamma_ind : bs.gamma_ind;
    if (bs.cavity)
        ch.push_back(make_bath_channel(p, sp, BathKind::Cavity, bs.gamma_c, bs.temp_c, -1, bs.dressed_cavity));
    if (bs.collective)
        ch.push_back(make_bath_channel(p, sp, BathKind::CollectiveEmitters, gc, bs.temp_a));
    if (bs.individual) {
        if (p.spin.kind != SpinKind::FullProduct)
            throw std::invalid_argument("make_channels: individual channels need the full product space");
        for (int k = 0; k < p.n_emitters; ++k)
            ch.push_back(make_bath_channel(p, sp, BathKind::IndividualEmitter, gi, bs.temp_a, k));
    }
    return ch;
}

struct SpectrumSliceOptions {
    double energy_window{6.0};
    FilterSpec filter{};
    FieldConstruction construction{FieldConstruction::Direct};
    SolverOptions solver{};
    double filter_width_rate_factor{100.0}; // delta_f = factor * max(gamma_i) unless set
    bool filter_width_explicit{false};
};

struct SpectrumSlice {
    SpectrumResult spectrum;
    SteadyState steady;
    int d_keep{0};
    int cutoff_used{0};
};

inline SpectrumSlice spectrum_slice(ModelParams p, double lambda, const BathSpec& baths,
                                    const std::vector<double>& omega_grid,
                                    const SpectrumSliceOptions& opt = {}) {
    p.lambda = lambda;
    p.validate();
    EigenSolution eig = solve_window(p, opt.energy_window, opt.solver);
    const int d = eig.size();
    auto channels = make_channels(p, eig.space, baths);
    FilterSpec filt = opt.filter;
    if (!opt.filter_width_explicit) {
        double gmax = 0.0;
        for (const auto& c : channels) gmax = std::max(gmax, c.gamma);
        filt.delta_f = opt.filter_width_rate_factor * gmax;
    }
    GmeLiouvillian g = build_gme(eig, channels, d, filt);
    LiouvillianFactor factor(g.L);
    SpectrumSlice out;
    out.steady = steady_state(g, &factor);
    FieldOperators f = field_ops(eig, p, d, opt.construction);
    out.spectrum = qrt_spectrum(g, out.steady.rho, f, omega_grid, &factor);
    out.d_keep = d;
    out.cutoff_used = eig.cutoff_used;
    return out;
}

// --------------------------- peak detection ----------------------------------

struct Peak {
    std::size_t index;
    double omega;
    double height;
};

// Local maxima above a relative prominence of the global maximum, using a
// +-window of grid steps.
inline std::vector<Peak> find_peaks(const std::vector<double>& omega, const std::vector<double>& v,
                                    double rel_prominence = 1e-3, int window = 3) {
    std::vector<Peak> peaks;
    if (v.empty()) return peaks;
    const double vmax = *std::max_element(v.begin(), v.end());
    const double floor_h = rel_prominence * vmax;
    for (std::size_t i = 0; i < v.size(); ++i) {
        if (v[i] < floor_h) continue;
        bool is_max = true;
        for (int w = -window; w <= window; ++w) {
            const long j = long(i) + w;
            if (j < 0 || j >= long(v.size()) || w == 0) continue;
            if (v[j] > v[i]) is_max = false;
        }
        if (is_max) peaks.push_back({i, omega[i], v[i]});
    }
    return peaks;
}

} // namespace cqed
