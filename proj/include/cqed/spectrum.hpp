// spectrum.hpp — Eigenvalue sweeps over the coupling with cutoff convergence
// control, multiplet/degeneracy accounting, adiabatic level tracking with
// (c~, k~) labels, avoided-crossing detection, and the Bogoliubov oracle for
// the Hopfield limit.

#pragma once

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <vector>

#include "cqed/eigensolve.hpp"
#include "cqed/models.hpp"
#include "cqed/parallel.hpp"

namespace cqed {

struct SolverOptions {
    double tol = 1e-8;        // eigenvalue movement per cutoff step; also residual target
    int cutoff_ceiling = 4096;
    double growth = 1.5;
    int initial_cutoff = 0;   // 0 = displacement-based estimate
    LanczosOptions lanczos{};
};

// Starting cutoff from the coherent-displacement estimate |alpha| = 2 lam m,
// mean photons 4 lam^2 m^2 (collective lambda, m up to j): deliberately
// generous; the escalation loop below is what certifies convergence.
inline int initial_cutoff_estimate(const ModelParams& p) {
    const double jmax = 0.5 * p.n_emitters;
    const double lam = p.lambda;
    return std::max(8, int(std::ceil(4.0 * lam * lam * jmax * jmax + 8.0 * lam * jmax + 20.0)));
}

// Escalate the Fock cutoff by x growth until the k lowest eigenvalues move
// less than tol between consecutive cutoffs.
inline EigenSolution adaptive_solve(const ModelParams& p, int k, double tol,
                                    const SolverOptions& opt = {}) {
    p.validate();
    int cutoff = opt.initial_cutoff > 0 ? opt.initial_cutoff : initial_cutoff_estimate(p);
    cutoff = std::min(cutoff, opt.cutoff_ceiling);
    Eigen::VectorXd prev;
    EigenSolution sol;
    while (true) {
        HilbertSpace sp = p.space(cutoff);
        if (k >= sp.total_dim())
            throw std::invalid_argument("adaptive_solve: k exceeds space dimension");
        SparseOperator H = build_hamiltonian(p, sp);
        sol = solve_lowest(H, k, opt.tol, opt.lanczos);
        sol.cutoff_used = cutoff;
        if (prev.size() == k) {
            const double move = (sol.energies - prev).cwiseAbs().maxCoeff();
            if (move < tol) {
                sol.converged = sol.converged && true;
                return sol;
            }
        }
        prev = sol.energies;
        if (cutoff >= opt.cutoff_ceiling) {
            sol.converged = false; // ceiling reached without settling
            return sol;
        }
        cutoff = std::min(opt.cutoff_ceiling, int(std::ceil(cutoff * opt.growth)));
    }
}

// --------------------------- multiplet algebra ------------------------------

inline double j_min_of(int N) { return (N % 2 == 0) ? 0.0 : 0.5; }

// Number of levels k_j inside multiplet c for spin sector j.
inline int k_levels(int N, int c, double j) {
    if (c < j + 0.5 * N)
        return std::max(0, int(std::lround(c + j + 0.5 * (2 - N))));
    return int(std::lround(2 * j + 1));
}

// d_kj = N! (2j+1) / ((N/2+j+1)! (N/2-j)!)
inline long degeneracy(int N, double j) {
    const int a = int(std::lround(0.5 * N + j + 1));
    const int b = int(std::lround(0.5 * N - j));
    if (b < 0) throw std::invalid_argument("degeneracy: j exceeds N/2");
    long double v = std::lround(2 * j + 1);
    for (int i = 2; i <= N; ++i) v *= i;
    for (int i = 2; i <= a; ++i) v /= i;
    for (int i = 2; i <= b; ++i) v /= i;
    return long(std::llround((double)v));
}

// Total number of states in multiplet c.
inline long multiplet_size(int N, int c) {
    if (c >= N) return 1L << N;
    long m = 0;
    for (double j = j_min_of(N); j <= 0.5 * N + 1e-9; j += 1.0)
        m += long(k_levels(N, c, j)) * degeneracy(N, j);
    return m;
}

inline int distinct_levels_in_multiplet(int N, int c) {
    int m = 0;
    for (double j = j_min_of(N); j <= 0.5 * N + 1e-9; j += 1.0) m += k_levels(N, c, j);
    return m;
}

// --------------------------- Tavis-Cummings oracle --------------------------

// TC eigenvalues by (c, j) block tridiagonalization; each block appears with
// multiplicity d_kj. Independent of the Fock-space Hamiltonian path.
struct TcLevel {
    int c;
    double energy;
};

inline std::vector<TcLevel> tc_reference_levels(int N, double lambda_coll, int c_max,
                                                double omega_c = 1.0, double omega_a = 1.0) {
    const double eta = lambda_coll / std::sqrt(double(N));
    std::vector<TcLevel> out;
    for (int c = 0; c <= c_max; ++c) {
        std::vector<double> evs;
        for (double j = j_min_of(N); j <= 0.5 * N + 1e-9; j += 1.0) {
            std::vector<double> ms;
            for (double m = -j; m <= j + 1e-9; m += 1.0)
                if (c - (m + 0.5 * N) >= -1e-9) ms.push_back(m);
            if (ms.empty()) continue;
            const int sz = int(ms.size());
            Eigen::MatrixXd blk = Eigen::MatrixXd::Zero(sz, sz);
            for (int i = 0; i < sz; ++i) {
                const double m = ms[i];
                const double n = c - (m + 0.5 * N);
                blk(i, i) = omega_c * n + omega_a * m;
                if (i + 1 < sz) {
                    const double v = eta * omega_c * std::sqrt(n) * std::sqrt(j * (j + 1) - m * (m + 1));
                    blk(i + 1, i) = v;
                    blk(i, i + 1) = v;
                }
            }
            Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(blk);
            const long d = degeneracy(N, j);
            for (int i = 0; i < sz; ++i)
                for (long r = 0; r < d; ++r) evs.push_back(es.eigenvalues()(i));
        }
        std::sort(evs.begin(), evs.end());
        for (double e : evs) out.push_back({c, e});
    }
    return out;
}

// --------------------------- Hopfield polaritons ----------------------------

// Positive Bogoliubov frequencies of the two-mode Hopfield model from the
// 4x4 symplectic eigenproblem in quadrature form. Throws on dynamical
// instability (nonreal frequency), which signals a missing lambda^2 term.
inline std::pair<double, double> hopfield_polaritons(const HopfieldParams& hp) {
    hp.validate();
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    // z = (x_a, x_b, p_a, p_b); H = 1/2 z^T A z + const (dipole form)
    A(0, 0) = hp.omega_c;
    A(1, 1) = hp.omega_a * (1.0 + 4.0 * hp.lambda * hp.lambda);
    A(2, 2) = hp.omega_c;
    A(3, 3) = hp.omega_a;
    A(1, 2) = A(2, 1) = 2.0 * hp.omega_a * hp.lambda;
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J(0, 2) = J(1, 3) = 1.0;
    J(2, 0) = J(3, 1) = -1.0;
    Eigen::EigenSolver<Eigen::Matrix4d> es(J * A);
    std::vector<double> freqs;
    for (int i = 0; i < 4; ++i) {
        const auto ev = es.eigenvalues()(i);
        if (std::abs(ev.real()) > 1e-9 * (1.0 + std::abs(ev.imag())))
            throw std::runtime_error("hopfield_polaritons: dynamical instability at lambda=" +
                                     std::to_string(hp.lambda));
        freqs.push_back(std::abs(ev.imag()));
    }
    std::sort(freqs.begin(), freqs.end());
    return {freqs[0], freqs[2]}; // each frequency appears twice
}

// Characteristic-polynomial residuals of the 4x4 problem (test hook).
inline std::pair<double, double> hopfield_char_poly_residuals(const HopfieldParams& hp) {
    auto [wm, wp] = hopfield_polaritons(hp);
    Eigen::Matrix4d A = Eigen::Matrix4d::Zero();
    A(0, 0) = hp.omega_c;
    A(1, 1) = hp.omega_a * (1.0 + 4.0 * hp.lambda * hp.lambda);
    A(2, 2) = hp.omega_c;
    A(3, 3) = hp.omega_a;
    A(1, 2) = A(2, 1) = 2.0 * hp.omega_a * hp.lambda;
    Eigen::Matrix4d J = Eigen::Matrix4d::Zero();
    J(0, 2) = J(1, 3) = 1.0;
    J(2, 0) = J(3, 1) = -1.0;
    Eigen::Matrix4d K = J * A;
    const double tr2 = (K * K).trace();             // = -2 (wm^2 + wp^2)
    const double det = K.determinant();             // = wm^2 wp^2
    return {std::abs(tr2 + 2.0 * (wm * wm + wp * wp)), std::abs(det - wm * wm * wp * wp)};
}

// Ground-state zero point of the Hopfield model: (w+ + w- - wc - wa)/2.
inline double hopfield_zero_point(const HopfieldParams& hp) {
    auto [wm, wp] = hopfield_polaritons(hp);
    return 0.5 * (wm + wp - hp.omega_c - hp.omega_a);
}

// --------------------------- level sweeps -----------------------------------

struct LabeledLevel {
    int c_tilde{0};
    int k_tilde{1};
    double energy_rel{0.0};
    double energy_abs{0.0};
    int parity{+1};
    double jsq{0.0};
    int cutoff_used{0};
    bool uncertain{false};
};

struct AvoidedCrossing {
    double lambda_star{0.0};
    double gap{0.0};
    std::pair<int, int> level_a{0, 0}; // (c~, k~) of the lower curve left of the crossing
    std::pair<int, int> level_b{0, 0};
    bool same_parity{true};
};

struct LevelSweep {
    std::vector<double> lambda_grid;
    std::vector<std::vector<LabeledLevel>> levels; // [grid point][track]
    std::vector<AvoidedCrossing> crossings;
    ModelParams params;
    int n_tracks{0};
};

namespace detail {

struct SweepPoint {
    EigenSolution sol;
    std::vector<int> parity;
    std::vector<double> jsq;
};

inline SweepPoint solve_point(const ModelParams& tmpl, double lam, int k, const SolverOptions& opt) {
    ModelParams p = tmpl;
    p.lambda = lam;
    SweepPoint pt;
    pt.sol = adaptive_solve(p, k, opt.tol * 10, opt);
    const HilbertSpace sp = pt.sol.space;
    SparseOperator par = parity_op(sp);
    SparseOperator jsq = total_jsq(sp);
    pt.parity.resize(k);
    pt.jsq.resize(k);
    for (int i = 0; i < k; ++i) {
        const Vector v = pt.sol.states.col(i);
        pt.parity[i] = std::real(v.dot(par.mat * v)) >= 0.0 ? +1 : -1;
        pt.jsq[i] = std::real(v.dot(jsq.mat * v));
    }
    return pt;
}

// Overlap matrix |<v_i | w_j>| after zero-padding to a common cutoff.
inline Eigen::MatrixXd overlap_matrix(const SweepPoint& a, const SweepPoint& b) {
    const long rows = std::max(a.sol.states.rows(), b.sol.states.rows());
    auto pad = [&](const Matrix& m) {
        if (m.rows() == rows) return m;
        Matrix out = Matrix::Zero(rows, m.cols());
        out.topRows(m.rows()) = m; // photon-major layout: zero-pad high Fock states
        return out;
    };
    Matrix A = pad(a.sol.states), B = pad(b.sol.states);
    return (A.adjoint() * B).cwiseAbs();
}

// Hungarian algorithm (maximize total overlap), O(n^3), n small.
inline std::vector<int> hungarian_max(const Eigen::MatrixXd& score) {
    const int n = int(score.rows());
    Eigen::MatrixXd cost = score.maxCoeff() - score.array();
    std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
    std::vector<int> p(n + 1, 0), way(n + 1, 0);
    for (int i = 1; i <= n; ++i) {
        p[0] = i;
        int j0 = 0;
        std::vector<double> minv(n + 1, 1e30);
        std::vector<char> used(n + 1, false);
        do {
            used[j0] = true;
            int i0 = p[j0], j1 = -1;
            double delta = 1e30;
            for (int j = 1; j <= n; ++j)
                if (!used[j]) {
                    const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if (cur < minv[j]) {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if (minv[j] < delta) {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            for (int j = 0; j <= n; ++j) {
                if (used[j]) {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
        } while (p[j0] != 0);
        do {
            int j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
        } while (j0);
    }
    std::vector<int> match(n, -1); // match[col of b] = row of a
    for (int j = 1; j <= n; ++j)
        if (p[j] > 0) match[j - 1] = p[j] - 1;
    std::vector<int> fwd(n, -1); // fwd[row of a] = col of b
    for (int j = 0; j < n; ++j)
        if (match[j] >= 0) fwd[match[j]] = j;
    return fwd;
}

// Greedy maximum-overlap one-to-one assignment; Hungarian when greedy leaves
// a poor match.
inline std::vector<int> assign_tracks(const Eigen::MatrixXd& ov, double hungarian_below,
                                      double* min_matched) {
    const int n = int(ov.rows());
    std::vector<std::tuple<double, int, int>> entries;
    entries.reserve(n * n);
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) entries.emplace_back(ov(i, j), i, j);
    std::sort(entries.begin(), entries.end(), [](auto& x, auto& y) { return std::get<0>(x) > std::get<0>(y); });
    std::vector<int> fwd(n, -1);
    std::vector<char> usedi(n, false), usedj(n, false);
    for (auto& [val, i, j] : entries) {
        if (usedi[i] || usedj[j]) continue;
        fwd[i] = j;
        usedi[i] = usedj[j] = true;
    }
    double mn = 1.0;
    for (int i = 0; i < n; ++i) mn = std::min(mn, ov(i, fwd[i]));
    if (mn < hungarian_below) {
        fwd = hungarian_max(ov);
        mn = 1.0;
        for (int i = 0; i < n; ++i) mn = std::min(mn, ov(i, fwd[i]));
    }
    if (min_matched) *min_matched = mn;
    return fwd;
}

// Bare (lambda = 0) levels sorted ascending, with excitation number c.
// Ties within a degenerate bare energy are broken by (j desc, m asc, n asc)
// for DickeJ and by (excitation asc, n asc) for the product basis.
struct BareLevel {
    double energy;
    int c;
};

inline std::vector<BareLevel> bare_levels(const ModelParams& p, int count) {
    std::vector<BareLevel> all;
    const int nmax = count + 2 * p.n_emitters + 4;
    if (p.spin.kind == SpinKind::FullProduct) {
        const int sd = p.spin.dim();
        for (int n = 0; n <= nmax; ++n)
            for (int s = 0; s < sd; ++s) {
                double e = p.omega_c * n;
                int exc = 0;
                for (int b = 0; b < p.n_emitters; ++b) {
                    const bool excited = ((s >> (p.n_emitters - 1 - b)) & 1) == 0;
                    e += 0.5 * p.omega_a[b] * (excited ? 1.0 : -1.0);
                    if (excited) ++exc;
                }
                all.push_back({e, n + exc});
            }
    } else {
        const double j = p.spin.j();
        for (int n = 0; n <= nmax; ++n)
            for (int i = 0; i <= p.spin.two_j; ++i) {
                const double m = j - i;
                all.push_back({p.omega_c * n + p.omega_a.front() * m, n + int(std::lround(m + j))});
            }
    }
    std::stable_sort(all.begin(), all.end(), [](const BareLevel& x, const BareLevel& y) {
        if (x.energy != y.energy) return x.energy < y.energy;
        return x.c < y.c;
    });
    all.resize(std::min<std::size_t>(all.size(), count));
    return all;
}

} // namespace detail

// Sweep the coupling grid, tracking levels by maximum-modulus eigenvector
// overlap. Labels (c~, k~) are assigned at the first grid point from the
// bare-level counting and then propagated; a locally coarse grid (overlap
// < 0.5) is refined by bisection up to refine_depth.
inline LevelSweep sweep(const ModelParams& tmpl, std::vector<double> lambda_grid, int k,
                        const SolverOptions& opt = {}, int workers = 0, int refine_depth = 6) {
    if (lambda_grid.size() < 2) throw std::invalid_argument("sweep: need at least two grid points");
    for (std::size_t i = 1; i < lambda_grid.size(); ++i)
        if (lambda_grid[i] <= lambda_grid[i - 1])
            throw std::invalid_argument("sweep: lambda grid must be strictly increasing");

    std::vector<double> grid = lambda_grid;
    std::vector<detail::SweepPoint> pts(grid.size());
    parallel_for(grid.size(), workers,
                 [&](std::size_t i) { pts[i] = detail::solve_point(tmpl, grid[i], k, opt); });

    // local bisection where consecutive overlaps are poor
    for (int depth = 0; depth < refine_depth; ++depth) {
        std::vector<std::size_t> split;
        for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
            Eigen::MatrixXd ov = detail::overlap_matrix(pts[i], pts[i + 1]);
            double mn = 0.0;
            detail::assign_tracks(ov, 0.9, &mn);
            if (mn < 0.5) split.push_back(i);
        }
        if (split.empty()) break;
        std::vector<double> g2;
        std::vector<detail::SweepPoint> p2;
        std::vector<double> mids;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            g2.push_back(grid[i]);
            if (std::binary_search(split.begin(), split.end(), i))
                mids.push_back(0.5 * (grid[i] + grid[i + 1]));
        }
        std::vector<detail::SweepPoint> midpts(mids.size());
        parallel_for(mids.size(), workers,
                     [&](std::size_t i) { midpts[i] = detail::solve_point(tmpl, mids[i], k, opt); });
        std::vector<double> merged;
        std::vector<detail::SweepPoint> mergedp;
        std::size_t mi = 0;
        for (std::size_t i = 0; i < grid.size(); ++i) {
            merged.push_back(grid[i]);
            mergedp.push_back(std::move(pts[i]));
            if (mi < mids.size() && i + 1 < grid.size() && mids[mi] > grid[i] && mids[mi] < grid[i + 1]) {
                merged.push_back(mids[mi]);
                mergedp.push_back(std::move(midpts[mi]));
                ++mi;
            }
        }
        grid = std::move(merged);
        pts = std::move(mergedp);
    }

    LevelSweep sw;
    sw.params = tmpl;
    sw.lambda_grid = grid;
    sw.n_tracks = k;
    sw.levels.assign(grid.size(), std::vector<LabeledLevel>(k));

    // initial labels from bare counting at the first grid point
    auto bare = detail::bare_levels(tmpl, k);
    std::vector<int> ctil(k), ktil(k);
    {
        const auto& e0 = pts[0].sol.energies;
        for (int i = 0; i < k; ++i) ctil[i] = bare[i].c;
        // k~ indexes distinct energy clusters within each multiplet
        std::map<int, std::vector<int>> groups;
        for (int i = 0; i < k; ++i) groups[ctil[i]].push_back(i);
        for (auto& [c, idx] : groups) {
            int kk = 0;
            double last = -1e300;
            for (int i : idx) {
                if (kk == 0 || e0(i) - last > 1e-7) ++kk;
                last = e0(i);
                ktil[i] = kk;
            }
        }
    }

    // propagate labels by overlap assignment
    std::vector<int> track_of(k); // track_of[column at point i] = track id
    for (int i = 0; i < k; ++i) track_of[i] = i;
    std::vector<std::vector<int>> colmap(grid.size(), std::vector<int>(k)); // track -> column
    for (int t = 0; t < k; ++t) colmap[0][t] = t;
    std::vector<bool> uncertain(grid.size(), false);
    for (std::size_t i = 0; i + 1 < grid.size(); ++i) {
        Eigen::MatrixXd ov = detail::overlap_matrix(pts[i], pts[i + 1]);
        double mn = 0.0;
        auto fwd = detail::assign_tracks(ov, 0.9, &mn);
        if (mn < 0.5) uncertain[i + 1] = true; // refinement exhausted
        for (int t = 0; t < k; ++t) colmap[i + 1][t] = fwd[colmap[i][t]];
    }

    for (std::size_t i = 0; i < grid.size(); ++i) {
        const auto& pt = pts[i];
        const double e0 = pt.sol.energies(0);
        for (int t = 0; t < k; ++t) {
            const int c = colmap[i][t];
            LabeledLevel& L = sw.levels[i][t];
            L.energy_abs = pt.sol.energies(c);
            L.energy_rel = pt.sol.energies(c) - e0;
            L.parity = pt.parity[c];
            L.jsq = pt.jsq[c];
            L.cutoff_used = pt.sol.cutoff_used;
            L.c_tilde = ctil[t];
            L.k_tilde = ktil[t];
            L.uncertain = uncertain[i];
        }
    }
    return sw;
}

// Locate avoided crossings: local minima (below gap_ceiling) of the gap
// between same-parity levels, restricted to the same spin sector <J^2> when
// the emitters are identical (distinct sectors cross exactly). lambda* is
// refined by golden-section search with re-diagonalization; labels are then
// swapped downstream of each crossing so curves read as if they crossed.
inline std::vector<AvoidedCrossing> detect_crossings(LevelSweep& sw, double gap_ceiling,
                                                     const SolverOptions& opt = {},
                                                     double lambda_tol = 1e-3) {
    const int k = sw.n_tracks;
    const bool identical = sw.params.identical();
    std::vector<AvoidedCrossing> found;

    auto class_key = [&](const LabeledLevel& L) {
        const int jbin = identical ? int(std::lround(2.0 * (std::sqrt(1.0 + 4.0 * L.jsq) - 1.0) / 2.0)) : 0;
        return L.parity * 1000 + jbin;
    };

    // refined gap between the p-th and q-th level of a (parity, sector) class
    auto class_gap = [&](double lam, int key, int rank_lo) -> double {
        ModelParams p = sw.params;
        p.lambda = lam;
        auto pt = detail::solve_point(p, lam, k, opt);
        std::vector<double> cls;
        for (int i = 0; i < k; ++i) {
            LabeledLevel L;
            L.parity = pt.parity[i];
            L.jsq = pt.jsq[i];
            if (class_key(L) == key) cls.push_back(pt.sol.energies(i));
        }
        std::sort(cls.begin(), cls.end());
        if (rank_lo + 1 >= int(cls.size())) return 1e9;
        return cls[rank_lo + 1] - cls[rank_lo];
    };

    // scan: per grid point, per class, consecutive gaps
    const std::size_t G = sw.lambda_grid.size();
    std::map<std::pair<int, int>, std::vector<double>> gap_series; // (class, rank) -> gap(lambda)
    std::map<std::pair<int, int>, std::vector<std::pair<int, int>>> pair_tracks;
    for (std::size_t i = 0; i < G; ++i) {
        std::map<int, std::vector<std::pair<double, int>>> cls; // key -> (energy, track)
        for (int t = 0; t < k; ++t) {
            const auto& L = sw.levels[i][t];
            cls[class_key(L)].push_back({L.energy_abs, t});
        }
        for (auto& [key, v] : cls) {
            std::sort(v.begin(), v.end());
            for (std::size_t r = 0; r + 1 < v.size(); ++r) {
                auto id = std::make_pair(key, int(r));
                auto& series = gap_series[id];
                series.resize(G, 1e9);
                series[i] = v[r + 1].first - v[r].first;
                auto& tr = pair_tracks[id];
                tr.resize(G, {-1, -1});
                tr[i] = {v[r].second, v[r + 1].second};
            }
        }
    }

    const double phi = 0.5 * (std::sqrt(5.0) - 1.0);
    for (auto& [id, series] : gap_series) {
        for (std::size_t i = 1; i + 1 < G; ++i) {
            if (series[i] > gap_ceiling || series[i] < 1e-9) continue;         // 1e-9: degenerate copies
            if (series[i] > series[i - 1] || series[i] > series[i + 1]) continue; // not a local min
            double lo = sw.lambda_grid[i - 1], hi = sw.lambda_grid[i + 1];
            double x1 = hi - phi * (hi - lo), x2 = lo + phi * (hi - lo);
            double f1 = class_gap(x1, id.first, id.second);
            double f2 = class_gap(x2, id.first, id.second);
            while (hi - lo > lambda_tol) {
                if (f1 < f2) {
                    hi = x2; x2 = x1; f2 = f1;
                    x1 = hi - phi * (hi - lo);
                    f1 = class_gap(x1, id.first, id.second);
                } else {
                    lo = x1; x1 = x2; f1 = f2;
                    x2 = lo + phi * (hi - lo);
                    f2 = class_gap(x2, id.first, id.second);
                }
            }
            AvoidedCrossing ac;
            ac.lambda_star = 0.5 * (lo + hi);
            ac.gap = std::min(f1, f2);
            const auto [ta, tb] = pair_tracks[id][i - 1]; // labels left of the crossing
            ac.level_a = {sw.levels[i - 1][ta].c_tilde, sw.levels[i - 1][ta].k_tilde};
            ac.level_b = {sw.levels[i - 1][tb].c_tilde, sw.levels[i - 1][tb].k_tilde};
            ac.same_parity = true;
            found.push_back(ac);

            // diabatic labeling: swap the two curves' labels past lambda*
            for (std::size_t g = 0; g < G; ++g) {
                if (sw.lambda_grid[g] <= ac.lambda_star) continue;
                std::swap(sw.levels[g][ta].c_tilde, sw.levels[g][tb].c_tilde);
                std::swap(sw.levels[g][ta].k_tilde, sw.levels[g][tb].k_tilde);
            }
        }
    }
    std::sort(found.begin(), found.end(),
              [](const AvoidedCrossing& a, const AvoidedCrossing& b) { return a.lambda_star < b.lambda_star; });
    sw.crossings = found;
    return found;
}

} // namespace cqed
