// open_system.hpp — Dressed-basis generalized master equation with Ohmic
// cavity/collective/individual reservoirs, a Gaussian frequency filter,
// steady-state extraction, and time evolution.

#pragma once

#include <Eigen/Dense>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "cqed/eigensolve.hpp"
#include "cqed/models.hpp"

namespace cqed {

// --------------------------- rates -------------------------------------------

inline double thermal_n(double omega, double temperature) {
    if (temperature <= 0.0) return 0.0;
    return 1.0 / std::expm1(omega / temperature);
}

// Ohmic: Gamma(w) = gamma w / f
inline double ohmic_rate(double gamma, double f, double omega) { return gamma * omega / f; }

// Temperature-dependent pure dephasing: Omega = gamma T / (4 f)
inline double dephasing_rate(double gamma, double f, double temperature) {
    return gamma * temperature / (4.0 * f);
}

// --------------------------- channels ----------------------------------------

enum class BathKind { Cavity, CollectiveEmitters, IndividualEmitter };

struct BathChannel {
    BathKind kind{BathKind::Cavity};
    int emitter_index{-1}; // IndividualEmitter only
    double gamma{1e-3};
    double temperature{0.0};
    double f{1.0};           // bare reference frequency of the subsystem
    SparseOperator coupling_op;

    void validate() const {
        if (gamma < 0.0) throw std::invalid_argument("BathChannel: gamma must be >= 0");
        if (f <= 0.0) throw std::invalid_argument("BathChannel: reference frequency must be > 0");
        if (temperature < 0.0) throw std::invalid_argument("BathChannel: temperature must be >= 0");
    }
};

// Cavity couples through a (or a_D when dressed = true); the collective
// emitter channel through (1/sqrt(N)) sum_k sigma_k^-; individual channels
// through sigma_k^-.
inline BathChannel make_bath_channel(const ModelParams& p, const HilbertSpace& sp, BathKind kind,
                                     double gamma, double temperature, int emitter_index = -1,
                                     bool dressed_cavity = false) {
    BathChannel ch;
    ch.kind = kind;
    ch.gamma = gamma;
    ch.temperature = temperature;
    ch.emitter_index = emitter_index;
    switch (kind) {
        case BathKind::Cavity:
            ch.f = p.omega_c;
            ch.coupling_op = dressed_cavity ? dressed_photon_destroy(p, sp) : fock_destroy(sp);
            break;
        case BathKind::CollectiveEmitters: {
            if (!p.identical())
                throw std::invalid_argument("make_bath_channel: collective channel requires identical emitters");
            ch.f = p.omega_a.front();
            auto f = ops::spin_factors(sp.spin);
            ch.coupling_op = SparseOperator(
                sp, SpMat((1.0 / std::sqrt(double(p.n_emitters))) * ops::lift_spin(sp, f.Jm)));
            break;
        }
        case BathKind::IndividualEmitter:
            if (emitter_index < 0 || emitter_index >= p.n_emitters)
                throw std::invalid_argument("make_bath_channel: emitter index out of range");
            ch.f = p.omega_a[emitter_index];
            ch.coupling_op = single_spin_op(sp, emitter_index, SpinAxis::Minus);
            break;
    }
    ch.validate();
    return ch;
}

// --------------------------- dressed jump operators ---------------------------

struct FilterSpec {
    double delta_f{0.1}; // Gaussian width of F(w, w') = exp(-(w-w')^2 / (2 delta_f^2))
    double degeneracy_tol{1e-9};
};

inline double filter_value(const FilterSpec& f, double w1, double w2) {
    if (f.delta_f <= 0.0) return std::abs(w1 - w2) < 1e-14 ? 1.0 : 0.0;
    const double d = (w1 - w2) / f.delta_f;
    return std::exp(-0.5 * d * d);
}

struct DressedJumpSet {
    std::vector<double> omegas;  // distinct positive transition frequencies, ascending
    std::vector<Matrix> S_plus;  // lowering components, one per omega
    Matrix S_zero;               // zero-frequency (degenerate) component
    Matrix projected;            // full eigenbasis projection of (s + s^dag)
};

// Bin the eigenbasis matrix elements of (s + s^dag) by transition frequency.
inline DressedJumpSet dressed_jumps(const EigenSolution& eig, const BathChannel& ch, int d_keep,
                                    double degeneracy_tol = 1e-9) {
    if (!eig.converged) throw std::invalid_argument("dressed_jumps: eigensolution not converged");
    if (d_keep > eig.size()) throw std::invalid_argument("dressed_jumps: d_keep exceeds eigenpairs");
    const Matrix V = eig.states.leftCols(d_keep);
    const SpMat s = ch.coupling_op.mat;
    Matrix sE = V.adjoint() * (s * V) + (V.adjoint() * (SpMat(s.adjoint()) * V));

    DressedJumpSet js;
    js.projected = sE;
    js.S_zero = Matrix::Zero(d_keep, d_keep);
    std::vector<std::pair<double, Matrix>> bins;
    for (int p = 0; p < d_keep; ++p)
        for (int q = 0; q < d_keep; ++q) {
            const double w = eig.energies(q) - eig.energies(p);
            if (std::abs(sE(p, q)) < 1e-16) continue;
            if (std::abs(w) <= degeneracy_tol) {
                js.S_zero(p, q) += sE(p, q);
            } else if (w > 0.0) {
                bool placed = false;
                for (auto& [bw, bm] : bins)
                    if (std::abs(bw - w) <= degeneracy_tol) {
                        bm(p, q) += sE(p, q);
                        placed = true;
                        break;
                    }
                if (!placed) {
                    Matrix m = Matrix::Zero(d_keep, d_keep);
                    m(p, q) = sE(p, q);
                    bins.emplace_back(w, std::move(m));
                }
            }
        }
    std::sort(bins.begin(), bins.end(),
              [](const auto& a, const auto& b) { return a.first < b.first; });
    for (auto& [w, m] : bins) {
        js.omegas.push_back(w);
        js.S_plus.push_back(std::move(m));
    }
    return js;
}

// --------------------------- Liouvillian --------------------------------------

struct ChannelMeta {
    BathKind kind;
    int emitter_index;
    double gamma, temperature, f;
};

struct GmeLiouvillian {
    Matrix L;                 // d^2 x d^2, column-major vec convention
    Eigen::VectorXd energies; // retained dressed levels (ascending)
    int d{0};
    FilterSpec filter;
    std::vector<ChannelMeta> channels;
    double min_gamma{0.0};
};

// Assemble every retained term of the filtered GME: the four S-(w')/S+(w)
// thermal terms over positive frequency pairs weighted by F(w, w'), plus the
// four S^(0) pure-dephasing terms, plus -i[H, .] with H = diag(E). Terms
// oscillating at w + w' and S^(+-) S^(0) cross terms are never generated.
inline GmeLiouvillian build_gme(const EigenSolution& eig, const std::vector<BathChannel>& channels,
                                int d_keep, const FilterSpec& filter = {}) {
    if (d_keep < 2 || d_keep > eig.size())
        throw std::invalid_argument("build_gme: d_keep out of range");
    for (const auto& ch : channels) {
        ch.validate();
        if (ch.coupling_op.space != eig.space)
            throw std::invalid_argument("build_gme: channel space does not match eigensolution");
    }
    const int d = d_keep;
    const Eigen::VectorXd E = eig.energies.head(d);
    const Matrix V = eig.states.leftCols(d);
    const double tol = filter.degeneracy_tol;

    GmeLiouvillian g;
    g.d = d;
    g.energies = E;
    g.filter = filter;
    g.L = Matrix::Zero(d * d, d * d);
    Matrix& L = g.L;

    for (int i = 0; i < d; ++i)
        for (int j = 0; j < d; ++j) L(i + d * j, i + d * j) += -I1 * (E(i) - E(j));

    for (const auto& ch : channels) {
        g.channels.push_back({ch.kind, ch.emitter_index, ch.gamma, ch.temperature, ch.f});
        if (ch.gamma > 0.0)
            g.min_gamma = g.min_gamma == 0.0 ? ch.gamma : std::min(g.min_gamma, ch.gamma);
        const SpMat& s = ch.coupling_op.mat;
        Matrix sE = V.adjoint() * (s * V) + V.adjoint() * (SpMat(s.adjoint()) * V);
        const double T = ch.temperature;
        auto Gam = [&](double w) { return ohmic_rate(ch.gamma, ch.f, w); };

        // sandwich terms
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                const double w_up = E(i) - E(k);   // S^-(w') entry (i,k)
                const double w_dn = E(k) - E(i);   // S^+(w) entry (i,k)
                for (int l = 0; l < d; ++l)
                    for (int j = 0; j < d; ++j) {
                        // thermal raising: S^-(w') rho S^+(w)
                        if (w_up > tol) {
                            const double w = E(j) - E(l);
                            if (w > tol) {
                                const cplx amp = std::conj(sE(k, i)) * sE(l, j);
                                if (std::abs(amp) > 1e-18) {
                                    const double cc = 0.5 * filter_value(filter, w, w_up) *
                                                      (Gam(w_up) * thermal_n(w_up, T) +
                                                       Gam(w) * thermal_n(w, T));
                                    L(i + d * j, k + d * l) += cc * amp;
                                }
                            }
                        }
                        // emission: S^+(w) rho S^-(w')
                        if (w_dn > tol) {
                            const double wp = E(l) - E(j);
                            if (wp > tol) {
                                const cplx amp = sE(i, k) * std::conj(sE(j, l));
                                if (std::abs(amp) > 1e-18) {
                                    const double cc = 0.5 * filter_value(filter, w_dn, wp) *
                                                      (Gam(w_dn) * (thermal_n(w_dn, T) + 1.0) +
                                                       Gam(wp) * (thermal_n(wp, T) + 1.0));
                                    L(i + d * j, k + d * l) += cc * amp;
                                }
                            }
                        }
                    }
            }

        // non-sandwich (anticommutator-like) parts
        Matrix P1 = Matrix::Zero(d, d), R1 = Matrix::Zero(d, d);
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k) {
                cplx p{0.0, 0.0}, r{0.0, 0.0};
                for (int m = 0; m < d; ++m) {
                    const double w1 = E(m) - E(i), w2 = E(m) - E(k);
                    if (w1 > tol && w2 > tol)
                        p += 0.5 * filter_value(filter, w1, w2) * Gam(w2) * thermal_n(w2, T) *
                             sE(i, m) * std::conj(sE(k, m));
                    const double v1 = E(i) - E(m), v2 = E(k) - E(m);
                    if (v1 > tol && v2 > tol)
                        r += 0.5 * filter_value(filter, v2, v1) * Gam(v2) * (thermal_n(v2, T) + 1.0) *
                             std::conj(sE(m, i)) * sE(m, k);
                }
                P1(i, k) = p;
                R1(i, k) = r;
            }
        const Matrix Q1 = P1.adjoint(), R2 = R1.adjoint();
        for (int i = 0; i < d; ++i)
            for (int k = 0; k < d; ++k)
                for (int j = 0; j < d; ++j) {
                    L(i + d * j, k + d * j) -= P1(i, k) + R1(i, k); // spre
                    L(j + d * i, j + d * k) -= Q1(k, i) + R2(k, i); // spost: rho X -> X(l,j) at (j,i),(j,k): value X(k,i)
                }

        // pure dephasing from the zero-frequency component
        const double Om = dephasing_rate(ch.gamma, ch.f, T);
        if (Om > 0.0) {
            Matrix S0 = Matrix::Zero(d, d);
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k)
                    if (std::abs(E(i) - E(k)) <= tol) S0(i, k) = sE(i, k);
            const Matrix S0sq = S0 * S0;
            for (int i = 0; i < d; ++i)
                for (int k = 0; k < d; ++k) {
                    for (int l = 0; l < d; ++l)
                        for (int j = 0; j < d; ++j) {
                            const cplx amp = S0(i, k) * S0(l, j);
                            if (std::abs(amp) > 1e-18) L(i + d * j, k + d * l) += 2.0 * Om * amp;
                        }
                    for (int j = 0; j < d; ++j) {
                        L(i + d * j, k + d * j) -= Om * S0sq(i, k);
                        L(j + d * i, j + d * k) -= Om * S0sq(k, i);
                    }
                }
        }
    }
    return g;
}

// --------------------------- steady state -------------------------------------

struct SteadyStateError : std::runtime_error {
    std::vector<double> near_zero_values;
    explicit SteadyStateError(const std::string& msg, std::vector<double> vals)
        : std::runtime_error(msg), near_zero_values(std::move(vals)) {}
};

struct SteadyState {
    Matrix rho;
    double residual{0.0};
    double min_eigenvalue{0.0};
};

// One-time Schur factorization L = Z T Z^H; shifted resolvent solves are then
// read-only upper-triangular back-substitutions, O(n^2/2) each with no copy.
// The steady-state kernel analysis reads the eigenvalues off diag(T).
struct LiouvillianFactor {
    Matrix Z; // unitary Schur vectors
    Matrix T; // upper triangular

    explicit LiouvillianFactor(const Matrix& L) {
        Eigen::HessenbergDecomposition<Matrix> hd(L);
        Eigen::ComplexSchur<Matrix> schur;
        schur.computeFromHessenberg(hd.matrixH(), hd.matrixQ(), true);
        if (schur.info() != Eigen::Success)
            throw std::runtime_error("LiouvillianFactor: Schur iteration failed");
        Z = schur.matrixU();
        T = schur.matrixT();
    }

    Eigen::VectorXcd eigenvalues() const { return T.diagonal(); }

    // (shift I - L)^{-1} b
    Vector solve_shifted(cplx shift, const Vector& b) const {
        const long n = T.rows();
        Vector w = Z.adjoint() * b;
        Vector x(n);
        for (long j = n - 1; j >= 0; --j) {
            cplx piv = shift - T(j, j);
            if (std::abs(piv) < 1e-300) piv = cplx(1e-300, 0.0);
            x(j) = w(j) / piv;
            if (j > 0) w.head(j) += x(j) * T.col(j).head(j); // M(i,j) = -T(i,j) above the diagonal
        }
        return Z * x;
    }
};

// Steady state = kernel vector of L, Hermitized and trace-normalized.
// A kernel of dimension != 1 (disconnected sectors, e.g. collective-only
// dissipation with a dark subspace) raises SteadyStateError carrying the
// near-zero spectrum.
inline SteadyState steady_state(const GmeLiouvillian& g, LiouvillianFactor* factor = nullptr) {
    const int d = g.d;
    const long n = g.L.rows();
    const double scale = g.L.cwiseAbs().maxCoeff();
    const double kernel_tol = std::max(1e-12, 1e-10 * scale);

    Vector kernel_vec;
    std::vector<double> near_zero;
    int kernel_dim = 0;
    if (n <= 1024) {
        Eigen::JacobiSVD<Matrix> svd(g.L, Eigen::ComputeThinV);
        const auto& sv = svd.singularValues();
        for (long i = 0; i < sv.size(); ++i)
            if (sv(i) < kernel_tol) {
                ++kernel_dim;
                near_zero.push_back(sv(i));
            }
        kernel_vec = svd.matrixV().col(n - 1);
    } else {
        std::optional<LiouvillianFactor> local;
        if (!factor) local.emplace(g.L);
        const LiouvillianFactor& f = factor ? *factor : *local;
        const Eigen::VectorXcd ev = f.eigenvalues();
        for (long i = 0; i < n; ++i) {
            const double m = std::abs(ev(i));
            if (m < kernel_tol) {
                ++kernel_dim;
                near_zero.push_back(m);
            }
        }
        // inverse iteration at zero shift
        Vector v = Vector::Ones(n);
        for (int it = 0; it < 3; ++it) {
            v = f.solve_shifted(cplx(0.0, 0.0), v);
            v.normalize();
        }
        kernel_vec = v;
    }
    if (kernel_dim != 1) {
        std::string msg = "steady_state: Liouvillian kernel dimension " + std::to_string(kernel_dim) +
                          " != 1 (disconnected sectors); near-zero values:";
        for (double v : near_zero) msg += " " + std::to_string(v);
        throw SteadyStateError(msg, near_zero);
    }

    Matrix rho = Eigen::Map<const Matrix>(kernel_vec.data(), d, d);
    rho = 0.5 * (rho + rho.adjoint()).eval();
    const double tr = rho.trace().real();
    if (std::abs(tr) < 1e-14) throw SteadyStateError("steady_state: traceless kernel vector", near_zero);
    rho /= tr;

    SteadyState out;
    out.rho = rho;
    Eigen::Map<const Vector> vec(rho.data(), n);
    out.residual = (g.L * vec).norm();
    Eigen::SelfAdjointEigenSolver<Matrix> es(rho);
    out.min_eigenvalue = es.eigenvalues().minCoeff();
    return out;
}

// --------------------------- time evolution -----------------------------------

// Propagate rho0 over t_grid with the matrix exponential of L dt; the
// propagator is cached per distinct step. Trace and Hermiticity are checked
// at every output; a failing step is halved up to 2^8 substeps.
inline std::vector<Matrix> evolve(const GmeLiouvillian& g, const Matrix& rho0,
                                  const std::vector<double>& t_grid) {
    const int d = g.d;
    if (rho0.rows() != d || rho0.cols() != d) throw std::invalid_argument("evolve: rho0 shape mismatch");
    for (std::size_t i = 1; i < t_grid.size(); ++i)
        if (t_grid[i] < t_grid[i - 1]) throw std::invalid_argument("evolve: t_grid must be ascending");

    std::vector<Matrix> out;
    out.reserve(t_grid.size());
    Vector v = Eigen::Map<const Vector>(rho0.data(), d * d);
    double t = 0.0;
    std::map<long, Matrix> cache; // quantized dt -> propagator
    auto propagator = [&](double dt) -> const Matrix& {
        const long key = std::llround(dt * 1e12);
        auto it = cache.find(key);
        if (it == cache.end()) it = cache.emplace(key, Matrix((g.L * dt).exp())).first;
        return it->second;
    };

    for (double tk : t_grid) {
        double dt = tk - t;
        if (dt > 0.0) {
            int splits = 0;
            for (;;) {
                const int steps = 1 << splits;
                Vector w = v;
                const Matrix& P = propagator(dt / steps);
                for (int s = 0; s < steps; ++s) w = P * w;
                Matrix rho = Eigen::Map<const Matrix>(w.data(), d, d);
                const double trace_err = std::abs(rho.trace() - cplx(1.0, 0.0));
                const double herm = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
                if (trace_err < 1e-8 && herm < 1e-8) {
                    v = w;
                    break;
                }
                if (++splits > 8)
                    throw std::runtime_error("evolve: step rejected after max subdivisions (trace error " +
                                             std::to_string(trace_err) + ")");
            }
        }
        t = tk;
        out.emplace_back(Eigen::Map<const Matrix>(v.data(), d, d));
    }
    return out;
}

} // namespace cqed
