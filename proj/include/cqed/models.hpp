// models.hpp — Hamiltonian builders: dipole gauge (with/without the quadratic
// self-polarization term), Coulomb gauge, Tavis-Cummings, Hopfield, plus the
// gauge transformation T and the gauge-transformed photon operator.
//
// ModelParams.lambda is the collective coupling g sqrt(N)/omega_c. The
// operator structure carries the individual coupling eta = lambda/sqrt(N);
// the sqrt(N) enhancement enters through the collective spin matrix elements.

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <stdexcept>
#include <vector>

#include "cqed/functions.hpp"
#include "cqed/hilbert.hpp"
#include "cqed/ops.hpp"

namespace cqed {

enum class Gauge { Dipole, Coulomb };

struct ModelParams {
    int n_emitters{1};
    double omega_c{1.0};
    std::vector<double> omega_a{1.0}; // one entry per emitter
    double lambda{0.0};               // collective coupling, g sqrt(N)/omega_c
    bool include_p2{true};
    Gauge gauge{Gauge::Dipole};
    SpinRep spin{SpinRep::full_product(1)};

    static ModelParams resonant(int n, double lambda_coll, bool dicke = false) {
        ModelParams p;
        p.n_emitters = n;
        p.omega_a.assign(n, 1.0);
        p.lambda = lambda_coll;
        p.spin = dicke ? SpinRep::dicke(n) : SpinRep::full_product(n);
        return p;
    }

    double eta() const { return lambda / std::sqrt(double(n_emitters)); }

    bool identical() const {
        for (double w : omega_a)
            if (w != omega_a.front()) return false;
        return true;
    }

    void validate() const {
        if (n_emitters < 1) throw std::invalid_argument("ModelParams: n_emitters must be >= 1");
        if (int(omega_a.size()) != n_emitters)
            throw std::invalid_argument("ModelParams: omega_a must have one entry per emitter");
        if (omega_c <= 0.0) throw std::invalid_argument("ModelParams: omega_c must be > 0");
        for (double w : omega_a)
            if (w <= 0.0) throw std::invalid_argument("ModelParams: emitter frequencies must be > 0");
        if (lambda < 0.0) throw std::invalid_argument("ModelParams: lambda must be >= 0");
        if (spin.kind == SpinKind::DickeJ) {
            if (!identical())
                throw std::invalid_argument("ModelParams: DickeJ requires identical emitters");
            if (spin.two_j != n_emitters)
                throw std::invalid_argument("ModelParams: DickeJ sector must be j = N/2");
        } else if (spin.n_emitters != n_emitters) {
            throw std::invalid_argument("ModelParams: spin representation size mismatch");
        }
    }

    HilbertSpace space(int fock_cutoff) const { return HilbertSpace(fock_cutoff, spin); }
};

struct HopfieldParams {
    double omega_c{1.0};
    double omega_a{1.0};
    double lambda{0.0};
    Gauge gauge{Gauge::Dipole};
    int cutoff_a{20}; // photon mode
    int cutoff_b{20}; // matter mode

    void validate() const {
        if (cutoff_a < 1 || cutoff_b < 1) throw std::invalid_argument("HopfieldParams: cutoffs must be >= 1");
        if (omega_c <= 0.0 || omega_a <= 0.0) throw std::invalid_argument("HopfieldParams: frequencies must be > 0");
        if (lambda < 0.0) throw std::invalid_argument("HopfieldParams: lambda must be >= 0");
    }
};

namespace detail {

// cos(theta X) and sin(theta X), X = a + a^dag, by spectral calculus on the
// photon factor. A Taylor series in theta*X is useless at large arguments.
struct TrigOfX {
    SpMat cosm, sinm;
};

inline TrigOfX photon_trig(int photon_dim, double theta) {
    Matrix X = Matrix::Zero(photon_dim, photon_dim);
    for (int n = 1; n < photon_dim; ++n) {
        const double v = std::sqrt(double(n));
        X(n - 1, n) = v;
        X(n, n - 1) = v;
    }
    Eigen::SelfAdjointEigenSolver<Matrix> es(X);
    if (es.info() != Eigen::Success) throw std::runtime_error("photon_trig: eigensolve failed");
    const auto& w = es.eigenvalues();
    const Matrix& U = es.eigenvectors();
    Eigen::VectorXd c(photon_dim), s(photon_dim);
    for (int i = 0; i < photon_dim; ++i) {
        c(i) = std::cos(theta * w(i));
        s(i) = std::sin(theta * w(i));
    }
    Matrix C = U * c.asDiagonal() * U.adjoint();
    Matrix S = U * s.asDiagonal() * U.adjoint();
    TrigOfX t;
    t.cosm = C.sparseView(1.0, 1e-15);
    t.sinm = S.sparseView(1.0, 1e-15);
    return t;
}

// i(a^dag - a) on the photon factor
inline SpMat photon_momentum(int photon_dim) {
    std::vector<Triplet> t;
    for (int n = 1; n < photon_dim; ++n) {
        const double v = std::sqrt(double(n));
        t.emplace_back(n, n - 1, I1 * v);  // i a^dag
        t.emplace_back(n - 1, n, -I1 * v); // -i a
    }
    SpMat m(photon_dim, photon_dim);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

} // namespace detail

// H_D = wc a^dag a + 1/2 sum_i wa_i sz_i + eta wc i(a^dag - a) sum_i sx_i
//       + eta^2 wc (sum_i sx_i)^2        (last term only with include_p2)
// DickeJ form: wc a^dag a + wa Jz + 2 eta wc i(a^dag - a) Jx + 4 eta^2 wc Jx^2.
inline SparseOperator build_dipole_gauge(const ModelParams& p, const HilbertSpace& sp) {
    p.validate();
    if (p.gauge != Gauge::Dipole)
        throw std::invalid_argument("build_dipole_gauge: params.gauge must be Dipole");
    if (sp.spin != p.spin) throw std::invalid_argument("build_dipole_gauge: space/params mismatch");
    const double eta = p.eta();
    const int pd = sp.photon_dim();

    SpMat H = p.omega_c * ops::lift_photon(sp, ops::fock_number_factor(pd));
    SpMat sum_sx(sp.spin_dim(), sp.spin_dim());
    if (sp.spin.kind == SpinKind::FullProduct) {
        const int N = p.n_emitters;
        SpMat hz(sp.spin_dim(), sp.spin_dim());
        sum_sx.setZero(); hz.setZero();
        for (int k = 0; k < N; ++k) {
            sum_sx += ops::site_op_factor(N, k, ops::pauli('x'));
            hz += SpMat(0.5 * p.omega_a[k] * ops::site_op_factor(N, k, ops::pauli('z')));
        }
        H += ops::lift_spin(sp, hz);
    } else {
        auto f = ops::spin_factors(sp.spin);
        H += p.omega_a.front() * ops::lift_spin(sp, f.Jz);
        sum_sx = 2.0 * f.Jx;
    }
    H += eta * p.omega_c * SpMat(Eigen::kroneckerProduct(detail::photon_momentum(pd), sum_sx));
    if (p.include_p2)
        H += eta * eta * p.omega_c * ops::lift_spin(sp, SpMat(sum_sx * sum_sx));
    return SparseOperator(sp, std::move(H), true);
}

// H_C = wc a^dag a + 1/2 sum_i wa_i [sz_i cos(2 eta X) + sy_i sin(2 eta X)].
inline SparseOperator build_coulomb_gauge(const ModelParams& p, const HilbertSpace& sp) {
    p.validate();
    if (p.gauge != Gauge::Coulomb)
        throw std::invalid_argument("build_coulomb_gauge: params.gauge must be Coulomb");
    if (sp.spin != p.spin) throw std::invalid_argument("build_coulomb_gauge: space/params mismatch");
    const double eta = p.eta();
    const int pd = sp.photon_dim();
    auto trig = detail::photon_trig(pd, 2.0 * eta);

    SpMat H = p.omega_c * ops::lift_photon(sp, ops::fock_number_factor(pd));
    if (sp.spin.kind == SpinKind::FullProduct) {
        const int N = p.n_emitters;
        for (int k = 0; k < N; ++k) {
            H += SpMat(0.5 * p.omega_a[k] *
                       SpMat(Eigen::kroneckerProduct(trig.cosm, ops::site_op_factor(N, k, ops::pauli('z'))) +
                             Eigen::kroneckerProduct(trig.sinm, ops::site_op_factor(N, k, ops::pauli('y')))));
        }
    } else {
        auto f = ops::spin_factors(sp.spin);
        H += SpMat(p.omega_a.front() *
                   SpMat(Eigen::kroneckerProduct(trig.cosm, f.Jz) + Eigen::kroneckerProduct(trig.sinm, f.Jy)));
    }
    return SparseOperator(sp, std::move(H), true);
}

inline SparseOperator build_hamiltonian(const ModelParams& p, const HilbertSpace& sp) {
    return p.gauge == Gauge::Dipole ? build_dipole_gauge(p, sp) : build_coulomb_gauge(p, sp);
}

// T = exp(-2 i eta Jx (a + a^dag)), assembled from closed-form displacement
// matrix elements in the Jx eigenbasis: T = sum_m D(-2 i eta m) (x) |m_x><m_x|.
// The result is the truncation of the exact infinite-dimensional unitary, so
// |T^dag T - 1| measures the weight lost to the Fock cutoff.
inline SparseOperator gauge_transform(const ModelParams& p, const HilbertSpace& sp) {
    p.validate();
    const double eta = p.eta();
    const int pd = sp.photon_dim();
    const int sd = sp.spin_dim();
    Matrix Jx = Matrix(ops::spin_factors(sp.spin).Jx);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Jx);
    if (es.info() != Eigen::Success) throw std::runtime_error("gauge_transform: Jx eigensolve failed");
    const auto& mvals = es.eigenvalues();
    const Matrix& U = es.eigenvectors();

    Matrix T = Matrix::Zero(sp.total_dim(), sp.total_dim());
    for (int im = 0; im < sd; ++im) {
        const Matrix D = displacement_table(cplx(0.0, -2.0 * eta * mvals(im)), pd - 1, pd - 1);
        const Matrix P = U.col(im) * U.col(im).adjoint(); // |m_x><m_x|
        for (int q = 0; q < pd; ++q)
            for (int n = 0; n < pd; ++n)
                if (std::abs(D(q, n)) > 1e-16)
                    T.block(q * sd, n * sd, sd, sd) += D(q, n) * P;
    }
    return SparseOperator(sp, T.sparseView(1.0, 1e-15));
}

inline double unitarity_residual(const SparseOperator& T) {
    SpMat r = SpMat(T.mat.adjoint() * T.mat) - ops::identity(int(T.dim()));
    return max_abs(r);
}

// a_D = T a T^dag = a + 2 i eta Jx.
inline SparseOperator dressed_photon_destroy(const ModelParams& p, const HilbertSpace& sp) {
    p.validate();
    auto f = ops::spin_factors(sp.spin);
    SpMat m = ops::lift_photon(sp, ops::fock_destroy_factor(sp.photon_dim())) +
              SpMat((2.0 * I1 * p.eta()) * ops::lift_spin(sp, f.Jx));
    return SparseOperator(sp, std::move(m));
}

// Tavis-Cummings: wc a^dag a + wa Jz + eta wc (a J+ + a^dag J-).
// For N = 1 this is Jaynes-Cummings with vacuum Rabi splitting 2 lambda wc.
inline SparseOperator build_tavis_cummings(const ModelParams& p, const HilbertSpace& sp) {
    p.validate();
    if (!p.identical())
        throw std::invalid_argument("build_tavis_cummings: requires identical emitters");
    const double eta = p.eta();
    const int pd = sp.photon_dim();
    auto f = ops::spin_factors(sp.spin);
    SpMat a = ops::fock_destroy_factor(pd);
    SpMat H = p.omega_c * ops::lift_photon(sp, ops::fock_number_factor(pd)) +
              p.omega_a.front() * ops::lift_spin(sp, f.Jz) +
              SpMat(eta * p.omega_c *
                    SpMat(Eigen::kroneckerProduct(a, f.Jp) + Eigen::kroneckerProduct(SpMat(a.adjoint()), f.Jm)));
    return SparseOperator(sp, std::move(H), true);
}

// Total excitation number C = a^dag a + Jz + N/2 (conserved by TC).
inline SparseOperator excitation_number(const ModelParams& p, const HilbertSpace& sp) {
    auto f = ops::spin_factors(sp.spin);
    SpMat m = ops::lift_photon(sp, ops::fock_number_factor(sp.photon_dim())) + ops::lift_spin(sp, f.Jz) +
              SpMat(0.5 * p.n_emitters * ops::identity(int(sp.total_dim())));
    return SparseOperator(sp, std::move(m), true);
}

// Two-mode Hopfield Hamiltonian, mode a (x) mode b ordering.
// Dipole:  wc a^dag a + wa b^dag b + i wa lam (a^dag - a)(b^dag + b) + wa lam^2 (b^dag + b)^2
// Coulomb: wc a^dag a + wa b^dag b - i wa lam (b^dag - b)(a^dag + a) + wa lam^2 (a^dag + a)^2
struct HopfieldOperator {
    SpMat mat;
    int dim_a{0}, dim_b{0};
};

inline HopfieldOperator build_hopfield(const HopfieldParams& hp) {
    hp.validate();
    const int da = hp.cutoff_a + 1, db = hp.cutoff_b + 1;
    SpMat a = ops::fock_destroy_factor(da), b = ops::fock_destroy_factor(db);
    SpMat Ia = ops::identity(da), Ib = ops::identity(db);
    SpMat Xa = a + SpMat(a.adjoint()), Xb = b + SpMat(b.adjoint());
    SpMat Pa = SpMat(SpMat(a.adjoint()) - a); // a^dag - a
    SpMat Pb = SpMat(SpMat(b.adjoint()) - b);
    SpMat H = hp.omega_c * SpMat(Eigen::kroneckerProduct(SpMat(ops::fock_number_factor(da)), Ib)) +
              hp.omega_a * SpMat(Eigen::kroneckerProduct(Ia, SpMat(ops::fock_number_factor(db))));
    if (hp.gauge == Gauge::Dipole) {
        H += SpMat((I1 * hp.omega_a * hp.lambda) * SpMat(Eigen::kroneckerProduct(Pa, Xb)));
        H += SpMat((hp.omega_a * hp.lambda * hp.lambda) * SpMat(Eigen::kroneckerProduct(Ia, SpMat(Xb * Xb))));
    } else {
        H -= SpMat((I1 * hp.omega_a * hp.lambda) * SpMat(Eigen::kroneckerProduct(Xa, Pb)));
        H += SpMat((hp.omega_a * hp.lambda * hp.lambda) * SpMat(Eigen::kroneckerProduct(SpMat(Xa * Xa), Ib)));
    }
    HopfieldOperator out;
    out.mat = std::move(H);
    out.dim_a = da;
    out.dim_b = db;
    return out;
}

} // namespace cqed
