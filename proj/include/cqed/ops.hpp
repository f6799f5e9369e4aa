// ops.hpp — Dimension-checked sparse operators and the elementary building blocks:
// Fock ladder, Pauli/collective spin, parity, Kronecker lifting.

#pragma once

#include <Eigen/Dense>
#include <Eigen/SparseCore>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <complex>
#include <stdexcept>
#include <vector>

#include "cqed/hilbert.hpp"

namespace cqed {

using cplx = std::complex<double>;
using SpMat = Eigen::SparseMatrix<cplx>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using Triplet = Eigen::Triplet<cplx>;

inline constexpr cplx I1{0.0, 1.0};

// Sparse complex operator tied to its HilbertSpace.
struct SparseOperator {
    HilbertSpace space;
    SpMat mat;
    bool hermitian_hint{false};

    SparseOperator() = default;
    SparseOperator(HilbertSpace sp, SpMat m, bool herm = false)
        : space(sp), mat(std::move(m)), hermitian_hint(herm) {
        if (mat.rows() != space.total_dim() || mat.cols() != space.total_dim())
            throw std::invalid_argument("SparseOperator: matrix shape does not match space (" +
                                        space.describe() + ")");
        mat.makeCompressed();
    }

    long dim() const { return space.total_dim(); }

    SparseOperator adjoint() const {
        return SparseOperator(space, SpMat(mat.adjoint()), hermitian_hint);
    }

    double hermiticity_residual() const {
        SpMat d = mat - SpMat(mat.adjoint());
        double r = 0.0;
        for (int k = 0; k < d.outerSize(); ++k)
            for (SpMat::InnerIterator it(d, k); it; ++it) r = std::max(r, std::abs(it.value()));
        return r;
    }

    bool all_finite() const {
        for (int k = 0; k < mat.outerSize(); ++k)
            for (SpMat::InnerIterator it(mat, k); it; ++it)
                if (!std::isfinite(it.value().real()) || !std::isfinite(it.value().imag())) return false;
        return true;
    }

    SparseOperator& operator+=(const SparseOperator& o) {
        require_same_space(o);
        mat += o.mat;
        hermitian_hint = hermitian_hint && o.hermitian_hint;
        return *this;
    }
    SparseOperator& operator-=(const SparseOperator& o) {
        require_same_space(o);
        mat -= o.mat;
        hermitian_hint = hermitian_hint && o.hermitian_hint;
        return *this;
    }
    friend SparseOperator operator+(SparseOperator a, const SparseOperator& b) { return a += b; }
    friend SparseOperator operator-(SparseOperator a, const SparseOperator& b) { return a -= b; }
    friend SparseOperator operator*(const cplx& c, const SparseOperator& a) {
        return SparseOperator(a.space, SpMat(c * a.mat), a.hermitian_hint && c.imag() == 0.0);
    }
    friend SparseOperator operator*(const SparseOperator& a, const SparseOperator& b) {
        a.require_same_space(b);
        return SparseOperator(a.space, SpMat(a.mat * b.mat), false);
    }

    void require_same_space(const SparseOperator& o) const {
        if (space != o.space)
            throw std::invalid_argument("SparseOperator: space mismatch (" + space.describe() +
                                        " vs " + o.space.describe() + ")");
    }
};

inline double max_abs(const SpMat& m) {
    double r = 0.0;
    for (int k = 0; k < m.outerSize(); ++k)
        for (SpMat::InnerIterator it(m, k); it; ++it) r = std::max(r, std::abs(it.value()));
    return r;
}

namespace ops {

inline SpMat identity(int n) {
    SpMat m(n, n);
    m.setIdentity();
    return m;
}

// --------------------------- photon factor ---------------------------------

// a|n> = sqrt(n)|n-1>; truncation drops the coupling out of the top state.
inline SpMat fock_destroy_factor(int photon_dim) {
    std::vector<Triplet> t;
    t.reserve(photon_dim);
    for (int n = 1; n < photon_dim; ++n) t.emplace_back(n - 1, n, std::sqrt(double(n)));
    SpMat m(photon_dim, photon_dim);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

inline SpMat fock_number_factor(int photon_dim) {
    std::vector<Triplet> t;
    for (int n = 0; n < photon_dim; ++n) t.emplace_back(n, n, double(n));
    SpMat m(photon_dim, photon_dim);
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

// --------------------------- spin factor ------------------------------------

inline SpMat pauli(char which) {
    SpMat m(2, 2);
    std::vector<Triplet> t;
    switch (which) {
        case 'x': t = {{0, 1, 1.0}, {1, 0, 1.0}}; break;
        case 'y': t = {{0, 1, -I1}, {1, 0, I1}}; break;
        case 'z': t = {{0, 0, 1.0}, {1, 1, -1.0}}; break;
        case '+': t = {{0, 1, 1.0}}; break; // |e><g|
        case '-': t = {{1, 0, 1.0}}; break; // |g><e|
        default: throw std::invalid_argument("pauli: unknown axis");
    }
    m.setFromTriplets(t.begin(), t.end());
    return m;
}

// Operator M on site k of N spins, identity elsewhere (site 0 leftmost).
inline SpMat site_op_factor(int n_sites, int k, const SpMat& M) {
    if (k < 0 || k >= n_sites) throw std::out_of_range("site_op_factor: emitter index out of range");
    SpMat out = (k == 0) ? M : identity(2);
    for (int s = 1; s < n_sites; ++s) {
        const SpMat& f = (s == k) ? M : identity(2);
        out = Eigen::kroneckerProduct(out, f).eval();
    }
    return out;
}

struct SpinFactorSet {
    SpMat Jx, Jy, Jz, Jp, Jm;
};

// Collective J_alpha = 1/2 sum_k sigma_alpha^(k) (FullProduct), or the standard
// (2j+1)-dim matrices in the Jz eigenbasis m = +j..-j (DickeJ).
inline SpinFactorSet spin_factors(const SpinRep& rep) {
    SpinFactorSet s;
    if (rep.kind == SpinKind::FullProduct) {
        const int N = rep.n_emitters;
        const int d = rep.dim();
        SpMat Jx(d, d), Jy(d, d), Jz(d, d);
        Jx.setZero(); Jy.setZero(); Jz.setZero();
        for (int k = 0; k < N; ++k) {
            Jx += site_op_factor(N, k, pauli('x'));
            Jy += site_op_factor(N, k, pauli('y'));
            Jz += site_op_factor(N, k, pauli('z'));
        }
        s.Jx = 0.5 * Jx; s.Jy = 0.5 * Jy; s.Jz = 0.5 * Jz;
    } else {
        const int d = rep.two_j + 1;
        const double j = rep.j();
        std::vector<Triplet> tz, tp;
        for (int i = 0; i < d; ++i) {
            const double m = j - i;
            tz.emplace_back(i, i, m);
            if (i >= 1) tp.emplace_back(i - 1, i, std::sqrt(j * (j + 1) - m * (m + 1)));
        }
        SpMat Jz(d, d), Jp(d, d);
        Jz.setFromTriplets(tz.begin(), tz.end());
        Jp.setFromTriplets(tp.begin(), tp.end());
        SpMat Jm = Jp.adjoint();
        s.Jz = Jz;
        s.Jx = 0.5 * (Jp + Jm);
        s.Jy = (-0.5 * I1) * (Jp - Jm);
    }
    s.Jp = s.Jx + I1 * s.Jy;
    s.Jm = s.Jx - I1 * s.Jy;
    return s;
}

inline SpMat jsq_factor(const SpinRep& rep) {
    auto s = spin_factors(rep);
    return SpMat(s.Jx * s.Jx + s.Jy * s.Jy + s.Jz * s.Jz);
}

// --------------------------- lifting to the joint space ---------------------

inline SpMat lift_photon(const HilbertSpace& sp, const SpMat& ph) {
    if (ph.rows() != sp.photon_dim())
        throw std::invalid_argument("lift_photon: factor dim mismatch");
    return Eigen::kroneckerProduct(ph, identity(sp.spin_dim())).eval();
}

inline SpMat lift_spin(const HilbertSpace& sp, const SpMat& s) {
    if (s.rows() != sp.spin_dim())
        throw std::invalid_argument("lift_spin: factor dim mismatch");
    return Eigen::kroneckerProduct(identity(sp.photon_dim()), s).eval();
}

} // namespace ops

// --------------------------- public operator builders -----------------------

// a (x) I_spin
inline SparseOperator fock_destroy(const HilbertSpace& sp) {
    return SparseOperator(sp, ops::lift_photon(sp, ops::fock_destroy_factor(sp.photon_dim())));
}

struct SpinOps {
    SparseOperator Jx, Jy, Jz, Jplus, Jminus;
};

inline SpinOps spin_ops(const HilbertSpace& sp) {
    auto f = ops::spin_factors(sp.spin);
    return SpinOps{SparseOperator(sp, ops::lift_spin(sp, f.Jx), true),
                   SparseOperator(sp, ops::lift_spin(sp, f.Jy), true),
                   SparseOperator(sp, ops::lift_spin(sp, f.Jz), true),
                   SparseOperator(sp, ops::lift_spin(sp, f.Jp)),
                   SparseOperator(sp, ops::lift_spin(sp, f.Jm))};
}

enum class SpinAxis { X, Y, Z, Minus, Plus };

// Pauli/ladder operator on emitter k, identity elsewhere. FullProduct only:
// individual operators are undefined on a Dicke ladder.
inline SparseOperator single_spin_op(const HilbertSpace& sp, int k, SpinAxis which) {
    if (sp.spin.kind != SpinKind::FullProduct)
        throw std::invalid_argument("single_spin_op: requires FullProduct spin representation");
    char c = 'x';
    switch (which) {
        case SpinAxis::X: c = 'x'; break;
        case SpinAxis::Y: c = 'y'; break;
        case SpinAxis::Z: c = 'z'; break;
        case SpinAxis::Minus: c = '-'; break;
        case SpinAxis::Plus: c = '+'; break;
    }
    return SparseOperator(sp, ops::lift_spin(sp, ops::site_op_factor(sp.spin.n_emitters, k, ops::pauli(c))));
}

// Kronecker product of a photon-factor operator and a spin-factor operator,
// photon leftmost (the fixed global ordering).
inline SparseOperator kron(const HilbertSpace& sp, const SpMat& photon_factor, const SpMat& spin_factor) {
    if (photon_factor.rows() != sp.photon_dim() || spin_factor.rows() != sp.spin_dim())
        throw std::invalid_argument("kron: factor dimensions inconsistent with target space");
    return SparseOperator(sp, Eigen::kroneckerProduct(photon_factor, spin_factor).eval());
}

// Number of excited emitters for a spin-basis index.
inline int excitation_of_spin_index(const SpinRep& rep, int s) {
    if (rep.kind == SpinKind::FullProduct) {
        int exc = 0;
        for (int b = 0; b < rep.n_emitters; ++b)
            if (((s >> (rep.n_emitters - 1 - b)) & 1) == 0) ++exc; // bit 0 = |e>
        return exc;
    }
    // m = j - s; excitation = m + j = 2j - s
    return rep.two_j - s;
}

// Z2 parity exp(i pi (a^dag a + Jz + N/2)): diagonal +-1 in the product basis.
inline SparseOperator parity_op(const HilbertSpace& sp) {
    std::vector<Triplet> t;
    t.reserve(sp.total_dim());
    const int sd = sp.spin_dim();
    for (int n = 0; n < sp.photon_dim(); ++n)
        for (int s = 0; s < sd; ++s) {
            const int e = excitation_of_spin_index(sp.spin, s);
            t.emplace_back(sp.index(n, s), sp.index(n, s), ((n + e) % 2 == 0) ? 1.0 : -1.0);
        }
    SpMat m(sp.total_dim(), sp.total_dim());
    m.setFromTriplets(t.begin(), t.end());
    return SparseOperator(sp, std::move(m), true);
}

inline SparseOperator total_jsq(const HilbertSpace& sp) {
    return SparseOperator(sp, ops::lift_spin(sp, ops::jsq_factor(sp.spin)), true);
}

// --------------------------- density-operator checks -------------------------

struct DensityDiagnostics {
    double trace_error{0.0};
    double hermiticity{0.0};
    double min_eigenvalue{0.0};
};

inline DensityDiagnostics density_diagnostics(const Matrix& rho) {
    DensityDiagnostics d;
    d.trace_error = std::abs(rho.trace() - cplx(1.0, 0.0));
    d.hermiticity = (rho - rho.adjoint()).cwiseAbs().maxCoeff();
    Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (rho + rho.adjoint()));
    d.min_eigenvalue = es.eigenvalues().minCoeff();
    return d;
}

} // namespace cqed
