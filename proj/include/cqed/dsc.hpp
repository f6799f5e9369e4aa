// dsc.hpp — Deep-strong-coupling oracle: displaced-oscillator spectrum with
// first- and second-order corrections in omega_a, evaluated per (n, j) block.
//
// The coupling argument here is the individual (per-emitter) lambda that
// multiplies Jx in the displaced structure A = a + 2 i lambda Jx. Callers
// holding the collective coupling divide by sqrt(N) first (ModelParams::eta).

#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include <cmath>
#include <map>
#include <stdexcept>
#include <vector>

#include "cqed/functions.hpp"
#include "cqed/models.hpp"
#include "cqed/spectrum.hpp"

namespace cqed {
namespace dsc {

struct JxBasis {
    Eigen::VectorXd m;   // Jx eigenvalues, ascending
    Matrix Jz_x, Jy_x;   // Jz, Jy in the Jx eigenbasis
};

inline JxBasis jx_basis(int two_j) {
    auto f = ops::spin_factors(SpinRep::dicke(two_j));
    Matrix Jx = Matrix(f.Jx);
    Eigen::SelfAdjointEigenSolver<Matrix> es(Jx);
    JxBasis b;
    b.m = es.eigenvalues();
    b.Jz_x = es.eigenvectors().adjoint() * Matrix(f.Jz) * es.eigenvectors();
    b.Jy_x = es.eigenvectors().adjoint() * Matrix(f.Jy) * es.eigenvectors();
    return b;
}

// First-order block: omega_a e^{-2 lam^2} L_n(4 lam^2) [Jz in the Jx basis].
inline Matrix first_order_matrix(int n, int two_j, double lambda, double omega_a) {
    if (n < 0) throw std::invalid_argument("first_order_matrix: n must be >= 0");
    auto b = jx_basis(two_j);
    const double pref = omega_a * std::exp(-2.0 * lambda * lambda) * laguerre(n, 4.0 * lambda * lambda);
    return pref * b.Jz_x;
}

inline std::vector<double> first_order(int n, int two_j, double lambda, double omega_a) {
    Eigen::SelfAdjointEigenSolver<Matrix> es(first_order_matrix(n, two_j, lambda, omega_a));
    std::vector<double> out(es.eigenvalues().data(), es.eigenvalues().data() + es.eigenvalues().size());
    return out;
}

struct SecondOrderResult {
    std::vector<double> shifts; // eigenvalues of the order-1 + order-2 block, ascending
    bool converged{true};
    double tail{0.0};           // relative size of the last q contribution
};

// Quasi-degenerate perturbation theory within the (n, j) block: the full
// second-order effective matrix
//   H2[m2,m1] = sum_{q != n} (Vq^dag Vq)[m2,m1] / ((n - q) omega_c),
//   Vq[m',m]  = omega_a Jz_x[m',m] <q|D(2 i lambda (m - m'))|n>,
// added to the first-order block and diagonalized together. Keeping only the
// diagonal in the first-order eigenbasis fails when the exponential kills the
// first order but the second-order off-diagonals survive.
inline SecondOrderResult second_order(int n, int two_j, double lambda, double omega_a, int q_max,
                                      double omega_c = 1.0) {
    if (q_max <= n + int(10.0 * lambda * lambda) + 10)
        throw std::invalid_argument("second_order: q_max too small for the displaced sum");
    auto b = jx_basis(two_j);
    const int dim = two_j + 1;

    std::map<long, Matrix> tables; // key: rounded m - m' difference
    auto table_for = [&](double dm) -> const Matrix& {
        const long key = std::lround(dm * 4096.0);
        auto it = tables.find(key);
        if (it == tables.end())
            it = tables.emplace(key, displacement_table(cplx(0.0, 2.0 * lambda * dm), q_max, n)).first;
        return it->second;
    };

    Matrix Heff = first_order_matrix(n, two_j, lambda, omega_a);
    Matrix H2 = Matrix::Zero(dim, dim);
    double last_norm = 0.0, total_norm = 0.0;
    for (int q = 0; q <= q_max; ++q) {
        if (q == n) continue;
        Matrix Vq = Matrix::Zero(dim, dim);
        for (int mp = 0; mp < dim; ++mp)
            for (int m = 0; m < dim; ++m) {
                if (std::abs(b.Jz_x(mp, m)) < 1e-15) continue;
                Vq(mp, m) = omega_a * b.Jz_x(mp, m) * table_for(b.m(m) - b.m(mp))(q, n);
            }
        const Matrix contrib = (Vq.adjoint() * Vq) / ((n - q) * omega_c);
        H2 += contrib;
        last_norm = contrib.norm();
        total_norm += last_norm;
    }
    Heff += H2;

    SecondOrderResult r;
    r.tail = total_norm > 0.0 ? last_norm / total_norm : 0.0;
    r.converged = r.tail < 1e-10;
    Eigen::SelfAdjointEigenSolver<Matrix> es(Heff);
    r.shifts.assign(es.eigenvalues().data(), es.eigenvalues().data() + dim);
    return r;
}

// Assemble the approximate spectrum {n omega_c + shifts(n, j)} over all spin
// sectors with their multiplicities d_kj. order selects 0th/1st/2nd.
inline std::vector<double> dsc_levels(const ModelParams& p, int n_max, int order, int q_max = 0) {
    p.validate();
    if (!p.identical()) throw std::invalid_argument("dsc_levels: requires identical emitters");
    const double eta = p.eta();
    const double om_a = p.omega_a.front();
    const int N = p.n_emitters;
    if (q_max <= 0) q_max = n_max + int(16.0 * eta * eta * N + 24.0 * eta + 60);

    std::vector<double> out;
    const bool dicke_only = p.spin.kind == SpinKind::DickeJ;
    for (double j = dicke_only ? 0.5 * N : j_min_of(N); j <= 0.5 * N + 1e-9; j += 1.0) {
        const int two_j = int(std::lround(2.0 * j));
        const long d = dicke_only ? 1 : degeneracy(N, j);
        for (int n = 0; n <= n_max; ++n) {
            std::vector<double> shifts;
            if (order == 0) {
                shifts.assign(two_j + 1, 0.0);
            } else if (order == 1) {
                shifts = first_order(n, two_j, eta, om_a);
            } else {
                shifts = second_order(n, two_j, eta, om_a, q_max, p.omega_c).shifts;
            }
            for (double s : shifts)
                for (long r = 0; r < d; ++r) out.push_back(n * p.omega_c + s);
        }
    }
    std::sort(out.begin(), out.end());
    return out;
}

// H0' = omega_c A^dag A with A = a + 2 i lambda Jx, as a sparse operator.
inline SparseOperator displaced_oscillator(const ModelParams& p, const HilbertSpace& sp) {
    auto f = ops::spin_factors(sp.spin);
    SpMat a = ops::lift_photon(sp, ops::fock_destroy_factor(sp.photon_dim()));
    SpMat A = a + SpMat((2.0 * I1 * p.eta()) * ops::lift_spin(sp, f.Jx));
    return SparseOperator(sp, SpMat(p.omega_c * SpMat(SpMat(A.adjoint()) * A)), true);
}

} // namespace dsc
} // namespace cqed
