#include <catch2/catch_amalgamated.hpp>

#include "cqed/dsc.hpp"

using namespace cqed;

TEST_CASE("first-order block") {
    SECTION("j=1/2: shifts are +-(wa/2) e^{-2lam^2} L_n(4lam^2)") {
        for (int n : {0, 1, 3}) {
            for (double lam : {0.8, 1.5}) {
                auto sh = dsc::first_order(n, 1, lam, 1.0);
                const double want = 0.5 * std::exp(-2.0 * lam * lam) * laguerre(n, 4.0 * lam * lam);
                REQUIRE(sh.size() == 2);
                REQUIRE(sh[0] == Catch::Approx(-std::abs(want)).margin(1e-14));
                REQUIRE(sh[1] == Catch::Approx(std::abs(want)).margin(1e-14));
            }
        }
    }
    SECTION("n=0: eigenvalues are m wa e^{-2 lam^2}") {
        const double lam = 1.1;
        auto sh = dsc::first_order(0, 3, lam, 1.0); // j = 3/2
        const double pref = std::exp(-2.0 * lam * lam);
        std::vector<double> want{-1.5 * pref, -0.5 * pref, 0.5 * pref, 1.5 * pref};
        for (int i = 0; i < 4; ++i) REQUIRE(sh[i] == Catch::Approx(want[i]).margin(1e-12));
    }
    SECTION("large lambda decouples: shifts vanish") {
        auto sh = dsc::first_order(2, 2, 6.0, 1.0);
        for (double s : sh) REQUIRE(std::abs(s) < 1e-28);
    }
    SECTION("block is hermitian and traceless") {
        Matrix W = dsc::first_order_matrix(2, 4, 0.9, 1.0);
        REQUIRE((W - W.adjoint()).cwiseAbs().maxCoeff() < 1e-14);
        REQUIRE(std::abs(W.trace()) < 1e-14);
    }
}

TEST_CASE("second order") {
    SECTION("q_max precondition") {
        REQUIRE_THROWS_AS(dsc::second_order(0, 1, 2.0, 1.0, 30), std::invalid_argument);
    }
    SECTION("sum is converged: doubling q_max changes nothing") {
        auto a = dsc::second_order(1, 2, 2.0, 1.0, 120);
        auto b = dsc::second_order(1, 2, 2.0, 1.0, 240);
        REQUIRE(a.converged);
        for (std::size_t i = 0; i < a.shifts.size(); ++i)
            REQUIRE(std::abs(a.shifts[i] - b.shifts[i]) < 1e-10);
    }
    SECTION("j=1/2, n=0, lambda=2: order-1+2 matches exact diagonalization") {
        ModelParams p = ModelParams::resonant(1, 2.0);
        auto exact = adaptive_solve(p, 2, 1e-9);
        auto r = dsc::second_order(0, 1, 2.0, 1.0, 120);
        REQUIRE(exact.energies(0) == Catch::Approx(r.shifts[0]).margin(1e-3));
        REQUIRE(exact.energies(1) == Catch::Approx(r.shifts[1]).margin(1e-3));
    }
    SECTION("matrix elements agree with the cos/sin assembly") {
        // V_q entries from displaced elements must equal
        // Jz_x . cos_el + Jy_x . sin_el between Jx eigenstates
        const double lam = 1.3;
        const int n = 1, two_j = 2, qmax = 60;
        auto b = dsc::jx_basis(two_j);
        auto cs = cos_sin_elements(lam, qmax, n);
        for (int q = 0; q <= qmax; ++q) {
            Matrix direct = Matrix::Zero(two_j + 1, two_j + 1);
            for (int mp = 0; mp <= two_j; ++mp)
                for (int m = 0; m <= two_j; ++m)
                    direct(mp, m) = b.Jz_x(mp, m) *
                                    displacement_element(q, n, cplx(0.0, 2.0 * lam * (b.m(m) - b.m(mp))));
            Matrix assembled = b.Jz_x * cs.cos_el(q, n) + b.Jy_x * cs.sin_el(q, n);
            REQUIRE((direct - assembled).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
}

TEST_CASE("assembled DSC levels") {
    SECTION("order 0: harmonic ladder with 2^N degeneracy") {
        ModelParams p = ModelParams::resonant(2, 4.0);
        auto lv = dsc::dsc_levels(p, 2, 0);
        REQUIRE(lv.size() == 12);
        for (int r = 0; r < 3; ++r)
            for (int i = 0; i < 4; ++i) REQUIRE(lv[4 * r + i] == Catch::Approx(double(r)).margin(1e-14));
    }
    SECTION("N=2, lambda_ind=3, order 2: lowest 8 within 1e-3 of exact") {
        ModelParams p = ModelParams::resonant(2, 3.0 * std::sqrt(2.0));
        auto exact = adaptive_solve(p, 8, 1e-9);
        auto lv = dsc::dsc_levels(p, 3, 2);
        for (int i = 0; i < 8; ++i)
            REQUIRE(exact.energies(i) == Catch::Approx(lv[i]).margin(1e-3));
    }
    SECTION("displaced eigenstate identity: H0' D^dag(2 i eta m)|n,j,m> = n wc (...)") {
        ModelParams p = ModelParams::resonant(2, 2.0 * std::sqrt(2.0), true); // eta = 2, DickeJ
        const int cutoff = 120;
        HilbertSpace sp = p.space(cutoff);
        auto H0 = dsc::displaced_oscillator(p, sp);
        auto b = dsc::jx_basis(sp.spin.two_j);
        auto f = ops::spin_factors(sp.spin);
        Matrix Jx = Matrix(f.Jx);
        Eigen::SelfAdjointEigenSolver<Matrix> es(Jx);
        for (int im = 0; im <= sp.spin.two_j; ++im) {
            const double m = es.eigenvalues()(im);
            for (int n : {0, 2}) {
                // D^dag(alpha)|n> = column of D(alpha)^dag = conj rows; build via table
                Matrix D = displacement_table(cplx(0.0, 2.0 * p.eta() * m), cutoff, cutoff);
                Vector photon = D.adjoint().col(n);
                Vector v = Vector::Zero(sp.total_dim());
                for (int q = 0; q <= cutoff; ++q)
                    for (int s = 0; s <= sp.spin.two_j; ++s)
                        v(sp.index(q, s)) = photon(q) * es.eigenvectors()(s, im);
                v.normalize();
                const Vector hv = H0.mat * v;
                REQUIRE((hv - double(n) * v).norm() < 1e-8);
            }
        }
        (void)b;
    }
}
