#include <catch2/catch_amalgamated.hpp>

#include "cqed/eigensolve.hpp"
#include "cqed/models.hpp"

using namespace cqed;

TEST_CASE("solve_lowest on a diagonal matrix") {
    SpMat H(3, 3);
    H.insert(0, 0) = 0.0;
    H.insert(1, 1) = 1.0;
    H.insert(2, 2) = 2.0;
    auto sol = solve_lowest(H, 2, 1e-12);
    REQUIRE(sol.energies(0) == Catch::Approx(0.0).margin(1e-14));
    REQUIRE(sol.energies(1) == Catch::Approx(1.0).margin(1e-14));
    REQUIRE(sol.converged);
}

TEST_CASE("Lanczos path agrees with dense diagonalization") {
    // a model instance large enough to route through shift-invert Lanczos,
    // with exact degeneracies from the permutation symmetry
    ModelParams p = ModelParams::resonant(3, 1.2);
    HilbertSpace sp = p.space(160); // dim 1288
    SparseOperator H = build_dipole_gauge(p, sp);
    const int k = 14;
    LanczosOptions o;
    o.dense_threshold = 100; // force the iterative path
    auto it = solve_lowest(H.mat, k, 1e-9, o);
    REQUIRE(it.converged);
    Eigen::SelfAdjointEigenSolver<Matrix> dense(Matrix(H.mat));
    for (int i = 0; i < k; ++i)
        REQUIRE(it.energies(i) == Catch::Approx(dense.eigenvalues()(i)).margin(1e-10));
    REQUIRE(it.orthonormality_error() < 1e-8);
    // residuals as reported
    REQUIRE(it.residual < 1e-9);
}

TEST_CASE("Lanczos resolves full multiplicities of degenerate clusters") {
    // lambda = 6, N = 2: three rungs, four states each, intra-rung splittings
    // down to ~1e-5
    ModelParams p = ModelParams::resonant(2, 6.0);
    HilbertSpace sp = p.space(initial_cutoff_estimate(p));
    SparseOperator H = build_dipole_gauge(p, sp);
    auto sol = solve_lowest(H.mat, 12, 1e-8);
    REQUIRE(sol.converged);
    for (int r = 0; r < 3; ++r) {
        int count = 0;
        for (int i = 0; i < 12; ++i)
            if (std::abs(sol.energies(i) - sol.energies(0) - r) < 0.2) ++count;
        REQUIRE(count == 4);
    }
}

TEST_CASE("deterministic: two identical solves give identical bits") {
    ModelParams p = ModelParams::resonant(2, 0.9);
    HilbertSpace sp = p.space(130);
    SparseOperator H = build_dipole_gauge(p, sp);
    LanczosOptions o;
    o.dense_threshold = 100;
    auto a = solve_lowest(H.mat, 8, 1e-9, o);
    auto b = solve_lowest(H.mat, 8, 1e-9, o);
    REQUIRE((a.energies - b.energies).cwiseAbs().maxCoeff() == 0.0);
    REQUIRE((a.states - b.states).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("adaptive_solve") {
    SECTION("lambda = 0 converges immediately and exactly") {
        ModelParams p = ModelParams::resonant(2, 0.0);
        auto sol = adaptive_solve(p, 6, 1e-10);
        REQUIRE(sol.converged);
        std::vector<double> want{0, 1, 1, 1, 2, 2};
        for (int i = 0; i < 6; ++i)
            REQUIRE(sol.energies(i) - sol.energies(0) == Catch::Approx(want[i]).margin(1e-10));
    }
    SECTION("initial cutoff formula") {
        ModelParams p = ModelParams::resonant(2, 3.0);
        REQUIRE(initial_cutoff_estimate(p) == 80); // ceil(4*9*1 + 24 + 20)
    }
    SECTION("DSC N=1 lambda=10: lowest four levels at {0,0,1,1}") {
        ModelParams p = ModelParams::resonant(1, 10.0);
        auto sol = adaptive_solve(p, 4, 1e-5);
        REQUIRE(sol.converged);
        REQUIRE(std::abs(sol.energies(1) - sol.energies(0)) < 1e-3);
        REQUIRE(sol.energies(2) - sol.energies(0) == Catch::Approx(1.0).margin(1e-3));
        REQUIRE(sol.energies(3) - sol.energies(0) == Catch::Approx(1.0).margin(1e-3));
    }
    SECTION("cutoff ceiling flags non-convergence instead of looping") {
        ModelParams p = ModelParams::resonant(1, 6.0);
        SolverOptions opt;
        opt.cutoff_ceiling = 40; // far below the required ~170
        auto sol = adaptive_solve(p, 4, 1e-10, opt);
        REQUIRE_FALSE(sol.converged);
        REQUIRE(sol.cutoff_used == 40);
    }
}
