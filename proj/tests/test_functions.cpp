#include <catch2/catch_amalgamated.hpp>

#include <unsupported/Eigen/MatrixFunctions>

#include "cqed/functions.hpp"
#include "cqed/ops.hpp"

using namespace cqed;

TEST_CASE("Laguerre polynomials") {
    REQUIRE(laguerre(0, 3.7) == 1.0);
    REQUIRE(laguerre(1, 1.0) == Catch::Approx(0.0).margin(1e-15)); // L_1(4 lam^2) at lam = 0.5
    SECTION("L_3 against the series sum C(n,l)(-x)^l / l!") {
        const double x = 2.0;
        double series = 0.0;
        for (int l = 0; l <= 3; ++l) {
            double binom = 1.0;
            for (int i = 0; i < l; ++i) binom = binom * (3 - i) / (i + 1);
            double fact = 1.0;
            for (int i = 2; i <= l; ++i) fact *= i;
            series += binom * std::pow(-x, l) / fact;
        }
        REQUIRE(laguerre(3, x) == Catch::Approx(series).epsilon(1e-14));
    }
}

TEST_CASE("displacement matrix elements") {
    SECTION("<0|D(alpha)|0> = exp(-|alpha|^2/2)") {
        const cplx alpha(0.3, -0.7);
        REQUIRE(std::abs(displacement_element(0, 0, alpha) - std::exp(-0.5 * std::norm(alpha))) < 1e-15);
    }
    SECTION("D(0) is the identity") {
        for (int q = 0; q <= 6; ++q)
            for (int n = 0; n <= 6; ++n)
                REQUIRE(std::abs(displacement_element(q, n, 0.0) - (q == n ? 1.0 : 0.0)) < 1e-15);
    }
    SECTION("closed form against the matrix exponential, cutoff 60") {
        const int dim = 61;
        Matrix a = Matrix::Zero(dim, dim);
        for (int n = 1; n < dim; ++n) a(n - 1, n) = std::sqrt(double(n));
        for (cplx alpha : {cplx(0.8, 0.0), cplx(0.0, 1.7), cplx(-1.2, 2.1), cplx(2.0, -2.2)}) {
            Matrix gen = alpha * a.adjoint() - std::conj(alpha) * a;
            Matrix D = gen.exp();
            for (int q = 0; q <= 10; ++q)
                for (int n = 0; n <= 10; ++n)
                    REQUIRE(std::abs(displacement_element(q, n, alpha) - D(q, n)) < 1e-8);
        }
    }
    SECTION("table recursion agrees with the closed form") {
        const cplx alpha(0.0, 1.9);
        auto T = displacement_table(alpha, 40, 12);
        for (int q = 0; q <= 40; ++q)
            for (int n = 0; n <= 12; ++n)
                REQUIRE(std::abs(T(q, n) - displacement_element(q, n, alpha)) < 1e-12);
    }
    SECTION("column unitarity up to q = n + 10|alpha|^2 + 20") {
        for (double amag : {0.7, 1.8, 3.0}) {
            const cplx alpha(0.0, amag);
            for (int n : {0, 3, 8}) {
                const int qmax = n + int(10.0 * amag * amag) + 20;
                auto T = displacement_table(alpha, qmax, n);
                double sum = 0.0;
                for (int q = 0; q <= qmax; ++q) sum += std::norm(T(q, n));
                REQUIRE(sum == Catch::Approx(1.0).margin(1e-6));
            }
        }
    }
}

TEST_CASE("cos/sin elements of 2 lam X") {
    const double lam = 0.9;
    auto cs = cos_sin_elements(lam, 60, 20);
    SECTION("parity selection: cos even, sin odd in q-n") {
        for (int q = 0; q <= 60; ++q)
            for (int n = 0; n <= 20; ++n) {
                if ((q - n) % 2 != 0) REQUIRE(std::abs(cs.cos_el(q, n)) < 1e-12);
                if ((q - n) % 2 == 0) REQUIRE(std::abs(cs.sin_el(q, n)) < 1e-12);
            }
    }
    SECTION("diagonal cosine reproduces exp(-2 lam^2) L_n(4 lam^2)") {
        for (int n = 0; n <= 20; ++n)
            REQUIRE(std::abs(cs.cos_el(n, n) -
                             std::exp(-2.0 * lam * lam) * laguerre(n, 4.0 * lam * lam)) < 1e-10);
    }
    SECTION("spectral-calculus cross-check at cutoff 80") {
        const int dim = 81;
        Matrix X = Matrix::Zero(dim, dim);
        for (int n = 1; n < dim; ++n) X(n - 1, n) = X(n, n - 1) = std::sqrt(double(n));
        Eigen::SelfAdjointEigenSolver<Matrix> es(X);
        Eigen::VectorXd c(dim), s(dim);
        for (int i = 0; i < dim; ++i) {
            c(i) = std::cos(2.0 * lam * es.eigenvalues()(i));
            s(i) = std::sin(2.0 * lam * es.eigenvalues()(i));
        }
        Matrix C = es.eigenvectors() * c.asDiagonal() * es.eigenvectors().adjoint();
        Matrix S = es.eigenvectors() * s.asDiagonal() * es.eigenvectors().adjoint();
        for (int q = 0; q <= 20; ++q)
            for (int n = 0; n <= 20; ++n) {
                REQUIRE(std::abs(cs.cos_el(q, n) - C(q, n).real()) < 1e-8);
                REQUIRE(std::abs(cs.sin_el(q, n) - S(q, n).real()) < 1e-8);
            }
    }
}
