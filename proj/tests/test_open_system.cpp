#include <catch2/catch_amalgamated.hpp>

#include "cqed/emission.hpp"
#include "cqed/open_system.hpp"

using namespace cqed;

namespace {

struct Fixture {
    ModelParams p;
    EigenSolution eig;
    std::vector<BathChannel> channels;
    Fixture(int N, double lam, bool individual, double temp_a = 0.15, double window = 6.0)
        : p(ModelParams::resonant(N, lam, !individual)) {
        eig = solve_window(p, window);
        BathSpec bs;
        bs.individual = individual;
        bs.collective = !individual;
        bs.temp_a = temp_a;
        channels = make_channels(p, eig.space, bs);
    }
};

Matrix js_zero(const EigenSolution& eig, const BathChannel& ch, int d) {
    return dressed_jumps(eig, ch, d).S_zero;
}

Matrix apply(const Matrix& L, const Matrix& rho) {
    const int d = int(rho.rows());
    Eigen::Map<const Vector> v(rho.data(), d * d);
    Vector w = L * v;
    return Eigen::Map<const Matrix>(w.data(), d, d);
}

} // namespace

TEST_CASE("rates") {
    REQUIRE(ohmic_rate(1e-3, 1.0, 1.0) == Catch::Approx(1e-3));
    REQUIRE(ohmic_rate(2e-3, 0.5, 1.5) == Catch::Approx(6e-3));
    REQUIRE(thermal_n(1.0, 0.0) == 0.0);
    REQUIRE(dephasing_rate(1e-3, 1.0, 0.0) == 0.0);
    REQUIRE(thermal_n(1.0, 0.15) == Catch::Approx(1.2742554619e-3).epsilon(1e-9));
    REQUIRE(dephasing_rate(1e-3, 1.0, 0.15) == Catch::Approx(0.15e-3 / 4.0));
}

TEST_CASE("dressed jump operators") {
    SECTION("lambda = 0 cavity channel has bare elements at omega = wc") {
        Fixture fx(1, 0.0, true);
        auto js = dressed_jumps(fx.eig, fx.channels[0], fx.eig.size());
        REQUIRE(js.omegas.size() >= 1);
        REQUIRE(js.omegas[0] == Catch::Approx(1.0).margin(1e-10));
        // <n-1,s| a+adag |n,s> = sqrt(n): check the first few lowering entries
        const Matrix& S = js.S_plus[0];
        int nonzero = 0;
        for (int i = 0; i < S.rows(); ++i)
            for (int j = 0; j < S.cols(); ++j)
                if (std::abs(S(i, j)) > 1e-12) ++nonzero;
        REQUIRE(nonzero >= 4);
    }
    SECTION("completeness: bins + zero component reconstruct the projection") {
        Fixture fx(2, 0.5, true);
        for (const auto& ch : fx.channels) {
            auto js = dressed_jumps(fx.eig, ch, fx.eig.size());
            Matrix recon = js.S_zero;
            for (const auto& Sp : js.S_plus) recon += Sp + Sp.adjoint();
            REQUIRE((recon - js.projected).cwiseAbs().maxCoeff() < 1e-12);
        }
    }
    SECTION("individual channels couple the dark ladder, collective ones do not") {
        // dark states carry exact integer absolute energies; locate them
        Fixture ind(2, 0.5, true);
        auto find_dark = [&](const EigenSolution& eig, double target) {
            for (int i = 0; i < eig.size(); ++i)
                if (std::abs(eig.energies(i) - target) < 1e-8) return i;
            return -1;
        };
        const int d1 = find_dark(ind.eig, 0.0); // |1~,2~> at absolute energy 0
        const int d2 = find_dark(ind.eig, 1.0); // |2~,2~|
        REQUIRE(d1 >= 0);
        REQUIRE(d2 >= 0);
        auto js_i = dressed_jumps(ind.eig, ind.channels[1], ind.eig.size());
        double max_el = 0.0;
        for (const auto& Sp : js_i.S_plus) max_el = std::max(max_el, std::abs(Sp(d1, d2)));
        REQUIRE(max_el > 1e-3);
        // the collective coupling (1/sqrt N) sum sigma^- preserves j: matrix
        // element between the two dark-sector levels of the full space
        auto coll = make_bath_channel(ind.p, ind.eig.space, BathKind::CollectiveEmitters, 1e-3, 0.15);
        auto js_c = dressed_jumps(ind.eig, coll, ind.eig.size());
        double max_c = 0.0;
        for (const auto& Sp : js_c.S_plus) max_c = std::max(max_c, std::abs(Sp(d1, d2)));
        REQUIRE(max_c < 1e-10);
    }
}

TEST_CASE("GME Liouvillian structure") {
    Fixture fx(2, 0.3, true);
    auto g = build_gme(fx.eig, fx.channels, fx.eig.size());
    const int d = g.d;

    SECTION("trace preservation on random densities") {
        for (int t = 0; t < 20; ++t) {
            Matrix r = Matrix::Random(d, d);
            r = (r * r.adjoint()).eval();
            r /= r.trace();
            REQUIRE(std::abs(apply(g.L, r).trace()) < 1e-10);
        }
    }
    SECTION("hermiticity preservation") {
        Matrix r = Matrix::Random(d, d);
        r = (0.5 * (r + r.adjoint())).eval();
        Matrix Lr = apply(g.L, r);
        REQUIRE((Lr - Lr.adjoint()).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("channel additivity: L{A,B} = L{A} + L{B} - extra commutator") {
        auto gA = build_gme(fx.eig, {fx.channels[0]}, d);
        auto gB = build_gme(fx.eig, {fx.channels[1], fx.channels[2]}, d);
        auto g0 = build_gme(fx.eig, {}, d); // commutator only
        REQUIRE((g.L - (gA.L + gB.L - g0.L)).cwiseAbs().maxCoeff() < 1e-12);
    }
    SECTION("secular limit matches an independently assembled dressed Lindbladian") {
        FilterSpec filt;
        filt.delta_f = 0.0; // F -> exact-degeneracy indicator
        auto gs = build_gme(fx.eig, fx.channels, d, filt);
        // independent assembly from the binned jump set
        Matrix L = Matrix::Zero(d * d, d * d);
        const Matrix Id = Matrix::Identity(d, d);
        auto spre = [&](const Matrix& A) { return Matrix(Eigen::kroneckerProduct(Id, A)); };
        auto spost = [&](const Matrix& B) { return Matrix(Eigen::kroneckerProduct(B.transpose(), Id)); };
        auto sandwich = [&](const Matrix& A, const Matrix& B) {
            return Matrix(Eigen::kroneckerProduct(B.transpose(), A));
        };
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j)
                L(i + d * j, i + d * j) += -I1 * (fx.eig.energies(i) - fx.eig.energies(j));
        for (const auto& ch : fx.channels) {
            auto js = dressed_jumps(fx.eig, ch, d);
            for (std::size_t b = 0; b < js.omegas.size(); ++b) {
                const double w = js.omegas[b];
                const double G = ohmic_rate(ch.gamma, ch.f, w);
                const double nb = thermal_n(w, ch.temperature);
                const Matrix& Sp = js.S_plus[b];
                const Matrix Sm = Sp.adjoint();
                L += G * (nb + 1.0) *
                     (sandwich(Sp, Sm) - 0.5 * spre(Sm * Sp) - 0.5 * spost(Sm * Sp));
                L += G * nb * (sandwich(Sm, Sp) - 0.5 * spre(Sp * Sm) - 0.5 * spost(Sp * Sm));
            }
            const double Om = dephasing_rate(ch.gamma, ch.f, ch.temperature);
            if (Om > 0.0) {
                const Matrix& S0 = js_zero(fx.eig, ch, d);
                L += 2.0 * Om * (sandwich(S0, S0) - 0.5 * spre(S0 * S0) - 0.5 * spost(S0 * S0));
            }
        }
        REQUIRE((gs.L - L).cwiseAbs().maxCoeff() < 1e-10);
    }
    SECTION("single bare cavity decay rate is gamma_c") {
        Fixture bare(1, 0.0, true, 0.0);
        auto gb = build_gme(bare.eig, {bare.channels[0]}, bare.eig.size());
        // population decay of the one-photon state: d p_n / dt = -gamma n p_n
        int one = -1;
        for (int i = 0; i < gb.d; ++i)
            if (std::abs(gb.energies(i) - gb.energies(0) - 1.0) < 1e-9 && one < 0) one = i;
        REQUIRE(one >= 0);
        const int idx = one + gb.d * one;
        REQUIRE(std::real(gb.L(idx, idx)) == Catch::Approx(-1e-3).margin(1e-12));
    }
}

TEST_CASE("steady states") {
    SECTION("zero temperature relaxes to the ground projector") {
        Fixture fx(2, 0.2, true, 0.0);
        auto g = build_gme(fx.eig, fx.channels, fx.eig.size());
        auto ss = steady_state(g);
        Matrix want = Matrix::Zero(g.d, g.d);
        want(0, 0) = 1.0;
        REQUIRE((ss.rho - want).cwiseAbs().maxCoeff() < 1e-8);
        REQUIRE(ss.residual < 1e-10);
    }
    SECTION("detailed balance at lambda = 0: Gibbs populations") {
        ModelParams p = ModelParams::resonant(1, 0.0);
        auto eig = solve_window(p, 6.0);
        BathSpec bs;
        bs.individual = true;
        bs.temp_c = 0.15;
        auto g = build_gme(eig, make_channels(p, eig.space, bs), eig.size());
        auto ss = steady_state(g);
        double z = 0.0;
        for (int i = 0; i < g.d; ++i) z += std::exp(-(g.energies(i) - g.energies(0)) / 0.15);
        for (int i = 0; i < g.d; ++i)
            REQUIRE(ss.rho(i, i).real() ==
                    Catch::Approx(std::exp(-(g.energies(i) - g.energies(0)) / 0.15) / z).margin(1e-9));
    }
    SECTION("collective-only dissipation with a dark sector raises the kernel error") {
        ModelParams p = ModelParams::resonant(2, 0.3); // full product space
        auto eig = solve_window(p, 4.5);
        std::vector<BathChannel> ch{
            make_bath_channel(p, eig.space, BathKind::Cavity, 1e-3, 0.0),
            make_bath_channel(p, eig.space, BathKind::CollectiveEmitters, 1e-3, 0.15)};
        auto g = build_gme(eig, ch, eig.size());
        REQUIRE_THROWS_AS(steady_state(g), SteadyStateError);
        try {
            steady_state(g);
        } catch (const SteadyStateError& e) {
            REQUIRE(e.near_zero_values.size() >= 2);
        }
    }
    SECTION("individual channels populate the dark state; Dicke-sector run cannot") {
        Fixture ind(2, 0.3, true);
        auto gi = build_gme(ind.eig, ind.channels, ind.eig.size());
        auto si = steady_state(gi);
        int dark = -1;
        for (int i = 0; i < gi.d; ++i)
            if (std::abs(ind.eig.energies(i)) < 1e-8) dark = i; // absolute energy 0
        REQUIRE(dark >= 0);
        REQUIRE(si.rho(dark, dark).real() > 1e-6);
        REQUIRE(si.min_eigenvalue > -1e-7);
        Fixture coll(2, 0.3, false); // DickeJ(1): no dark sector at all
        auto gc = build_gme(coll.eig, coll.channels, coll.eig.size());
        auto sc = steady_state(gc); // kernel is one-dimensional here
        for (int i = 0; i < gc.d; ++i)
            REQUIRE(std::abs(coll.eig.energies(i)) > 1e-6); // no integer-pinned dark level
        (void)sc;
    }
}

TEST_CASE("time evolution") {
    Fixture fx(2, 0.3, true);
    auto g = build_gme(fx.eig, fx.channels, fx.eig.size());
    SECTION("L = 0 keeps rho constant") {
        GmeLiouvillian z = g;
        z.L.setZero();
        Matrix r0 = Matrix::Zero(g.d, g.d);
        r0(1, 1) = 1.0;
        auto out = evolve(z, r0, {0.0, 5.0, 10.0});
        REQUIRE((out.back() - r0).cwiseAbs().maxCoeff() < 1e-14);
    }
    SECTION("bare cavity photon number decays at gamma_c") {
        ModelParams p = ModelParams::resonant(1, 0.0);
        auto eig = solve_window(p, 6.0);
        BathSpec bs; // cavity only at T=0
        auto g0 = build_gme(eig, make_channels(p, eig.space, bs), eig.size());
        Matrix r0 = Matrix::Zero(g0.d, g0.d);
        int one = -1;
        for (int i = 0; i < g0.d; ++i)
            if (std::abs(g0.energies(i) - g0.energies(0) - 1.0) < 1e-9 && one < 0) one = i;
        r0(one, one) = 1.0;
        auto out = evolve(g0, r0, {0.0, 100.0, 300.0});
        const double n1 = out[1](one, one).real();
        const double n2 = out[2](one, one).real();
        REQUIRE(n1 == Catch::Approx(std::exp(-1e-3 * 100.0)).margin(1e-6));
        REQUIRE(n2 == Catch::Approx(std::exp(-1e-3 * 300.0)).margin(1e-6));
    }
    SECTION("long-time limit agrees with the steady state") {
        auto ss = steady_state(g);
        Matrix r0 = Matrix::Zero(g.d, g.d);
        r0(0, 0) = 1.0;
        auto out = evolve(g, r0, {40000.0});
        Matrix diff = out[0] - ss.rho;
        Eigen::SelfAdjointEigenSolver<Matrix> es(0.5 * (diff + diff.adjoint()));
        REQUIRE(es.eigenvalues().cwiseAbs().sum() * 0.5 < 1e-6); // trace distance
        // hermiticity and positivity along the trajectory
        REQUIRE((out[0] - out[0].adjoint()).cwiseAbs().maxCoeff() < 1e-10);
        Eigen::SelfAdjointEigenSolver<Matrix> ps(out[0]);
        REQUIRE(ps.eigenvalues().minCoeff() > -1e-7);
    }
}
