// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "zollfrei/error.hpp"
#include "zollfrei/monopole.hpp"
#include "zollfrei/transforms.hpp"

using namespace zf;

namespace {

// a few modes with total coefficient small enough that V stays positive
std::vector<TodMode> random_modes(zt::Rng& r) {
    std::vector<TodMode> m;
    for (int l = 1; l <= 3; ++l) m.push_back({l, static_cast<int>(std::lround(r.uni(-l, l))), r.uni(-0.15, 0.15)});
    return m;
}

}  // namespace

TEST_CASE("linear generator: V = 1 + c sech²t (u·y)") {
    zt::Rng r(1);
    const Vec3 v{0, 0, 1};
    for (double c : {0.3, -0.7}) {
        const Monopole m = Monopole::from_generator(zt::linear(c, v));
        for (int i = 0; i < 20; ++i) {
            const double t = r.uni(-3, 3);
            const Vec3 y = r.sphere();
            const double sech = 1 / std::cosh(t);
            CHECK(std::abs(monopole_V(m, t, y) - (1 + c * sech * sech * y[2])) < 1e-13);
            CHECK(std::abs(monopole_f(m, t, y) - c * std::tanh(t) * y[2]) < 1e-13);
        }
    }
}

TEST_CASE("mode sums against the direct formula") {
    zt::Rng r(2);
    const auto modes = random_modes(r);
    const Monopole m = tod_monopole(modes);
    for (int i = 0; i < 20; ++i) {
        const double t = r.uni(-3, 3);
        const Vec3 y = r.sphere();
        // V - 1 = Σ c P_l'(tanh t) sech² t Y_lm(y)
        double want = 1.0;
        for (const auto& md : modes) {
            const double z = std::tanh(t);
            want += md.c * legendre_Z(md.l, z) * (1 - z * z) * ylm(md.l, md.m, y);
        }
        CHECK(std::abs(monopole_V(m, t, y) - want) < 1e-13);
        CHECK(std::abs(tod_V_direct(modes, t, y) - want) < 1e-13);
    }
    CHECK_THROWS_AS(tod_monopole({{0, 0, 1.0}}), Error);
    CHECK_THROWS_AS(tod_monopole({{2, 3, 1.0}}), Error);
}

TEST_CASE("monopole equation and gauge conditions") {
    zt::Rng r(3);
    for (int trial = 0; trial < 3; ++trial) {
        const Monopole m = tod_monopole(random_modes(r));
        std::vector<ChartPoint> pts;
        for (int i = 0; i < 8; ++i) pts.push_back({r.uni(-2, 2), r.disk(1.5)});
        for (const auto& p : pts) CHECK(monopole_residual(m, p) < 1e-6);
        const GaugeReport g = gauge_conditions_check(m, pts);
        CHECK(g.max_A1 < 1e-12);
        CHECK(g.max_div < 1e-8);
    }
    // reversing A breaks dA = *dV
    const Monopole m = Monopole::from_generator(zt::linear(0.4, {0.2, 0.5, 0.8}));
    CHECK(monopole_residual(m.with_reversed_A(), {0.3, {0.2, -0.4}}) > 1e-3);
}

TEST_CASE("zero-mean generators only") {
    HarmonicCoeffs h(1);
    h(0, 0) = 0.1;
    CHECK_THROWS_AS(Monopole::from_generator(h), Error);
}

TEST_CASE("admissibility closed forms") {
    const AdmissibilityReport a = admissibility_check(zt::linear(0.5, {0, 0, 1}));
    CHECK(a.admissible);
    CHECK(std::abs(a.margin - 0.5) < 1e-6);
    CHECK(a.consistent);
    CHECK(std::abs(std::abs(a.y_witness[2]) - 1.0) < 1e-6);

    const AdmissibilityReport b = admissibility_check(zt::linear(2.0, {0, 0, 1}));
    CHECK_FALSE(b.admissible);
    CHECK(std::abs(b.margin + 1.0) < 1e-6);
    CHECK_FALSE(b.V_positive);
    CHECK(b.consistent);
    CHECK(b.to_json().find("\"witness\"") != std::string::npos);

    CHECK(admissibility_check(HarmonicCoeffs(2)).margin == 1.0);
}

TEST_CASE("metrics: signature, conformal factors, V <= 0 rejected") {
    zt::Rng r(4);
    const Monopole m = Monopole::from_generator(zt::linear(0.3, {0, 0, 1}));
    for (int i = 0; i < 5; ++i) {
        const double s = r.uni(0, 6), t = r.uni(-2, 2);
        const cplx lam = r.disk(1.5);
        const MetricSample va = metric_at(m, s, t, lam, MetricKind::g_VA);
        const MetricSample gm = metric_at(m, s, t, lam, MetricKind::g_M);
        const MetricSample gb = metric_at(m, s, t, lam, MetricKind::g_bar);
        CHECK(va.n_negative == 2);
        CHECK(va.n_positive == 2);
        const double V = evaluate(m, t, lam).V;
        CHECK(std::abs(gm.g[0][0] + 1 / (V * V)) < 1e-14);
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                CHECK(std::abs(va.g[a][b] - V * gm.g[a][b]) < 1e-13);
                CHECK(std::abs(gb.g[a][b] - V / std::pow(std::cosh(t), 2) * gm.g[a][b]) < 1e-13);
            }
    }
    const Monopole bad = Monopole::from_generator(zt::linear(2.0, {0, 0, 1}));
    CHECK_THROWS_AS(metric_at(bad, 0.0, 0.0, {0.0, -1.0}, MetricKind::g_M), Error);
}

TEST_CASE("gradient shift of A is a diffeomorphism") {
    zt::Rng r(5);
    const Monopole m = Monopole::from_generator(zt::linear(0.3, {0, 1, 0}));
    HarmonicCoeffs phi(2);
    phi(2, 1) = 0.4;
    phi(1, -1) = -0.2;
    for (int i = 0; i < 5; ++i) CHECK(gauge_pullback_residual(m, phi, r.uni(0, 6), r.uni(-2, 2), r.disk(1.5)) < 1e-10);
}

TEST_CASE("ends of the monopole") {
    zt::Rng r(6);
    const HarmonicCoeffs h = zt::linear(0.3, {0, 0, 1}) + zt::random_generator(r, 3, 0.05);
    const Monopole m = Monopole::from_generator(h);
    CHECK(max_abs_diff(recover_generator(m, 8.0), h) < 1e-5);
    const CompactificationReport c = compactification_probe(m, {r.sphere(), r.sphere()});
    CHECK(c.max_spread < 1e-3);
    const auto t = symmetric_tgrid(6.0, 481);
    CHECK(V_minus_one_field(m, t).parity_defect() < 1e-12);
    std::ostringstream os;
    write_monopole_csv(m, symmetric_tgrid(1.0, 5), os);
    CHECK(!os.str().empty());
}
