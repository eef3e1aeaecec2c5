// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"
#include "zollfrei/curvature.hpp"
#include "zollfrei/error.hpp"

using namespace zf;
using zt::kPi;

namespace {

Monopole tod(double c) { return Monopole::from_generator(zt::linear(c, {0, 0, 1})); }

Monopole mixed(zt::Rng& r) {
    return Monopole::from_generator(zt::linear(0.25, r.sphere()) + zt::random_generator(r, 4, 0.04));
}

}  // namespace

TEST_CASE("frames are orthonormal and dual") {
    zt::Rng r(1);
    const Monopole m = mixed(r);
    for (int i = 0; i < 10; ++i) {
        const auto f = frames_at(m, r.uni(0, 6), r.uni(-2, 2), r.disk(1.5));
        CHECK(orthonormality_residual(m, f) < 1e-13);
    }
}

TEST_CASE("connection: torsion-free, metric, and the dE0 identity") {
    zt::Rng r(2);
    for (const Monopole& m : {Monopole::trivial(), tod(0.3), mixed(r)}) {
        for (int i = 0; i < 4; ++i) {
            const double t = r.uni(-1.5, 1.5);
            const cplx lam = r.disk(1.5);
            CHECK(torsion_residual(m, t, lam) < 1e-6);
            CHECK(christoffel_residual(m, t, lam) < 1e-5);
            CHECK(dE0_residual(m, t, lam).explicit_form < 1e-6);
        }
    }
    // flat base: ν = 0 and the base connection alone
    const auto c = connection_at(Monopole::trivial(), 0.4, {0.3, 0.1});
    for (double v : c.nu) CHECK(std::abs(v) < 1e-15);
    CHECK(std::abs(c.base[0][1][1] - std::tanh(0.4)) < 1e-15);  // ω̲¹₂(Ē₂) = tanh t
}

TEST_CASE("lifted fields: two assemblies and the closed fiber components") {
    zt::Rng r(3);
    const Monopole m = mixed(r);
    for (int i = 0; i < 10; ++i) {
        const double t = r.uni(-1.5, 1.5), z = r.uni(-2, 2);
        const cplx lam = r.disk(1.5);
        const LiftedField a = lifted_fields(m, t, lam, z), b = lifted_fields_reduced(m, t, lam, z);
        const MonopolePoint p = evaluate(m, t, lam);
        const double psi = (1 + z * z) / (2 * std::cosh(t));
        const double g1 = psi * (-lam.imag() + z * lam.real() - z * std::sinh(t));
        const double g2 = psi * (-z * lam.imag() - lam.real() - std::sinh(t));
        const Vec5 G1{-(p.V * z + p.A[1] + z * p.A[2]), -1.0, p.c, p.c * z, g1};
        const Vec5 G2{-(p.V + z * p.A[1] - p.A[2]), z, p.c * z, -p.c, g2};
        for (int k = 0; k < 5; ++k) {
            CHECK(std::abs(a.G1[k] - G1[k]) < 1e-12);
            CHECK(std::abs(a.G2[k] - G2[k]) < 1e-12);
            CHECK(std::abs(b.G1[k] - G1[k]) < 1e-12);
            CHECK(std::abs(b.G2[k] - G2[k]) < 1e-12);
        }
    }
}

TEST_CASE("the lifted distribution is integrable; a ramped gauge field is not") {
    zt::Rng r(4);
    const Monopole m = tod(0.3);
    HarmonicCoeffs phi(2);
    phi(1, 1) = 1.0;
    phi(2, -1) = 0.5;
    const Monopole ramp = m.with_deformation(Deformation::ramp, phi);
    const Monopole grad = m.with_deformation(Deformation::gradient, phi);
    for (int i = 0; i < 6; ++i) {
        const double s = r.uni(0, 6), t = r.uni(-1.5, 1.5), z = r.uni(-2, 2);
        const cplx lam = r.disk(1.5);
        CHECK(frobenius_residual(m, s, t, lam, z).residual < 1e-5);
        CHECK(frobenius_residual(grad, s, t, lam, z).residual < 1e-5);
        CHECK(frobenius_residual(ramp, s, t, lam, z).residual > 1e-2);
    }
}

TEST_CASE("holomorphic data along the lifted fields") {
    zt::Rng r(5);
    const HarmonicCoeffs h = zt::linear(0.3, {0, 0, 1});
    int n = 0;
    while (n < 20) {
        const double t = r.uni(-1.5, 1.5);
        const cplx lam = r.disk(1.5), w = r.circle();
        if (std::abs(1.0 + w) < 0.1 || std::abs(lam + std::exp(t) * w) < 0.1) continue;
        const Wanted2Report rep = wanted2_residual(h, t, lam, w);
        CHECK(rep.max_wanted() < 1e-5);
        CHECK(rep.max_phi() < 1e-5);
        ++n;
    }
    CHECK_THROWS_AS(wanted2_residual(h, 0.0, 0.0, {-1.0, 0.0}), Error);
}

TEST_CASE("Weyl curvature: self-dual part vanishes, reversed orientation control does not") {
    zt::Rng r(6);
    const Monopole m = tod(0.2);
    for (int i = 0; i < 3; ++i) {
        const double s = r.uni(0, 6), t = r.uni(-1.5, 1.5);
        const cplx lam = r.disk(1.5);
        const ASDReport a = asd_residual(m, s, t, lam);
        CHECK(a.relative_sd < 1e-3);
        CHECK(a.W_minus > 1e-2);
        CHECK(asd_residual(Monopole::trivial(), s, t, lam).relative_sd < 1e-4);
        CHECK(asd_residual(m.with_reversed_A(), s, t, lam).relative_sd > 0.5);
        CHECK(asd_residual(m, s, t, lam, MetricKind::g_bar).relative_sd < 1e-3);
    }
}
