// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"
#include "support.hpp"
#include "zollfrei/error.hpp"

using namespace zf;
using zt::kPi;

TEST_CASE("de Sitter points sit on the quadric and round-trip") {
    zt::Rng r(1);
    for (int i = 0; i < 50; ++i) {
        const DeSitterPoint p{r.uni(-4, 4), r.sphere()};
        const auto x = p.ambient();
        CHECK(std::abs(-x[0] * x[0] + x[1] * x[1] + x[2] * x[2] + x[3] * x[3] - 1.0) < 1e-9);
        const auto q = DeSitterPoint::from_ambient(x);
        CHECK(std::abs(q.t - p.t) < 1e-12);
        CHECK(norm(q.y - p.y) < 1e-12);
        const auto a = p.involution().ambient();
        for (int k = 0; k < 4; ++k) CHECK(std::abs(a[k] + x[k]) < 1e-12);
    }
}

TEST_CASE("small circle: unit vectors on the null cone of x") {
    zt::Rng r(2);
    for (int i = 0; i < 20; ++i) {
        const DeSitterPoint p{r.uni(-3, 3), r.sphere()};
        const auto f = CircleFrame::make(p.y);
        CHECK(std::abs(dot(cross(f.e1, f.e2), f.y) - 1.0) < 1e-12);
        for (double phi : {0.0, 1.0, 2.5, 4.0}) {
            const Vec3 u = small_circle_point(p, f, phi);
            const auto x = p.ambient();
            // (1, u) is null and orthogonal to x
            CHECK(std::abs(norm(u) - 1.0) < 1e-12);
            CHECK(std::abs(-x[0] + x[1] * u[0] + x[2] * u[1] + x[3] * u[2]) < 1e-12);
        }
    }
}

TEST_CASE("cap membership is strict") {
    const DeSitterPoint p{0.5, {0, 0, 1}};
    CHECK(cap_contains({0, 0, 1}, p));
    CHECK_FALSE(cap_contains({0, 0, -1}, p));
    const double z = std::tanh(0.5);
    CHECK_FALSE(cap_contains({std::sqrt(1 - z * z), 0, z}, p));
}

TEST_CASE("Gauss-Legendre and sphere grid integrate polynomials exactly") {
    std::vector<double> x, w;
    gauss_legendre(8, x, w);
    double s0 = 0, s4 = 0, s15 = 0;
    for (std::size_t i = 0; i < x.size(); ++i) {
        s0 += w[i];
        s4 += w[i] * std::pow(x[i], 4);
        s15 += w[i] * std::pow(x[i], 15);
    }
    CHECK(std::abs(s0 - 2.0) < 1e-14);
    CHECK(std::abs(s4 - 0.4) < 1e-14);
    CHECK(std::abs(s15) < 1e-14);

    const SphereGrid g(10);
    std::vector<double> f(g.size()), one(g.size(), 1.0);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec3 u = g.node(k);
        f[k] = u[0] * u[0] * u[1] * u[1];
        CHECK(norm(g.node(g.antipode(k)) + u) < 1e-13);
    }
    CHECK(std::abs(sphere_mean(one, g) - 4 * kPi) < 1e-12);
    CHECK(std::abs(sphere_mean(f, g) - 4 * kPi / 15) < 1e-12);  // ∫x²y² = 4π/15
}

TEST_CASE("parity split separates constant, even and odd parts") {
    const SphereGrid g(6);
    std::vector<double> f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec3 u = g.node(k);
        f[k] = 3.0 + u[0] + u[0] * u[1];
    }
    const auto p = parity_split(f, g);
    CHECK(std::abs(p.mean - 3.0) < 1e-12);
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec3 u = g.node(k);
        CHECK(std::abs(p.odd[k] - u[0]) < 1e-12);
        CHECK(std::abs(p.even[k] - u[0] * u[1]) < 1e-12);
    }
}

TEST_CASE("stereographic chart") {
    zt::Rng r(3);
    for (int i = 0; i < 50; ++i) {
        const Vec3 y = r.sphere();
        CHECK(norm(inverse_stereographic(stereographic(y)) - y) < 1e-10);
    }
    CHECK(stereographic({-1, 0, 0}).inf);
    CHECK(norm(inverse_stereographic(ExtComplex{{0, 0}, true}) - Vec3{-1, 0, 0}) < 1e-15);
    const cplx l(0.3, -0.7);
    Vec3 da, db;
    stereographic_jacobian(l, da, db);
    const double e = 1e-6;
    const Vec3 fa = (1 / (2 * e)) * (inverse_stereographic(l + cplx(e, 0)) - inverse_stereographic(l - cplx(e, 0)));
    const Vec3 fb = (1 / (2 * e)) * (inverse_stereographic(l + cplx(0, e)) - inverse_stereographic(l - cplx(0, e)));
    CHECK(norm(fa - da) < 1e-8);
    CHECK(norm(fb - db) < 1e-8);
}

TEST_CASE("unit rejects the zero vector") {
    CHECK_THROWS_AS(unit({0, 0, 0}), Error);
}
