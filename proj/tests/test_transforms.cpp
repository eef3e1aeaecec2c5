// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "zollfrei/error.hpp"
#include "zollfrei/transforms.hpp"

using namespace zf;
using zt::kPi;

namespace {

// independent oracles: plain trapezoid on the circle, Gauss x trapezoid on the cap
double circle_mean(const HarmonicCoeffs& h, const DeSitterPoint& p, int n = 128) {
    const Vec3 a = unit(cross(p.y, std::abs(p.y[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0}));
    const Vec3 b = cross(p.y, a);
    const double z = std::tanh(p.t), s = 1.0 / std::cosh(p.t);
    double acc = 0;
    for (int k = 0; k < n; ++k) {
        const double f = 2 * kPi * k / n;
        acc += synthesize(h, z * p.y + (s * std::cos(f)) * a + (s * std::sin(f)) * b);
    }
    return acc / n;
}

double cap_integral(const HarmonicCoeffs& h, const DeSitterPoint& p, int nr = 40, int nf = 128) {
    const Vec3 a = unit(cross(p.y, std::abs(p.y[0]) < 0.9 ? Vec3{1, 0, 0} : Vec3{0, 1, 0}));
    const Vec3 b = cross(p.y, a);
    std::vector<double> x, w;
    gauss_legendre(nr, x, w);
    const double z0 = std::tanh(p.t);
    double acc = 0;
    for (int i = 0; i < nr; ++i) {
        const double c = 0.5 * (1 - z0) * x[i] + 0.5 * (1 + z0), sn = std::sqrt(1 - c * c);
        for (int k = 0; k < nf; ++k) {
            const double f = 2 * kPi * k / nf;
            acc += 0.5 * (1 - z0) * w[i] * (2 * kPi / nf) *
                   synthesize(h, c * p.y + (sn * std::cos(f)) * a + (sn * std::sin(f)) * b);
        }
    }
    return acc / (2 * kPi);
}

}  // namespace

TEST_CASE("cap area: Q(1) = 1 - tanh t") {
    zt::Rng r(1);
    const auto one = [](const Vec3&) { return 1.0; };
    const auto cfg = TransformConfig::for_band_limit(0);
    for (int i = 0; i < 50; ++i) {
        const DeSitterPoint p{r.uni(-5, 5), r.sphere()};
        CHECK(std::abs(transform_Q(one, p, cfg) - (1 - std::tanh(p.t))) < 1e-12);
    }
}

TEST_CASE("R on pure harmonics is P_l(tanh t)") {
    zt::Rng r(2);
    for (int l = 0; l <= 6; ++l)
        for (int m : {-l, 0, l}) {
            HarmonicCoeffs h(l);
            h(l, m) = 1.0;
            for (int i = 0; i < 5; ++i) {
                const DeSitterPoint p{r.uni(-3, 3), r.sphere()};
                const double want = legendre_P(l, std::tanh(p.t)) * ylm(l, m, p.y);
                CHECK(std::abs(transform_R(h, p) - want) < 1e-10);
                CHECK(std::abs(R_spectral(h, p) - want) < 1e-12);
            }
        }
}

TEST_CASE("spectral routes against independent quadrature") {
    zt::Rng r(3);
    const HarmonicCoeffs h = zt::random_generator(r, 8, 1.0);
    for (int i = 0; i < 10; ++i) {
        const DeSitterPoint p{r.uni(-2.5, 2.5), r.sphere()};
        CHECK(std::abs(R_spectral(h, p) - circle_mean(h, p)) < 1e-11);
        CHECK(std::abs(Q_spectral(h, p) - cap_integral(h, p)) < 1e-11);
        CHECK(std::abs(transform_Q(h, p) - Q_spectral(h, p)) < 1e-11);
    }
}

TEST_CASE("degree-k eigenvalues of the t = 0 cap transform") {
    CHECK(std::abs(q_eigenvalue(0) - 1.0) < 1e-12);
    for (int m = 1; m <= 6; ++m) CHECK(std::abs(q_eigenvalue(2 * m)) < 1e-10);
    // hemisphere oracle: (1/2π) ∫_{u·y>0} u·y dA = 1/2
    CHECK(std::abs(q_eigenvalue(1) - 0.5) < 1e-9);
    for (int k = 1; k <= 25; k += 2) {
        CHECK(std::abs(q_eigenvalue(k) - q_profile(k, 0.0)) < 1e-12);
        if (k >= 3) CHECK(q_eigenvalue(k) * q_eigenvalue(k - 2) < 0);
    }
    // R eigenvalue at t = 0 is P_k(0)
    CHECK(std::abs(r_eigenvalue(2) + 0.5) < 1e-12);
    CHECK(std::abs(r_eigenvalue(3)) < 1e-12);

    const QSpectrum q = QSpectrum::compute(10);
    std::ostringstream os;
    q.write_csv(os);
    CHECK(os.str().rfind("l,", 0) == 0);
    CHECK(q.c_Q.size() == 11u);
}

TEST_CASE("time derivatives of R and Q") {
    zt::Rng r(4);
    const HarmonicCoeffs h = zt::random_generator(r, 8, 1.0);
    std::vector<DeSitterPoint> pts;
    for (int i = 0; i < 20; ++i) pts.push_back({r.uni(-3, 3), r.sphere()});
    const IdentityReport id = identity_residuals(h, pts, 1e-3);
    CHECK(id.del_R < 1e-7);
    CHECK(id.del_Q < 1e-7);
    CHECK(id.order_del_R > 3.8);
    CHECK(id.order_del_Q > 3.8);
}

TEST_CASE("t = 0 inverses") {
    zt::Rng r(5);
    const HarmonicCoeffs h = zt::random_generator(r, 9, 1.0);
    const HarmonicCoeffs ho = odd_part(h), he = even_part(h, false);
    CHECK(max_abs_diff(invert_Q0_odd(apply_Q(ho, 0.0)), ho) < 1e-12);
    CHECK(max_abs_diff(invert_R0_even(apply_R(he, 0.0)), he) < 1e-12);
}

TEST_CASE("quadrature config is validated") {
    TransformConfig c;
    c.n_phi = 2;
    CHECK_THROWS_AS(c.validate(8), Error);
    CHECK_NOTHROW(TransformConfig::for_band_limit(8).validate(8));
}
