// SPDX-License-Identifier: Apache-2.0
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <sstream>

#include "doctest.h"
#include "support.hpp"
#include "zollfrei/error.hpp"
#include "zollfrei/monopole.hpp"
#include "zollfrei/transforms.hpp"
#include "zollfrei/twistor.hpp"

using namespace zf;
using zt::kPi;

namespace {

const cplx I(0.0, 1.0);

ProjectivePoint flat_disk(double s, double t, cplx lam, cplx w) {
    const double et = std::exp(t);
    const cplx e = std::exp(I * s);
    return ProjectivePoint::from({-I * e * (std::conj(lam) * w + et), -I * e * (-w + lam * et),
                                  -1.0 + std::conj(lam) * et * w, lam + et * w});
}

// boundary equations written out directly, unit-normalized
double membership_oracle(const ProjectivePoint& p, const HarmonicCoeffs& h) {
    auto z = p.z;
    double n = 0;
    for (auto& c : z) n += std::norm(c);
    n = std::sqrt(n);
    for (auto& c : z) c /= n;
    const double r1 = std::abs(std::conj(z[0]) * z[2] - std::conj(z[1]) * z[3]);
    const double hv = synthesize(h, inverse_stereographic(z[1] / z[0]));
    const double r2 = std::abs(std::abs(z[3]) - std::abs(z[0]) * std::exp(-hv));
    return std::max(r1, r2);
}

std::array<double, 4> qmul(const std::array<double, 4>& a, const std::array<double, 4>& b) {
    return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3], a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
            a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1], a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

HarmonicCoeffs admissible_generator(zt::Rng& r) {
    return zt::linear(0.3, r.sphere()) + zt::random_generator(r, 5, 0.04);
}

}  // namespace

TEST_CASE("projective points") {
    const auto p = ProjectivePoint::from({cplx(0, 2), cplx(1, 1), 0.0, cplx(-3, 0)});
    double n = 0;
    for (auto c : p.z) n += std::norm(c);
    CHECK(std::abs(n - 1) < 1e-15);
    const auto q = ProjectivePoint::from({cplx(0, 2) * I, cplx(1, 1) * I, 0.0, cplx(-3, 0) * I});
    CHECK(projective_distance(p, q) < 1e-15);
    CHECK(p.pivot() == 3);
    CHECK_THROWS_AS(ProjectivePoint::from({0.0, 0.0, 0.0, 0.0}), Error);
}

TEST_CASE("flat generator: disks are the standard fibration") {
    const HarmonicCoeffs h0(2);
    zt::Rng r(1);
    for (int i = 0; i < 20; ++i) {
        const double s = r.uni(0, 6), t = r.uni(-2, 2);
        const cplx lam = r.disk(2.0);
        const BoundaryMap b = fourier_split(h0, s, t, lam);
        for (int k = 0; k < 8; ++k) {
            const cplx w = r.disk(1.0);
            CHECK(projective_distance(disk_map(b, w), flat_disk(s, t, lam, w)) < 1e-12);
            CHECK(projective_distance(standard_fibration(s, t, lam, w), flat_disk(s, t, lam, w)) < 1e-12);
        }
    }
    // at the base point the disk is [-i : iω : -1 : ω]
    const cplx w(0.6, 0.8);
    CHECK(projective_distance(standard_fibration(0, 0, 0.0, w), ProjectivePoint::from({-I, I * w, -1.0, w})) < 1e-15);
}

TEST_CASE("projection to the sphere pair") {
    const cplx w(0.6, 0.8);
    const auto pi = pi_projection(standard_fibration(0, 0, 0.0, w));
    CHECK(std::abs(pi[0].v + w) < 1e-14);
    CHECK(std::abs(pi[1].v + w) < 1e-14);
    zt::Rng r(2);
    for (int i = 0; i < 10; ++i) {
        const double t = r.uni(-2, 2);
        const cplx lam = r.disk(2.0), ww = r.circle();
        const auto e = eta_phi(t, lam, ww);
        const double et = std::exp(t);
        CHECK(std::abs(e.eta1.num / e.eta1.den - (-ww + lam * et) / (std::conj(lam) * ww + et)) < 1e-12);
        CHECK(std::abs(e.eta2.num / e.eta2.den - (lam + et * ww) / (-1.0 + std::conj(lam) * et * ww)) < 1e-12);
        CHECK(std::abs(e.Phi.num / e.Phi.den - (-I * (std::conj(lam) * ww + et) / (lam + et * ww))) < 1e-12);
    }
}

TEST_CASE("boundary splitting") {
    zt::Rng r(3);
    const HarmonicCoeffs h = admissible_generator(r);
    for (int i = 0; i < 20; ++i) {
        const double t = r.uni(-3, 3);
        const cplx lam = r.disk(2.0);
        const BoundaryMap b = fourier_split(h, r.uni(0, 6), t, lam);
        CHECK(b.tail < 1e-12);
        CHECK(b.reality < 1e-13);
        CHECK(std::abs(b.H0() - R_spectral(h, {t, inverse_stereographic(lam)})) < 1e-9);
        // boundary value is recovered from the split
        const cplx w = r.circle();
        CHECK(std::abs((b.H0() + b.Hplus(w) + b.Hminus(w)).imag()) < 1e-12);
    }
    SplitConfig tight{4, 64, 1e-12};
    CHECK_THROWS_AS(fourier_split(zt::random_generator(r, 8, 1.0), 0, 0.3, {0.2, 0.1}, tight), Error);
}

TEST_CASE("disk boundaries lie on the deformed hypersurface") {
    zt::Rng r(4);
    const HarmonicCoeffs h = admissible_generator(r);
    double worst = 0, interior = 1;
    for (int i = 0; i < 20; ++i) {
        const double s = r.uni(0, 6), t = r.uni(-2, 2);
        const cplx lam = r.disk(2.0);
        const BoundaryMap b = fourier_split(h, s, t, lam);
        for (int k = 0; k < 64; ++k) {
            const auto p = disk_map(b, std::polar(1.0, 2 * kPi * k / 64));
            const double m = ph_membership(p, h).max();
            CHECK(std::abs(m - membership_oracle(p, h)) < 1e-13);
            worst = std::max(worst, m);
        }
        interior = std::min(interior, ph_membership(disk_map(b, 0.0), h).max());
        CHECK(cauchy_riemann_residual(b, r.disk(0.8)) < 1e-8);
        const DiskSummary d = summarize_disk(h, s, t, lam, 64);
        CHECK(d.pi_mismatch < 1e-10);
        CHECK(d.equivariance < 1e-12);
    }
    CHECK(worst < 1e-8);
    CHECK(interior > 1e-3);  // interiors leave the hypersurface
}

TEST_CASE("circle action rotates the first two coordinates") {
    zt::Rng r(5);
    const HarmonicCoeffs h = admissible_generator(r);
    const double s = 0.4, a = 1.1, t = 0.3;
    const cplx lam(0.2, -0.5), w(0.3, 0.2);
    const auto p = disk_map(fourier_split(h, s, t, lam), w);
    const auto q = disk_map(fourier_split(h, s + a, t, lam), w);
    const cplx e = std::exp(I * a);
    CHECK(projective_distance(q, ProjectivePoint::from({e * p.z[0], e * p.z[1], p.z[2], p.z[3]})) < 1e-12);
}

TEST_CASE("special disks") {
    zt::Rng r(6);
    const HarmonicCoeffs h = admissible_generator(r);
    for (int i = 0; i < 5; ++i) {
        const cplx lam = r.disk(1.5) + 0.1;
        for (int k = 0; k < 16; ++k) {
            const cplx w = std::polar(1.0, 2 * kPi * k / 16);
            const cplx p = -1.0 / std::conj(lam);
            const double em = std::exp(synthesize(h, inverse_stereographic(p)));
            const double ep = std::exp(synthesize(h, inverse_stereographic(lam)));
            CHECK(projective_distance(special_disk(h, Pole::minus, lam, w),
                                      ProjectivePoint::from({em * w, -em * w / std::conj(lam), -1.0 / lam, 1.0})) < 1e-14);
            CHECK(projective_distance(special_disk(h, Pole::plus, lam, w),
                                      ProjectivePoint::from({ep, ep * lam, w * std::conj(lam), w})) < 1e-14);
            CHECK(ph_membership(special_disk(h, Pole::plus, lam, w), h).max() < 1e-12);
            CHECK(ph_membership(special_disk(h, Pole::minus, lam, w), h).max() < 1e-12);
        }
        CHECK(special_disk_line_hits(h, Pole::minus, lam) == 1);
        CHECK(special_disk_line_hits(h, Pole::plus, lam) == 1);
    }
}

TEST_CASE("alpha surfaces: rotation by a unit quaternion") {
    zt::Rng r(7);
    for (int i = 0; i < 10; ++i) {
        std::array<double, 4> q{r.normal(), r.normal(), r.normal(), r.normal()};
        const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
        for (auto& c : q) c /= n;
        const auto s = AlphaSurfaceSpec::make(q);
        CHECK(s.orthogonality_defect() < 1e-14);
        const Vec3 y = r.sphere();
        const auto qy = qmul(qmul({q[0], -q[1], -q[2], -q[3]}, {0, y[0], y[1], y[2]}), q);
        const Vec3 x{qy[1], qy[2], qy[3]};
        CHECK(s.membership(x, y) < 1e-14);
        CHECK(s.membership(-x, y) > 1.0);
    }
    CHECK_THROWS_AS(AlphaSurfaceSpec::make({1, 1, 0, 0}), Error);
}

TEST_CASE("non-admissible generator: the slice map folds") {
    const HarmonicCoeffs h = zt::linear(2.0, {0, 0, 1});
    const NonAdmissibleReport n = nonadmissible_probe(h, {0, 0, -1});
    CHECK_FALSE(n.monotone);
    CHECK(n.t1 < n.t2);
    CHECK(n.gap < 1e-10);
    // g(t) = 2 tanh t (-1) + t at both witnesses
    CHECK(std::abs(n.g1 - (-2 * std::tanh(n.t1) + n.t1)) < 1e-12);
    CHECK(std::abs(n.g2 - (-2 * std::tanh(n.t2) + n.t2)) < 1e-12);
    CHECK(nonadmissible_probe(zt::linear(0.5, {0, 0, 1}), {0, 0, -1}).monotone);
}

TEST_CASE("foliation probe recovers the parameters") {
    zt::Rng r(8);
    const HarmonicCoeffs h = admissible_generator(r);
    const FoliationProbe f = foliation_probe(h, {1.0, 0.3, 0.2, -0.4, 0.2, 0.1});
    CHECK(f.converged);
    CHECK(f.agreement < 1e-6);
    CHECK(f.target_error < 1e-8);
}

TEST_CASE("disk CSV") {
    std::ostringstream os;
    write_disk_csv(fourier_split(HarmonicCoeffs(1), 0, 0, 0.0), 8, os);
    const std::string text = os.str();
    CHECK(std::count(text.begin(), text.end(), '\n') == 9);
}
