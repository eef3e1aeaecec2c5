// SPDX-License-Identifier: Apache-2.0
// Shared fixtures for the test binaries.
#pragma once

#include <cmath>
#include <numbers>
#include <random>

#include "zollfrei/harmonics.hpp"
#include "zollfrei/sphere.hpp"

namespace zt {

using zf::cplx;
using zf::HarmonicCoeffs;
using zf::Vec3;

inline constexpr double kPi = std::numbers::pi;

// Y^1_0 = k1 * z for the orthonormal basis
inline const double kY1 = std::sqrt(3.0 / (4.0 * kPi));

struct Rng {
    std::mt19937_64 g;
    explicit Rng(std::uint64_t seed) : g(seed) {}
    double uni(double a, double b) { return std::uniform_real_distribution<double>(a, b)(g); }
    double normal() { return std::normal_distribution<double>(0.0, 1.0)(g); }
    Vec3 sphere() {
        for (;;) {
            const Vec3 v{normal(), normal(), normal()};
            if (zf::norm(v) > 1e-6) return zf::unit(v);
        }
    }
    cplx disk(double r) { return std::polar(r * std::sqrt(uni(0.0, 1.0)), uni(0.0, 2.0 * kPi)); }
    cplx circle() { return std::polar(1.0, uni(0.0, 2.0 * kPi)); }
};

// mean-zero band-limited generator, coefficients ~ scale * N(0,1) / (1 + l)
inline HarmonicCoeffs random_generator(Rng& r, int L, double scale) {
    HarmonicCoeffs h(L);
    for (int l = 1; l <= L; ++l)
        for (int m = -l; m <= l; ++m) h(l, m) = scale * r.normal() / (1.0 + l);
    return h;
}

// h = c * (v . u), i.e. the linear function
inline HarmonicCoeffs linear(double c, const Vec3& v) { return zf::linear_function(zf::operator*(c, v)); }

}  // namespace zt
