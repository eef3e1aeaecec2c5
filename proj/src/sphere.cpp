// SPDX-License-Identifier: Apache-2.0
#include "zollfrei/sphere.hpp"

#include <numbers>

#include "zollfrei/error.hpp"

namespace zf {

Vec3 unit(const Vec3& v) {
    const double n = norm(v);
    require(n > 0.0 && std::isfinite(n), "unit: zero or non-finite vector");
    return (1.0 / n) * v;
}

std::array<double, 4> DeSitterPoint::ambient() const {
    const double c = std::cosh(t);
    return {std::sinh(t), c * y[0], c * y[1], c * y[2]};
}

DeSitterPoint DeSitterPoint::from_ambient(const std::array<double, 4>& x) {
    DeSitterPoint p;
    p.t = std::asinh(x[0]);
    p.y = unit({x[1], x[2], x[3]});
    return p;
}

CircleFrame CircleFrame::make(const Vec3& y0) {
    CircleFrame f;
    f.y = unit(y0);
    int k = 0;
    for (int i = 1; i < 3; ++i)
        if (std::abs(f.y[i]) < std::abs(f.y[k])) k = i;
    Vec3 e{0.0, 0.0, 0.0};
    e[k] = 1.0;
    f.e1 = unit(e - dot(e, f.y) * f.y);
    f.e2 = cross(f.y, f.e1);
    return f;
}

Vec3 small_circle_point(const DeSitterPoint& p, const CircleFrame& f, double phi) {
    const double s = 1.0 / std::cosh(p.t);
    return (s * std::cos(phi)) * f.e1 + (s * std::sin(phi)) * f.e2 + std::tanh(p.t) * f.y;
}

bool cap_contains(const Vec3& u, const DeSitterPoint& p) { return dot(u, p.y) > std::tanh(p.t); }

void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w) {
    require(n >= 1, "gauss_legendre: n >= 1");
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    // P_n(z) and P_n'(z) by the three-term recurrence
    auto pn = [n](double z, double& dp) {
        double p0 = 1.0, p1 = z;
        for (int l = 2; l <= n; ++l) {
            const double p2 = ((2 * l - 1) * z * p1 - (l - 1) * p0) / l;
            p0 = p1;
            p1 = p2;
        }
        dp = n * (z * p1 - p0) / (z * z - 1.0);
        return p1;
    };
    for (int i = 0; i < (n + 1) / 2; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5)), dp = 0.0;
        for (int it = 0; it < 100; ++it) {
            const double dz = pn(z, dp) / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        pn(z, dp);
        x[i] = -z;
        x[n - 1 - i] = z;
        w[i] = w[n - 1 - i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
    if (n % 2 == 1) x[n / 2] = 0.0;
}

SphereGrid::SphereGrid(int L) : L_(L), n_lon_(2 * L + 2) {
    require(L >= 0, "SphereGrid: band limit must be non-negative");
    gauss_legendre(L + 1, z_, w_);
}

double SphereGrid::phi(int j) const { return 2.0 * std::numbers::pi * j / n_lon_; }

Vec3 SphereGrid::node(std::size_t k) const {
    const int i = static_cast<int>(k / n_lon_), j = static_cast<int>(k % n_lon_);
    const double z = z_[i], r = std::sqrt(std::max(0.0, 1.0 - z * z));
    return {r * std::cos(phi(j)), r * std::sin(phi(j)), z};
}

double SphereGrid::weight(std::size_t k) const {
    return w_[k / n_lon_] * 2.0 * std::numbers::pi / n_lon_;
}

std::size_t SphereGrid::antipode(std::size_t k) const {
    const int i = static_cast<int>(k / n_lon_), j = static_cast<int>(k % n_lon_);
    return index(n_lat() - 1 - i, (j + n_lon_ / 2) % n_lon_);
}

double sphere_mean(const std::vector<double>& f, const SphereGrid& g) {
    require(f.size() == g.size(), "sphere_mean: sample count does not match grid");
    double s = 0.0;
    for (std::size_t k = 0; k < f.size(); ++k) s += g.weight(k) * f[k];
    return s;
}

ParityParts parity_split(const std::vector<double>& f, const SphereGrid& g) {
    require(f.size() == g.size(), "parity_split: sample count does not match grid");
    ParityParts p;
    p.mean = sphere_mean(f, g) / (4.0 * std::numbers::pi);
    p.even.resize(f.size());
    p.odd.resize(f.size());
    for (std::size_t k = 0; k < f.size(); ++k) {
        const double fa = f[g.antipode(k)];
        p.even[k] = 0.5 * (f[k] + fa) - p.mean;
        p.odd[k] = 0.5 * (f[k] - fa);
    }
    return p;
}

ExtComplex stereographic(const Vec3& y) {
    const double d = 1.0 + y[0];
    if (d <= 1e-300) return {{0.0, 0.0}, true};
    return {{y[1] / d, y[2] / d}, false};
}

Vec3 inverse_stereographic(cplx l) {
    const double r2 = std::norm(l), d = 1.0 + r2;
    return {(1.0 - r2) / d, 2.0 * l.real() / d, 2.0 * l.imag() / d};
}

Vec3 inverse_stereographic(const ExtComplex& l) {
    if (l.inf) return {-1.0, 0.0, 0.0};
    return inverse_stereographic(l.v);
}

void stereographic_jacobian(cplx l, Vec3& du_da, Vec3& du_db) {
    const double a = l.real(), b = l.imag(), d = 1.0 + a * a + b * b, d2 = d * d;
    du_da = {-4.0 * a / d2, (2.0 * d - 4.0 * a * a) / d2, -4.0 * a * b / d2};
    du_db = {-4.0 * b / d2, -4.0 * a * b / d2, (2.0 * d - 4.0 * b * b) / d2};
}

}  // namespace zf
