// SPDX-License-Identifier: Apache-2.0
#include "zollfrei/harmonics.hpp"

#include <algorithm>
#include <numbers>

#include "zollfrei/error.hpp"

namespace zf {

void legendre_all(int L, double z, double* P, double* Z) {
    require(std::abs(z) <= 1.0 + 1e-14, "legendre: |z| > 1");
    require(L >= 0, "legendre: negative degree");
    std::vector<double> p(L + 2, 0.0), d(L + 2, 0.0);
    p[0] = 1.0;
    p[1] = z;
    d[1] = 1.0;
    for (int l = 2; l <= L; ++l) {
        p[l] = ((2 * l - 1) * z * p[l - 1] - (l - 1) * p[l - 2]) / l;
        d[l] = d[l - 2] + (2 * l - 1) * p[l - 1];  // Z_l = Z_{l-2} + (2l-1) P_{l-1}
    }
    if (P) std::copy(p.begin(), p.begin() + L + 1, P);
    if (Z) std::copy(d.begin(), d.begin() + L + 1, Z);
}

double legendre_P(int l, double z) {
    std::vector<double> P(l + 1);
    legendre_all(l, z, P.data(), nullptr);
    return P[l];
}

double legendre_Z(int l, double z) {
    std::vector<double> Z(l + 1);
    legendre_all(l, z, nullptr, Z.data());
    return Z[l];
}

LegendreTable LegendreTable::build(int L, const std::vector<double>& zs) {
    LegendreTable t;
    t.L = L;
    t.z = zs;
    t.P.resize(zs.size() * (L + 1));
    t.Z.resize(zs.size() * (L + 1));
    for (std::size_t i = 0; i < zs.size(); ++i)
        legendre_all(L, zs[i], &t.P[i * (L + 1)], &t.Z[i * (L + 1)]);
    return t;
}

double LegendreTable::recurrence_residual() const {
    double r = 0.0;
    for (std::size_t i = 0; i < z.size(); ++i)
        for (int l = 1; l < L; ++l)
            r = std::max(r, std::abs((l + 1) * p(i, l + 1) - (2 * l + 1) * z[i] * p(i, l) + l * p(i, l - 1)));
    return r;
}

HarmonicCoeffs HarmonicCoeffs::resized(int L2) const {
    HarmonicCoeffs r(L2);
    for (int l = 0; l <= std::min(L, L2); ++l)
        for (int m = -l; m <= l; ++m) r(l, m) = (*this)(l, m);
    return r;
}

double HarmonicCoeffs::max_abs() const {
    double r = 0.0;
    for (double x : c) r = std::max(r, std::abs(x));
    return r;
}

HarmonicCoeffs operator+(const HarmonicCoeffs& a, const HarmonicCoeffs& b) {
    HarmonicCoeffs r = a.resized(std::max(a.L, b.L));
    for (int i = 0; i < n_coeffs(b.L); ++i) r.c[i] += b.c[i];
    return r;
}

HarmonicCoeffs operator-(const HarmonicCoeffs& a, const HarmonicCoeffs& b) { return a + (-1.0) * b; }

HarmonicCoeffs operator*(double s, const HarmonicCoeffs& a) {
    HarmonicCoeffs r = a;
    for (double& x : r.c) x *= s;
    return r;
}

double max_abs_diff(const HarmonicCoeffs& a, const HarmonicCoeffs& b) { return (a - b).max_abs(); }

namespace {

// reduced normalized associated Legendre p_l^m(z) = Pbar_l^m / (1-z^2)^{m/2} and d/dz
void reduced_alf(int L, double z, std::vector<double>& p, std::vector<double>& dp) {
    p.assign(n_coeffs(L), 0.0);
    dp.assign(n_coeffs(L), 0.0);
    double pmm = 1.0 / std::sqrt(4.0 * std::numbers::pi);
    for (int m = 0; m <= L; ++m) {
        if (m > 0) pmm *= std::sqrt((2.0 * m + 1.0) / (2.0 * m));
        p[lm_index(m, m)] = pmm;
        if (m + 1 > L) continue;
        const double s = std::sqrt(2.0 * m + 3.0);
        p[lm_index(m + 1, m)] = s * z * pmm;
        dp[lm_index(m + 1, m)] = s * pmm;
        for (int l = m + 2; l <= L; ++l) {
            const double a = std::sqrt((4.0 * l * l - 1.0) / (double(l) * l - double(m) * m));
            const double b = std::sqrt((double(l - 1) * (l - 1) - double(m) * m) / (4.0 * (l - 1) * (l - 1) - 1.0));
            p[lm_index(l, m)] = a * (z * p[lm_index(l - 1, m)] - b * p[lm_index(l - 2, m)]);
            dp[lm_index(l, m)] =
                a * (p[lm_index(l - 1, m)] + z * dp[lm_index(l - 1, m)] - b * dp[lm_index(l - 2, m)]);
        }
    }
}

template <bool Grad>
void ylm_impl(int L, const Vec3& u, double* Y, Vec3* G) {
    std::vector<double> p, dp;
    reduced_alf(L, u[2], p, dp);
    const cplx w(u[0], u[1]);
    cplx wm(1.0, 0.0), wm1(0.0, 0.0);  // w^m, m w^{m-1}
    const double r2 = std::numbers::sqrt2;
    for (int m = 0; m <= L; ++m) {
        if (m > 0) {
            wm1 = double(m) * wm;
            wm *= w;
        }
        for (int l = m; l <= L; ++l) {
            const double pl = p[lm_index(l, m)];
            if (m == 0) {
                Y[lm_index(l, 0)] = pl;
                if constexpr (Grad) G[lm_index(l, 0)] = {0.0, 0.0, dp[lm_index(l, 0)]};
                continue;
            }
            Y[lm_index(l, m)] = r2 * pl * wm.real();
            Y[lm_index(l, -m)] = r2 * pl * wm.imag();
            if constexpr (Grad) {
                const double dpl = dp[lm_index(l, m)];
                G[lm_index(l, m)] = {r2 * pl * wm1.real(), -r2 * pl * wm1.imag(), r2 * dpl * wm.real()};
                G[lm_index(l, -m)] = {r2 * pl * wm1.imag(), r2 * pl * wm1.real(), r2 * dpl * wm.imag()};
            }
        }
    }
}

}  // namespace

void ylm_all(int L, const Vec3& u, double* Y) { ylm_impl<false>(L, u, Y, nullptr); }
void ylm_all_grad(int L, const Vec3& u, double* Y, Vec3* G) { ylm_impl<true>(L, u, Y, G); }

double ylm(int l, int m, const Vec3& u) {
    require(l >= 0 && std::abs(m) <= l, "ylm: bad (l, m)");
    std::vector<double> Y(n_coeffs(l));
    ylm_all(l, u, Y.data());
    return Y[lm_index(l, m)];
}

double synthesize(const HarmonicCoeffs& h, const Vec3& u) {
    std::vector<double> Y(n_coeffs(h.L));
    ylm_all(h.L, u, Y.data());
    double s = 0.0;
    for (int i = 0; i < n_coeffs(h.L); ++i) s += h.c[i] * Y[i];
    return s;
}

double synthesize_grad(const HarmonicCoeffs& h, const Vec3& u, Vec3& grad) {
    std::vector<double> Y(n_coeffs(h.L));
    std::vector<Vec3> G(n_coeffs(h.L));
    ylm_all_grad(h.L, u, Y.data(), G.data());
    double s = 0.0;
    grad = {0.0, 0.0, 0.0};
    for (int i = 0; i < n_coeffs(h.L); ++i) {
        s += h.c[i] * Y[i];
        grad = grad + h.c[i] * G[i];
    }
    return s;
}

std::vector<double> sht_inverse(const HarmonicCoeffs& h, const SphereGrid& g) {
    require(g.band_limit() >= h.L, "sht_inverse: grid band limit below coefficient band limit");
    std::vector<double> f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) f[k] = synthesize(h, g.node(k));
    return f;
}

HarmonicCoeffs sht_forward(const std::vector<double>& f, const SphereGrid& g, int L) {
    require(f.size() == g.size(), "sht_forward: sample count does not match grid");
    require(g.band_limit() >= L, "sht_forward: grid band limit below requested band limit");
    HarmonicCoeffs h(L);
    std::vector<double> Y(n_coeffs(L));
    for (std::size_t k = 0; k < g.size(); ++k) {
        ylm_all(L, g.node(k), Y.data());
        const double wf = g.weight(k) * f[k];
        for (int i = 0; i < n_coeffs(L); ++i) h.c[i] += wf * Y[i];
    }
    return h;
}

HarmonicCoeffs laplacian_spectral(const HarmonicCoeffs& h) {
    HarmonicCoeffs r = h;
    for (int l = 0; l <= h.L; ++l)
        for (int m = -l; m <= l; ++m) r(l, m) *= -double(l) * (l + 1);
    return r;
}

HarmonicCoeffs inverse_laplacian(const HarmonicCoeffs& h) {
    HarmonicCoeffs r = h;
    r(0, 0) = 0.0;
    for (int l = 1; l <= h.L; ++l)
        for (int m = -l; m <= l; ++m) r(l, m) /= -double(l) * (l + 1);
    return r;
}

HarmonicCoeffs antipodal(const HarmonicCoeffs& h) {
    HarmonicCoeffs r = h;
    for (int l = 1; l <= h.L; l += 2)
        for (int m = -l; m <= l; ++m) r(l, m) = -r(l, m);
    return r;
}

HarmonicCoeffs even_part(const HarmonicCoeffs& h, bool keep_mean) {
    HarmonicCoeffs r = h;
    for (int l = 1; l <= h.L; l += 2)
        for (int m = -l; m <= l; ++m) r(l, m) = 0.0;
    if (!keep_mean) r(0, 0) = 0.0;
    return r;
}

HarmonicCoeffs odd_part(const HarmonicCoeffs& h) { return h - even_part(h, true); }

HarmonicCoeffs rotate(const HarmonicCoeffs& h, const std::array<Vec3, 3>& R) {
    SphereGrid g(h.L);
    std::vector<double> f(g.size());
    for (std::size_t k = 0; k < g.size(); ++k) {
        const Vec3 v = g.node(k);
        // u = Rᵀ v
        const Vec3 u{R[0][0] * v[0] + R[1][0] * v[1] + R[2][0] * v[2],
                     R[0][1] * v[0] + R[1][1] * v[1] + R[2][1] * v[2],
                     R[0][2] * v[0] + R[1][2] * v[1] + R[2][2] * v[2]};
        f[k] = synthesize(h, u);
    }
    return sht_forward(f, g, h.L);
}

double coeff_norm(const HarmonicCoeffs& h) {
    double s = 0.0;
    for (double x : h.c) s += x * x;
    return std::sqrt(s);
}

HarmonicCoeffs linear_function(const Vec3& v) {
    // Y_{1,-1}, Y_{1,0}, Y_{1,1} are k·y, k·z, k·x
    const double k = std::sqrt(3.0 / (4.0 * std::numbers::pi));
    HarmonicCoeffs h(1);
    h(1, -1) = v[1] / k;
    h(1, 0) = v[2] / k;
    h(1, 1) = v[0] / k;
    return h;
}

}  // namespace zf
