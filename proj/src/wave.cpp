// SPDX-License-Identifier: Apache-2.0
#include "zollfrei/wave.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "zollfrei/error.hpp"
#include "zollfrei/transforms.hpp"

namespace zf {

const char* to_string(Parity p) {
    switch (p) {
        case Parity::even: return "even";
        case Parity::odd: return "odd";
        default: return "none";
    }
}

std::vector<double> symmetric_tgrid(double T, int n) {
    require(T > 0.0 && n >= 5 && n % 2 == 1, "t-grid: need T > 0 and an odd slice count >= 5");
    std::vector<double> t(n);
    const int c = n / 2;
    const double dt = T / c;
    for (int i = 0; i < n; ++i) t[i] = (i - c) * dt;
    t[c] = 0.0;
    return t;
}

FieldOnDeSitter FieldOnDeSitter::sample(const std::vector<double>& t, int L, Parity p,
                                        const std::function<HarmonicCoeffs(double)>& at) {
    FieldOnDeSitter F;
    F.t = t;
    F.L = L;
    F.parity = p;
    F.slice.reserve(t.size());
    for (double ti : t) F.slice.push_back(at(ti).resized(L));
    return F;
}

double FieldOnDeSitter::dt() const {
    require(t.size() >= 2, "field: fewer than two slices");
    return t[1] - t[0];
}

std::size_t FieldOnDeSitter::index_of(double tau) const {
    require(!t.empty(), "field: empty t-grid");
    const double h = dt();
    const double x = (tau - t.front()) / h;
    const long i = std::lround(x);
    require(i >= 0 && i < static_cast<long>(t.size()) && std::abs(x - i) < 1e-6, "field: tau is not a grid node");
    return static_cast<std::size_t>(i);
}

HarmonicCoeffs FieldOnDeSitter::d_dt(std::size_t i) const {
    require(i >= 2 && i + 2 < t.size(), "field: stencil leaves the t-grid");
    const double h = dt();
    return (1.0 / (12.0 * h)) * (slice[i - 2] - 8.0 * slice[i - 1] + 8.0 * slice[i + 1] - slice[i + 2]);
}

double FieldOnDeSitter::parity_defect() const {
    if (parity == Parity::none) return 0.0;
    const double s = parity == Parity::even ? 1.0 : -1.0;
    double r = 0.0;
    const std::size_t n = t.size();
    for (std::size_t i = 0; i < n; ++i) {
        // F(-t,-y) has coefficients (-1)^l c(-t)
        const HarmonicCoeffs mirrored = antipodal(slice[n - 1 - i]);
        r = std::max(r, max_abs_diff(mirrored, s * slice[i]));
    }
    return r;
}

void FieldOnDeSitter::write_csv(std::ostream& os) const {
    os << "t,l,m,coefficient\n";
    os.precision(17);
    for (std::size_t i = 0; i < t.size(); ++i)
        for (int l = 0; l <= L; ++l)
            for (int m = -l; m <= l; ++m) os << t[i] << ',' << l << ',' << m << ',' << slice[i](l, m) << '\n';
}

double sup_norm(const HarmonicCoeffs& h) {
    if (h.is_zero()) return 0.0;
    const SphereGrid g(2 * h.L + 2);
    double r = 0.0;
    for (double v : sht_inverse(h, g)) r = std::max(r, std::abs(v));
    return r;
}

namespace {

ResidualReport residual(const FieldOnDeSitter& F, bool friction) {
    require(F.t.size() >= 5, "residual: at least 5 slices required");
    const double h = F.dt();
    ResidualReport r;
    const SphereGrid g(2 * F.L + 2);
    for (std::size_t i = 2; i + 2 < F.t.size(); ++i) {
        const double t = F.t[i], c = std::cosh(t), sech2 = 1.0 / (c * c);
        HarmonicCoeffs ftt = (1.0 / (12.0 * h * h)) * ((-1.0) * F.slice[i - 2] + 16.0 * F.slice[i - 1] -
                                                      30.0 * F.slice[i] + 16.0 * F.slice[i + 1] - F.slice[i + 2]);
        HarmonicCoeffs res = (-1.0) * ftt + sech2 * laplacian_spectral(F.slice[i]);
        if (friction) res = res - (2.0 * std::tanh(t)) * F.d_dt(i);
        double m = 0.0;
        if (!res.is_zero())
            for (double v : sht_inverse(res, g)) m = std::max(m, std::abs(v));
        r.t.push_back(t);
        r.slice_max.push_back(m);
        r.max_norm = std::max(r.max_norm, m);
    }
    return r;
}

}  // namespace

ResidualReport box_residual(const FieldOnDeSitter& V) { return residual(V, true); }
ResidualReport L_residual(const FieldOnDeSitter& f) { return residual(f, false); }

WaveSolution solve_from_generator(const HarmonicCoeffs& h, const std::vector<double>& t) {
    require(std::abs(h.c[0]) <= 1e-10, "solve_from_generator: generator must have zero mean");
    WaveSolution s;
    s.V = FieldOnDeSitter::sample(t, h.L, Parity::odd, [&h](double ti) { return apply_Q(h, ti); });
    s.f = FieldOnDeSitter::sample(t, h.L, Parity::even, [&h](double ti) { return apply_R(h, ti); });
    // V = d_t R h~ with h = -Δ h~; the t-derivative of P_l(tanh t) is Z_l(z) sech^2 t
    const HarmonicCoeffs ht = (-1.0) * inverse_laplacian(h);
    std::vector<double> Z(h.L + 1);
    for (std::size_t i = 0; i < t.size(); ++i) {
        const double z = std::tanh(t[i]), sech2 = 1.0 - z * z;
        legendre_all(h.L, z, nullptr, Z.data());
        HarmonicCoeffs dRt = ht;
        for (int l = 0; l <= h.L; ++l)
            for (int m = -l; m <= l; ++m) dRt(l, m) *= Z[l] * sech2;
        s.potential_consistency = std::max(s.potential_consistency, max_abs_diff(dRt, s.V.slice[i]));
    }
    return s;
}

double invariant_I(const FieldOnDeSitter& V, double tau) {
    const std::size_t i = V.index_of(tau);
    const double c = std::cosh(V.t[i]);
    // ∫ V_t over the sphere is sqrt(4π) times its (0,0) coefficient
    return c * c / (2.0 * std::numbers::pi) * std::sqrt(4.0 * std::numbers::pi) * V.d_dt(i)(0, 0);
}

double invariant_E(const FieldOnDeSitter& V, const Vec3& y, double tau) {
    const std::size_t i = V.index_of(tau);
    const double t = V.t[i], c = std::cosh(t);
    return R_spectral(V.slice[i], {t, y}) + c * c * Q_spectral(V.d_dt(i), {t, y});
}

ConservedReport conserved_scan(const FieldOnDeSitter& V, const std::vector<double>& taus, const std::vector<Vec3>& ys) {
    ConservedReport r;
    r.tau = taus;
    r.ys = ys;
    for (double tau : taus) {
        r.I.push_back(invariant_I(V, tau));
        std::vector<double> row;
        for (const Vec3& y : ys) row.push_back(invariant_E(V, y, tau));
        r.E.push_back(std::move(row));
    }
    if (!r.I.empty()) {
        const auto [lo, hi] = std::minmax_element(r.I.begin(), r.I.end());
        r.I_spread = *hi - *lo;
    }
    for (std::size_t j = 0; j < ys.size(); ++j) {
        double lo = 1e300, hi = -1e300;
        for (std::size_t k = 0; k < taus.size(); ++k) {
            lo = std::min(lo, r.E[k][j]);
            hi = std::max(hi, r.E[k][j]);
            r.E_max = std::max(r.E_max, std::abs(r.E[k][j]));
        }
        if (!taus.empty()) r.E_spread = std::max(r.E_spread, hi - lo);
    }
    return r;
}

std::string ConservedReport::to_json() const {
    nlohmann::json j;
    j["tau"] = tau;
    j["I"] = I;
    j["I_spread"] = I_spread;
    j["E_spread"] = E_spread;
    j["E_max"] = E_max;
    nlohmann::json jy = nlohmann::json::array();
    for (const Vec3& y : ys) jy.push_back({y[0], y[1], y[2]});
    j["y"] = jy;
    j["E"] = E;
    return j.dump(2);
}

HarmonicCoeffs reconstruct_generator(const HarmonicCoeffs& psi, const HarmonicCoeffs& xi) {
    require(std::abs(xi.c[0]) <= 1e-10 * std::max(1.0, xi.max_abs()), "reconstruct_generator: xi must have zero mean");
    const HarmonicCoeffs a = invert_Q0_odd(psi);
    const HarmonicCoeffs b = invert_R0_even((-1.0) * xi);
    return a + b;
}

}  // namespace zf
