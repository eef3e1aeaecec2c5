// SPDX-License-Identifier: Apache-2.0
#include "zollfrei/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <mutex>
#include <numbers>
#include <ostream>

#include "zollfrei/error.hpp"

namespace zf {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

TransformConfig TransformConfig::for_band_limit(int L) {
    TransformConfig c;
    c.n_phi = 4 * L + 2;
    c.n_r = L / 2 + 2;
    c.n_cap_phi = 4 * L + 2;
    return c;
}

void TransformConfig::validate(int L) const {
    require(n_phi >= 4 * L + 2, "transform config: n_phi < 4L+2");
    require(n_cap_phi >= L + 1, "transform config: n_cap_phi < L+1");
    require(2 * n_r - 1 >= L, "transform config: too few radial nodes for Q");
}

double transform_R(const SphereFn& h, const DeSitterPoint& p, const TransformConfig& cfg) {
    const CircleFrame f = CircleFrame::make(p.y);
    double s = 0.0;
    for (int j = 0; j < cfg.n_phi; ++j) s += h(small_circle_point(p, f, kTwoPi * j / cfg.n_phi));
    return s / cfg.n_phi;
}

double transform_Q(const SphereFn& h, const DeSitterPoint& p, const TransformConfig& cfg) {
    const CircleFrame f = CircleFrame::make(p.y);
    std::vector<double> x, w;
    gauss_legendre(cfg.n_r, x, w);
    const double lo = std::tanh(p.t), half = 0.5 * (1.0 - lo);
    double s = 0.0;
    for (int i = 0; i < cfg.n_r; ++i) {
        const double c = lo + half * (x[i] + 1.0);
        const double r = std::sqrt(std::max(0.0, 1.0 - c * c));
        double ring = 0.0;
        for (int j = 0; j < cfg.n_cap_phi; ++j) {
            const double ph = kTwoPi * j / cfg.n_cap_phi;
            ring += h(c * f.y + (r * std::cos(ph)) * f.e1 + (r * std::sin(ph)) * f.e2);
        }
        // ring average times 2π, then the 1/2π normalization
        s += half * w[i] * ring / cfg.n_cap_phi;
    }
    return s;
}

double transform_R(const HarmonicCoeffs& h, const DeSitterPoint& p) {
    return transform_R([&h](const Vec3& u) { return synthesize(h, u); }, p, TransformConfig::for_band_limit(h.L));
}

double transform_Q(const HarmonicCoeffs& h, const DeSitterPoint& p) {
    return transform_Q([&h](const Vec3& u) { return synthesize(h, u); }, p, TransformConfig::for_band_limit(h.L));
}

double funk_R0(const HarmonicCoeffs& h, const Vec3& y) { return transform_R(h, {0.0, y}); }
double disk_Q0(const HarmonicCoeffs& h, const Vec3& y) { return transform_Q(h, {0.0, y}); }

double q_profile(int l, double z) {
    if (l == 0) return 1.0 - z;
    std::vector<double> P(l + 2);
    legendre_all(l + 1, z, P.data(), nullptr);
    return (P[l - 1] - P[l + 1]) / (2.0 * l + 1.0);
}

HarmonicCoeffs apply_R(const HarmonicCoeffs& h, double t) {
    std::vector<double> P(h.L + 1);
    legendre_all(h.L, std::tanh(t), P.data(), nullptr);
    HarmonicCoeffs r = h;
    for (int l = 0; l <= h.L; ++l)
        for (int m = -l; m <= l; ++m) r(l, m) *= P[l];
    return r;
}

HarmonicCoeffs apply_Q(const HarmonicCoeffs& h, double t) {
    const double z = std::tanh(t);
    std::vector<double> P(h.L + 2);
    legendre_all(h.L + 1, z, P.data(), nullptr);
    HarmonicCoeffs r = h;
    for (int l = 0; l <= h.L; ++l) {
        const double q = l == 0 ? 1.0 - z : (P[l - 1] - P[l + 1]) / (2.0 * l + 1.0);
        for (int m = -l; m <= l; ++m) r(l, m) *= q;
    }
    return r;
}

double R_spectral(const HarmonicCoeffs& h, const DeSitterPoint& p) { return synthesize(apply_R(h, p.t), p.y); }
double Q_spectral(const HarmonicCoeffs& h, const DeSitterPoint& p) { return synthesize(apply_Q(h, p.t), p.y); }

namespace {

struct EigenCache {
    std::mutex mu;
    std::vector<double> q, r;

    void grow(int k) {
        std::lock_guard<std::mutex> lock(mu);
        const Vec3 e3{0.0, 0.0, 1.0};
        for (int l = static_cast<int>(q.size()); l <= k; ++l) {
            auto probe = [l](const Vec3& u) { return ylm(l, 0, u); };
            TransformConfig cfg = TransformConfig::for_band_limit(l);
            cfg.n_r = l / 2 + 4;
            const double y0 = ylm(l, 0, e3);
            q.push_back(transform_Q(probe, {0.0, e3}, cfg) / y0);
            r.push_back(transform_R(probe, {0.0, e3}, cfg) / y0);
        }
    }
};

EigenCache& cache() {
    static EigenCache c;
    return c;
}

}  // namespace

double q_eigenvalue(int k) {
    require(k >= 0, "q_eigenvalue: negative degree");
    EigenCache& c = cache();
    c.grow(k);
    std::lock_guard<std::mutex> lock(c.mu);
    return c.q[k];
}

double r_eigenvalue(int k) {
    require(k >= 0, "r_eigenvalue: negative degree");
    EigenCache& c = cache();
    c.grow(k);
    std::lock_guard<std::mutex> lock(c.mu);
    return c.r[k];
}

double closed_form_c(int k) {
    if (k == 0) return 1.0;
    if (k % 2 == 0) return 0.0;
    const int m = (k - 1) / 2;
    // (2m+1)!!/(2m+2)!! as a running product
    double ratio = 1.0;
    for (int j = 0; j <= m; ++j) ratio *= (2.0 * j + 1.0) / (2.0 * j + 2.0);
    const double sign = (m % 2 == 0) ? 1.0 : -1.0;
    return sign * 4.0 * std::numbers::pi / (2.0 * m + 1.0) * ratio;
}

QSpectrum QSpectrum::compute(int L) {
    QSpectrum s;
    s.L = L;
    for (int k = 0; k <= L; ++k) {
        s.c_Q.push_back(q_eigenvalue(k));
        s.c_R.push_back(r_eigenvalue(k));
        s.closed_form.push_back(closed_form_c(k));
        const bool defined = (k == 0) || (k % 2 == 1);
        s.ratio.push_back(defined ? s.closed_form.back() / s.c_Q.back() : std::numeric_limits<double>::quiet_NaN());
    }
    return s;
}

void QSpectrum::write_csv(std::ostream& os) const {
    os << "l,c_Q,c_R,closed_form,closed_form_ratio\n";
    os.precision(17);
    for (int k = 0; k <= L; ++k) {
        os << k << ',' << c_Q[k] << ',' << c_R[k] << ',' << closed_form[k] << ',';
        if (!std::isnan(ratio[k])) os << ratio[k];
        os << '\n';
    }
}

namespace {
double parity_floor(const HarmonicCoeffs& g) { return 1e-12 * std::max(1.0, g.max_abs()); }
}  // namespace

HarmonicCoeffs invert_Q0_odd(const HarmonicCoeffs& g) {
    const double fl = parity_floor(g);
    HarmonicCoeffs h(g.L);
    for (int l = 0; l <= g.L; ++l) {
        for (int m = -l; m <= l; ++m) {
            if (l % 2 == 0) {
                require(std::abs(g(l, m)) <= fl, "invert_Q0_odd: input has even-degree content");
                continue;
            }
            const double c = q_eigenvalue(l);
            if (std::abs(c) < 1e-13) fail(Status::precondition, "invert_Q0_odd: ill-conditioned inversion");
            h(l, m) = g(l, m) / c;
        }
    }
    return h;
}

HarmonicCoeffs invert_R0_even(const HarmonicCoeffs& g) {
    const double fl = parity_floor(g);
    HarmonicCoeffs h(g.L);
    for (int l = 0; l <= g.L; ++l) {
        for (int m = -l; m <= l; ++m) {
            if (l % 2 == 1) {
                require(std::abs(g(l, m)) <= fl, "invert_R0_even: input has odd-degree content");
                continue;
            }
            const double r = r_eigenvalue(l);
            if (std::abs(r) < 1e-13) fail(Status::precondition, "invert_R0_even: ill-conditioned inversion");
            h(l, m) = g(l, m) / r;
        }
    }
    return h;
}

double d1_central4(const std::function<double(double)>& f, double x, double h) {
    return (f(x - 2 * h) - 8.0 * f(x - h) + 8.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h);
}

double d2_central4(const std::function<double(double)>& f, double x, double h) {
    return (-f(x - 2 * h) + 16.0 * f(x - h) - 30.0 * f(x) + 16.0 * f(x + h) - f(x + 2 * h)) / (12.0 * h * h);
}

namespace {

void residuals_at(const HarmonicCoeffs& h, const HarmonicCoeffs& lap, const std::vector<DeSitterPoint>& pts, double dt,
                  double& rR, double& rQ) {
    rR = rQ = 0.0;
    for (const auto& p : pts) {
        auto R = [&](double t) { return transform_R(h, {t, p.y}); };
        auto Q = [&](double t) { return transform_Q(h, {t, p.y}); };
        const double sech2 = 1.0 / (std::cosh(p.t) * std::cosh(p.t));
        rR = std::max(rR, std::abs(d1_central4(R, p.t, dt) + transform_Q(lap, p)));
        rQ = std::max(rQ, std::abs(d1_central4(Q, p.t, dt) + sech2 * R(p.t)));
    }
}

double order_of(double coarse, double fine) {
    // below ~1e-13 the ratio is noise
    if (fine < 1e-13 || coarse < 1e-13) return std::numeric_limits<double>::quiet_NaN();
    return std::log2(coarse / fine);
}

}  // namespace

IdentityReport identity_residuals(const HarmonicCoeffs& h, const std::vector<DeSitterPoint>& pts, double dt,
                                  const std::vector<double>& sweep) {
    require(dt > 0.0 && dt < 0.5, "identity_residuals: t-step too coarse for the stencil");
    IdentityReport r;
    r.dt = dt;
    r.n_points = pts.size();
    const HarmonicCoeffs lap = laplacian_spectral(h);
    residuals_at(h, lap, pts, dt, r.del_R, r.del_Q);
    for (double s : sweep) {
        double a, b;
        residuals_at(h, lap, pts, s, a, b);
        r.sweep_dt.push_back(s);
        r.sweep_del_R.push_back(a);
        r.sweep_del_Q.push_back(b);
    }
    const std::size_t n = r.sweep_dt.size();
    r.order_del_R = r.order_del_Q = std::numeric_limits<double>::quiet_NaN();
    if (n >= 2) {
        r.order_del_R = order_of(r.sweep_del_R[n - 2], r.sweep_del_R[n - 1]) / std::log2(r.sweep_dt[n - 2] / r.sweep_dt[n - 1]);
        r.order_del_Q = order_of(r.sweep_del_Q[n - 2], r.sweep_del_Q[n - 1]) / std::log2(r.sweep_dt[n - 2] / r.sweep_dt[n - 1]);
    }
    return r;
}

}  // namespace zf
