// SPDX-License-Identifier: Apache-2.0
#include "zollfrei/monopole.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "zollfrei/error.hpp"
#include "zollfrei/transforms.hpp"

namespace zf {

Monopole Monopole::from_generator(const HarmonicCoeffs& h) {
    require(std::abs(h.c[0]) <= 1e-10, "monopole: generator must have zero mean");
    Monopole m;
    m.h = h;
    return m;
}

Monopole Monopole::trivial() { return from_generator(HarmonicCoeffs(0)); }

Monopole Monopole::with_deformation(Deformation d, const HarmonicCoeffs& p) const {
    Monopole m = *this;
    m.deformation = d;
    m.phi = p;
    return m;
}

Monopole Monopole::with_reversed_A() const {
    Monopole m = *this;
    m.a_sign = -m.a_sign;
    return m;
}

Monopole tod_monopole(const std::vector<TodMode>& modes) {
    int L = 0;
    for (const auto& md : modes) {
        require(md.l >= 1, "tod_monopole: l = 0 coefficient present");
        require(std::abs(md.m) <= md.l, "tod_monopole: |m| > l");
        L = std::max(L, md.l);
    }
    HarmonicCoeffs h(L);
    for (const auto& md : modes) h(md.l, md.m) += md.c;
    return Monopole::from_generator(h);
}

double tod_V_direct(const std::vector<TodMode>& modes, double t, const Vec3& y) {
    const double z = std::tanh(t), c = std::cosh(t);
    double v = 1.0;
    for (const auto& md : modes) v += md.c * legendre_Z(md.l, z) / (c * c) * ylm(md.l, md.m, y);
    return v;
}

namespace {

struct ModeSums {
    double f = 0.0, dtf = 0.0, V1 = 0.0, dtV = 0.0;
    Vec3 gf{}, gV{};  // Cartesian gradients of the polynomial extensions
};

ModeSums mode_sums(const HarmonicCoeffs& h, double t, const Vec3& u) {
    ModeSums s;
    const int L = h.L;
    const double z = std::tanh(t), sech2 = 1.0 - z * z;
    std::vector<double> P(L + 1), Z(L + 1), Y(n_coeffs(L));
    std::vector<Vec3> G(n_coeffs(L));
    legendre_all(L, z, P.data(), Z.data());
    ylm_all_grad(L, u, Y.data(), G.data());
    for (int l = 0; l <= L; ++l) {
        double yl = 0.0;
        Vec3 gl{};
        for (int m = -l; m <= l; ++m) {
            const int i = lm_index(l, m);
            yl += h.c[i] * Y[i];
            gl = gl + h.c[i] * G[i];
        }
        s.f += P[l] * yl;
        s.gf = s.gf + P[l] * gl;
        s.dtf += Z[l] * sech2 * yl;
        s.V1 += Z[l] * sech2 * yl;
        s.gV = s.gV + (Z[l] * sech2) * gl;
        // ∂t (Z_l(z) sech^2 t) = -l(l+1) P_l(z) sech^2 t
        s.dtV += -double(l) * (l + 1) * P[l] * sech2 * yl;
    }
    return s;
}

}  // namespace

MonopolePoint evaluate(const Monopole& mp, double t, cplx lam) {
    MonopolePoint p;
    p.t = t;
    p.lam = lam;
    const Vec3 u = inverse_stereographic(lam);
    Vec3 ua, ub;
    stereographic_jacobian(lam, ua, ub);
    p.c = (1.0 + std::norm(lam)) / (2.0 * std::cosh(t));
    const ModeSums s = mode_sums(mp.h, t, u);
    p.f = s.f;
    p.V = 1.0 + s.V1;
    p.dV = {s.dtV, p.c * dot(s.gV, ua), p.c * dot(s.gV, ub)};
    p.df = {s.dtf, p.c * dot(s.gf, ua), p.c * dot(s.gf, ub)};
    // A = -*̌ďf: A2 = Ē3 f, A3 = -Ē2 f
    p.A = {0.0, mp.a_sign * p.df[2], -mp.a_sign * p.df[1]};
    if (mp.deformation != Deformation::none) {
        Vec3 g;
        synthesize_grad(mp.phi, u, g);
        const double k = mp.deformation == Deformation::ramp ? t : 1.0;
        p.A[1] += k * p.c * dot(g, ua);
        p.A[2] += k * p.c * dot(g, ub);
    }
    p.Aa = p.A[1] / p.c;
    p.Ab = p.A[2] / p.c;
    return p;
}

double monopole_V(const Monopole& m, double t, const Vec3& y) { return 1.0 + mode_sums(m.h, t, y).V1; }
double monopole_f(const Monopole& m, double t, const Vec3& y) { return mode_sums(m.h, t, y).f; }

namespace {

// 4th-order central derivative of g along coordinate k of (t, a, b)
template <class G>
double d_tab(G&& g, const ChartPoint& p, int k, double h) {
    auto at = [&](double d) {
        ChartPoint q = p;
        if (k == 0) q.t += d;
        else if (k == 1) q.lam += cplx(d, 0.0);
        else q.lam += cplx(0.0, d);
        return g(q);
    };
    return (at(-2 * h) - 8.0 * at(-h) + 8.0 * at(h) - at(2 * h)) / (12.0 * h);
}

}  // namespace

GaugeReport gauge_conditions_check(const Monopole& m, const std::vector<ChartPoint>& pts, double step) {
    GaugeReport r;
    for (const auto& p : pts) {
        const MonopolePoint mp = evaluate(m, p.t, p.lam);
        r.max_A1 = std::max(r.max_A1, std::abs(mp.A[0]));
        // *̌A = A2 Ē³ - A3 Ē²; coordinate components (-A3/c, A2/c)
        auto sa = [&](const ChartPoint& q) { const auto e = evaluate(m, q.t, q.lam); return -e.A[2] / e.c; };
        auto sb = [&](const ChartPoint& q) { const auto e = evaluate(m, q.t, q.lam); return e.A[1] / e.c; };
        const double curl = d_tab(sb, p, 1, step) - d_tab(sa, p, 2, step);
        r.max_div = std::max(r.max_div, std::abs(curl * mp.c * mp.c));
    }
    return r;
}

double monopole_residual(const Monopole& m, const ChartPoint& p, double step) {
    auto Aa = [&](const ChartPoint& q) { return evaluate(m, q.t, q.lam).Aa; };
    auto Ab = [&](const ChartPoint& q) { return evaluate(m, q.t, q.lam).Ab; };
    auto V = [&](const ChartPoint& q) { return evaluate(m, q.t, q.lam).V; };
    const double c = evaluate(m, p.t, p.lam).c;
    // dA in frame components (A_t = 0)
    const double dA12 = c * d_tab(Aa, p, 0, step);
    const double dA13 = c * d_tab(Ab, p, 0, step);
    const double dA23 = c * c * (d_tab(Ab, p, 1, step) - d_tab(Aa, p, 2, step));
    const double E1V = d_tab(V, p, 0, step), E2V = c * d_tab(V, p, 1, step), E3V = c * d_tab(V, p, 2, step);
    // *Ē¹ = -Ē²∧Ē³, *Ē² = -Ē¹∧Ē³, *Ē³ = Ē¹∧Ē²
    return std::max({std::abs(dA12 - E3V), std::abs(dA13 + E2V), std::abs(dA23 + E1V)});
}

// ---------------------------------------------------------------- admissibility

namespace {

struct DtRh {
    const HarmonicCoeffs& h;
    double operator()(double t, const Vec3& u) const {
        const double z = std::tanh(t);
        std::vector<double> Z(h.L + 1), Y(n_coeffs(h.L));
        legendre_all(h.L, z, nullptr, Z.data());
        ylm_all(h.L, u, Y.data());
        double s = 0.0;
        for (int l = 1; l <= h.L; ++l)
            for (int m = -l; m <= l; ++m) s += h(l, m) * Z[l] * Y[lm_index(l, m)];
        return s * (1.0 - z * z);
    }
};

template <class F>
double golden_max(F&& f, double a, double b, double tol) {
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    double c = b - g * (b - a), d = a + g * (b - a);
    double fc = f(c), fd = f(d);
    while (b - a > tol) {
        if (fc > fd) {
            b = d; d = c; fd = fc;
            c = b - g * (b - a); fc = f(c);
        } else {
            a = c; c = d; fc = fd;
            d = a + g * (b - a); fd = f(d);
        }
    }
    return 0.5 * (a + b);
}

// cyclic golden-section over (t, α, β), y = unit(y0 + α e1 + β e2)
void refine(const std::function<double(double, const Vec3&)>& obj, double& t, Vec3& y, double dt, double dy) {
    double best = obj(t, y);
    for (int sweep = 0; sweep < 60; ++sweep) {
        const CircleFrame fr = CircleFrame::make(y);
        const double before = best;
        t = golden_max([&](double s) { return obj(s, y); }, t - dt, t + dt, 1e-11);
        const double al = golden_max([&](double a) { return obj(t, unit(y + a * fr.e1)); }, -dy, dy, 1e-11);
        y = unit(y + al * fr.e1);
        const double be = golden_max([&](double b) { return obj(t, unit(y + b * fr.e2)); }, -dy, dy, 1e-11);
        y = unit(y + be * fr.e2);
        best = obj(t, y);
        dt = std::max(0.5 * dt, 1e-6);
        dy = std::max(0.5 * dy, 1e-6);
        if (std::abs(best - before) < 1e-15 && sweep > 3) break;
    }
}

}  // namespace

AdmissibilityReport admissibility_check(const HarmonicCoeffs& h, const AdmissibilityConfig& cfg) {
    require(std::abs(h.c[0]) <= 1e-10, "admissibility: generator must have zero mean");
    require(cfg.t_nodes >= 3 && cfg.t_max > 0.0, "admissibility: bad scan grid");
    AdmissibilityReport r;
    const SphereGrid grid(cfg.sphere_L);
    std::vector<Vec3> nodes;
    for (std::size_t k = 0; k < grid.size(); ++k) nodes.push_back(grid.node(k));
    for (int i = 0; i < 3; ++i) {
        Vec3 e{0.0, 0.0, 0.0};
        e[i] = 1.0;
        nodes.push_back(e);
        nodes.push_back(-e);
    }
    r.sphere_nodes = nodes.size();
    if (h.is_zero()) {
        r.scanned_t = cfg.t_nodes;
        return r;
    }
    // per-degree spatial fields and their addition-theorem bounds
    const int L = h.L;
    std::vector<std::vector<double>> Fl(L + 1, std::vector<double>(nodes.size(), 0.0));
    std::vector<double> bound_l(L + 1, 0.0), Y(n_coeffs(L));
    for (std::size_t k = 0; k < nodes.size(); ++k) {
        ylm_all(L, nodes[k], Y.data());
        for (int l = 1; l <= L; ++l)
            for (int m = -l; m <= l; ++m) Fl[l][k] += h(l, m) * Y[lm_index(l, m)];
    }
    for (int l = 1; l <= L; ++l) {
        double s = 0.0;
        for (int m = -l; m <= l; ++m) s += h(l, m) * h(l, m);
        bound_l[l] = std::sqrt(s * (2.0 * l + 1.0) / (4.0 * std::numbers::pi));
    }
    const double dt = 2.0 * cfg.t_max / (cfg.t_nodes - 1);
    struct Cand { double v; double t; std::size_t k; };
    std::vector<Cand> hi, lo;  // coarse maxima of g and of -g
    std::vector<std::pair<double, double>> order;  // (bound, t)
    std::vector<double> Z(L + 1);
    for (int i = 0; i < cfg.t_nodes; ++i) {
        const double t = -cfg.t_max + i * dt, z = std::tanh(t);
        legendre_all(L, z, nullptr, Z.data());
        double b = 0.0;
        for (int l = 1; l <= L; ++l) b += std::abs(Z[l]) * bound_l[l];
        order.emplace_back(b * (1.0 - z * z), t);
    }
    std::sort(order.begin(), order.end(), [](auto& a, auto& b) { return a.first > b.first; });
    double best_abs = 0.0;
    for (const auto& [b, t] : order) {
        if (b <= best_abs) { ++r.skipped_t; continue; }  // bracket: cannot beat the current max
        ++r.scanned_t;
        const double z = std::tanh(t), s2 = 1.0 - z * z;
        legendre_all(L, z, nullptr, Z.data());
        for (std::size_t k = 0; k < nodes.size(); ++k) {
            double g = 0.0;
            for (int l = 1; l <= L; ++l) g += Z[l] * Fl[l][k];
            g *= s2;
            hi.push_back({g, t, k});
            lo.push_back({-g, t, k});
            best_abs = std::max(best_abs, std::abs(g));
        }
        auto trim = [&](std::vector<Cand>& v) {
            if (v.size() > 4096) {
                std::partial_sort(v.begin(), v.begin() + 256, v.end(), [](auto& a, auto& b) { return a.v > b.v; });
                v.resize(256);
            }
        };
        trim(hi);
        trim(lo);
    }
    const DtRh g{h};
    const double dy = 2.0 * std::numbers::pi / (cfg.sphere_L + 1);
    auto best_of = [&](std::vector<Cand>& v, double sign, double& tb, Vec3& yb) {
        std::sort(v.begin(), v.end(), [](auto& a, auto& b) { return a.v > b.v; });
        double best = -1e300;
        int used = 0;
        std::vector<std::pair<double, Vec3>> seen;
        for (const auto& c : v) {
            if (used >= cfg.candidates) break;
            const Vec3 y0 = nodes[c.k];
            bool dup = false;
            for (auto& [ts, ys] : seen)
                if (std::abs(ts - c.t) < 4 * dt && dot(ys, y0) > std::cos(2 * dy)) dup = true;
            if (dup) continue;
            seen.emplace_back(c.t, y0);
            ++used;
            double t = c.t;
            Vec3 y = y0;
            refine([&](double s, const Vec3& u) { return sign * g(s, u); }, t, y, 2 * dt, dy);
            const double val = sign * g(t, y);
            if (val > best) { best = val; tb = t; yb = y; }
        }
        return sign * best;
    };
    double t_hi = 0.0, t_lo = 0.0;
    Vec3 y_hi{0, 0, 1}, y_lo{0, 0, 1};
    r.max_dtRh = best_of(hi, 1.0, t_hi, y_hi);
    r.min_dtRh = best_of(lo, -1.0, t_lo, y_lo);
    const double amax = std::max(std::abs(r.max_dtRh), std::abs(r.min_dtRh));
    r.margin = 1.0 - amax;
    if (std::abs(r.max_dtRh) >= std::abs(r.min_dtRh)) { r.t_witness = t_hi; r.y_witness = y_hi; }
    else { r.t_witness = t_lo; r.y_witness = y_lo; }
    r.admissible = r.margin > 0.0;
    r.min_V = 1.0 + r.min_dtRh;
    r.V_positive = r.min_V > 0.0;
    r.consistent = (r.admissible == r.V_positive);
    return r;
}

std::string AdmissibilityReport::to_json() const {
    nlohmann::json j;
    j["admissible"] = admissible;
    j["margin"] = margin;
    j["witness"] = {{"t", t_witness}, {"y", {y_witness[0], y_witness[1], y_witness[2]}}};
    j["max_dtRh"] = max_dtRh;
    j["min_dtRh"] = min_dtRh;
    j["min_V"] = min_V;
    j["V_positive"] = V_positive;
    j["consistent"] = consistent;
    j["scan"] = {{"t_nodes_scanned", scanned_t}, {"t_nodes_skipped_by_bound", skipped_t}, {"sphere_nodes", sphere_nodes}};
    return j.dump(2);
}

// ---------------------------------------------------------------- metrics

const char* to_string(MetricKind k) {
    switch (k) {
        case MetricKind::g_M: return "g_M";
        case MetricKind::g_bar: return "g_bar";
        default: return "g_VA";
    }
}

Mat4 metric_matrix(const MonopolePoint& p, MetricKind k) {
    if (p.V <= 0.0) fail(Status::precondition, "metric: V <= 0, signature degenerates");
    const double th[4] = {1.0, 0.0, p.Aa, p.Ab};
    const double ch = std::cosh(p.t), d = 1.0 + std::norm(p.lam);
    const double gx = 4.0 * ch * ch / (d * d);
    Mat4 g{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) g[i][j] = -th[i] * th[j] / (p.V * p.V);
    g[1][1] += -1.0;
    g[2][2] += gx;
    g[3][3] += gx;
    if (k == MetricKind::g_M) return g;
    const double s = (k == MetricKind::g_VA) ? p.V : p.V / (ch * ch);
    for (auto& row : g)
        for (double& x : row) x *= s;
    return g;
}

MetricSample metric_at(const Monopole& m, double s, double t, cplx lam, MetricKind k) {
    MetricSample ms;
    ms.s = s;
    ms.t = t;
    ms.lam = lam;
    ms.kind = k;
    ms.g = metric_matrix(evaluate(m, t, lam), k);
    Eigen::Matrix4d G;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) G(i, j) = ms.g[i][j];
    Eigen::SelfAdjointEigenSolver<Eigen::Matrix4d> es(G);
    for (int i = 0; i < 4; ++i) (es.eigenvalues()(i) < 0 ? ms.n_negative : ms.n_positive)++;
    return ms;
}

double gauge_pullback_residual(const Monopole& m, const HarmonicCoeffs& phi, double s, double t, cplx lam) {
    const Monopole shifted = m.with_deformation(Deformation::gradient, phi);
    const Mat4 g1 = metric_at(shifted, s, t, lam, MetricKind::g_VA).g;
    const Mat4 g0 = metric_at(m, s, t, lam, MetricKind::g_VA).g;  // s-independent, so g0 at Φ(p) = g0 at p
    Vec3 ua, ub, grad;
    stereographic_jacobian(lam, ua, ub);
    synthesize_grad(phi, inverse_stereographic(lam), grad);
    double J[4][4] = {{1.0, 0.0, dot(grad, ua), dot(grad, ub)}, {0, 1, 0, 0}, {0, 0, 1, 0}, {0, 0, 0, 1}};
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double pb = 0.0;
            for (int a = 0; a < 4; ++a)
                for (int b = 0; b < 4; ++b) pb += J[a][i] * g0[a][b] * J[b][j];
            r = std::max(r, std::abs(pb - g1[i][j]));
        }
    return r;
}

// ---------------------------------------------------------------- compactification

CompactificationReport compactification_probe(const Monopole& m, const std::vector<Vec3>& ys) {
    CompactificationReport r;
    r.ys = ys;
    auto extrapolate = [&](const Vec3& y, double sign, double& limit, double& spread) {
        std::vector<double> F;
        for (double q2 : r.q2) {
            const double t = -sign * 0.5 * std::log(q2);
            F.push_back((monopole_V(m, t, y) - 1.0) / q2);
        }
        // linear extrapolation to q² = 0 from consecutive pairs
        std::vector<double> est;
        for (std::size_t k = 0; k + 1 < F.size(); ++k)
            est.push_back((r.q2[k] * F[k + 1] - r.q2[k + 1] * F[k]) / (r.q2[k] - r.q2[k + 1]));
        limit = est.back();
        spread = 0.0;
        for (double e : est) spread = std::max(spread, std::abs(e - limit));
    };
    for (const Vec3& y : ys) {
        double lp, sp, lm, sm;
        extrapolate(y, 1.0, lp, sp);
        extrapolate(y, -1.0, lm, sm);
        r.limit_plus.push_back(lp);
        r.spread_plus.push_back(sp);
        r.limit_minus.push_back(lm);
        r.spread_minus.push_back(sm);
        r.max_spread = std::max({r.max_spread, sp, sm});
    }
    return r;
}

std::string CompactificationReport::to_json() const {
    nlohmann::json j;
    j["q2"] = q2;
    j["limit_plus"] = limit_plus;
    j["limit_minus"] = limit_minus;
    j["spread_plus"] = spread_plus;
    j["spread_minus"] = spread_minus;
    j["max_spread"] = max_spread;
    return j.dump(2);
}

HarmonicCoeffs recover_generator(const Monopole& m, double T) { return apply_R(m.h, T); }

FieldOnDeSitter V_minus_one_field(const Monopole& m, const std::vector<double>& t) {
    return FieldOnDeSitter::sample(t, m.h.L, Parity::odd, [&m](double ti) {
        const double z = std::tanh(ti);
        std::vector<double> Z(m.h.L + 1);
        legendre_all(m.h.L, z, nullptr, Z.data());
        HarmonicCoeffs v = m.h;
        for (int l = 0; l <= m.h.L; ++l)
            for (int mm = -l; mm <= l; ++mm) v(l, mm) *= Z[l] * (1.0 - z * z);
        return v;
    });
}

void write_monopole_csv(const Monopole& m, const std::vector<double>& t, std::ostream& os) {
    os << "t,l,m,V_coefficient,A_coefficient\n";
    os.precision(17);
    const int L = m.h.L;
    std::vector<double> P(L + 1), Z(L + 1);
    for (double ti : t) {
        const double z = std::tanh(ti);
        legendre_all(L, z, P.data(), Z.data());
        for (int l = 0; l <= L; ++l)
            for (int mm = -l; mm <= l; ++mm) {
                double v = m.h(l, mm) * Z[l] * (1.0 - z * z);
                if (l == 0) v += std::sqrt(4.0 * std::numbers::pi);  // the constant 1
                // A = Σ a_lm *̌ďY_lm with a_lm = -c_lm P_l(z)
                const double a = -m.a_sign * m.h(l, mm) * P[l];
                os << ti << ',' << l << ',' << mm << ',' << v << ',' << a << '\n';
            }
    }
}

}  // namespace zf
