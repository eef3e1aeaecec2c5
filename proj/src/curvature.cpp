// SPDX-License-Identifier: Apache-2.0
#include "zollfrei/curvature.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <functional>

#include "zollfrei/error.hpp"
#include "zollfrei/twistor.hpp"

namespace zf {

namespace {

constexpr double kOff[4] = {-2.0, -1.0, 1.0, 2.0};
constexpr double kWt[4] = {1.0, -8.0, 8.0, -1.0};
constexpr cplx I{0.0, 1.0};

// 4th-order central derivative of a vector-valued function along coordinate k
template <class F, std::size_t N>
auto partial(F&& f, const std::array<double, N>& x, int k, double h) {
    using R = decltype(f(x));
    R acc{};
    for (int i = 0; i < 4; ++i) {
        auto y = x;
        y[k] += kOff[i] * h;
        const R v = f(y);
        for (std::size_t c = 0; c < acc.size(); ++c) acc[c] += kWt[i] * v[c];
    }
    for (auto& a : acc) a /= 12.0 * h;
    return acc;
}

cplx lam_of(const Vec4& x) { return {x[2], x[3]}; }

void require_positive(const MonopolePoint& p) {
    if (p.V <= 0.0) fail(Status::precondition, "curvature: V <= 0 at sample point");
}

// coframe as a flat 16-vector, theta[i][mu] at 4*i + mu
std::array<double, 16> coframe_flat(const Monopole& m, const Vec4& x) {
    const FrameAtPoint f = frames_at(m, x[0], x[1], lam_of(x));
    std::array<double, 16> r{};
    for (int i = 0; i < 4; ++i)
        for (int mu = 0; mu < 4; ++mu) r[4 * i + mu] = f.theta[i][mu];
    return r;
}

// dθ^j(E_m, E_n) for all j, from FD of the coframe components
std::array<std::array<std::array<double, 4>, 4>, 4> d_coframe(const Monopole& m, const Vec4& x, double h) {
    std::array<std::array<double, 16>, 4> d;
    for (int k = 0; k < 4; ++k) d[k] = partial([&](const Vec4& y) { return coframe_flat(m, y); }, x, k, h);
    const FrameAtPoint f = frames_at(m, x[0], x[1], lam_of(x));
    std::array<std::array<std::array<double, 4>, 4>, 4> out{};
    for (int j = 0; j < 4; ++j)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b) {
                double s = 0.0;
                for (int mu = 0; mu < 4; ++mu)
                    for (int nu = 0; nu < 4; ++nu)
                        s += (d[mu][4 * j + nu] - d[nu][4 * j + mu]) * f.E[a][mu] * f.E[b][nu];
                out[j][a][b] = s;
            }
    return out;
}

}  // namespace

FrameAtPoint frames_at(const Monopole& m, double s, double t, cplx lam) {
    const MonopolePoint p = evaluate(m, t, lam);
    require_positive(p);
    FrameAtPoint f;
    f.s = s;
    f.t = t;
    f.lam = lam;
    const double c = p.c, V = p.V;
    f.E[0] = {V, 0.0, 0.0, 0.0};
    f.E[1] = {-p.A[0], 1.0, 0.0, 0.0};
    f.E[2] = {-p.A[1], 0.0, c, 0.0};
    f.E[3] = {-p.A[2], 0.0, 0.0, c};
    f.theta[0] = {1.0 / V, p.A[0] / V, p.Aa / V, p.Ab / V};
    f.theta[1] = {0.0, 1.0, 0.0, 0.0};
    f.theta[2] = {0.0, 0.0, 1.0 / c, 0.0};
    f.theta[3] = {0.0, 0.0, 0.0, 1.0 / c};
    return f;
}

double orthonormality_residual(const Monopole& m, const FrameAtPoint& f) {
    const Mat4 g = metric_at(m, f.s, f.t, f.lam, MetricKind::g_M).g;
    const double eta[4] = {-1.0, -1.0, 1.0, 1.0};
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) {
            double gij = 0.0, dual = 0.0;
            for (int a = 0; a < 4; ++a) {
                dual += f.theta[i][a] * f.E[j][a];
                for (int b = 0; b < 4; ++b) gij += g[a][b] * f.E[i][a] * f.E[j][b];
            }
            r = std::max({r, std::abs(gij - (i == j ? eta[i] : 0.0)), std::abs(dual - (i == j ? 1.0 : 0.0))});
        }
    return r;
}

ConnectionSample connection_at(const Monopole& m, double t, cplx lam) {
    const MonopolePoint p = evaluate(m, t, lam);
    require_positive(p);
    ConnectionSample cs;
    for (int j = 0; j < 3; ++j) cs.nu[j] = p.dV[j] / p.V;
    const double n1 = cs.nu[0], n2 = cs.nu[1], n3 = cs.nu[2];
    const double th = std::tanh(t), sech = 1.0 / std::cosh(t);
    const double a = lam.real(), b = lam.imag();

    // de Sitter side; indices 0..2 stand for 1..3
    auto& B = cs.base;
    B[0][1] = {0.0, th, 0.0};
    B[0][2] = {0.0, 0.0, th};
    B[1][2] = {0.0, -b * sech, a * sech};
    B[1][0] = B[0][1];
    B[2][0] = B[0][2];
    for (int k = 0; k < 3; ++k) B[2][1][k] = -B[1][2][k];

    auto& W = cs.omega;
    W[0][1] = {-n1, 0.0, 0.5 * n3, -0.5 * n2};
    W[0][2] = {-n2, -0.5 * n3, 0.0, -0.5 * n1};
    W[0][3] = {-n3, 0.5 * n2, 0.5 * n1, 0.0};
    W[1][2] = {-0.5 * n3, B[0][1][0], B[0][1][1], B[0][1][2]};
    W[1][3] = {0.5 * n2, B[0][2][0], B[0][2][1], B[0][2][2]};
    W[2][3] = {-0.5 * n1, B[1][2][0], B[1][2][1], B[1][2][2]};
    for (int k = 0; k < 4; ++k) {
        W[1][0][k] = -W[0][1][k];
        W[2][0][k] = W[0][2][k];
        W[3][0][k] = W[0][3][k];
        W[2][1][k] = W[1][2][k];
        W[3][1][k] = W[1][3][k];
        W[3][2][k] = -W[2][3][k];
        cs.eta12[k] = W[1][2][k] - W[0][3][k];
        cs.eta13[k] = W[1][3][k] + W[0][2][k];
        cs.eta23[k] = W[2][3][k] - W[0][1][k];
    }
    return cs;
}

double torsion_residual(const Monopole& m, double t, cplx lam, double step) {
    const Vec4 x{0.0, t, lam.real(), lam.imag()};
    const auto d = d_coframe(m, x, step);
    const ConnectionSample cs = connection_at(m, t, lam);
    double r = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int a = 0; a < 4; ++a)
            for (int b = 0; b < 4; ++b)
                r = std::max(r, std::abs(d[j][a][b] + cs.omega[j][b][a] - cs.omega[j][a][b]));
    return r;
}

DE0Report dE0_residual(const Monopole& m, double t, cplx lam, double step) {
    const Vec4 x{0.0, t, lam.real(), lam.imag()};
    const auto d = d_coframe(m, x, step)[0];
    const ConnectionSample cs = connection_at(m, t, lam);
    const double n1 = cs.nu[0], n2 = cs.nu[1], n3 = cs.nu[2];
    // antisymmetric component tables F[a][b] = F(E_a, E_b)
    double ex[4][4] = {}, sd[4][4] = {};
    auto put = [](double (&F)[4][4], int a, int b, double v) { F[a][b] += v; F[b][a] -= v; };
    for (int j = 1; j <= 3; ++j) put(ex, 0, j, cs.nu[j - 1]);
    put(ex, 2, 3, -n1);
    put(ex, 1, 3, -n2);
    put(ex, 1, 2, n3);
    // √2 φ^1 = E01 + E23, √2 φ^2 = E02 + E13, √2 φ^3 = E03 - E12
    put(sd, 0, 1, n1); put(sd, 2, 3, n1);
    put(sd, 0, 2, n2); put(sd, 1, 3, n2);
    put(sd, 0, 3, n3); put(sd, 1, 2, -n3);
    DE0Report r;
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b) {
            r.explicit_form = std::max(r.explicit_form, std::abs(d[a][b] - ex[a][b]));
            r.phi_form = std::max(r.phi_form, std::abs(d[a][b] - sd[a][b]));
        }
    return r;
}

namespace {

using Christoffel = std::array<double, 64>;  // Γ^i_{jk} at 16 i + 4 j + k

Mat4 metric_x(const Monopole& m, const Vec4& x, MetricKind kind) {
    return metric_matrix(evaluate(m, x[1], lam_of(x)), kind);
}

Christoffel christoffel(const Monopole& m, const Vec4& x, MetricKind kind, double h) {
    auto flat = [&](const Vec4& y) {
        const Mat4 g = metric_x(m, y, kind);
        std::array<double, 16> r;
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) r[4 * i + j] = g[i][j];
        return r;
    };
    std::array<std::array<double, 16>, 4> dg;  // dg[k][4i+j] = ∂_k g_ij
    for (int k = 0; k < 4; ++k) dg[k] = partial(flat, x, k, h);
    const Mat4 g = metric_x(m, x, kind);
    Eigen::Matrix4d G;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) G(i, j) = g[i][j];
    const Eigen::Matrix4d Gi = G.inverse();
    Christoffel C{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k) {
                double s = 0.0;
                for (int l = 0; l < 4; ++l)
                    s += Gi(i, l) * (dg[j][4 * l + k] + dg[k][4 * l + j] - dg[l][4 * j + k]);
                C[16 * i + 4 * j + k] = 0.5 * s;
            }
    return C;
}

}  // namespace

double christoffel_residual(const Monopole& m, double t, cplx lam, double step) {
    const Vec4 x{0.0, t, lam.real(), lam.imag()};
    const Christoffel C = christoffel(m, x, MetricKind::g_M, step);
    const FrameAtPoint f = frames_at(m, 0.0, t, lam);
    const ConnectionSample cs = connection_at(m, t, lam);
    auto frame_flat = [&](const Vec4& y) {
        const FrameAtPoint g = frames_at(m, y[0], y[1], lam_of(y));
        std::array<double, 16> r;
        for (int i = 0; i < 4; ++i)
            for (int mu = 0; mu < 4; ++mu) r[4 * i + mu] = g.E[i][mu];
        return r;
    };
    std::array<std::array<double, 16>, 4> dE;
    for (int k = 0; k < 4; ++k) dE[k] = partial(frame_flat, x, k, step);
    double r = 0.0;
    for (int i = 0; i < 4; ++i)
        for (int k = 0; k < 4; ++k)
            for (int nu = 0; nu < 4; ++nu) {
                // ∇_{E_i} E_k, coordinate component nu
                double lc = 0.0;
                for (int mu = 0; mu < 4; ++mu) {
                    double inner = dE[mu][4 * k + nu];
                    for (int rho = 0; rho < 4; ++rho) inner += C[16 * nu + 4 * mu + rho] * f.E[k][rho];
                    lc += f.E[i][mu] * inner;
                }
                double fr = 0.0;
                for (int j = 0; j < 4; ++j) fr += cs.omega[j][k][i] * f.E[j][nu];
                r = std::max(r, std::abs(lc - fr));
            }
    return r;
}

// ---------------------------------------------------------------- lifted fields

namespace {

Vec4 combo(const FrameAtPoint& f, const Vec4& v) {
    Vec4 r{};
    for (int i = 0; i < 4; ++i)
        for (int mu = 0; mu < 4; ++mu) r[mu] += v[i] * f.E[i][mu];
    return r;
}

double apply(const Vec4& form, const Vec4& v) { return form[0] * v[0] + form[1] * v[1] + form[2] * v[2] + form[3] * v[3]; }

}  // namespace

LiftedField lifted_fields(const Monopole& m, double t, cplx lam, double zeta) {
    const FrameAtPoint f = frames_at(m, 0.0, t, lam);
    const ConnectionSample cs = connection_at(m, t, lam);
    const Vec4 v1{-zeta, -1.0, 1.0, zeta}, v2{-1.0, zeta, zeta, -1.0};
    auto fiber = [&](const Vec4& v) {
        return 0.5 * ((1.0 + zeta * zeta) * apply(cs.eta23, v) + (1.0 - zeta * zeta) * apply(cs.eta13, v) -
                      2.0 * zeta * apply(cs.eta12, v));
    };
    LiftedField L;
    const Vec4 b1 = combo(f, v1), b2 = combo(f, v2);
    for (int k = 0; k < 4; ++k) {
        L.G1[k] = b1[k];
        L.G2[k] = b2[k];
    }
    L.G1[4] = fiber(v1);
    L.G2[4] = fiber(v2);
    const double psi = (1.0 + zeta * zeta) / (2.0 * std::cosh(t)), sh = std::sinh(t);
    L.fiber1_closed = psi * (-lam.imag() + zeta * lam.real() - zeta * sh);
    L.fiber2_closed = psi * (-zeta * lam.imag() - lam.real() - sh);
    return L;
}

LiftedField lifted_fields_reduced(const Monopole& m, double t, cplx lam, double zeta) {
    const MonopolePoint p = evaluate(m, t, lam);
    require_positive(p);
    LiftedField L = lifted_fields(m, t, lam, zeta);  // for the closed-form fibers only
    const double c = p.c;
    const double AG1 = -p.A[0] + p.A[1] + zeta * p.A[2];
    const double AG2 = zeta * p.A[0] + zeta * p.A[1] - p.A[2];
    L.G1 = {-(p.V * zeta + AG1), -1.0, c, c * zeta, L.fiber1_closed};
    L.G2 = {-(p.V + AG2), zeta, c * zeta, -c, L.fiber2_closed};
    return L;
}

FrobeniusReport frobenius_residual(const Monopole& m, double s, double t, cplx lam, double zeta, double step) {
    const Vec5 x{s, t, lam.real(), lam.imag(), zeta};
    auto fields = [&](const Vec5& y) {
        const LiftedField L = lifted_fields_reduced(m, y[1], cplx(y[2], y[3]), y[4]);
        std::array<double, 10> r;
        for (int k = 0; k < 5; ++k) {
            r[k] = L.G1[k];
            r[5 + k] = L.G2[k];
        }
        return r;
    };
    const auto F0 = fields(x);
    std::array<std::array<double, 10>, 5> D;
    for (int k = 0; k < 5; ++k) D[k] = partial(fields, x, k, step);
    Eigen::Matrix<double, 5, 1> X, Y, B;
    for (int k = 0; k < 5; ++k) {
        X(k) = F0[k];
        Y(k) = F0[5 + k];
    }
    for (int mu = 0; mu < 5; ++mu) {
        double v = 0.0;
        for (int nu = 0; nu < 5; ++nu) v += X(nu) * D[nu][5 + mu] - Y(nu) * D[nu][mu];
        B(mu) = v;
    }
    Eigen::Matrix<double, 5, 2> S;
    S.col(0) = X;
    S.col(1) = Y;
    const Eigen::JacobiSVD<Eigen::Matrix<double, 5, 2>> svd(S, Eigen::ComputeFullU | Eigen::ComputeFullV);
    if (svd.singularValues()(1) < 1e-10 * svd.singularValues()(0))
        fail(Status::precondition, "frobenius_residual: degenerate span");
    const Eigen::Matrix<double, 2, 1> coef = svd.solve(B);
    FrobeniusReport r;
    r.residual = (B - S * coef).norm();
    r.bracket = B.norm();
    r.step = step;
    return r;
}

// ---------------------------------------------------------------- wanted2

Wanted2Report wanted2_residual(const HarmonicCoeffs& h, double t, cplx lam, cplx w, double step) {
    require(std::abs(1.0 + w) >= 1e-2, "wanted2_residual: omega too close to -1");
    const Monopole m = Monopole::from_generator(h);
    const MonopolePoint p = evaluate(m, t, lam);
    const cplx zeta = I * (1.0 - w) / (1.0 + w);
    const cplx dw_dzeta = -2.0 * I / ((I + zeta) * (I + zeta));

    // G = 2H+ + H0 as a function of (t, a, b) at fixed ω, and ∂ω G
    auto G = [&](const Vec4& y) {
        const BoundaryMap b = fourier_split(h, 0.0, y[1], cplx(y[2], y[3]));
        const cplx g = b.G(w);
        return std::array<double, 2>{g.real(), g.imag()};
    };
    const BoundaryMap b0 = fourier_split(h, 0.0, t, lam);
    cplx dG = 0.0;
    for (int k = b0.K; k >= 1; --k) dG = dG * w + 2.0 * double(k) * b0.coeff(k);
    auto Phi = [&](const Vec4& y) {
        const EtaPhi e = eta_phi(y[1], cplx(y[2], y[3]), w);
        const cplx v = e.Phi.num / e.Phi.den;
        return std::array<double, 2>{v.real(), v.imag()};
    };
    const double et = std::exp(t);
    const cplx lb = std::conj(lam);
    const cplx Phi0 = -I * (lb * w + et) / (lam + et * w);
    // ∂ω Φ for Φ = -i(λ̄ω + e^t)/(λ + e^tω)
    const cplx dPhi = -I * (lb * (lam + et * w) - et * (lb * w + et)) / ((lam + et * w) * (lam + et * w));

    const Vec4 x{0.0, t, lam.real(), lam.imag()};
    std::array<cplx, 3> EG, EPhi;  // Ē_j applied, j = 1..3
    for (int k = 1; k <= 3; ++k) {
        const auto g = partial(G, x, k, step);
        const auto f = partial(Phi, x, k, step);
        const double scale = k == 1 ? 1.0 : p.c;
        EG[k - 1] = scale * cplx(g[0], g[1]);
        EPhi[k - 1] = scale * cplx(f[0], f[1]);
    }
    const double psi_num_t = 2.0 * std::cosh(t);
    const cplx psi = (1.0 + zeta * zeta) / psi_num_t;
    const double sh = std::sinh(t), a = lam.real(), bb = lam.imag();
    const cplx g1 = psi * (-bb + zeta * a - zeta * sh);
    const cplx g2 = psi * (-zeta * bb - a - sh);
    auto lift1 = [&](const std::array<cplx, 3>& E, cplx d) { return -E[0] + E[1] + zeta * E[2] + g1 * d * dw_dzeta; };
    auto lift2 = [&](const std::array<cplx, 3>& E, cplx d) { return zeta * E[0] + zeta * E[1] - E[2] + g2 * d * dw_dzeta; };

    const double V1 = p.V - 1.0;
    const cplx rhs1 = I * (V1 * zeta + (-p.A[0] + p.A[1] + zeta * p.A[2]));
    const cplx rhs2 = I * (V1 + (zeta * p.A[0] + zeta * p.A[1] - p.A[2]));
    Wanted2Report r;
    r.r1 = (1.0 + w) * (lift1(EG, dG) - rhs1);
    r.r2 = (1.0 + w) * (lift2(EG, dG) - rhs2);
    r.phi1 = (1.0 + w) * (lift1(EPhi, dPhi) - I * zeta * Phi0) / Phi0;
    r.phi2 = (1.0 + w) * (lift2(EPhi, dPhi) - I * Phi0) / Phi0;
    return r;
}

// ---------------------------------------------------------------- anti-self-duality

ASDReport asd_residual(const Monopole& m, double s, double t, cplx lam, MetricKind kind, double step) {
    const Vec4 x{s, t, lam.real(), lam.imag()};
    const double h = step;
    // ∂_k Γ by differencing Christoffels that are themselves differenced
    std::array<Christoffel, 4> dC;
    for (int k = 0; k < 4; ++k) dC[k] = partial([&](const Vec4& y) { return christoffel(m, y, kind, h); }, x, k, h);
    const Christoffel C = christoffel(m, x, kind, h);
    const Mat4 g = metric_x(m, x, kind);
    auto Gm = [&](int i, int j, int k) { return C[16 * i + 4 * j + k]; };

    // R^i_{jkl} = ∂_k Γ^i_{lj} - ∂_l Γ^i_{kj} + Γ^i_{km} Γ^m_{lj} - Γ^i_{lm} Γ^m_{kj}
    double Rup[4][4][4][4], R[4][4][4][4];
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double v = dC[k][16 * i + 4 * l + j] - dC[l][16 * i + 4 * k + j];
                    for (int q = 0; q < 4; ++q) v += Gm(i, k, q) * Gm(q, l, j) - Gm(i, l, q) * Gm(q, k, j);
                    Rup[i][j][k][l] = v;
                }
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j)
            for (int k = 0; k < 4; ++k)
                for (int l = 0; l < 4; ++l) {
                    double v = 0.0;
                    for (int q = 0; q < 4; ++q) v += g[i][q] * Rup[q][j][k][l];
                    R[i][j][k][l] = v;
                }
    Eigen::Matrix4d G;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) G(i, j) = g[i][j];
    const Eigen::Matrix4d Gi = G.inverse();
    double Ric[4][4] = {}, scal = 0.0;
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l)
            for (int i = 0; i < 4; ++i) Ric[j][l] += Rup[i][j][i][l];
    for (int j = 0; j < 4; ++j)
        for (int l = 0; l < 4; ++l) scal += Gi(j, l) * Ric[j][l];
    double Wc[4][4][4][4];
    for (int a = 0; a < 4; ++a)
        for (int b = 0; b < 4; ++b)
            for (int c = 0; c < 4; ++c)
                for (int d = 0; d < 4; ++d)
                    Wc[a][b][c][d] = R[a][b][c][d] -
                                     0.5 * (g[a][c] * Ric[b][d] - g[a][d] * Ric[b][c] - g[b][c] * Ric[a][d] +
                                            g[b][d] * Ric[a][c]) +
                                     scal / 6.0 * (g[a][c] * g[b][d] - g[a][d] * g[b][c]);

    // frame components in the ordered g_M frame (E0, E1, E2, E3)
    const FrameAtPoint f = frames_at(m, s, t, lam);
    auto to_frame = [&](const double (&T)[4][4][4][4], double (&out)[4][4][4][4]) {
        double tmp[4][4][4][4];
        for (int A = 0; A < 4; ++A)
            for (int b = 0; b < 4; ++b)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        double v = 0.0;
                        for (int a = 0; a < 4; ++a) v += f.E[A][a] * T[a][b][c][d];
                        tmp[A][b][c][d] = v;
                    }
        double t2[4][4][4][4];
        for (int A = 0; A < 4; ++A)
            for (int B = 0; B < 4; ++B)
                for (int c = 0; c < 4; ++c)
                    for (int d = 0; d < 4; ++d) {
                        double v = 0.0;
                        for (int b = 0; b < 4; ++b) v += f.E[B][b] * tmp[A][b][c][d];
                        t2[A][B][c][d] = v;
                    }
        for (int A = 0; A < 4; ++A)
            for (int B = 0; B < 4; ++B)
                for (int Cc = 0; Cc < 4; ++Cc)
                    for (int d = 0; d < 4; ++d) {
                        double v = 0.0;
                        for (int c = 0; c < 4; ++c) v += f.E[Cc][c] * t2[A][B][c][d];
                        tmp[A][B][Cc][d] = v;
                    }
        for (int A = 0; A < 4; ++A)
            for (int B = 0; B < 4; ++B)
                for (int Cc = 0; Cc < 4; ++Cc)
                    for (int D = 0; D < 4; ++D) {
                        double v = 0.0;
                        for (int d = 0; d < 4; ++d) v += f.E[D][d] * tmp[A][B][Cc][d];
                        out[A][B][Cc][D] = v;
                    }
    };
    double Wf[4][4][4][4], Rf[4][4][4][4];
    to_frame(Wc, Wf);
    to_frame(R, Rf);

    // bivector pairs 01 02 03 12 13 23; self-dual and anti-self-dual bases
    const int pr[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
    const double r2 = 1.0 / std::sqrt(2.0);
    const double basis[6][6] = {
        {r2, 0, 0, 0, 0, r2}, {0, r2, 0, 0, r2, 0}, {0, 0, r2, -r2, 0, 0},   // Λ+
        {r2, 0, 0, 0, 0, -r2}, {0, r2, 0, 0, -r2, 0}, {0, 0, r2, r2, 0, 0},  // Λ-
    };
    Eigen::Matrix<double, 6, 6> M, P;
    for (int i = 0; i < 6; ++i)
        for (int j = 0; j < 6; ++j) {
            M(i, j) = Wf[pr[i][0]][pr[i][1]][pr[j][0]][pr[j][1]];
            P(i, j) = basis[i][j];
        }
    const Eigen::Matrix<double, 6, 6> Mb = P * M * P.transpose();
    ASDReport r;
    r.kind = kind;
    r.step = step;
    r.W_plus = Mb.block<3, 3>(0, 0).norm();
    r.W_minus = Mb.block<3, 3>(3, 3).norm();
    r.W_mixed = Mb.block<3, 3>(0, 3).norm();
    r.W = M.norm();
    double rn = 0.0;  // same pair convention as |W|
    for (const auto& p1 : pr)
        for (const auto& p2 : pr) rn += Rf[p1[0]][p1[1]][p2[0]][p2[1]] * Rf[p1[0]][p1[1]][p2[0]][p2[1]];
    r.riemann = std::sqrt(rn);
    const double den = r.W + 1e-3 * r.riemann;
    r.relative_sd = den > 0.0 ? r.W_plus / den : 0.0;
    r.relative_asd = den > 0.0 ? r.W_minus / den : 0.0;
    return r;
}

}  // namespace zf
