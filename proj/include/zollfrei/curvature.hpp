// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <complex>
#include <string>

#include "zollfrei/monopole.hpp"

namespace zf {

// Coordinates are (s, t, a, b) with λ = a + ib throughout; lifted fields add ζ.
using Vec4 = std::array<double, 4>;
using Vec5 = std::array<double, 5>;

struct FrameAtPoint {
    double s = 0.0, t = 0.0;
    cplx lam;
    std::array<Vec4, 4> E{};      // E[i] = coordinate components of E_i
    std::array<Vec4, 4> theta{};  // theta[i] = coordinate components of E^i
};
FrameAtPoint frames_at(const Monopole& m, double s, double t, cplx lam);
// max |g_M(E_i, E_j) - diag(-1,-1,1,1)| and max |E^i(E_j) - δ|
double orthonormality_residual(const Monopole& m, const FrameAtPoint& f);

struct ConnectionSample {
    std::array<double, 3> nu{};  // V^{-1} Ē_j V
    // omega[i][j][k] = ω^i_j(E_k); base[i][j][k] = ω̲^{i+1}_{j+1}(Ē_{k+1})
    std::array<std::array<Vec4, 4>, 4> omega{};
    std::array<std::array<std::array<double, 3>, 3>, 3> base{};
    Vec4 eta12{}, eta13{}, eta23{};  // induced connection on the self-dual 2-forms
};
ConnectionSample connection_at(const Monopole& m, double t, cplx lam);

// FD exterior derivative checks, max over frame components
double torsion_residual(const Monopole& m, double t, cplx lam, double step = 1e-3);
struct DE0Report {
    double explicit_form = 0.0;  // vs E0∧(ν·E) - ν1 E23 - ν2 E13 + ν3 E12
    double phi_form = 0.0;       // vs √2 Σ ν_j φ^j with φ^j the self-dual basis (informational)
};
DE0Report dE0_residual(const Monopole& m, double t, cplx lam, double step = 1e-3);
// frame connection vs Levi-Civita from numerically differentiated g_M
double christoffel_residual(const Monopole& m, double t, cplx lam, double step = 1e-3);

struct LiftedField {
    Vec5 G1{}, G2{};               // (s, t, a, b, ζ) components, fiber from the connection
    double fiber1_closed = 0.0;    // closed forms γ1, γ2 on the de Sitter side
    double fiber2_closed = 0.0;
};
// Γ1 = -ζE0 - E1 + E2 + ζE3, Γ2 = -E0 + ζE1 + ζE2 - E3, lifted horizontally
LiftedField lifted_fields(const Monopole& m, double t, cplx lam, double zeta);
// the same fields assembled from the de Sitter lift minus (Vζ + A(Γ̲1))∂s, (V + A(Γ̲2))∂s
LiftedField lifted_fields_reduced(const Monopole& m, double t, cplx lam, double zeta);

struct FrobeniusReport {
    double residual = 0.0;  // |[Γ̃1, Γ̃2]| orthogonal to span{Γ̃1, Γ̃2}
    double bracket = 0.0;   // |[Γ̃1, Γ̃2]|
    double step = 0.0;
};
FrobeniusReport frobenius_residual(const Monopole& m, double s, double t, cplx lam, double zeta, double step = 1e-3);

struct Wanted2Report {
    cplx r1, r2;              // (1+ω)(Γ̃_j(2H+ + H0) - RHS_j)
    cplx phi1, phi2;          // (1+ω)(Γ̃1Φ - iζΦ)/Φ, (1+ω)(Γ̃2Φ - iΦ)/Φ
    double max_wanted() const { return std::max(std::abs(r1), std::abs(r2)); }
    double max_phi() const { return std::max(std::abs(phi1), std::abs(phi2)); }
};
// ω on the unit circle with |1 + ω| >= 1e-2
Wanted2Report wanted2_residual(const HarmonicCoeffs& h, double t, cplx lam, cplx w, double step = 1e-3);

struct ASDReport {
    double W_plus = 0.0, W_minus = 0.0, W_mixed = 0.0;
    double W = 0.0, riemann = 0.0;
    double relative_sd = 0.0;   // |W+| / (|W| + 1e-3 |Riem|)
    double relative_asd = 0.0;  // |W-| / (|W| + 1e-3 |Riem|)
    double step = 0.0;
    MetricKind kind = MetricKind::g_M;
};
ASDReport asd_residual(const Monopole& m, double s, double t, cplx lam, MetricKind kind = MetricKind::g_M,
                       double step = 1e-3);

}  // namespace zf
