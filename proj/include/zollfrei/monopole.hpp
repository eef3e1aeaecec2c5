// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "zollfrei/harmonics.hpp"
#include "zollfrei/wave.hpp"

namespace zf {

// Controls used by the verification layer. `gradient` adds dφ to A (a pure
// gauge change); `ramp` adds t·dφ, which breaks both the gauge fixing and the
// monopole equation.
enum class Deformation { none, gradient, ramp };

struct Monopole {
    HarmonicCoeffs h;    // generator; potential f = Rh
    HarmonicCoeffs phi;  // deformation potential on the sphere
    Deformation deformation = Deformation::none;
    double a_sign = 1.0;  // -1 reverses A (equivalent to s -> -s)

    static Monopole from_generator(const HarmonicCoeffs& h);
    static Monopole trivial();
    Monopole with_deformation(Deformation d, const HarmonicCoeffs& p) const;
    Monopole with_reversed_A() const;
};

struct TodMode {
    int l = 1, m = 0;
    double c = 0.0;
};
Monopole tod_monopole(const std::vector<TodMode>& modes);
// direct per-mode sum 1 + Σ c Z_l(z) sech^2 t Y_lm(y), independent of the coefficient path
double tod_V_direct(const std::vector<TodMode>& modes, double t, const Vec3& y);

// Fields at (t, λ), λ = a + ib. Frame: Ē1 = ∂t, Ē2 = c ∂a, Ē3 = c ∂b with
// c = (1+|λ|²)/(2 cosh t).
struct MonopolePoint {
    double t = 0.0;
    cplx lam;
    double c = 0.0;
    double f = 0.0, V = 1.0;
    std::array<double, 3> dV{};  // Ē_j V
    std::array<double, 3> df{};  // Ē_j f
    std::array<double, 3> A{};   // frame components; A[0] = A(Ē1)
    double Aa = 0.0, Ab = 0.0;   // coordinate components on da, db
};
MonopolePoint evaluate(const Monopole& m, double t, cplx lam);
double monopole_V(const Monopole& m, double t, const Vec3& y);
double monopole_f(const Monopole& m, double t, const Vec3& y);

struct ChartPoint {
    double t = 0.0;
    cplx lam;
};

struct GaugeReport {
    double max_A1 = 0.0;
    double max_div = 0.0;  // |ď *̌A| per unit area
};
GaugeReport gauge_conditions_check(const Monopole& m, const std::vector<ChartPoint>& pts, double step = 1e-3);

// max frame component of dA - *dV, everything by 4th-order differences in (t, a, b)
double monopole_residual(const Monopole& m, const ChartPoint& p, double step = 1e-3);

struct AdmissibilityConfig {
    double t_max = 8.0;
    int t_nodes = 801;
    int sphere_L = 24;
    int candidates = 6;
};

struct AdmissibilityReport {
    bool admissible = true;
    double margin = 1.0;  // 1 - max |∂t Rh|
    double t_witness = 0.0;
    Vec3 y_witness{0.0, 0.0, 1.0};
    double max_dtRh = 0.0, min_dtRh = 0.0;
    double min_V = 1.0;
    bool V_positive = true;
    bool consistent = true;  // |∂t Rh| < 1  <=>  V > 0
    int scanned_t = 0, skipped_t = 0;
    std::size_t sphere_nodes = 0;
    std::string to_json() const;
};
AdmissibilityReport admissibility_check(const HarmonicCoeffs& h, const AdmissibilityConfig& cfg = {});

enum class MetricKind { g_VA, g_M, g_bar };
const char* to_string(MetricKind k);
using Mat4 = std::array<std::array<double, 4>, 4>;

struct MetricSample {
    double s = 0.0, t = 0.0;
    cplx lam;
    MetricKind kind = MetricKind::g_VA;
    Mat4 g{};
    int n_negative = 0, n_positive = 0;
};
// coordinates (s, t, Re λ, Im λ)
Mat4 metric_matrix(const MonopolePoint& p, MetricKind k);
MetricSample metric_at(const Monopole& m, double s, double t, cplx lam, MetricKind k);
// |g_{V,A+dφ}(p) - Φ^* g_{V,A}| for the fiber shift Φ(s,x) = (s + φ(x), x)
double gauge_pullback_residual(const Monopole& m, const HarmonicCoeffs& phi, double s, double t, cplx lam);

struct CompactificationReport {
    std::vector<double> q2{1e-2, 1e-3, 1e-4};
    std::vector<Vec3> ys;
    std::vector<double> limit_plus, limit_minus;    // (V-1)/q^2 as t -> +inf, (V-1)/r^2 as t -> -inf
    std::vector<double> spread_plus, spread_minus;  // Cauchy spread of the extrapolants
    double max_spread = 0.0;
    std::string to_json() const;
};
CompactificationReport compactification_probe(const Monopole& m, const std::vector<Vec3>& ys);

// h_+ = lim_{t->inf} f(t, .), read off at finite T
HarmonicCoeffs recover_generator(const Monopole& m, double T);

FieldOnDeSitter V_minus_one_field(const Monopole& m, const std::vector<double>& t);
void write_monopole_csv(const Monopole& m, const std::vector<double>& t, std::ostream& os);

}  // namespace zf
