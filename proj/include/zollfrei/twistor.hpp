// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <iosfwd>
#include <string>
#include <vector>

#include "zollfrei/harmonics.hpp"
#include "zollfrei/sphere.hpp"

namespace zf {

// [z0:z1:z2:z3]; unit norm, first nonzero entry with positive real part
struct ProjectivePoint {
    std::array<cplx, 4> z{};

    static ProjectivePoint from(const std::array<cplx, 4>& v);
    // affine ratios z_k / z_j, j = largest entry of `ref`
    std::array<cplx, 3> affine(int j) const;
    int pivot() const;
};
double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b);  // min over phases of |a - e^{iθ} b|

// Homogeneous pair [num : den] for a point of CP¹.
struct Hom {
    cplx num, den;
    ExtComplex value() const;
};
Vec3 sphere_point(const Hom& p);  // inverse stereographic, safe at ∞

struct EtaPhi {
    Hom eta1, eta2, Phi;
};
// η1 = (-ω + λe^t)/(λ̄ω + e^t), η2 = (λ + e^tω)/(-1 + λ̄e^tω), Φ = -i(λ̄ω + e^t)/(λ + e^tω)
EtaPhi eta_phi(double t, cplx lam, cplx w);

struct BoundaryMap {
    double s = 0.0, t = 0.0;
    cplx lam;
    int K = 0, N = 0;
    std::vector<cplx> Hk;  // k = -K..K at index k + K
    double tail = 0.0;     // relative energy beyond |k| > K
    double reality = 0.0;  // max |H_{-k} - conj H_k|

    cplx coeff(int k) const { return Hk[k + K]; }
    double H0() const { return Hk[K].real(); }
    cplx Hplus(cplx w) const;   // Σ_{k>=1} H_k w^k
    cplx Hminus(cplx w) const;  // Σ_{k>=1} H_{-k} w^{-k}
    cplx G(cplx w) const { return 2.0 * Hplus(w) + H0(); }
};

struct SplitConfig {
    int K = 0;  // 0: 4L + 8
    int N = 0;  // 0: 4K
    double tail_tol = 1e-12;
    void resolve(int L);
};
BoundaryMap fourier_split(const HarmonicCoeffs& h, double s, double t, cplx lam, SplitConfig cfg = {});

ProjectivePoint disk_map(const BoundaryMap& b, cplx w);
ProjectivePoint standard_fibration(double s, double t, cplx lam, cplx w);
std::array<ExtComplex, 2> pi_projection(const ProjectivePoint& z);  // (z1/z0, z3/z2)

struct Membership {
    double r1 = 0.0, r2 = 0.0;
    double max() const { return r1 > r2 ? r1 : r2; }
};
Membership ph_membership(const ProjectivePoint& z, const HarmonicCoeffs& h);

enum class Pole { minus, plus };
// the limit disks over the fixed spheres; λ ∉ {0, ∞} for the minus pole
ProjectivePoint special_disk(const HarmonicCoeffs& h, Pole pole, cplx lam, cplx w);
// number of parameters in the unit disk where the special disk meets L- (minus) or L+ (plus),
// by the winding number of the vanishing coordinate along |ω'| = 1
int special_disk_line_hits(const HarmonicCoeffs& h, Pole pole, cplx lam, int samples = 256);

struct AlphaSurfaceSpec {
    std::array<double, 4> q{1.0, 0.0, 0.0, 0.0};  // a + bi + cj + dk
    std::array<Vec3, 3> A{};                      // rows of the rotation y -> q̄ y q

    static AlphaSurfaceSpec make(const std::array<double, 4>& q);
    double membership(const Vec3& x, const Vec3& y) const;
    double orthogonality_defect() const;
};

struct NonAdmissibleReport {
    Vec3 y{0.0, 0.0, 1.0};
    bool monotone = true;
    int slope_sign_changes = 0;
    double min_slope = 1.0;
    double t1 = 0.0, t2 = 0.0, g1 = 0.0, g2 = 0.0;  // witness g(t1) = g(t2), t1 < t2
    double gap = 0.0;
    std::string to_json() const;
};
// g(t) = Rh(t, y) + t, whose slope is V
NonAdmissibleReport nonadmissible_probe(const HarmonicCoeffs& h, const Vec3& y, double T = 8.0, int n = 1601);

// max |∂f/∂ω̄| / (|∂f/∂ω| + 1) over the affine ratios of the disk at interior ω
double cauchy_riemann_residual(const BoundaryMap& b, cplx w, double step = 1e-3);

struct FoliationProbe {
    std::array<double, 6> target{};  // (s, t, a, b, Re ω, Im ω)
    std::array<std::array<double, 6>, 2> found{};
    std::array<double, 2> final_residual{};
    std::array<int, 2> iterations{};
    double agreement = 0.0;   // max parameter difference between the two solves (s mod 2π)
    double target_error = 0.0;
    bool converged = false;
};
FoliationProbe foliation_probe(const HarmonicCoeffs& h, const std::array<double, 6>& p, double seed_offset = 0.05);

struct DiskSummary {
    double boundary_max = 0.0;      // max P_h residual on the boundary samples
    double interior_min = 0.0;      // min residual at ω ∈ {0, 0.5 e^{ik}}
    double pi_mismatch = 0.0;       // |π(D) - (η1, η2)|, chordal
    double equivariance = 0.0;      // D(s + α) vs e^{iα}(z0, z1)
    double tail = 0.0;
};
DiskSummary summarize_disk(const HarmonicCoeffs& h, double s, double t, cplx lam, int samples = 256,
                           const SplitConfig& cfg = {});
void write_disk_csv(const BoundaryMap& b, int samples, std::ostream& os);

}  // namespace zf
