// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <vector>

#include "zollfrei/sphere.hpp"

namespace zf {

double legendre_P(int l, double z);
double legendre_Z(int l, double z);  // dP_l/dz
// P[0..L], Z[0..L] at one z; either pointer may be null
void legendre_all(int L, double z, double* P, double* Z);

struct LegendreTable {
    int L = 0;
    std::vector<double> z;
    std::vector<double> P, Z;  // row-major [iz][l]

    static LegendreTable build(int L, const std::vector<double>& zs);
    double p(std::size_t iz, int l) const { return P[iz * (L + 1) + l]; }
    double dz(std::size_t iz, int l) const { return Z[iz * (L + 1) + l]; }
    double recurrence_residual() const;
};

inline int lm_index(int l, int m) { return l * l + l + m; }
inline int n_coeffs(int L) { return (L + 1) * (L + 1); }

struct HarmonicCoeffs {
    int L = 0;
    std::vector<double> c;

    HarmonicCoeffs() : c(1, 0.0) {}
    explicit HarmonicCoeffs(int L_) : L(L_), c(n_coeffs(L_), 0.0) {}

    double& operator()(int l, int m) { return c[lm_index(l, m)]; }
    double operator()(int l, int m) const { return c[lm_index(l, m)]; }
    double get(int l, int m) const { return l <= L ? c[lm_index(l, m)] : 0.0; }

    HarmonicCoeffs resized(int L2) const;
    double max_abs() const;
    bool is_zero() const { return max_abs() == 0.0; }
};

HarmonicCoeffs operator+(const HarmonicCoeffs& a, const HarmonicCoeffs& b);
HarmonicCoeffs operator-(const HarmonicCoeffs& a, const HarmonicCoeffs& b);
HarmonicCoeffs operator*(double s, const HarmonicCoeffs& a);
double max_abs_diff(const HarmonicCoeffs& a, const HarmonicCoeffs& b);

// Real orthonormal harmonics, z-axis pole, no Condon-Shortley phase.
// Written through the polynomial extension N p_l^m(z) Re/Im (x+iy)^m so the
// Cartesian gradient G is regular at the poles.
void ylm_all(int L, const Vec3& u, double* Y);
void ylm_all_grad(int L, const Vec3& u, double* Y, Vec3* G);
double ylm(int l, int m, const Vec3& u);

double synthesize(const HarmonicCoeffs& h, const Vec3& u);
// value and Cartesian gradient of the polynomial extension
double synthesize_grad(const HarmonicCoeffs& h, const Vec3& u, Vec3& grad);

std::vector<double> sht_inverse(const HarmonicCoeffs& h, const SphereGrid& g);
HarmonicCoeffs sht_forward(const std::vector<double>& f, const SphereGrid& g, int L);

HarmonicCoeffs laplacian_spectral(const HarmonicCoeffs& h);
HarmonicCoeffs inverse_laplacian(const HarmonicCoeffs& h);  // drops the l = 0 mode
HarmonicCoeffs antipodal(const HarmonicCoeffs& h);           // h∘α: (-1)^l
HarmonicCoeffs even_part(const HarmonicCoeffs& h, bool keep_mean);
HarmonicCoeffs odd_part(const HarmonicCoeffs& h);

// Active rotation: coefficients of h∘Rᵀ (so that (ρh)(Ru) = h(u)).
// Done by resampling; exact for band-limited h.
HarmonicCoeffs rotate(const HarmonicCoeffs& h, const std::array<Vec3, 3>& R);

double coeff_norm(const HarmonicCoeffs& h);  // l2 of coefficients

// degree-1 coefficients of u -> v·u
HarmonicCoeffs linear_function(const Vec3& v);

}  // namespace zf
