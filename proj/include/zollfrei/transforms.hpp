// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "zollfrei/harmonics.hpp"
#include "zollfrei/sphere.hpp"

namespace zf {

using SphereFn = std::function<double(const Vec3&)>;

struct TransformConfig {
    int n_phi = 6;      // circle samples for R
    int n_r = 3;        // Gauss-Legendre nodes in x = cos(theta) over [tanh t, 1]
    int n_cap_phi = 6;  // azimuthal samples for Q

    static TransformConfig for_band_limit(int L);
    void validate(int L) const;
};

// Quadrature routes (the oracle side).
double transform_R(const SphereFn& h, const DeSitterPoint& p, const TransformConfig& cfg);
double transform_Q(const SphereFn& h, const DeSitterPoint& p, const TransformConfig& cfg);
double transform_R(const HarmonicCoeffs& h, const DeSitterPoint& p);
double transform_Q(const HarmonicCoeffs& h, const DeSitterPoint& p);
double funk_R0(const HarmonicCoeffs& h, const Vec3& y);
double disk_Q0(const HarmonicCoeffs& h, const Vec3& y);

// Spectral routes: R(Y_lm)(t,.) = P_l(z) Y_lm, Q(Y_lm)(t,.) = q_l(z) Y_lm, z = tanh t.
double q_profile(int l, double z);  // q_0 = 1 - z, q_l = (P_{l-1} - P_{l+1})/(2l+1)
HarmonicCoeffs apply_R(const HarmonicCoeffs& h, double t);
HarmonicCoeffs apply_Q(const HarmonicCoeffs& h, double t);
double R_spectral(const HarmonicCoeffs& h, const DeSitterPoint& p);
double Q_spectral(const HarmonicCoeffs& h, const DeSitterPoint& p);

// Eigenvalues on degree-k harmonics, from one axis-aligned probe per degree;
// cached on first use.
double q_eigenvalue(int k);
double r_eigenvalue(int k);
double closed_form_c(int k);  // published closed form for c(k), kept for comparison only

struct QSpectrum {
    int L = 0;
    std::string normalization = "Q = (1/2pi) * cap integral";
    std::vector<double> c_Q, c_R, closed_form, ratio;  // ratio = closed_form / c_Q (NaN where undefined)

    static QSpectrum compute(int L);
    void write_csv(std::ostream& os) const;
};

HarmonicCoeffs invert_Q0_odd(const HarmonicCoeffs& g);
HarmonicCoeffs invert_R0_even(const HarmonicCoeffs& g);

struct IdentityReport {
    double dt = 0.0;
    double del_R = 0.0;  // max |d_t Rh + Q Δh|
    double del_Q = 0.0;  // max |d_t Qh + sech^2 t Rh|
    std::vector<double> sweep_dt, sweep_del_R, sweep_del_Q;
    double order_del_R = 0.0, order_del_Q = 0.0;  // NaN when the residual is at roundoff
    std::size_t n_points = 0;
};

// 4th-order central differences in t; the sweep uses coarser steps where
// truncation error dominates, to estimate the order.
IdentityReport identity_residuals(const HarmonicCoeffs& h, const std::vector<DeSitterPoint>& pts, double dt,
                                  const std::vector<double>& sweep = {0.1, 0.05, 0.025});

double d1_central4(const std::function<double(double)>& f, double x, double h);
double d2_central4(const std::function<double(double)>& f, double x, double h);

}  // namespace zf
