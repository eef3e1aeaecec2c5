// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <vector>

#include "zollfrei/harmonics.hpp"

namespace zf {

enum class Parity { none, even, odd };
const char* to_string(Parity p);

std::vector<double> symmetric_tgrid(double T, int n);

// Per-slice harmonic coefficients on a uniform t-grid.
struct FieldOnDeSitter {
    std::vector<double> t;
    int L = 0;
    std::vector<HarmonicCoeffs> slice;
    Parity parity = Parity::none;

    static FieldOnDeSitter sample(const std::vector<double>& t, int L, Parity p,
                                  const std::function<HarmonicCoeffs(double)>& at);

    double dt() const;
    std::size_t index_of(double tau) const;  // exact node, else precondition error
    HarmonicCoeffs d_dt(std::size_t i) const;  // 4th-order central; needs 2 neighbours
    double value(std::size_t i, const Vec3& y) const { return synthesize(slice[i], y); }
    // max over t-slices of |F(-t,-y) -/+ F(t,y)| (coefficient sup), by parity tag
    double parity_defect() const;
    void write_csv(std::ostream& os) const;
};

struct ResidualReport {
    std::vector<double> t;       // interior slices
    std::vector<double> slice_max;
    double max_norm = 0.0;
};

// (-d_tt - 2 tanh t d_t + sech^2 t Δ) V
ResidualReport box_residual(const FieldOnDeSitter& V);
// (-d_tt + sech^2 t Δ) f
ResidualReport L_residual(const FieldOnDeSitter& f);

struct WaveSolution {
    FieldOnDeSitter V;  // Qh, odd
    FieldOnDeSitter f;  // Rh, even
    double potential_consistency = 0.0;  // max |Qh - d_t R h~| with h = -Δh~, over the grid
};
WaveSolution solve_from_generator(const HarmonicCoeffs& h, const std::vector<double>& t);

double invariant_I(const FieldOnDeSitter& V, double tau);
double invariant_E(const FieldOnDeSitter& V, const Vec3& y, double tau);

struct ConservedReport {
    std::vector<double> tau;
    std::vector<double> I;
    std::vector<Vec3> ys;
    std::vector<std::vector<double>> E;  // [tau][y]
    double I_spread = 0.0, E_spread = 0.0, E_max = 0.0;
    std::string to_json() const;
};
ConservedReport conserved_scan(const FieldOnDeSitter& V, const std::vector<double>& taus, const std::vector<Vec3>& ys);

HarmonicCoeffs reconstruct_generator(const HarmonicCoeffs& psi, const HarmonicCoeffs& xi);

// sup-norm of a band-limited function, sampled on a grid of twice the band limit
double sup_norm(const HarmonicCoeffs& h);

}  // namespace zf
