// SPDX-License-Identifier: Apache-2.0
#include "zollfrei/twistor.hpp"

#include <Eigen/Dense>
#include <unsupported/Eigen/FFT>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "json.hpp"
#include "zollfrei/error.hpp"
#include "zollfrei/monopole.hpp"
#include "zollfrei/transforms.hpp"

namespace zf {

namespace {
constexpr double kPi = std::numbers::pi;
constexpr cplx I{0.0, 1.0};
}  // namespace

// ---------------------------------------------------------------- projective points

ProjectivePoint ProjectivePoint::from(const std::array<cplx, 4>& v) {
    double n = 0.0;
    for (const auto& x : v) n += std::norm(x);
    n = std::sqrt(n);
    require(n > 0.0 && std::isfinite(n), "projective point: zero or non-finite vector");
    ProjectivePoint p;
    for (int k = 0; k < 4; ++k) p.z[k] = v[k] / n;
    for (int k = 0; k < 4; ++k) {
        if (std::abs(p.z[k]) > 1e-15) {
            const cplx ph = std::abs(p.z[k]) / p.z[k];
            for (auto& x : p.z) x *= ph;
            break;
        }
    }
    return p;
}

int ProjectivePoint::pivot() const {
    int j = 0;
    for (int k = 1; k < 4; ++k)
        if (std::abs(z[k]) > std::abs(z[j])) j = k;
    return j;
}

std::array<cplx, 3> ProjectivePoint::affine(int j) const {
    std::array<cplx, 3> r;
    int n = 0;
    for (int k = 0; k < 4; ++k)
        if (k != j) r[n++] = z[k] / z[j];
    return r;
}

double projective_distance(const ProjectivePoint& a, const ProjectivePoint& b) {
    cplx ip = 0.0;
    for (int k = 0; k < 4; ++k) ip += std::conj(b.z[k]) * a.z[k];
    const cplx ph = std::abs(ip) > 0.0 ? ip / std::abs(ip) : cplx(1.0);
    double d = 0.0;
    for (int k = 0; k < 4; ++k) d += std::norm(a.z[k] - ph * b.z[k]);
    return std::sqrt(d);
}

ExtComplex Hom::value() const {
    if (std::abs(den) <= 1e-300 * std::max(std::abs(num), 1e-300)) return {cplx(0.0), true};
    return {num / den, false};
}

Vec3 sphere_point(const Hom& p) {
    const double n2 = std::norm(p.num), d2 = std::norm(p.den), s = n2 + d2;
    require(s > 0.0, "sphere_point: [0:0]");
    const cplx w = 2.0 * p.num * std::conj(p.den) / s;
    return {(d2 - n2) / s, w.real(), w.imag()};
}

EtaPhi eta_phi(double t, cplx lam, cplx w) {
    const double et = std::exp(t);
    const cplx lb = std::conj(lam);
    EtaPhi r;
    r.eta1 = {-w + lam * et, lb * w + et};
    r.eta2 = {lam + et * w, -1.0 + lb * et * w};
    r.Phi = {-I * (lb * w + et), lam + et * w};
    return r;
}

// ---------------------------------------------------------------- circle Fourier split

cplx BoundaryMap::Hplus(cplx w) const {
    cplx acc = 0.0;
    for (int k = K; k >= 1; --k) acc = (acc + coeff(k)) * w;
    return acc;
}

cplx BoundaryMap::Hminus(cplx w) const {
    const cplx wi = 1.0 / w;
    cplx acc = 0.0;
    for (int k = K; k >= 1; --k) acc = (acc + coeff(-k)) * wi;
    return acc;
}

void SplitConfig::resolve(int L) {
    if (K <= 0) K = 4 * L + 8;
    if (N <= 0) N = 4 * K;
    require(N >= 2 * K + 2, "fourier_split: need N >= 2K + 2 circle samples");
}

BoundaryMap fourier_split(const HarmonicCoeffs& h, double s, double t, cplx lam, SplitConfig cfg) {
    cfg.resolve(h.L);
    BoundaryMap b;
    b.s = s;
    b.t = t;
    b.lam = lam;
    b.K = cfg.K;
    b.N = cfg.N;
    const int N = cfg.N;
    std::vector<cplx> H(N), F;
    for (int j = 0; j < N; ++j) {
        const cplx w = std::polar(1.0, 2.0 * kPi * j / N);
        H[j] = synthesize(h, sphere_point(eta_phi(t, lam, w).eta1));
    }
    Eigen::FFT<double> fft;
    fft.fwd(F, H);
    auto at = [&](int k) { return F[((k % N) + N) % N] / double(N); };
    b.Hk.resize(2 * b.K + 1);
    double total = 0.0, tail = 0.0;
    for (int k = -N / 2; k < N / 2; ++k) {
        const double e = std::norm(at(k));
        total += e;
        if (std::abs(k) > b.K) tail += e;
    }
    for (int k = -b.K; k <= b.K; ++k) b.Hk[k + b.K] = at(k);
    for (int k = 0; k <= b.K; ++k) b.reality = std::max(b.reality, std::abs(at(-k) - std::conj(at(k))));
    b.tail = total > 0.0 ? std::sqrt(tail / total) : 0.0;
    if (b.tail > cfg.tail_tol)
        fail(Status::precondition, "fourier_split: tail energy " + std::to_string(b.tail) + " above tolerance; K too small");
    return b;
}

// ---------------------------------------------------------------- disks

namespace {

std::array<cplx, 4> disk_raw(double s, double t, cplx lam, cplx G, cplx w) {
    const double et = std::exp(t);
    const cplx lb = std::conj(lam), e = std::exp(G + I * s);
    return {-I * e * (lb * w + et), -I * e * (-w + lam * et), -1.0 + lb * et * w, lam + et * w};
}

}  // namespace

ProjectivePoint disk_map(const BoundaryMap& b, cplx w) {
    return ProjectivePoint::from(disk_raw(b.s, b.t, b.lam, b.G(w), w));
}

ProjectivePoint standard_fibration(double s, double t, cplx lam, cplx w) {
    // [e^{is}Φ : e^{is}Φη1 : η2^{-1} : 1] cleared of denominators
    const EtaPhi ep = eta_phi(t, lam, w);
    const cplx e = std::exp(I * s);
    return ProjectivePoint::from({e * ep.Phi.num, e * ep.Phi.num * ep.eta1.num / ep.eta1.den, ep.eta2.den, ep.eta2.num});
}

namespace {

void require_off_lines(const ProjectivePoint& z, const char* who) {
    const double tol = 1e-14;
    if (std::abs(z.z[2]) < tol && std::abs(z.z[3]) < tol) fail(Status::precondition, std::string(who) + ": point lies on L+");
    if (std::abs(z.z[0]) < tol && std::abs(z.z[1]) < tol) fail(Status::precondition, std::string(who) + ": point lies on L-");
}

}  // namespace

std::array<ExtComplex, 2> pi_projection(const ProjectivePoint& z) {
    require_off_lines(z, "pi_projection");
    return {Hom{z.z[1], z.z[0]}.value(), Hom{z.z[3], z.z[2]}.value()};
}

Membership ph_membership(const ProjectivePoint& z, const HarmonicCoeffs& h) {
    require_off_lines(z, "ph_membership");
    const auto& v = z.z;  // unit norm already
    const double hv = synthesize(h, sphere_point(Hom{v[1], v[0]}));
    Membership m;
    m.r1 = std::abs(std::conj(v[0]) * v[2] - std::conj(v[1]) * v[3]);
    m.r2 = std::abs(std::abs(v[3]) - std::abs(v[0]) * std::exp(-hv));
    return m;
}

ProjectivePoint special_disk(const HarmonicCoeffs& h, Pole pole, cplx lam, cplx w) {
    if (pole == Pole::minus) {
        require(std::abs(lam) > 0.0, "special_disk: minus pole needs lambda != 0");
        const cplx p = -1.0 / std::conj(lam);
        const double e = std::exp(synthesize(h, inverse_stereographic(p)));
        return ProjectivePoint::from({e * w, e * w * p, -1.0 / lam, 1.0});
    }
    const double e = std::exp(synthesize(h, inverse_stereographic(lam)));
    return ProjectivePoint::from({e, e * lam, w * std::conj(lam), w});
}

int special_disk_line_hits(const HarmonicCoeffs& h, Pole pole, cplx lam, int samples) {
    require(samples >= 8, "special_disk_line_hits: too few samples");
    // unnormalized coordinate that vanishes on the line: z0 (minus) or z3 (plus); take its
    // ratio to a coordinate that never vanishes on the disk so the projective scale drops out
    auto vanishing = [&](cplx w) {
        const ProjectivePoint p = special_disk(h, pole, lam, w);
        return pole == Pole::minus ? p.z[0] / p.z[3] : p.z[3] / p.z[0];
    };
    double turn = 0.0;
    cplx prev = vanishing(1.0);
    for (int k = 1; k <= samples; ++k) {
        const cplx cur = vanishing(std::polar(1.0, 2.0 * kPi * k / samples));
        turn += std::arg(cur / prev);
        prev = cur;
    }
    return static_cast<int>(std::lround(turn / (2.0 * kPi)));
}

// ---------------------------------------------------------------- α-surfaces

AlphaSurfaceSpec AlphaSurfaceSpec::make(const std::array<double, 4>& q) {
    const double n = std::sqrt(q[0] * q[0] + q[1] * q[1] + q[2] * q[2] + q[3] * q[3]);
    require(std::abs(n - 1.0) < 1e-12, "alpha_surface: quaternion is not a unit");
    AlphaSurfaceSpec s;
    s.q = q;
    const double a = q[0], b = q[1], c = q[2], d = q[3];
    s.A[0] = {a * a + b * b - c * c - d * d, 2 * (a * d + b * c), -2 * (a * c - b * d)};
    s.A[1] = {-2 * (a * d - b * c), a * a - b * b + c * c - d * d, 2 * (a * b + c * d)};
    s.A[2] = {2 * (a * c + b * d), -2 * (a * b - c * d), a * a - b * b - c * c + d * d};
    return s;
}

double AlphaSurfaceSpec::membership(const Vec3& x, const Vec3& y) const {
    return norm(x - Vec3{dot(A[0], y), dot(A[1], y), dot(A[2], y)});
}

double AlphaSurfaceSpec::orthogonality_defect() const {
    double m = 0.0;
    for (int i = 0; i < 3; ++i)
        for (int j = 0; j < 3; ++j) {
            double s = 0.0;
            for (int k = 0; k < 3; ++k) s += A[k][i] * A[k][j];
            m = std::max(m, std::abs(s - (i == j ? 1.0 : 0.0)));
        }
    return m;
}

// ---------------------------------------------------------------- non-admissibility

NonAdmissibleReport nonadmissible_probe(const HarmonicCoeffs& h, const Vec3& y, double T, int n) {
    require(std::abs(h.c[0]) <= 1e-10, "nonadmissible_probe: generator must have zero mean");
    require(n >= 3 && T > 0.0, "nonadmissible_probe: bad t-grid");
    const Monopole m = Monopole::from_generator(h);
    auto g = [&](double t) { return R_spectral(h, DeSitterPoint{t, y}) + t; };
    auto slope = [&](double t) { return monopole_V(m, t, y); };
    NonAdmissibleReport r;
    r.y = y;
    std::vector<double> ts(n), sl(n);
    for (int i = 0; i < n; ++i) {
        ts[i] = -T + 2.0 * T * i / (n - 1);
        sl[i] = slope(ts[i]);
        r.min_slope = std::min(r.min_slope, sl[i]);
    }
    int first_down = -1, first_up = -1;
    for (int i = 1; i < n; ++i) {
        if ((sl[i - 1] > 0.0) != (sl[i] > 0.0)) {
            ++r.slope_sign_changes;
            if (sl[i] <= 0.0 && first_down < 0) first_down = i;
            if (sl[i] > 0.0 && first_down >= 0 && first_up < 0) first_up = i;
        }
    }
    r.monotone = r.min_slope > 0.0;
    if (r.monotone || first_down < 0) return r;

    auto bisect = [](auto&& f, double a, double b) {
        double fa = f(a);
        for (int k = 0; k < 200 && b - a > 1e-15 * std::max(1.0, std::abs(a)); ++k) {
            const double c = 0.5 * (a + b), fc = f(c);
            if ((fc > 0.0) == (fa > 0.0)) { a = c; fa = fc; } else b = c;
        }
        return 0.5 * (a + b);
    };
    // local max of g where the slope turns negative, local min where it turns back
    const double ta = bisect(slope, ts[first_down - 1], ts[first_down]);
    const double tb = first_up > 0 ? bisect(slope, ts[first_up - 1], ts[first_up]) : T;
    const double level = 0.5 * (g(ta) + g(tb));
    double lo = ta - 1.0;
    while (g(lo) > level) lo -= 1.0;
    r.t1 = bisect([&](double t) { return g(t) - level; }, lo, ta);
    r.t2 = bisect([&](double t) { return g(t) - level; }, ta, tb);
    r.g1 = g(r.t1);
    r.g2 = g(r.t2);
    r.gap = std::abs(r.g1 - r.g2);
    return r;
}

std::string NonAdmissibleReport::to_json() const {
    nlohmann::json j;
    j["y"] = {y[0], y[1], y[2]};
    j["monotone"] = monotone;
    j["slope_sign_changes"] = slope_sign_changes;
    j["min_slope"] = min_slope;
    if (!monotone) j["witness"] = {{"t1", t1}, {"t2", t2}, {"g1", g1}, {"g2", g2}, {"gap", gap}};
    return j.dump(2);
}

// ---------------------------------------------------------------- holomorphy and local inversion

double cauchy_riemann_residual(const BoundaryMap& b, cplx w, double step) {
    const int j = disk_map(b, w).pivot();
    auto ratios = [&](cplx x) { return disk_map(b, x).affine(j); };
    const std::array<double, 4> off{-2.0, -1.0, 1.0, 2.0}, wt{1.0, -8.0, 8.0, -1.0};
    std::array<cplx, 3> dx{}, dy{};
    for (int k = 0; k < 4; ++k) {
        const auto fx = ratios(w + off[k] * step), fy = ratios(w + I * (off[k] * step));
        for (int c = 0; c < 3; ++c) {
            dx[c] += wt[k] * fx[c];
            dy[c] += wt[k] * fy[c];
        }
    }
    double r = 0.0;
    for (int c = 0; c < 3; ++c) {
        dx[c] /= 12.0 * step;
        dy[c] /= 12.0 * step;
        const cplx dbar = 0.5 * (dx[c] + I * dy[c]), dw = 0.5 * (dx[c] - I * dy[c]);
        r = std::max(r, std::abs(dbar) / (std::abs(dw) + 1.0));
    }
    return r;
}

FoliationProbe foliation_probe(const HarmonicCoeffs& h, const std::array<double, 6>& p, double seed_offset) {
    FoliationProbe fp;
    fp.target = p;
    auto point = [&](const std::array<double, 6>& q) {
        const BoundaryMap b = fourier_split(h, q[0], q[1], cplx(q[2], q[3]));
        return disk_map(b, cplx(q[4], q[5]));
    };
    const ProjectivePoint zt = point(p);
    const int j = zt.pivot();
    const auto at = zt.affine(j);
    auto F = [&](const std::array<double, 6>& q) {
        const auto a = point(q).affine(j);
        Eigen::Matrix<double, 6, 1> r;
        for (int c = 0; c < 3; ++c) {
            r(2 * c) = (a[c] - at[c]).real();
            r(2 * c + 1) = (a[c] - at[c]).imag();
        }
        return r;
    };
    const std::array<std::array<double, 6>, 2> dirs{{{1, -1, 1, -1, 1, -1}, {-1, 1, 1, 1, -1, 1}}};
    for (int seed = 0; seed < 2; ++seed) {
        std::array<double, 6> q = p;
        for (int k = 0; k < 6; ++k) q[k] += seed_offset * dirs[seed][k] * (k >= 4 ? 0.5 : 1.0);
        Eigen::Matrix<double, 6, 1> r = F(q);
        int it = 0;
        for (; it < 60 && r.norm() > 1e-14; ++it) {
            Eigen::Matrix<double, 6, 6> J;
            const double hs = 1e-7;
            for (int k = 0; k < 6; ++k) {
                auto qp = q, qm = q;
                qp[k] += hs;
                qm[k] -= hs;
                J.col(k) = (F(qp) - F(qm)) / (2.0 * hs);
            }
            const Eigen::Matrix<double, 6, 1> dq = J.colPivHouseholderQr().solve(-r);
            double a = 1.0;
            for (int back = 0; back < 30; ++back, a *= 0.5) {
                auto qn = q;
                for (int k = 0; k < 6; ++k) qn[k] += a * dq(k);
                if (std::hypot(qn[4], qn[5]) >= 1.0) continue;  // stay inside the disk
                const auto rn = F(qn);
                if (rn.norm() < r.norm()) {
                    q = qn;
                    r = rn;
                    break;
                }
            }
            if (a < 1e-8) break;
        }
        q[0] = p[0] + std::remainder(q[0] - p[0], 2.0 * kPi);
        fp.found[seed] = q;
        fp.final_residual[seed] = r.norm();
        fp.iterations[seed] = it;
    }
    for (int k = 0; k < 6; ++k) {
        fp.agreement = std::max(fp.agreement, std::abs(fp.found[0][k] - fp.found[1][k]));
        fp.target_error = std::max(fp.target_error, std::abs(fp.found[0][k] - p[k]));
    }
    fp.converged = fp.final_residual[0] < 1e-10 && fp.final_residual[1] < 1e-10;
    return fp;
}

// ---------------------------------------------------------------- summaries and dumps

DiskSummary summarize_disk(const HarmonicCoeffs& h, double s, double t, cplx lam, int samples, const SplitConfig& cfg) {
    const BoundaryMap b = fourier_split(h, s, t, lam, cfg);
    DiskSummary d;
    d.tail = b.tail;
    const double alpha = 0.7;
    BoundaryMap shifted = b;
    shifted.s += alpha;
    for (int k = 0; k < samples; ++k) {
        const cplx w = std::polar(1.0, 2.0 * kPi * k / samples);
        const ProjectivePoint z = disk_map(b, w);
        d.boundary_max = std::max(d.boundary_max, ph_membership(z, h).max());
        const auto pr = pi_projection(z);
        const EtaPhi ep = eta_phi(t, lam, w);
        const Hom got1 = pr[0].inf ? Hom{1.0, 0.0} : Hom{pr[0].v, 1.0};
        const Hom got2 = pr[1].inf ? Hom{1.0, 0.0} : Hom{pr[1].v, 1.0};
        d.pi_mismatch = std::max({d.pi_mismatch, norm(sphere_point(got1) - sphere_point(ep.eta1)),
                                  norm(sphere_point(got2) - sphere_point(ep.eta2))});
        auto v = z.z;
        v[0] *= std::exp(I * alpha);
        v[1] *= std::exp(I * alpha);
        d.equivariance = std::max(d.equivariance, projective_distance(disk_map(shifted, w), ProjectivePoint::from(v)));
    }
    d.interior_min = ph_membership(disk_map(b, 0.0), h).max();
    for (int k = 0; k < 8; ++k)
        d.interior_min = std::min(d.interior_min, ph_membership(disk_map(b, std::polar(0.5, 2.0 * kPi * k / 8)), h).max());
    return d;
}

void write_disk_csv(const BoundaryMap& b, int samples, std::ostream& os) {
    os << "k,theta,z0_re,z0_im,z1_re,z1_im,z2_re,z2_im,z3_re,z3_im,eta1_re,eta1_im,eta2_re,eta2_im\n";
    os.precision(17);
    for (int k = 0; k < samples; ++k) {
        const double th = 2.0 * kPi * k / samples;
        const ProjectivePoint z = disk_map(b, std::polar(1.0, th));
        os << k << ',' << th;
        for (const auto& c : z.z) os << ',' << c.real() << ',' << c.imag();
        const EtaPhi ep = eta_phi(b.t, b.lam, std::polar(1.0, th));
        for (const Hom& e : {ep.eta1, ep.eta2}) {
            const ExtComplex v = e.value();
            if (v.inf) os << ",inf,inf";
            else os << ',' << v.v.real() << ',' << v.v.imag();
        }
        os << '\n';
    }
}

}  // namespace zf
