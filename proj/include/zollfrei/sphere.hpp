// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <array>
#include <cmath>
#include <complex>
#include <vector>

namespace zf {

using Vec3 = std::array<double, 3>;
using cplx = std::complex<double>;

inline double dot(const Vec3& a, const Vec3& b) { return a[0] * b[0] + a[1] * b[1] + a[2] * b[2]; }
inline Vec3 cross(const Vec3& a, const Vec3& b) {
    return {a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]};
}
inline double norm(const Vec3& a) { return std::sqrt(dot(a, a)); }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a[0] + b[0], a[1] + b[1], a[2] + b[2]}; }
inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a[0] - b[0], a[1] - b[1], a[2] - b[2]}; }
inline Vec3 operator*(double s, const Vec3& a) { return {s * a[0], s * a[1], s * a[2]}; }
inline Vec3 operator-(const Vec3& a) { return {-a[0], -a[1], -a[2]}; }

// Normalizes; throws on the zero vector.
Vec3 unit(const Vec3& v);

// (t, y) <-> x = (sinh t, cosh t * y) on the quadric -x0^2 + |x|^2 = 1
struct DeSitterPoint {
    double t = 0.0;
    Vec3 y{0.0, 0.0, 1.0};

    std::array<double, 4> ambient() const;
    static DeSitterPoint from_ambient(const std::array<double, 4>& x);
    DeSitterPoint involution() const { return {-t, -y}; }
};

// y, e1, e2 with det(e1, e2, y) = +1
struct CircleFrame {
    Vec3 y, e1, e2;
    static CircleFrame make(const Vec3& y);
};

Vec3 small_circle_point(const DeSitterPoint& p, const CircleFrame& f, double phi);

// strict: points on the boundary circle are outside
bool cap_contains(const Vec3& u, const DeSitterPoint& p);

// Gauss-Legendre in cos(theta) x uniform longitudes; n_lon even so the
// node set is closed under u -> -u.
class SphereGrid {
public:
    explicit SphereGrid(int L);

    int band_limit() const { return L_; }
    int n_lat() const { return static_cast<int>(z_.size()); }
    int n_lon() const { return n_lon_; }
    std::size_t size() const { return z_.size() * static_cast<std::size_t>(n_lon_); }

    std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * n_lon_ + j; }
    Vec3 node(std::size_t k) const;
    double weight(std::size_t k) const;
    std::size_t antipode(std::size_t k) const;
    double z(int i) const { return z_[i]; }
    double phi(int j) const;
    double lat_weight(int i) const { return w_[i]; }

private:
    int L_;
    int n_lon_;
    std::vector<double> z_, w_;
};

// nodes and weights on [-1, 1]
void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w);

double sphere_mean(const std::vector<double>& f, const SphereGrid& g);  // ∫ f dA (not divided by 4π)

struct ParityParts {
    double mean = 0.0;  // constant c, f = c + even + odd
    std::vector<double> even, odd;
};
ParityParts parity_split(const std::vector<double>& f, const SphereGrid& g);

// λ = (y2 + i y3)/(1 + y1); y = (-1,0,0) is the point at infinity
struct ExtComplex {
    cplx v{0.0, 0.0};
    bool inf = false;
};
ExtComplex stereographic(const Vec3& y);
Vec3 inverse_stereographic(const ExtComplex& l);
Vec3 inverse_stereographic(cplx l);
// ∂u/∂a, ∂u/∂b for λ = a + ib
void stereographic_jacobian(cplx l, Vec3& du_da, Vec3& du_db);

}  // namespace zf
