#pragma once

#include <array>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <vector>

#include "notchwall/grid.hpp"

namespace notchwall {

struct Vec3 {
    double x = 0.0, y = 0.0, z = 0.0;

    Vec3 operator+(const Vec3& o) const { return {x + o.x, y + o.y, z + o.z}; }
    Vec3 operator-(const Vec3& o) const { return {x - o.x, y - o.y, z - o.z}; }
    Vec3 operator*(double t) const { return {t * x, t * y, t * z}; }
    double dot(const Vec3& o) const { return x * o.x + y * o.y + z * o.z; }
    Vec3 cross(const Vec3& o) const {
        return {y * o.z - z * o.y, z * o.x - x * o.z, x * o.y - y * o.x};
    }
    double norm() const { return std::sqrt(dot(*this)); }
    Vec3 normalized() const {
        const double r = norm();
        return {x / r, y / r, z / r};
    }
};

/// Nodal lifting angle on a grid. Fields in the admissible band satisfy
/// -pi/2 <= theta_i <= pi/2; the continuation beyond the grid is the exact
/// separatrix tail matched to the boundary values.
struct AngleField {
    std::vector<double> values;

    AngleField() = default;
    explicit AngleField(std::size_t n) : values(n, 0.0) {}
    explicit AngleField(std::vector<double> v) : values(std::move(v)) {}

    std::size_t size() const { return values.size(); }
    double& operator[](std::size_t i) { return values[i]; }
    double operator[](std::size_t i) const { return values[i]; }
};

/// Nodal unit 3-vectors.
struct MagnetizationField {
    std::vector<Vec3> values;

    MagnetizationField() = default;
    explicit MagnetizationField(std::size_t n) : values(n) {}

    std::size_t size() const { return values.size(); }
    Vec3& operator[](std::size_t i) { return values[i]; }
    const Vec3& operator[](std::size_t i) const { return values[i]; }
};

/// Constant rotation about e1, reduced to [0, 2*pi).
struct RotationAngle {
    double phi = 0.0;

    RotationAngle() = default;
    explicit RotationAngle(double p) {
        phi = std::fmod(p, 2.0 * M_PI);
        if (phi < 0.0) phi += 2.0 * M_PI;
    }

    Vec3 apply(const Vec3& v) const {
        const double c = std::cos(phi), s = std::sin(phi);
        return {v.x, c * v.y - s * v.z, s * v.y + c * v.z};
    }
};

struct PlanarityError : std::runtime_error {
    using std::runtime_error::runtime_error;
};
struct DomainError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Notchless wall angle theta_*(x) = arctan(sinh x); theta_*' = cos(theta_*).
inline double separatrix_theta(double x) { return std::atan(std::sinh(x)); }
/// Inverse of the separatrix wall: x with theta_*(x) = theta, |theta| < pi/2.
inline double separatrix_x(double theta) { return std::asinh(std::tan(theta)); }

/// m_i = R_phi (sin theta_i, cos theta_i, 0)^T.
MagnetizationField unlift(const AngleField& theta, const RotationAngle& phi);

struct Lifting {
    AngleField theta;
    RotationAngle phi;
    double planarity_residual = 0.0;
};

/// Recover (theta, phi) from a planar magnetization. Throws PlanarityError if
/// the rows (m2_i, m3_i) are not colinear within `planarity_tol` (relative
/// rank-1 fit residual).
Lifting lift(const MagnetizationField& m, double planarity_tol = 1e-8);

/// Remove the transverse winding: returns (m1, sqrt(m2^2 + m3^2), 0), which
/// never increases the discrete energy. Requires m1 to connect -1 to +1
/// across the grid within `boundary_tol`.
MagnetizationField planarize(const MagnetizationField& m, double boundary_tol = 1e-3);

/// Center c of the exact separatrix tail theta_*(x - c) through the boundary
/// value: theta_*(side * L - c) = theta_boundary. Returns +/-infinity when
/// |theta_boundary| >= pi/2 (no tail needed).
double separatrix_tail_center(double theta_boundary, int side, double L);

/// Analytic energy of the separatrix tail beyond the matching point:
/// 1 - sin(theta_b) on the right, 1 + sin(theta_b) on the left. Boundary
/// values are clamped to the band so the threshold transform stays monotone.
double tail_energy(double theta_boundary, int side);

}  // namespace notchwall
