#include "notchwall/field.hpp"

#include <algorithm>
#include <cmath>

namespace notchwall {

MagnetizationField unlift(const AngleField& theta, const RotationAngle& phi) {
    MagnetizationField m(theta.size());
    const double c = std::cos(phi.phi), s = std::sin(phi.phi);
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double st = std::sin(theta[i]), ct = std::cos(theta[i]);
        m[i] = {st, c * ct, s * ct};
    }
    return m;
}

Lifting lift(const MagnetizationField& m, double planarity_tol) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("lift: empty field");

    // 2x2 second-moment matrix of the transverse rows (m2, m3)
    double a = 0.0, b = 0.0, d = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        a += m[i].y * m[i].y;
        b += m[i].y * m[i].z;
        d += m[i].z * m[i].z;
    }
    const double tr = a + d;
    const double disc = std::sqrt(std::max(0.0, 0.25 * (a - d) * (a - d) + b * b));
    const double lam_max = 0.5 * tr + disc;

    double phi = 0.0;
    double resid = 0.0;
    if (lam_max > 1e-30) {
        // principal direction of the rank-1 fit
        if (std::abs(b) > 1e-300)
            phi = std::atan2(lam_max - a, b);
        else
            phi = (a >= d) ? 0.0 : M_PI / 2.0;
        // residual by direct summation of the perpendicular components;
        // the eigenvalue difference 0.5 tr - disc would lose ~8 digits here
        double perp2 = 0.0;
        const double c0 = std::cos(phi), s0 = std::sin(phi);
        for (std::size_t i = 0; i < n; ++i) {
            const double p = -s0 * m[i].y + c0 * m[i].z;
            perp2 += p * p;
        }
        resid = std::sqrt(perp2 / tr);
        if (resid > planarity_tol)
            throw PlanarityError("lift: transverse components are not colinear (residual " +
                                 std::to_string(resid) + ")");
    }

    // orient the direction so the transverse amplitude is mostly positive
    double proj_sum = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        proj_sum += m[i].y * std::cos(phi) + m[i].z * std::sin(phi);
    if (proj_sum < 0.0) phi += M_PI;

    const double cphi = std::cos(phi), sphi = std::sin(phi);
    AngleField theta(n);
    double prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = m[i].y * cphi + m[i].z * sphi;
        double t = std::atan2(m[i].x, c);
        if (i > 0) {
            // continuity: choose the 2*pi branch nearest the previous node
            while (t - prev > M_PI) t -= 2.0 * M_PI;
            while (t - prev < -M_PI) t += 2.0 * M_PI;
            if (std::abs(t - prev) > M_PI / 2.0)
                throw DomainError("lift: node-to-node angle jump exceeds pi/2");
        }
        theta[i] = t;
        prev = t;
    }
    return {std::move(theta), RotationAngle(phi), resid};
}

MagnetizationField planarize(const MagnetizationField& m, double boundary_tol) {
    const std::size_t n = m.size();
    if (n == 0) throw std::invalid_argument("planarize: empty field");
    if (std::abs(m[0].x + 1.0) > boundary_tol || std::abs(m[n - 1].x - 1.0) > boundary_tol)
        throw DomainError("planarize: field must connect -e1 to +e1 across the grid");
    MagnetizationField out(n);
    for (std::size_t i = 0; i < n; ++i) {
        const double t = std::hypot(m[i].y, m[i].z);
        out[i] = Vec3{m[i].x, t, 0.0}.normalized();
    }
    return out;
}

double separatrix_tail_center(double theta_boundary, int side, double L) {
    if (std::abs(theta_boundary) >= M_PI / 2.0)
        return side > 0 ? -std::numeric_limits<double>::infinity()
                        : std::numeric_limits<double>::infinity();
    return double(side) * L - separatrix_x(theta_boundary);
}

double tail_energy(double theta_boundary, int side) {
    const double t = std::clamp(theta_boundary, -M_PI / 2.0, M_PI / 2.0);
    return side > 0 ? 1.0 - std::sin(t) : 1.0 + std::sin(t);
}

}  // namespace notchwall
