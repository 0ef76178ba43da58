#include "notchwall/paths.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "notchwall/transforms.hpp"

namespace notchwall {

double l_function(double y, double z) {
    if (std::abs(z) >= 1.0) throw DomainError("l_function: |z| must be < 1");
    return y * y / (1.0 - z * z);
}

std::array<double, 3> l_hessian(double y, double z) {
    if (std::abs(z) >= 1.0) throw DomainError("l_hessian: |z| must be < 1");
    const double q = 1.0 - z * z;
    return {2.0 / q, 4.0 * y * z / (q * q), 2.0 * y * y * (1.0 + 3.0 * z * z) / (q * q * q)};
}

namespace {

void check_sign_pattern(const AngleField& theta, double x0, const Grid& grid) {
    for (std::size_t i = 0; i < theta.size(); ++i) {
        const double x = grid.node(i);
        if (x < x0 && theta[i] > 1e-12)
            throw DomainError("partial_energies: theta must be negative left of x0");
        if (x > x0 && theta[i] < -1e-12)
            throw DomainError("partial_energies: theta must be nonnegative right of x0");
    }
}

// halves of the discrete energy split at x0 (fractional cell handled by
// sub-cell trapezoid with theta(x0) = 0)
std::pair<double, double> split_energy(const AngleField& theta, double x0,
                                       const NotchProfile& profile, const EnergyWorkspace& ws) {
    const Grid& grid = ws.grid;
    const std::size_t n = grid.n;
    const double h = grid.h;
    double left = tail_energy(theta[0], -1);
    double right = tail_energy(theta[n - 1], +1);
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double xa = grid.node(i), xb = grid.node(i + 1);
        const double slope = (theta[i + 1] - theta[i]) / h;
        const double ca = std::cos(theta[i]), cb = std::cos(theta[i + 1]);
        if (xb <= x0) {
            left += 0.5 * ws.s_mid[i] * slope * slope * h;
            left += 0.25 * h * (ws.s_node[i] * ca * ca + ws.s_node[i + 1] * cb * cb);
        } else if (xa >= x0) {
            right += 0.5 * ws.s_mid[i] * slope * slope * h;
            right += 0.25 * h * (ws.s_node[i] * ca * ca + ws.s_node[i + 1] * cb * cb);
        } else {
            const double fl = x0 - xa, fr = xb - x0;
            const double s0 = profile(x0);
            left += 0.5 * profile(0.5 * (xa + x0)) * slope * slope * fl;
            left += 0.25 * fl * (ws.s_node[i] * ca * ca + s0);  // cos^2(0) = 1 at the zero
            right += 0.5 * profile(0.5 * (x0 + xb)) * slope * slope * fr;
            right += 0.25 * fr * (s0 + ws.s_node[i + 1] * cb * cb);
        }
    }
    return {left, right};
}

}  // namespace

PartialEnergies partial_energies(const AngleField& theta, double x0, const NotchProfile& profile,
                                 const Grid& grid) {
    if (theta.size() != grid.n) throw std::invalid_argument("partial_energies: size mismatch");
    check_sign_pattern(theta, x0, grid);
    const EnergyWorkspace ws(profile, grid);
    PartialEnergies out;
    std::tie(out.e_minus, out.e_plus) = split_energy(theta, x0, profile, ws);

    // cos-space route: forget theta, keep psi = cos theta, reconstruct the
    // angle on the monotone branch and integrate the same functional
    AngleField rec(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double psi = std::clamp(std::cos(theta[i]), -1.0, 1.0);
        const double x = grid.node(i);
        const double sgn = x > x0 ? 1.0 : (x < x0 ? -1.0 : 0.0);
        rec[i] = sgn * std::acos(psi);
    }
    std::tie(out.cal_minus, out.cal_plus) = split_energy(rec, x0, profile, ws);
    return out;
}

AngleField cos_convex_path(const AngleField& theta0, double x0, double lambda, const Grid& grid) {
    if (theta0.size() != grid.n) throw std::invalid_argument("cos_convex_path: size mismatch");
    for (std::size_t i = 0; i + 1 < grid.n; ++i)
        if (theta0[i + 1] < theta0[i] - 1e-10)
            throw DomainError("cos_convex_path: theta0 must be non-decreasing");
    AngleField out(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        const double psi =
            (1.0 - lambda) * std::cos(theta0[i]) + lambda * std::cos(separatrix_theta(x - x0));
        const double sgn = x > x0 ? 1.0 : (x < x0 ? -1.0 : 0.0);
        out[i] = sgn * std::acos(std::clamp(psi, -1.0, 1.0));
    }
    return out;
}

double translated_wall_energy(double gamma, const NotchProfile& profile, const Grid& grid) {
    AngleField t(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) t[i] = separatrix_theta(grid.node(i) - gamma);
    return energy_value(t, profile, grid);
}

namespace {

void push(PathSample& p, double lambda, AngleField f, const EnergyWorkspace& ws) {
    if (!p.lambdas.empty() && std::abs(lambda - p.lambdas.back()) < 1e-15) return;
    p.energies.push_back(energy_value(f, ws));
    if (p.energies.back() > p.max_energy || p.lambdas.empty()) {
        p.max_energy = p.energies.back();
        p.max_lambda = lambda;
    }
    p.lambdas.push_back(lambda);
    p.fields.push_back(std::move(f));
}

AngleField separatrix_field(const Grid& grid, double gamma) {
    AngleField t(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) t[i] = separatrix_theta(grid.node(i) - gamma);
    return t;
}

}  // namespace

PathSample convex_path_profile(const AngleField& theta0, const NotchProfile& profile,
                               const Grid& grid, std::size_t samples) {
    if (samples < 2) throw std::invalid_argument("convex_path_profile: need >= 2 samples");
    const EnergyWorkspace ws(profile, grid);
    PathSample p;
    p.x0 = first_zero(theta0, grid);
    if (std::isnan(p.x0)) throw DomainError("convex_path_profile: endpoint has no zero");
    for (std::size_t k = 0; k < samples; ++k) {
        const double lam = double(k) / double(samples - 1);
        AngleField f = lam == 0.0 ? theta0 : cos_convex_path(theta0, p.x0, lam, grid);
        push(p, lam, std::move(f), ws);
    }
    p.margin = 2.0 - p.max_energy;
    return p;
}

PathSample composite_path(const AngleField& theta0, const AngleField& theta_s,
                          const NotchProfile& profile, const Grid& grid, std::size_t samples) {
    const EnergyWorkspace ws(profile, grid);
    PathSample p;
    const double xa = first_zero(theta0, grid);
    const double xb = first_zero(theta_s, grid);
    if (std::isnan(xa) || std::isnan(xb))
        throw DomainError("composite_path: endpoints must cross zero");
    p.x0 = xa;

    const std::size_t per = std::max<std::size_t>(2, samples / 3);
    // segment 1: P_mu(theta0), mu in [0,1] -> lambda in [0, 1/3]
    for (std::size_t k = 0; k < per; ++k) {
        const double mu = double(k) / double(per - 1);
        AngleField f = mu == 0.0 ? theta0 : cos_convex_path(theta0, xa, mu, grid);
        push(p, mu / 3.0, std::move(f), ws);
    }
    // segment 2: separatrix translated from xa to xb
    for (std::size_t k = 0; k < per; ++k) {
        const double mu = double(k) / double(per - 1);
        push(p, (1.0 + mu) / 3.0, separatrix_field(grid, xa + mu * (xb - xa)), ws);
    }
    // segment 3: P_mu(theta_s) traversed backwards
    for (std::size_t k = 0; k < per; ++k) {
        const double mu = 1.0 - double(k) / double(per - 1);
        AngleField f = mu == 0.0 ? theta_s : cos_convex_path(theta_s, xb, mu, grid);
        push(p, (3.0 - mu) / 3.0, std::move(f), ws);
    }
    p.margin = 2.0 - p.max_energy;
    return p;
}

double h1_distance(const AngleField& a, const AngleField& b, const Grid& grid) {
    if (a.size() != b.size() || a.size() != grid.n)
        throw std::invalid_argument("h1_distance: size mismatch");
    double l2 = 0.0, h1 = 0.0;
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double d = a[i] - b[i];
        l2 += grid.weight(i) * d * d;
    }
    for (std::size_t i = 0; i + 1 < grid.n; ++i) {
        const double d = (a[i + 1] - b[i + 1]) - (a[i] - b[i]);
        h1 += d * d / grid.h;
    }
    return std::sqrt(l2 + h1);
}

}  // namespace notchwall
