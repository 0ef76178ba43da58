#pragma once

#include <array>
#include <vector>

#include "notchwall/energy.hpp"
#include "notchwall/field.hpp"
#include "notchwall/grid.hpp"
#include "notchwall/profile.hpp"

namespace notchwall {

/// L(y, z) = y^2 / (1 - z^2); jointly convex for |z| < 1 (DomainError at
/// |z| >= 1). With y = psi', z = psi this is theta'^2 expressed through
/// psi = cos(theta).
double l_function(double y, double z);

/// Hessian entries (L_yy, L_yz, L_zz); det = 4 y^2 / (1 - z^2)^3.
std::array<double, 3> l_hessian(double y, double z);

struct PartialEnergies {
    double e_minus = 0.0, e_plus = 0.0;      // halves of E_s split at x0
    double cal_minus = 0.0, cal_plus = 0.0;  // same halves computed from cos(theta) alone
};

/// Split the wall energy at the (interpolated) zero x0. e_* integrates the
/// theta form, cal_* evaluates the cos-space functional
/// (1/2) int (L(psi', psi) + psi^2) s  by reconstructing the angle as
/// sgn(x - x0) arccos(psi) — exact on the monotone branch, so both routes
/// agree to roundoff. DomainError when theta violates the sign pattern
/// (negative left of x0, nonnegative right).
PartialEnergies partial_energies(const AngleField& theta, double x0, const NotchProfile& profile,
                                 const Grid& grid);

/// P_lambda(theta0)(x) = sgn(x - x0) arccos((1-lambda) cos theta0 + lambda cos theta_*(x - x0)).
/// Arguments clamped to [-1, 1]; DomainError for non-monotone theta0.
AngleField cos_convex_path(const AngleField& theta0, double x0, double lambda, const Grid& grid);

/// E_s(theta_*(. - gamma)) on the grid (exact tails).
double translated_wall_energy(double gamma, const NotchProfile& profile, const Grid& grid);

struct PathSample {
    std::vector<double> lambdas;
    std::vector<AngleField> fields;
    std::vector<double> energies;
    double max_energy = 0.0;
    double max_lambda = 0.0;
    double margin = 0.0;  // 2 - max_energy (distance below the notchless level)
    double x0 = 0.0;      // zero of the first endpoint
};

/// Energies of P_lambda(theta0) on a uniform lambda grid; endpoints are the
/// exact input field and the translated separatrix.
PathSample convex_path_profile(const AngleField& theta0, const NotchProfile& profile,
                               const Grid& grid, std::size_t samples = 101);

/// Three-segment mountain-pass path: P_{3l}(theta0) -> separatrix translation
/// from x0(theta0) to x0(theta_s) -> P_{3-3l}(theta_s). Per-segment sampling
/// includes the exact junctions.
PathSample composite_path(const AngleField& theta0, const AngleField& theta_s,
                          const NotchProfile& profile, const Grid& grid,
                          std::size_t samples = 102);

/// Discrete H1 distance sqrt(||a-b||_L2^2 + |a-b|_H1^2) (unweighted).
double h1_distance(const AngleField& a, const AngleField& b, const Grid& grid);

}  // namespace notchwall
