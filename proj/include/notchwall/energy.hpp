#pragma once

#include <vector>

#include "notchwall/field.hpp"
#include "notchwall/grid.hpp"
#include "notchwall/profile.hpp"

namespace notchwall {

/// Profile samples shared by the energy, solver and spectral routines.
struct EnergyWorkspace {
    Grid grid;
    std::vector<double> s_node;  // s at nodes
    std::vector<double> s_mid;   // s at cell midpoints

    EnergyWorkspace(const NotchProfile& profile, const Grid& g);
};

struct EnergyReport {
    double exchange = 0.0;
    double anisotropy = 0.0;
    double tail_energy = 0.0;
    double total = 0.0;
    double grad_norm = 0.0;
    double defect_min = 0.0;
    double defect_max = 0.0;
};

/// Discrete E_s(theta): flux-form exchange, trapezoid anisotropy, analytic
/// separatrix tails beyond +/-L. Scalar value only.
double energy_value(const AngleField& theta, const EnergyWorkspace& ws);
double energy_value(const AngleField& theta, const NotchProfile& profile, const Grid& grid);

/// Full report including the weighted gradient norm and defect extrema.
EnergyReport energy(const AngleField& theta, const NotchProfile& profile, const Grid& grid);
EnergyReport energy(const AngleField& theta, const EnergyWorkspace& ws);

/// Raw partial derivatives dE/dtheta_i of the discrete energy (tails
/// included); the weighted-L2 gradient is raw_i / (s_i w_i).
std::vector<double> raw_gradient(const AngleField& theta, const EnergyWorkspace& ws);

/// Gradient in the weighted-L2 metric: the directional derivative of the
/// discrete energy along h equals <gradient, h>_s exactly.
std::vector<double> gradient(const AngleField& theta, const NotchProfile& profile, const Grid& grid);
std::vector<double> gradient(const AngleField& theta, const EnergyWorkspace& ws);

double gradient_norm(const AngleField& theta, const EnergyWorkspace& ws);

/// <u, v>_s = int u v s dx (trapezoid).
double weighted_inner(const std::vector<double>& u, const std::vector<double>& v,
                      const NotchProfile& profile, const Grid& grid);
double weighted_inner(const std::vector<double>& u, const std::vector<double>& v,
                      const EnergyWorkspace& ws);

/// First-integral defect d_i = (theta')_i^2 - cos^2 theta_i with centered
/// interior derivatives and one-sided ends.
std::vector<double> pointwise_defect(const AngleField& theta, const Grid& grid);

/// Discrete energy of a magnetization field on the truncated domain
/// (no tail terms; ends are meant to be pinned at +/-e1).
double energy_m(const MagnetizationField& m, const EnergyWorkspace& ws);
double energy_m(const MagnetizationField& m, const NotchProfile& profile, const Grid& grid);

}  // namespace notchwall
