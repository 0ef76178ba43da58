#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "notchwall/energy.hpp"
#include "notchwall/field.hpp"
#include "notchwall/grid.hpp"
#include "notchwall/profile.hpp"

namespace notchwall {

struct SolveOptions {
    std::size_t max_iters = 500;
    double grad_tol = 1e-8;       // weighted-L2 gradient norm
    double step0 = 1.0;           // initial line-search step
    double armijo = 1e-4;         // sufficient-decrease constant
    double shrink = 0.5;          // backtracking factor
    std::size_t transform_every = 10;
    std::uint64_t seed = 0;
    bool use_newton = true;       // damped Newton; plain gradient descent otherwise
};

struct SolveResult {
    AngleField theta;
    EnergyReport report;
    std::size_t iterations = 0;
    bool converged = false;
    bool monotone = false;
    double odd_defect = 0.0;  // max |theta(x) + theta(-x)|
    std::vector<double> energy_trace;
};

/// Minimize the discrete wall energy from `init` (thresholded; replaced by
/// the separatrix seeded at the notch center if it has no sign change).
/// Damped Newton with a Levenberg shift and Armijo backtracking; the
/// energy-nonincreasing transform chain runs every `transform_every` steps.
SolveResult minimize(const NotchProfile& profile, const Grid& grid, const AngleField& init,
                     const SolveOptions& opts = {});

/// Convenience: minimize from the default separatrix seed.
SolveResult minimize(const NotchProfile& profile, const Grid& grid,
                     const SolveOptions& opts = {});

struct ShootResult {
    AngleField theta;
    double slope_right = 0.0;  // converged shooting slope, right half
    double slope_left = 0.0;   // converged shooting slope, left half
    std::size_t bisections = 0;
};

/// Solve the wall ODE in the y-variable by shooting from the prescribed zero
/// x0: RK4 integration each direction, bisection on the initial slope in
/// [1e-6, 10] classifying overshoot past pi/2 + 1e-3 against fall-back
/// (slope <= 0 short of the band edge). Throws std::runtime_error when no
/// bracket exists.
ShootResult shoot(const NotchProfile& profile, const Grid& grid, double x0,
                  double slope0_hint = 1.0);

struct UniquenessReport {
    std::string verdict;  // "unique" | "translation_family" | "multiple" | "non_converged"
    bool all_converged = false;
    double max_pairwise = 0.0;       // sup-norm over all pairs
    std::size_t clusters = 0;        // 1e-4 sup-norm clustering
    std::vector<AngleField> walls;
    std::vector<double> zeros;       // interpolated zero of each wall
};

/// Minimize from n_starts randomized seeds (random crossing in
/// [-L+2, L-2] plus smooth perturbations) and cluster the limits.
UniquenessReport multi_start_uniqueness(const NotchProfile& profile, const Grid& grid,
                                        std::size_t n_starts, std::uint64_t seed,
                                        const SolveOptions& opts = {});

/// Per-node margin of the decay bound:
/// pi * exp(-y(|x_i|)) - | |theta_i| - pi/2 |.
std::vector<double> decay_check(const AngleField& theta, const NotchProfile& profile,
                                const Grid& grid);

}  // namespace notchwall
