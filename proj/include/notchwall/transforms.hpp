#pragma once

#include <string>
#include <vector>

#include "notchwall/energy.hpp"
#include "notchwall/field.hpp"
#include "notchwall/grid.hpp"
#include "notchwall/profile.hpp"

namespace notchwall {

struct TransformReport {
    std::string name;
    double energy_before = 0.0;
    double energy_after = 0.0;
    bool changed = false;
    double rho = 0.0;  // interpolated first-zero location (NaN when undefined)
};

struct TransformResult {
    AngleField theta;
    TransformReport report;
};

/// Interpolated location of the first sign change theta < 0 -> theta >= 0.
/// Returns NaN when theta[0] >= 0 or no node is nonnegative.
double first_zero(const AngleField& theta, const Grid& grid);

/// Per-node clamp to [-pi/2, pi/2]. Never increases the discrete energy.
TransformResult threshold(const AngleField& theta, const EnergyWorkspace& ws);

/// Keep theta left of its first zero, take |theta| after it. Requires an
/// in-band field with a sign change (DomainError otherwise). Preserves
/// |theta| per node and never increases the energy.
TransformResult reflect_monotone(const AngleField& theta, const EnergyWorkspace& ws);

/// Best non-decreasing envelope: suffix minimum left of the first zero,
/// running maximum after it. Expects reflect_monotone output (nonpositive
/// then nonnegative); never increases the energy.
TransformResult monotone_envelope(const AngleField& theta, const EnergyWorkspace& ws);

/// Symmetric decreasing rearrangement of pi/2 - |theta| in the y-variable,
/// folded back to an exactly odd non-decreasing field. Requires a symmetric
/// profile (invalid_argument) and a non-decreasing in-band input
/// (DomainError). Guarded: returns the input unchanged if the discrete
/// energy would increase. Exactly odd input is returned untouched.
TransformResult symmetrize(const AngleField& theta, const NotchProfile& profile,
                           const EnergyWorkspace& ws);

/// Translate the wall by a whole number of grid cells so its zero touches
/// the notch support [-a, a]; vacated nodes are filled with the exact
/// separatrix tail. Guarded like symmetrize; no-op for notchless profiles
/// (translation is a symmetry there) and when the zero already intersects.
TransformResult localize(const AngleField& theta, const NotchProfile& profile,
                         const EnergyWorkspace& ws);

/// Apply a named chain ("threshold", "reflect", "envelope", "symmetrize",
/// "localize") in order; returns one result per step, each starting from the
/// previous output.
std::vector<TransformResult> apply_chain(const AngleField& theta,
                                         const std::vector<std::string>& names,
                                         const NotchProfile& profile, const EnergyWorkspace& ws);

}  // namespace notchwall
