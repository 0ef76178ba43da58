#pragma once

#include <cstdint>
#include <vector>

#include "notchwall/energy.hpp"
#include "notchwall/field.hpp"
#include "notchwall/grid.hpp"
#include "notchwall/profile.hpp"
#include "notchwall/tridiag.hpp"

namespace notchwall {

/// Linearization of the wall energy at theta: -(1/s)(s u')' + V u in flux
/// form, so self-adjointness under <.,.>_s is exact discretely.
/// Potentials: L1: sin^2 - cos^2; L2: sin^2 - theta'^2 (centered theta').
struct LinearizedOperator {
    enum class Kind { L1, L2 };

    Kind kind;
    Grid grid;
    std::vector<double> s_node, s_mid;
    std::vector<double> potential;

    /// (A u)_i = raw_i / (s_i w_i); boundary rows use one-sided fluxes with
    /// the actual neighbor values (no implicit Dirichlet).
    std::vector<double> apply(const std::vector<double>& u) const;

    /// Exact quadratic form <A u, u>_s for u vanishing at the ends:
    /// sum s_mid (du)^2/h + sum w s V u^2.
    double quadratic_form(const std::vector<double>& u) const;

    /// Interior Dirichlet eigenproblem, symmetrized: B = M^{-1/2} K M^{-1/2}
    /// on nodes 1..n-2 with M_ii = s_i h.
    Tridiag interior_matrix() const;
};

LinearizedOperator assemble(LinearizedOperator::Kind kind, const AngleField& theta,
                            const NotchProfile& profile, const Grid& grid);

/// ||L2 cos theta||_s over interior nodes.
double kernel_residual(const LinearizedOperator& L2, const AngleField& theta);

/// max over random bump probe pairs (u, v), supported away from the ends, of
/// |<L2 u, v>_s - <l u, l v>_s| / (||u||_s ||v||_s) with l = d/dx + theta' tan(theta)
/// evaluated at cell midpoints. Throws DomainError when |theta| reaches
/// pi/2 - 1e-8 at an interior node.
double factorization_gap(const AngleField& theta, const NotchProfile& profile, const Grid& grid,
                         std::size_t probes, std::uint64_t seed);

struct CoercivityResult {
    double alpha = 0.0;
    std::vector<double> eigenvector;  // full-length, zero at the ends
    std::size_t iterations = 0;
};

/// Smallest eigenvalue of the weighted interior eigenproblem (Sturm
/// bisection + inverse iteration, Rayleigh-refined).
CoercivityResult coercivity_alpha(const LinearizedOperator& op);

struct SpectralReport {
    double alpha = 0.0;
    double kernel_residual = 0.0;
    double factorization_gap = 0.0;
    std::size_t iterations = 0;
    bool wall_converged = true;  // warning flag: gradient norm at assembly
};

SpectralReport spectral_report(const AngleField& theta, const NotchProfile& profile,
                               const Grid& grid, std::size_t probes = 50, std::uint64_t seed = 0);

}  // namespace notchwall
