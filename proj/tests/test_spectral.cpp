#include <doctest.h>

#include <cmath>
#include <random>

#include "notchwall/solver.hpp"
#include "notchwall/spectral.hpp"

using namespace notchwall;
using Kind = LinearizedOperator::Kind;

namespace {
AngleField solved_wall(const NotchProfile& p, const Grid& g) {
    SolveResult s = minimize(p, g);
    REQUIRE(s.converged);
    return std::move(s.theta);
}
}  // namespace

TEST_CASE("operators are self-adjoint in the weighted product") {
    const Grid g(12.0, 601);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const AngleField wall = solved_wall(p, g);
    const EnergyWorkspace ws(p, g);
    std::mt19937_64 rng(5);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (Kind kind : {Kind::L1, Kind::L2}) {
        const LinearizedOperator op = assemble(kind, wall, p, g);
        for (int k = 0; k < 50; ++k) {
            std::vector<double> u(g.n), v(g.n);
            for (auto& x : u) x = d(rng);
            for (auto& x : v) x = d(rng);
            const double lhs = weighted_inner(op.apply(u), v, ws);
            const double rhs = weighted_inner(u, op.apply(v), ws);
            CHECK(std::abs(lhs - rhs) <= 1e-10 * std::max(1.0, std::abs(lhs)));
        }
    }
}

TEST_CASE("L1 - L2 is multiplication by the pointwise defect") {
    const Grid g(12.0, 601);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const AngleField wall = solved_wall(p, g);
    const LinearizedOperator L1 = assemble(Kind::L1, wall, p, g);
    const LinearizedOperator L2 = assemble(Kind::L2, wall, p, g);
    const std::vector<double> defect = pointwise_defect(wall, g);
    for (std::size_t i = 0; i < g.n; ++i)
        CHECK(L1.potential[i] - L2.potential[i] == doctest::Approx(defect[i]).epsilon(1e-12));
    // nonnegative at the converged wall
    for (std::size_t i = 0; i < g.n; ++i) CHECK(defect[i] >= -1e-5);
}

TEST_CASE("cos theta spans the kernel of L2 (fine grid)") {
    const Grid g(16.0, 32001);  // h = 1e-3
    // smooth (C^1) notch: the discrete residual is clean O(h^2)
    {
        const NotchProfile p = NotchProfile::cosine_dip(0.5, 1.5);
        const AngleField wall = solved_wall(p, g);
        const LinearizedOperator L2 = assemble(Kind::L2, wall, p, g);
        CHECK(kernel_residual(L2, wall) <= 1e-6);
    }
    // kinked notch: the flux-form truncation drops to O(h) at the ramp kinks,
    // so the weighted norm of the residual only decays like h^{3/2}
    {
        const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
        const AngleField wall = solved_wall(p, g);
        const LinearizedOperator L2 = assemble(Kind::L2, wall, p, g);
        CHECK(kernel_residual(L2, wall) <= 5e-5);
    }
}

TEST_CASE("factorization L2 = l* l on probe pairs") {
    const Grid g(16.0, 16001);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const AngleField wall = solved_wall(p, g);
    CHECK(factorization_gap(wall, p, g, 20, 1) <= 1e-5);

    // nonnegativity of the quadratic form on bump probes
    const LinearizedOperator L2 = assemble(Kind::L2, wall, p, g);
    std::mt19937_64 rng(9);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    for (int k = 0; k < 10; ++k) {
        std::vector<double> u(g.n, 0.0);
        for (std::size_t i = 0; i < g.n; ++i) {
            const double x = g.node(i);
            u[i] = d(rng) * std::exp(-0.1 * x * x);
        }
        u[0] = u[g.n - 1] = 0.0;
        CHECK(L2.quadratic_form(u) >= -1e-8);
    }
}

TEST_CASE("quadratic form of L1 matches finite differences of the energy") {
    const Grid g(12.0, 601);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const AngleField wall = solved_wall(p, g);
    const LinearizedOperator L1 = assemble(Kind::L1, wall, p, g);
    const EnergyWorkspace ws(p, g);
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    const double E0 = energy_value(wall, ws);
    for (int k = 0; k < 20; ++k) {
        std::vector<double> h(g.n, 0.0);
        for (std::size_t i = 1; i + 1 < g.n; ++i) {
            const double x = g.node(i);
            h[i] = d(rng) * std::exp(-0.05 * x * x);
        }
        const double eps = 1e-4;
        AngleField tp = wall, tm = wall;
        for (std::size_t i = 0; i < g.n; ++i) {
            tp[i] += eps * h[i];
            tm[i] -= eps * h[i];
        }
        const double fd = (energy_value(tp, ws) - 2.0 * E0 + energy_value(tm, ws)) / (eps * eps);
        CHECK(L1.quadratic_form(h) == doctest::Approx(fd).epsilon(1e-4));
    }
}

TEST_CASE("coercivity constant") {
    SUBCASE("uniform wire: translation zero mode") {
        const Grid g(16.0, 1601);
        const NotchProfile flat = NotchProfile::plateau(1.0, 1.0, 0.0);
        const AngleField wall = solved_wall(flat, g);
        const LinearizedOperator L1 = assemble(Kind::L1, wall, flat, g);
        const CoercivityResult c = coercivity_alpha(L1);
        CHECK(std::abs(c.alpha) <= 1e-4);
    }

    SUBCASE("notched wire: strictly positive, below the essential spectrum") {
        const Grid g(16.0, 1601);
        const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
        const AngleField wall = solved_wall(p, g);
        const LinearizedOperator L1 = assemble(Kind::L1, wall, p, g);
        const CoercivityResult c = coercivity_alpha(L1);
        CHECK(c.alpha > 0.0);
        CHECK(c.alpha <= 0.5 + 1e-6);

        // Rayleigh quotient of the returned vector reproduces alpha
        const EnergyWorkspace ws(p, g);
        const double num = L1.quadratic_form(c.eigenvector);
        const double den = weighted_inner(c.eigenvector, c.eigenvector, ws);
        CHECK(num / den == doctest::Approx(c.alpha).epsilon(1e-8));
    }

    SUBCASE("deeper notch, larger alpha (regression property)") {
        const Grid g(16.0, 1601);
        auto alpha_of = [&](double s0) {
            const NotchProfile p = NotchProfile::plateau(s0, 1.0, 0.25);
            const AngleField wall = solved_wall(p, g);
            return coercivity_alpha(assemble(Kind::L1, wall, p, g)).alpha;
        };
        CHECK(alpha_of(0.3) >= alpha_of(0.9));
    }
}
