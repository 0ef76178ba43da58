#include <doctest.h>

#include <cmath>
#include <random>

#include "notchwall/dynamics.hpp"
#include "notchwall/solver.hpp"
#include "notchwall/transforms.hpp"

using namespace notchwall;

namespace {

MagnetizationField perturbed(const MagnetizationField& m, double amp, double width, double ctr,
                             const Grid& g) {
    MagnetizationField out = m;
    for (std::size_t i = 1; i + 1 < g.n; ++i) {
        const double r = (g.node(i) - ctr) / width;
        out[i].z += amp * std::exp(-r * r);
        out[i] = out[i].normalized();
    }
    return out;
}

}  // namespace

TEST_CASE("effective field basics") {
    const Grid g(12.0, 481);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const EnergyWorkspace ws(p, g);

    MagnetizationField e1(g.n);
    for (std::size_t i = 0; i < g.n; ++i) e1[i] = {1.0, 0.0, 0.0};
    for (const Vec3& h : effective_field(e1, ws)) CHECK(h.norm() == 0.0);

    // <H(m), dm>_s = -dE.dm for tangent perturbations (pinned ends)
    SolveResult s = minimize(p, g);
    REQUIRE(s.converged);
    MagnetizationField m = unlift(s.theta, RotationAngle(0.7));
    m = perturbed(m, 0.2, 1.5, 0.5, g);
    const std::vector<Vec3> H = effective_field(m, ws);

    std::mt19937_64 rng(2);
    std::uniform_real_distribution<double> d(-1.0, 1.0);
    MagnetizationField dm(g.n);
    for (std::size_t i = 1; i + 1 < g.n; ++i) {
        Vec3 v{d(rng), d(rng), d(rng)};
        v = v - m[i] * v.dot(m[i]);  // tangent
        dm[i] = v;
    }
    double lhs = 0.0;
    for (std::size_t i = 0; i < g.n; ++i)
        lhs += ws.grid.weight(i) * ws.s_node[i] * H[i].dot(dm[i]);
    const double eps = 1e-6;
    MagnetizationField mp = m, mm = m;
    for (std::size_t i = 0; i < g.n; ++i) {
        mp[i] = (m[i] + dm[i] * eps).normalized();
        mm[i] = (m[i] - dm[i] * eps).normalized();
    }
    const double rhs = -(energy_m(mp, ws) - energy_m(mm, ws)) / (2.0 * eps);
    CHECK(lhs == doctest::Approx(rhs).epsilon(1e-5));
}

TEST_CASE("llg step: dissipation, unit norm, near-steady state") {
    const Grid g(16.0, 321);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const EnergyWorkspace ws(p, g);
    SolveResult s = minimize(p, g);
    REQUIRE(s.converged);
    const MagnetizationField wall = unlift(s.theta, RotationAngle(0.0));
    const double dt = 0.2 * g.h * g.h * p.s0();

    // near-steady: the lifted minimizer is an O(h^2) quasi-steady state of
    // the vector flow (the discrete torque residual is the sin(dtheta) vs
    // dtheta mismatch), so one step moves it by at most ~dt h^2
    MagnetizationField m = wall;
    llg_step(m, dt, 0.5, ws);
    for (std::size_t i = 0; i < g.n; ++i) {
        CHECK((m[i] - wall[i]).norm() <= 5.0 * dt * g.h * g.h);
        CHECK(std::abs(m[i].norm() - 1.0) <= 1e-15);
    }

    // perturbed wall dissipates energy over 1000 steps
    m = perturbed(wall, 0.1, 1.0, 0.0, g);
    double prev = energy_m(m, ws);
    for (int k = 0; k < 1000; ++k) {
        llg_step(m, dt, 0.5, ws);
        const double e = energy_m(m, ws);
        CHECK(e <= prev + 1e-10);
        prev = e;
    }
    CHECK(prev < energy_m(perturbed(wall, 0.1, 1.0, 0.0, g), ws));
}

TEST_CASE("rotation equivariance of the discrete flow") {
    const Grid g(12.0, 241);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const EnergyWorkspace ws(p, g);
    SolveResult s = minimize(p, g);
    REQUIRE(s.converged);
    const RotationAngle phi(1.234);
    MagnetizationField a = perturbed(unlift(s.theta, RotationAngle(0.0)), 0.1, 1.0, 0.3, g);
    MagnetizationField b(g.n);
    for (std::size_t i = 0; i < g.n; ++i) b[i] = phi.apply(a[i]);

    const double dt = 0.2 * g.h * g.h * p.s0();
    for (int k = 0; k < 50; ++k) {
        llg_step(a, dt, 0.5, ws);
        llg_step(b, dt, 0.5, ws);
    }
    for (std::size_t i = 0; i < g.n; ++i)
        CHECK((b[i] - phi.apply(a[i])).norm() <= 1e-9);
}

TEST_CASE("precession-only limit conserves energy to O(dt^2)") {
    const Grid g(12.0, 241);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const EnergyWorkspace ws(p, g);
    SolveResult s = minimize(p, g);
    REQUIRE(s.converged);
    MagnetizationField m = perturbed(unlift(s.theta, RotationAngle(0.0)), 0.1, 1.0, 0.0, g);
    const double E0 = energy_m(m, ws);
    const double dt = 0.1 * g.h * g.h * p.s0();
    const int steps = 2000;
    for (int k = 0; k < steps; ++k) llg_step(m, dt, 1e-300, ws);
    // drift per unit time bounded by ~dt^2 scale
    CHECK(std::abs(energy_m(m, ws) - E0) / (steps * dt) <= 100.0 * dt * dt);
}

TEST_CASE("relaxation modulo rotation and the rotated steady family") {
    const Grid g(16.0, 321);
    const NotchProfile p = NotchProfile::plateau(0.5, 1.0, 0.25);
    const EnergyWorkspace ws(p, g);
    SolveResult s = minimize(p, g);
    REQUIRE(s.converged);
    const MagnetizationField wall = unlift(s.theta, RotationAngle(0.0));

    // rotated wall is steady too
    const RotationAngle phi(0.9);
    MagnetizationField rot(g.n);
    for (std::size_t i = 0; i < g.n; ++i) rot[i] = phi.apply(wall[i]);
    LLGOptions opts;
    opts.t_end = 0.05;
    const LLGTrajectory st = relax(rot, opts, p, g, &s.theta);
    // quasi-steady drift only (O(h^2) residual integrated over t_end)
    for (std::size_t i = 0; i < g.n; ++i)
        CHECK((st.final_field[i] - rot[i]).norm() <= 1e-3);
    CHECK(st.distances.back() <= 1e-3);  // distance mod rotation sees through phi

    // residual below a threshold set from the wall itself: immediate stop
    LLGOptions stop;
    stop.stop_tol = 2.0 * torque_norm(wall, ws);
    stop.t_end = 1.0;
    const LLGTrajectory zt = relax(wall, stop, p, g, &s.theta);
    CHECK(zt.stopped_early);

    // perturbed wall relaxes toward the wall modulo rotation
    MagnetizationField m0 = perturbed(wall, 0.1, 1.0, 0.0, g);
    LLGOptions run;
    run.t_end = 20.0;
    run.record_every = 200;
    const LLGTrajectory tr = relax(m0, run, p, g, &s.theta);
    for (std::size_t k = 1; k < tr.energies.size(); ++k)
        CHECK(tr.energies[k] <= tr.energies[k - 1] + 1e-10);
    CHECK(tr.distances.back() < tr.distances.front());

    auto [r1, r2] = mobile_frame_norms(tr.final_field, s.theta, ws);
    auto [q1, q2] = mobile_frame_norms(m0, s.theta, ws);
    CHECK(r1 + r2 <= q1 + q2 + 1e-12);  // transverse content decayed
}

TEST_CASE("translated wall migrates back toward the notch") {
    const Grid g(16.0, 321);
    const NotchProfile p = NotchProfile::plateau(0.4, 1.0, 0.25);
    const EnergyWorkspace ws(p, g);
    SolveResult s = minimize(p, g);
    REQUIRE(s.converged);

    AngleField shifted(g.n);
    for (std::size_t i = 0; i < g.n; ++i)
        shifted[i] = separatrix_theta(g.node(i) - 1.5);
    MagnetizationField m0 = unlift(shifted, RotationAngle(0.0));
    LLGOptions run;
    run.t_end = 30.0;
    run.record_every = 1000;
    const LLGTrajectory tr = relax(m0, run, p, g, &s.theta);
    // precession tips the planar data slightly out of plane; flatten first
    const Lifting lf = lift(planarize(tr.final_field));
    const double z0 = first_zero(shifted, g);
    const double z1 = first_zero(lf.theta, g);
    CHECK(std::abs(z1) < std::abs(z0));  // moved toward the notch
}
