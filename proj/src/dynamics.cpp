#include "notchwall/dynamics.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

namespace notchwall {

std::vector<Vec3> effective_field(const MagnetizationField& m, const EnergyWorkspace& ws) {
    const std::size_t n = ws.grid.n;
    if (m.size() != n) throw std::invalid_argument("effective_field: size mismatch");
    const double h = ws.grid.h;
    std::vector<Vec3> H(n);
    H[0] = H[n - 1] = {0.0, 0.0, 0.0};  // pinned ends
    for (std::size_t i = 1; i + 1 < n; ++i) {
        Vec3 flux = (m[i + 1] - m[i]) * (ws.s_mid[i] / h) - (m[i] - m[i - 1]) * (ws.s_mid[i - 1] / h);
        Vec3 v = flux * (1.0 / (ws.grid.weight(i) * ws.s_node[i]));
        v.y -= m[i].y;
        v.z -= m[i].z;
        H[i] = v;
    }
    return H;
}

double torque_norm(const MagnetizationField& m, const EnergyWorkspace& ws) {
    const std::vector<Vec3> H = effective_field(m, ws);
    double acc = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 t = m[i].cross(H[i]);
        acc += ws.grid.weight(i) * ws.s_node[i] * t.dot(t);
    }
    return std::sqrt(acc);
}

namespace {

std::vector<Vec3> llg_rhs(const MagnetizationField& m, double alpha, const EnergyWorkspace& ws) {
    const std::vector<Vec3> H = effective_field(m, ws);
    std::vector<Vec3> f(m.size());
    for (std::size_t i = 0; i < m.size(); ++i) {
        const Vec3 mxH = m[i].cross(H[i]);
        f[i] = (mxH * -1.0) - m[i].cross(mxH) * alpha;
    }
    return f;
}

MagnetizationField advance(const MagnetizationField& m, double dt, double alpha,
                           const EnergyWorkspace& ws) {
    const std::size_t n = m.size();
    const std::vector<Vec3> k1 = llg_rhs(m, alpha, ws);
    MagnetizationField mid(n);
    for (std::size_t i = 0; i < n; ++i) mid[i] = (m[i] + k1[i] * (0.5 * dt)).normalized();
    const std::vector<Vec3> k2 = llg_rhs(mid, alpha, ws);
    MagnetizationField out(n);
    for (std::size_t i = 0; i < n; ++i) out[i] = (m[i] + k2[i] * dt).normalized();
    return out;
}

}  // namespace

double llg_step(MagnetizationField& m, double dt, double alpha_gilbert,
                const EnergyWorkspace& ws) {
    const double E0 = energy_m(m, ws);
    double step = dt;
    for (int k = 0; k < 10; ++k) {
        MagnetizationField cand = advance(m, step, alpha_gilbert, ws);
        if (energy_m(cand, ws) <= E0 + 1e-10) {
            m = std::move(cand);
            return step;
        }
        step *= 0.5;
    }
    throw StepFailure("llg_step: energy kept rising after 10 dt halvings");
}

double fit_rotation(const MagnetizationField& m, const AngleField& theta_ref,
                    const EnergyWorkspace& ws) {
    double c2 = 0.0, c3 = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double w = ws.grid.weight(i) * ws.s_node[i] * std::cos(theta_ref[i]);
        c2 += w * m[i].y;
        c3 += w * m[i].z;
    }
    if (c2 == 0.0 && c3 == 0.0) return 0.0;
    return std::atan2(c3, c2);
}

double distance_mod_rotation(const MagnetizationField& m, const AngleField& theta_ref,
                             const EnergyWorkspace& ws) {
    const RotationAngle phi(fit_rotation(m, theta_ref, ws));
    double d = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double ct = std::cos(theta_ref[i]);
        const Vec3 w = phi.apply({std::sin(theta_ref[i]), ct, 0.0});
        d = std::max(d, (m[i] - w).norm());
    }
    return d;
}

LLGTrajectory relax(const MagnetizationField& m0, const LLGOptions& opts,
                    const NotchProfile& profile, const Grid& grid,
                    const AngleField* theta_ref) {
    if (!(opts.alpha_gilbert > 0.0)) throw std::invalid_argument("relax: alpha_gilbert must be > 0");
    const EnergyWorkspace ws(profile, grid);
    double dt = opts.dt > 0.0 ? opts.dt : 0.2 * grid.h * grid.h * profile.s0();

    LLGTrajectory tr;
    MagnetizationField m = m0;
    double t = 0.0;
    const double nan = std::numeric_limits<double>::quiet_NaN();
    auto record = [&]() {
        tr.times.push_back(t);
        tr.energies.push_back(energy_m(m, ws));
        tr.distances.push_back(theta_ref ? distance_mod_rotation(m, *theta_ref, ws) : nan);
    };
    record();
    std::size_t step_count = 0;
    while (t < opts.t_end - 1e-15) {
        const double taken = llg_step(m, std::min(dt, opts.t_end - t), opts.alpha_gilbert, ws);
        t += taken;
        ++step_count;
        if (opts.record_every > 0 && step_count % opts.record_every == 0) record();
        if (opts.stop_tol > 0.0 && torque_norm(m, ws) <= opts.stop_tol) {
            tr.stopped_early = true;
            break;
        }
    }
    record();
    tr.final_field = std::move(m);
    tr.final_time = t;
    return tr;
}

std::pair<double, double> mobile_frame_norms(const MagnetizationField& m,
                                             const AngleField& theta_ref,
                                             const EnergyWorkspace& ws) {
    const RotationAngle phi(fit_rotation(m, theta_ref, ws));
    double n1 = 0.0, n2 = 0.0;
    for (std::size_t i = 0; i < m.size(); ++i) {
        const double st = std::sin(theta_ref[i]), ct = std::cos(theta_ref[i]);
        const Vec3 t_hat = phi.apply({ct, -st, 0.0});
        const Vec3 n_hat = phi.apply({0.0, 0.0, 1.0});
        const double r1 = m[i].dot(t_hat);
        const double r2 = m[i].dot(n_hat);
        const double w = ws.grid.weight(i) * ws.s_node[i];
        n1 += w * r1 * r1;
        n2 += w * r2 * r2;
    }
    return {std::sqrt(n1), std::sqrt(n2)};
}

}  // namespace notchwall
