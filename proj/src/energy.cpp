#include "notchwall/energy.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace notchwall {

EnergyWorkspace::EnergyWorkspace(const NotchProfile& profile, const Grid& g) : grid(g) {
    s_node.resize(g.n);
    s_mid.resize(g.n - 1);
    for (std::size_t i = 0; i < g.n; ++i) s_node[i] = profile(g.node(i));
    for (std::size_t i = 0; i + 1 < g.n; ++i)
        s_mid[i] = profile(0.5 * (g.node(i) + g.node(i + 1)));
}

static void check_size(std::size_t got, std::size_t want, const char* who) {
    if (got != want) throw std::invalid_argument(std::string(who) + ": field/grid size mismatch");
}

double energy_value(const AngleField& theta, const EnergyWorkspace& ws) {
    const std::size_t n = ws.grid.n;
    check_size(theta.size(), n, "energy");
    const double h = ws.grid.h;
    double exch = 0.0, aniso = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = theta[i + 1] - theta[i];
        exch += ws.s_mid[i] * d * d;
    }
    exch *= 0.5 / h;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(theta[i]);
        aniso += ws.grid.weight(i) * ws.s_node[i] * c * c;
    }
    aniso *= 0.5;
    return exch + aniso + tail_energy(theta[0], -1) + tail_energy(theta[n - 1], +1);
}

double energy_value(const AngleField& theta, const NotchProfile& profile, const Grid& grid) {
    return energy_value(theta, EnergyWorkspace(profile, grid));
}

std::vector<double> raw_gradient(const AngleField& theta, const EnergyWorkspace& ws) {
    const std::size_t n = ws.grid.n;
    check_size(theta.size(), n, "gradient");
    const double h = ws.grid.h;
    std::vector<double> g(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double flux = 0.0;
        if (i + 1 < n) flux -= ws.s_mid[i] * (theta[i + 1] - theta[i]) / h;
        if (i > 0) flux += ws.s_mid[i - 1] * (theta[i] - theta[i - 1]) / h;
        g[i] = flux - ws.grid.weight(i) * ws.s_node[i] * std::cos(theta[i]) * std::sin(theta[i]);
    }
    // tail terms depend on the boundary values only (clamped inside the band)
    if (std::abs(theta[0]) < M_PI / 2.0) g[0] += std::cos(theta[0]);
    if (std::abs(theta[n - 1]) < M_PI / 2.0) g[n - 1] -= std::cos(theta[n - 1]);
    return g;
}

std::vector<double> gradient(const AngleField& theta, const EnergyWorkspace& ws) {
    std::vector<double> g = raw_gradient(theta, ws);
    for (std::size_t i = 0; i < g.size(); ++i) g[i] /= ws.s_node[i] * ws.grid.weight(i);
    return g;
}

std::vector<double> gradient(const AngleField& theta, const NotchProfile& profile,
                             const Grid& grid) {
    return gradient(theta, EnergyWorkspace(profile, grid));
}

double gradient_norm(const AngleField& theta, const EnergyWorkspace& ws) {
    const std::vector<double> raw = raw_gradient(theta, ws);
    double nrm2 = 0.0;
    for (std::size_t i = 0; i < raw.size(); ++i)
        nrm2 += raw[i] * raw[i] / (ws.s_node[i] * ws.grid.weight(i));
    return std::sqrt(nrm2);
}

double weighted_inner(const std::vector<double>& u, const std::vector<double>& v,
                      const EnergyWorkspace& ws) {
    check_size(u.size(), ws.grid.n, "weighted_inner");
    check_size(v.size(), ws.grid.n, "weighted_inner");
    double acc = 0.0;
    for (std::size_t i = 0; i < u.size(); ++i)
        acc += ws.grid.weight(i) * ws.s_node[i] * u[i] * v[i];
    return acc;
}

double weighted_inner(const std::vector<double>& u, const std::vector<double>& v,
                      const NotchProfile& profile, const Grid& grid) {
    return weighted_inner(u, v, EnergyWorkspace(profile, grid));
}

std::vector<double> pointwise_defect(const AngleField& theta, const Grid& grid) {
    const std::size_t n = grid.n;
    check_size(theta.size(), n, "pointwise_defect");
    const double h = grid.h;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        double dp;
        if (i == 0)
            dp = (theta[1] - theta[0]) / h;
        else if (i == n - 1)
            dp = (theta[n - 1] - theta[n - 2]) / h;
        else
            dp = (theta[i + 1] - theta[i - 1]) / (2.0 * h);
        const double c = std::cos(theta[i]);
        d[i] = dp * dp - c * c;
    }
    return d;
}

EnergyReport energy(const AngleField& theta, const EnergyWorkspace& ws) {
    const std::size_t n = ws.grid.n;
    check_size(theta.size(), n, "energy");
    EnergyReport r;
    const double h = ws.grid.h;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = theta[i + 1] - theta[i];
        r.exchange += ws.s_mid[i] * d * d;
    }
    r.exchange *= 0.5 / h;
    for (std::size_t i = 0; i < n; ++i) {
        const double c = std::cos(theta[i]);
        r.anisotropy += ws.grid.weight(i) * ws.s_node[i] * c * c;
    }
    r.anisotropy *= 0.5;
    r.tail_energy = tail_energy(theta[0], -1) + tail_energy(theta[n - 1], +1);
    r.total = r.exchange + r.anisotropy + r.tail_energy;
    r.grad_norm = gradient_norm(theta, ws);
    const std::vector<double> d = pointwise_defect(theta, ws.grid);
    r.defect_min = *std::min_element(d.begin(), d.end());
    r.defect_max = *std::max_element(d.begin(), d.end());
    return r;
}

EnergyReport energy(const AngleField& theta, const NotchProfile& profile, const Grid& grid) {
    return energy(theta, EnergyWorkspace(profile, grid));
}

double energy_m(const MagnetizationField& m, const EnergyWorkspace& ws) {
    const std::size_t n = ws.grid.n;
    check_size(m.size(), n, "energy_m");
    const double h = ws.grid.h;
    double exch = 0.0, aniso = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const Vec3 d = m[i + 1] - m[i];
        exch += ws.s_mid[i] * d.dot(d);
    }
    exch *= 0.5 / h;
    for (std::size_t i = 0; i < n; ++i)
        aniso += ws.grid.weight(i) * ws.s_node[i] * (m[i].y * m[i].y + m[i].z * m[i].z);
    aniso *= 0.5;
    return exch + aniso;
}

double energy_m(const MagnetizationField& m, const NotchProfile& profile, const Grid& grid) {
    return energy_m(m, EnergyWorkspace(profile, grid));
}

}  // namespace notchwall
