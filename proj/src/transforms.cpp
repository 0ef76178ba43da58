#include "notchwall/transforms.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace notchwall {

namespace {

const double kNaN = std::numeric_limits<double>::quiet_NaN();

TransformResult finish(const char* name, const AngleField& before, AngleField after,
                       const EnergyWorkspace& ws, double rho) {
    TransformResult r;
    r.report.name = name;
    r.report.energy_before = energy_value(before, ws);
    r.report.energy_after = energy_value(after, ws);
    r.report.rho = rho;
    bool changed = false;
    for (std::size_t i = 0; i < after.size() && !changed; ++i)
        if (after[i] != before[i]) changed = true;
    r.report.changed = changed;
    r.theta = std::move(after);
    return r;
}

// first node index with theta >= 0; n when none
std::size_t first_nonneg(const AngleField& theta) {
    for (std::size_t i = 0; i < theta.size(); ++i)
        if (theta[i] >= 0.0) return i;
    return theta.size();
}

bool exactly_odd(const AngleField& theta) {
    const std::size_t n = theta.size();
    for (std::size_t i = 0; i < n; ++i)
        if (theta[i] != -theta[n - 1 - i]) return false;
    return true;
}

void require_monotone_in_band(const AngleField& theta, const char* who) {
    for (std::size_t i = 0; i < theta.size(); ++i)
        if (std::abs(theta[i]) > M_PI / 2.0 + 1e-12)
            throw DomainError(std::string(who) + ": input not in the admissible band");
    for (std::size_t i = 0; i + 1 < theta.size(); ++i)
        if (theta[i + 1] < theta[i] - 1e-12)
            throw DomainError(std::string(who) + ": input must be non-decreasing");
}

double interp_linear(const std::vector<double>& xs, const std::vector<double>& vs, double x) {
    if (x <= xs.front()) return vs.front();
    if (x >= xs.back()) return vs.back();
    auto it = std::upper_bound(xs.begin(), xs.end(), x);
    const std::size_t i = std::size_t(it - xs.begin()) - 1;
    const double t = (x - xs[i]) / (xs[i + 1] - xs[i]);
    return vs[i] + t * (vs[i + 1] - vs[i]);
}

}  // namespace

double first_zero(const AngleField& theta, const Grid& grid) {
    const std::size_t j = first_nonneg(theta);
    if (j == 0 || j >= theta.size()) return kNaN;
    const double t0 = theta[j - 1], t1 = theta[j];
    if (t1 == t0) return grid.node(j);
    return grid.node(j - 1) + grid.h * (-t0) / (t1 - t0);
}

TransformResult threshold(const AngleField& theta, const EnergyWorkspace& ws) {
    AngleField out(theta.size());
    for (std::size_t i = 0; i < theta.size(); ++i)
        out[i] = std::clamp(theta[i], -M_PI / 2.0, M_PI / 2.0);
    return finish("threshold", theta, std::move(out), ws, first_zero(theta, ws.grid));
}

TransformResult reflect_monotone(const AngleField& theta, const EnergyWorkspace& ws) {
    const std::size_t j = first_nonneg(theta);
    if (j == 0 || j >= theta.size())
        throw DomainError("reflect_monotone: field has no sign change on the grid");
    AngleField out = theta;
    for (std::size_t i = j; i < theta.size(); ++i) out[i] = std::abs(theta[i]);
    return finish("reflect", theta, std::move(out), ws, first_zero(theta, ws.grid));
}

TransformResult monotone_envelope(const AngleField& theta, const EnergyWorkspace& ws) {
    const std::size_t n = theta.size();
    const std::size_t j = first_nonneg(theta);
    if (j == 0 || j >= n)
        throw DomainError("monotone_envelope: field has no sign change on the grid");
    AngleField out = theta;
    for (std::size_t i = j - 1; i-- > 0;) out[i] = std::min(out[i], out[i + 1]);
    for (std::size_t i = j + 1; i < n; ++i) out[i] = std::max(out[i], out[i - 1]);
    return finish("envelope", theta, std::move(out), ws, first_zero(theta, ws.grid));
}

TransformResult symmetrize(const AngleField& theta, const NotchProfile& profile,
                           const EnergyWorkspace& ws) {
    if (!classify(profile).symmetric)
        throw std::invalid_argument("symmetrize: rearrangement requires a symmetric profile");
    require_monotone_in_band(theta, "symmetrize");
    const double rho = first_zero(theta, ws.grid);
    if (exactly_odd(theta)) {
        AngleField out = theta;
        return finish("symmetrize", theta, std::move(out), ws, rho);
    }

    const Grid& grid = ws.grid;
    const ChangeOfVariable cov(profile, grid);
    const double Y = cov.y_table().back();
    // uniform y-grid; spacing ~ h/s0 keeps cells no finer than the x-cells map to
    const double hy_target = grid.h / profile.s0();
    const std::size_t K = std::max<std::size_t>(1, std::size_t(std::ceil(Y / hy_target)));
    const double hy = Y / double(K);
    const std::size_t m = 2 * K + 1;

    const std::vector<double> xs = grid.nodes();
    const std::vector<double>& tv = theta.values;
    std::vector<double> g(m);  // pi/2 - |theta| sampled on the y-grid
    for (std::size_t k = 0; k < m; ++k) {
        const double y = (double(k) - double(K)) * hy;
        const double v = interp_linear(xs, tv, cov.x_of_y(y));
        g[k] = M_PI / 2.0 - std::abs(v);
    }
    std::stable_sort(g.begin(), g.end(), std::greater<double>());

    // one value per |y|-shell: the largest at the center, then pair averages
    // outward, so the folded field is exactly odd
    std::vector<double> shell(K + 1);
    shell[0] = g[0];
    for (std::size_t k = 1; k <= K; ++k) shell[k] = 0.5 * (g[2 * k - 1] + g[2 * k]);

    // fold to an odd non-decreasing profile in y, then pull back to x;
    // evaluate the right half only and reflect for exact oddness
    const std::size_t c = grid.center_index();
    AngleField out(theta.size());
    std::vector<double> yk(K + 1), vk(K + 1);
    for (std::size_t k = 0; k <= K; ++k) {
        yk[k] = double(k) * hy;
        vk[k] = M_PI / 2.0 - shell[k];
    }
    for (std::size_t i = c + 1; i < grid.n; ++i) {
        const double y = cov.y_node(i);
        out[i] = interp_linear(yk, vk, y);
        out[grid.n - 1 - i] = -out[i];
    }
    // the rearranged profile attains pi/2 - |theta| = pi/2 at the crossing
    out[c] = 0.0;

    if (energy_value(out, ws) > energy_value(theta, ws)) {
        AngleField keep = theta;
        return finish("symmetrize", theta, std::move(keep), ws, rho);
    }
    return finish("symmetrize", theta, std::move(out), ws, rho);
}

TransformResult localize(const AngleField& theta, const NotchProfile& profile,
                         const EnergyWorkspace& ws) {
    require_monotone_in_band(theta, "localize");
    const Grid& grid = ws.grid;
    const double rho = first_zero(theta, grid);
    AngleField keep = theta;
    if (profile.notchless() || std::isnan(rho))
        return finish("localize", theta, std::move(keep), ws, rho);

    const double a = profile.a();
    if (rho >= -a - grid.h && rho <= a + grid.h)
        return finish("localize", theta, std::move(keep), ws, rho);

    // shift by whole cells so the zero lands just inside the notch support
    const double target = (rho > a) ? a : -a;
    const long k = std::lround((rho - target) / grid.h);  // >0: shift left
    const std::size_t n = grid.n;
    AngleField out(n);
    if (k > 0) {
        const std::size_t kk = std::size_t(k);
        for (std::size_t i = 0; i + kk < n; ++i) out[i] = theta[i + kk];
        // continue with the exact separatrix tail through the new boundary value
        const double c = separatrix_tail_center(out[n - 1 - kk], +1, grid.node(n - 1 - kk));
        for (std::size_t i = n - kk; i < n; ++i)
            out[i] = std::isfinite(c) ? separatrix_theta(grid.node(i) - c) : out[n - 1 - kk];
    } else {
        const std::size_t kk = std::size_t(-k);
        for (std::size_t i = n; i-- > kk;) out[i] = theta[i - kk];
        const double c = separatrix_tail_center(out[kk], -1, -grid.node(kk));
        for (std::size_t i = 0; i < kk; ++i)
            out[i] = std::isfinite(c) ? separatrix_theta(grid.node(i) - c) : out[kk];
    }

    if (energy_value(out, ws) > energy_value(theta, ws))
        return finish("localize", theta, std::move(keep), ws, rho);
    return finish("localize", theta, std::move(out), ws, rho);
}

std::vector<TransformResult> apply_chain(const AngleField& theta,
                                         const std::vector<std::string>& names,
                                         const NotchProfile& profile, const EnergyWorkspace& ws) {
    std::vector<TransformResult> steps;
    const AngleField* cur = &theta;
    for (const std::string& name : names) {
        TransformResult r;
        if (name == "threshold")
            r = threshold(*cur, ws);
        else if (name == "reflect")
            r = reflect_monotone(*cur, ws);
        else if (name == "envelope")
            r = monotone_envelope(*cur, ws);
        else if (name == "symmetrize")
            r = symmetrize(*cur, profile, ws);
        else if (name == "localize")
            r = localize(*cur, profile, ws);
        else
            throw std::invalid_argument("apply_chain: unknown transform '" + name + "'");
        steps.push_back(std::move(r));
        cur = &steps.back().theta;
    }
    return steps;
}

}  // namespace notchwall
