#include "notchwall/solver.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <random>
#include <stdexcept>

#include "notchwall/transforms.hpp"
#include "notchwall/tridiag.hpp"

namespace notchwall {

namespace {

// raw Hessian d^2E/dtheta_i dtheta_j of the discrete energy (tails included)
Tridiag raw_hessian(const AngleField& theta, const EnergyWorkspace& ws) {
    const std::size_t n = ws.grid.n;
    const double h = ws.grid.h;
    Tridiag H;
    H.diag.assign(n, 0.0);
    H.off.assign(n - 1, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double d = 0.0;
        if (i + 1 < n) d += ws.s_mid[i] / h;
        if (i > 0) d += ws.s_mid[i - 1] / h;
        d -= ws.grid.weight(i) * ws.s_node[i] * std::cos(2.0 * theta[i]);
        H.diag[i] = d;
    }
    for (std::size_t i = 0; i + 1 < n; ++i) H.off[i] = -ws.s_mid[i] / h;
    if (std::abs(theta[0]) < M_PI / 2.0) H.diag[0] -= std::sin(theta[0]);
    if (std::abs(theta[n - 1]) < M_PI / 2.0) H.diag[n - 1] += std::sin(theta[n - 1]);
    return H;
}

bool has_crossing(const AngleField& theta) {
    if (theta.size() == 0 || theta[0] >= 0.0) return false;
    for (std::size_t i = 1; i < theta.size(); ++i)
        if (theta[i] >= 0.0) return true;
    return false;
}

AngleField separatrix_seed(const Grid& grid, double center) {
    AngleField t(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) t[i] = separatrix_theta(grid.node(i) - center);
    return t;
}

AngleField run_chain(const AngleField& theta, const NotchProfile& profile,
                     const EnergyWorkspace& ws, bool sym, bool loc) {
    if (!has_crossing(theta)) return theta;
    AngleField cur = threshold(theta, ws).theta;
    cur = reflect_monotone(cur, ws).theta;
    cur = monotone_envelope(cur, ws).theta;
    if (sym) cur = symmetrize(cur, profile, ws).theta;
    if (loc) cur = localize(cur, profile, ws).theta;
    return cur;
}

void finalize(SolveResult& r, const EnergyWorkspace& ws) {
    r.report = energy(r.theta, ws);
    double mono = 0.0, odd = 0.0;
    const std::size_t n = r.theta.size();
    for (std::size_t i = 0; i + 1 < n; ++i) mono = std::min(mono, r.theta[i + 1] - r.theta[i]);
    for (std::size_t i = 0; i < n; ++i)
        odd = std::max(odd, std::abs(r.theta[i] + r.theta[n - 1 - i]));
    r.monotone = mono >= -1e-10;
    r.odd_defect = odd;
}

}  // namespace

SolveResult minimize(const NotchProfile& profile, const Grid& grid, const AngleField& init,
                     const SolveOptions& opts) {
    if (!(opts.grad_tol > 0.0) || !(opts.shrink > 0.0) || !(opts.shrink < 1.0))
        throw std::invalid_argument("minimize: bad options");
    const EnergyWorkspace ws(profile, grid);
    const bool sym = classify(profile).symmetric;
    const bool loc = !profile.notchless();

    AngleField theta;
    if (init.size() == grid.n && has_crossing(threshold(init, ws).theta))
        theta = threshold(init, ws).theta;
    else
        theta = separatrix_seed(grid, profile.notch_center());
    theta = run_chain(theta, profile, ws, sym, loc);

    SolveResult res;
    double E = energy_value(theta, ws);
    res.energy_trace.push_back(E);

    std::vector<double> mass(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) mass[i] = ws.s_node[i] * grid.weight(i);

    double mu = 0.0;  // Levenberg shift carried between iterations
    std::size_t it = 0;
    for (; it < opts.max_iters; ++it) {
        const double gn = gradient_norm(theta, ws);
        if (gn <= opts.grad_tol) {
            res.converged = true;
            break;
        }
        const std::vector<double> g = raw_gradient(theta, ws);

        std::vector<double> dir(grid.n);
        double slope = 0.0;
        if (opts.use_newton) {
            const Tridiag H = raw_hessian(theta, ws);
            while (true) {
                if (ldlt_solve(H, mu, g, dir, &mass)) {
                    slope = 0.0;
                    for (std::size_t i = 0; i < grid.n; ++i) {
                        dir[i] = -dir[i];
                        slope += g[i] * dir[i];
                    }
                    if (slope < 0.0) break;
                }
                mu = (mu == 0.0) ? 1e-8 : mu * 10.0;
                if (mu > 1e12) throw std::runtime_error("minimize: Levenberg shift blew up");
            }
        } else {
            slope = 0.0;
            for (std::size_t i = 0; i < grid.n; ++i) {
                dir[i] = -g[i] / mass[i];
                slope += g[i] * dir[i];
            }
        }

        // Armijo backtracking. Once the model decrease -t*slope drops below
        // the roundoff noise of the energy (~eps*|E|), sufficient decrease
        // can no longer be certified; in that regime accept a step iff the
        // gradient norm shrinks and the energy does not rise beyond noise.
        const double noise =
            64.0 * std::numeric_limits<double>::epsilon() * (std::abs(E) + 1.0);
        double t = opts.step0;
        AngleField cand(grid.n);
        bool ok = false;
        for (int bt = 0; bt < 60; ++bt) {
            for (std::size_t i = 0; i < grid.n; ++i) cand[i] = theta[i] + t * dir[i];
            const double Ec = energy_value(cand, ws);
            if (Ec <= E + opts.armijo * t * slope) {
                theta = cand;
                E = Ec;
                ok = true;
                break;
            }
            if (-t * slope < noise) {
                if (Ec <= E + noise && gradient_norm(cand, ws) <= 0.99 * gn) {
                    theta = cand;
                    E = std::min(E, Ec);
                    ok = true;
                }
                break;  // shrinking t further cannot make the test sharper
            }
            t *= opts.shrink;
        }
        if (!ok) {
            // direction unusable at machine precision: stiffen and retry
            if (!opts.use_newton || mu > 1e12) break;
            mu = (mu == 0.0) ? 1e-8 : mu * 100.0;
            continue;
        }
        if (opts.use_newton) mu = std::max(0.0, mu * 0.1) < 1e-14 ? 0.0 : mu * 0.1;

        if (opts.transform_every > 0 && (it + 1) % opts.transform_every == 0) {
            theta = run_chain(theta, profile, ws, sym, loc);
            E = energy_value(theta, ws);
        }
        res.energy_trace.push_back(E);
    }
    if (!res.converged && gradient_norm(theta, ws) <= opts.grad_tol) res.converged = true;

    res.theta = std::move(theta);
    res.iterations = it;
    finalize(res, ws);
    return res;
}

SolveResult minimize(const NotchProfile& profile, const Grid& grid, const SolveOptions& opts) {
    return minimize(profile, grid, AngleField(), opts);
}

namespace {

struct Trajectory {
    std::vector<double> y;  // increasing in integration order
    std::vector<double> u;
    int outcome = 0;  // +1 overshoot, -1 fallback, 0 survived
};

// RK4 on u'' = -sigma^2(y) cos u sin u, direction dir = +/-1, from y0 with
// u(y0) = 0, u'(y0) = slope > 0.
Trajectory integrate(const ChangeOfVariable& cov, double y0, double slope, int dir, double y_end,
                     double dy, bool store) {
    Trajectory tr;
    double y = y0, u = 0.0, v = slope;
    const double band = M_PI / 2.0;
    auto acc = [&](double yy, double uu) {
        const double s = cov.sigma(yy);
        return -s * s * std::cos(uu) * std::sin(uu);
    };
    if (store) {
        tr.y.push_back(y);
        tr.u.push_back(u);
    }
    const double step = dir > 0 ? dy : -dy;
    const std::size_t max_steps = std::size_t(std::abs(y_end - y0) / dy) + 2;
    for (std::size_t k = 0; k < max_steps; ++k) {
        const double k1u = v, k1v = acc(y, u);
        const double k2u = v + 0.5 * step * k1v, k2v = acc(y + 0.5 * step, u + 0.5 * step * k1u);
        const double k3u = v + 0.5 * step * k2v, k3v = acc(y + 0.5 * step, u + 0.5 * step * k2u);
        const double k4u = v + step * k3v, k4v = acc(y + step, u + step * k3u);
        u += step / 6.0 * (k1u + 2.0 * k2u + 2.0 * k3u + k4u);
        v += step / 6.0 * (k1v + 2.0 * k2v + 2.0 * k3v + k4v);
        y += step;
        if (store) {
            tr.y.push_back(y);
            tr.u.push_back(u);
        }
        const double toward = dir > 0 ? u : -u;  // progress toward +band
        const double dtoward = dir > 0 ? v : v;  // u' keeps its sign meaning on both sides
        if (toward > band + 1e-3) {
            tr.outcome = +1;
            return tr;
        }
        if (dtoward <= 0.0 && toward < band - 1e-3) {
            tr.outcome = -1;
            return tr;
        }
        if ((dir > 0 && y >= y_end) || (dir < 0 && y <= y_end)) break;
    }
    tr.outcome = 0;
    return tr;
}

double bisect_slope(const ChangeOfVariable& cov, double y0, int dir, double y_end, double dy,
                    std::size_t& count) {
    double lo = 1e-6, hi = 10.0;
    auto cls = [&](double p) {
        const Trajectory t = integrate(cov, y0, p, dir, y_end, dy, false);
        // a survivor hugging the band from below still wants a larger slope
        return t.outcome == +1 ? +1 : (t.outcome == -1 ? -1 : -1);
    };
    if (cls(lo) > 0 || cls(hi) < 0)
        throw std::runtime_error("shoot: no slope bracket in [1e-6, 10]");
    for (int k = 0; k < 80 && (hi - lo) > 1e-15 * hi; ++k) {
        const double mid = 0.5 * (lo + hi);
        if (cls(mid) > 0)
            hi = mid;
        else
            lo = mid;
        ++count;
    }
    return 0.5 * (lo + hi);
}

}  // namespace

ShootResult shoot(const NotchProfile& profile, const Grid& grid, double x0, double slope0_hint) {
    (void)slope0_hint;
    const ChangeOfVariable cov(profile, grid);
    const double y0 = cov.y_of_x(x0);
    const double dy = std::min(grid.h, 0.01);
    const double yR = cov.y_table().back() + 1.0;
    const double yL = cov.y_table().front() - 1.0;

    ShootResult out;
    out.slope_right = bisect_slope(cov, y0, +1, yR, dy, out.bisections);
    out.slope_left = bisect_slope(cov, y0, -1, yL, dy, out.bisections);

    Trajectory right = integrate(cov, y0, out.slope_right, +1, yR, dy, true);
    Trajectory left = integrate(cov, y0, out.slope_left, -1, yL, dy, true);
    std::reverse(left.y.begin(), left.y.end());
    std::reverse(left.u.begin(), left.u.end());

    auto sample = [&](const Trajectory& tr, double y) -> double {
        if (y <= tr.y.front()) return tr.u.front();
        if (y >= tr.y.back()) return tr.u.back();
        auto it = std::upper_bound(tr.y.begin(), tr.y.end(), y);
        const std::size_t i = std::size_t(it - tr.y.begin()) - 1;
        const double t = (y - tr.y[i]) / (tr.y[i + 1] - tr.y[i]);
        return tr.u[i] + t * (tr.u[i + 1] - tr.u[i]);
    };

    AngleField theta(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double y = cov.y_node(i);
        double u;
        if (y >= y0)
            u = y <= right.y.back() ? sample(right, y) : right.u.back();
        else
            u = y >= left.y.front() ? sample(left, y) : left.u.front();
        theta[i] = std::clamp(u, -M_PI / 2.0, M_PI / 2.0);
    }
    out.theta = std::move(theta);
    return out;
}

UniquenessReport multi_start_uniqueness(const NotchProfile& profile, const Grid& grid,
                                        std::size_t n_starts, std::uint64_t seed,
                                        const SolveOptions& opts) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> cross(-grid.L + 2.0, grid.L - 2.0);
    std::uniform_real_distribution<double> amp(-0.3, 0.3);
    std::uniform_real_distribution<double> width(0.5, 2.0);

    UniquenessReport rep;
    rep.all_converged = true;
    for (std::size_t k = 0; k < n_starts; ++k) {
        const double xc = cross(rng);
        AngleField init(grid.n);
        // separatrix at a random center plus a few smooth bumps
        struct Bump { double a, c, w; };
        std::vector<Bump> bumps(3);
        for (auto& b : bumps) b = {amp(rng), cross(rng), width(rng)};
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double x = grid.node(i);
            double v = separatrix_theta(x - xc);
            for (const auto& b : bumps) {
                const double r = (x - b.c) / b.w;
                v += b.a * std::exp(-r * r);
            }
            init[i] = v;
        }
        SolveResult s = minimize(profile, grid, init, opts);
        if (!s.converged) rep.all_converged = false;
        rep.zeros.push_back(first_zero(s.theta, grid));
        rep.walls.push_back(std::move(s.theta));
    }

    const std::size_t m = rep.walls.size();
    std::vector<std::size_t> parent(m);
    for (std::size_t i = 0; i < m; ++i) parent[i] = i;
    std::function<std::size_t(std::size_t)> find = [&](std::size_t i) {
        return parent[i] == i ? i : parent[i] = find(parent[i]);
    };
    double maxd = 0.0;
    for (std::size_t i = 0; i < m; ++i)
        for (std::size_t j = i + 1; j < m; ++j) {
            double d = 0.0;
            for (std::size_t p = 0; p < grid.n; ++p)
                d = std::max(d, std::abs(rep.walls[i][p] - rep.walls[j][p]));
            maxd = std::max(maxd, d);
            if (d <= 1e-4) parent[find(i)] = find(j);
        }
    std::size_t clusters = 0;
    for (std::size_t i = 0; i < m; ++i)
        if (find(i) == i) ++clusters;
    rep.max_pairwise = maxd;
    rep.clusters = clusters;

    // translation-flat valley: shifting a converged wall by whole cells leaves
    // the energy unchanged iff the profile exerts no restoring force (s == 1
    // up to the wall's reach), in which case the minimizers form a family
    const EnergyWorkspace ws(profile, grid);
    std::size_t jc = 0;  // most central wall, probed away from the boundaries
    for (std::size_t i = 1; i < m; ++i)
        if (std::abs(rep.zeros[i]) < std::abs(rep.zeros[jc])) jc = i;
    const AngleField& wc = rep.walls[jc];
    const long kshift = (rep.zeros[jc] <= 0.0 ? 1 : -1) *
                        std::max<long>(1, std::lround(1.0 / grid.h));
    AngleField shifted = wc;
    for (std::size_t p = 0; p < grid.n; ++p) {
        const long q = long(p) - kshift;
        shifted[p] = wc[std::size_t(std::clamp(q, long(0), long(grid.n) - 1))];
    }
    // threshold sits well below any notch restoring energy (~1e-3 even at
    // s0 = 0.99) but above the boundary-truncation tails of off-center walls
    const bool flat_valley =
        std::abs(energy_value(shifted, ws) - energy_value(wc, ws)) <= 1e-6;

    if (!rep.all_converged) {
        rep.verdict = "non_converged";
    } else if (clusters <= 1) {
        rep.verdict = flat_valley ? "translation_family" : "unique";
    } else {
        // translation family: all walls agree after aligning their zeros
        // (fractional shift, linear interpolation between nodes)
        auto sample = [&](const AngleField& w, double x) {
            const double t = (x - grid.node(0)) / grid.h;
            if (t <= 0.0) return w[0];
            if (t >= double(grid.n - 1)) return w[grid.n - 1];
            const std::size_t i = std::size_t(t);
            const double f = t - double(i);
            return w[i] + f * (w[i + 1] - w[i]);
        };
        bool translates = true;
        for (std::size_t i = 1; i < m && translates; ++i) {
            const double shift = rep.zeros[i] - rep.zeros[0];
            double d = 0.0;
            for (std::size_t p = 0; p < grid.n; ++p) {
                const double x = grid.node(p) + shift;
                if (x < grid.node(0) || x > grid.node(grid.n - 1)) continue;
                d = std::max(d, std::abs(sample(rep.walls[i], x) - rep.walls[0][p]));
            }
            if (d > 1e-3) translates = false;
        }
        rep.verdict = (translates && flat_valley) ? "translation_family" : "multiple";
    }
    return rep;
}

std::vector<double> decay_check(const AngleField& theta, const NotchProfile& profile,
                                const Grid& grid) {
    const ChangeOfVariable cov(profile, grid);
    std::vector<double> margin(grid.n);
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double y = cov.y_of_x(std::abs(grid.node(i)));
        margin[i] = M_PI * std::exp(-y) - std::abs(std::abs(theta[i]) - M_PI / 2.0);
    }
    return margin;
}

}  // namespace notchwall
