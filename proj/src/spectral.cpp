#include "notchwall/spectral.hpp"

#include <cmath>
#include <random>
#include <stdexcept>

namespace notchwall {

namespace {

std::vector<double> centered_derivative(const AngleField& theta, const Grid& grid) {
    const std::size_t n = grid.n;
    std::vector<double> d(n);
    for (std::size_t i = 0; i < n; ++i) {
        if (i == 0)
            d[i] = (theta[1] - theta[0]) / grid.h;
        else if (i == n - 1)
            d[i] = (theta[n - 1] - theta[n - 2]) / grid.h;
        else
            d[i] = (theta[i + 1] - theta[i - 1]) / (2.0 * grid.h);
    }
    return d;
}

}  // namespace

std::vector<double> LinearizedOperator::apply(const std::vector<double>& u) const {
    const std::size_t n = grid.n;
    if (u.size() != n) throw std::invalid_argument("LinearizedOperator::apply: size mismatch");
    const double h = grid.h;
    std::vector<double> out(n);
    for (std::size_t i = 0; i < n; ++i) {
        double raw = 0.0;
        if (i + 1 < n) raw -= s_mid[i] * (u[i + 1] - u[i]) / h;
        if (i > 0) raw += s_mid[i - 1] * (u[i] - u[i - 1]) / h;
        raw += grid.weight(i) * s_node[i] * potential[i] * u[i];
        out[i] = raw / (s_node[i] * grid.weight(i));
    }
    return out;
}

double LinearizedOperator::quadratic_form(const std::vector<double>& u) const {
    const std::size_t n = grid.n;
    if (u.size() != n) throw std::invalid_argument("quadratic_form: size mismatch");
    double q = 0.0;
    for (std::size_t i = 0; i + 1 < n; ++i) {
        const double d = u[i + 1] - u[i];
        q += s_mid[i] * d * d / grid.h;
    }
    for (std::size_t i = 0; i < n; ++i)
        q += grid.weight(i) * s_node[i] * potential[i] * u[i] * u[i];
    return q;
}

Tridiag LinearizedOperator::interior_matrix() const {
    const std::size_t n = grid.n;
    const double h = grid.h;
    Tridiag B;
    B.diag.resize(n - 2);
    B.off.resize(n - 3);
    for (std::size_t i = 1; i + 1 < n; ++i) {
        const double k = (s_mid[i - 1] + s_mid[i]) / h + h * s_node[i] * potential[i];
        B.diag[i - 1] = k / (h * s_node[i]);
    }
    for (std::size_t i = 1; i + 2 < n; ++i)
        B.off[i - 1] = -s_mid[i] / (h * h * std::sqrt(s_node[i] * s_node[i + 1]));
    return B;
}

LinearizedOperator assemble(LinearizedOperator::Kind kind, const AngleField& theta,
                            const NotchProfile& profile, const Grid& grid) {
    if (theta.size() != grid.n) throw std::invalid_argument("assemble: size mismatch");
    LinearizedOperator op;
    op.kind = kind;
    op.grid = grid;
    const EnergyWorkspace ws(profile, grid);
    op.s_node = ws.s_node;
    op.s_mid = ws.s_mid;
    op.potential.resize(grid.n);
    if (kind == LinearizedOperator::Kind::L1) {
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double s = std::sin(theta[i]), c = std::cos(theta[i]);
            op.potential[i] = s * s - c * c;
        }
    } else {
        const std::vector<double> dp = centered_derivative(theta, grid);
        for (std::size_t i = 0; i < grid.n; ++i) {
            const double s = std::sin(theta[i]);
            op.potential[i] = s * s - dp[i] * dp[i];
        }
    }
    return op;
}

double kernel_residual(const LinearizedOperator& L2, const AngleField& theta) {
    const std::size_t n = L2.grid.n;
    std::vector<double> u(n);
    for (std::size_t i = 0; i < n; ++i) u[i] = std::cos(theta[i]);
    const std::vector<double> r = L2.apply(u);
    double acc = 0.0;
    for (std::size_t i = 1; i + 1 < n; ++i)
        acc += L2.grid.weight(i) * L2.s_node[i] * r[i] * r[i];
    return std::sqrt(acc);
}

double factorization_gap(const AngleField& theta, const NotchProfile& profile, const Grid& grid,
                         std::size_t probes, std::uint64_t seed) {
    const std::size_t n = grid.n;
    for (std::size_t i = 1; i + 1 < n; ++i)
        if (std::abs(theta[i]) >= M_PI / 2.0 - 1e-8)
            throw DomainError("factorization_gap: tan(theta) singular at an interior node");

    const LinearizedOperator L2 =
        assemble(LinearizedOperator::Kind::L2, theta, profile, grid);
    const EnergyWorkspace ws(profile, grid);

    // l u at cell midpoints: (u_{i+1}-u_i)/h + (theta' tan theta)_mid * u_mid
    auto ell = [&](const std::vector<double>& u) {
        std::vector<double> r(n - 1);
        for (std::size_t i = 0; i + 1 < n; ++i) {
            const double tm = 0.5 * (theta[i] + theta[i + 1]);
            const double um = 0.5 * (u[i] + u[i + 1]);
            const double dp = (theta[i + 1] - theta[i]) / grid.h;
            r[i] = (u[i + 1] - u[i]) / grid.h + dp * std::tan(tm) * um;
        }
        return r;
    };
    auto mid_inner = [&](const std::vector<double>& a, const std::vector<double>& b) {
        double acc = 0.0;
        for (std::size_t i = 0; i + 1 < n; ++i) acc += grid.h * ws.s_mid[i] * a[i] * b[i];
        return acc;
    };

    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> cdist(-grid.L + 4.0, grid.L - 4.0);
    std::uniform_real_distribution<double> wdist(0.5, 2.0);
    std::uniform_real_distribution<double> adist(-1.0, 1.0);
    auto bump = [&]() {
        std::vector<double> u(n, 0.0);
        for (int b = 0; b < 2; ++b) {
            const double c = cdist(rng), w = wdist(rng), a = adist(rng);
            for (std::size_t i = 0; i < n; ++i) {
                const double r = (grid.node(i) - c) / w;
                u[i] += a * std::exp(-r * r);
            }
        }
        u[0] = u[n - 1] = 0.0;
        return u;
    };

    double worst = 0.0;
    for (std::size_t p = 0; p < probes; ++p) {
        const std::vector<double> u = bump(), v = bump();
        const std::vector<double> L2u = L2.apply(u);
        const double lhs = weighted_inner(L2u, v, ws);
        const double rhs = mid_inner(ell(u), ell(v));
        const double nu = std::sqrt(weighted_inner(u, u, ws));
        const double nv = std::sqrt(weighted_inner(v, v, ws));
        worst = std::max(worst, std::abs(lhs - rhs) / (nu * nv));
    }
    return worst;
}

CoercivityResult coercivity_alpha(const LinearizedOperator& op) {
    const Tridiag B = op.interior_matrix();
    CoercivityResult res;
    res.alpha = smallest_eigenvalue(B, 1e-14);
    std::vector<double> w = inverse_iteration(B, res.alpha);
    res.iterations = 80;  // bisection depth (fixed)

    // Rayleigh refinement in the original variables
    const std::size_t n = op.grid.n;
    std::vector<double> u(n, 0.0);
    for (std::size_t i = 1; i + 1 < n; ++i)
        u[i] = w[i - 1] / std::sqrt(op.s_node[i] * op.grid.h);
    double num = op.quadratic_form(u);
    double den = 0.0;
    for (std::size_t i = 0; i < n; ++i)
        den += op.grid.weight(i) * op.s_node[i] * u[i] * u[i];
    if (den > 0.0) res.alpha = num / den;
    res.eigenvector = std::move(u);
    return res;
}

SpectralReport spectral_report(const AngleField& theta, const NotchProfile& profile,
                               const Grid& grid, std::size_t probes, std::uint64_t seed) {
    SpectralReport rep;
    const EnergyWorkspace ws(profile, grid);
    rep.wall_converged = gradient_norm(theta, ws) <= 1e-6;
    const LinearizedOperator L1 = assemble(LinearizedOperator::Kind::L1, theta, profile, grid);
    const LinearizedOperator L2 = assemble(LinearizedOperator::Kind::L2, theta, profile, grid);
    rep.kernel_residual = kernel_residual(L2, theta);
    rep.factorization_gap = factorization_gap(theta, profile, grid, probes, seed);
    const CoercivityResult c = coercivity_alpha(L1);
    rep.alpha = c.alpha;
    rep.iterations = c.iterations;
    return rep;
}

}  // namespace notchwall
