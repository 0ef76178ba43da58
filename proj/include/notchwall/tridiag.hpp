#pragma once

#include <cmath>
#include <cstddef>
#include <limits>
#include <stdexcept>
#include <vector>

namespace notchwall {

/// Symmetric tridiagonal matrix: diag[i] on the diagonal, off[i] coupling
/// i and i+1.
struct Tridiag {
    std::vector<double> diag;
    std::vector<double> off;

    std::size_t size() const { return diag.size(); }
};

/// LDL^T solve of (T + shift*I) x = b without pivoting. Returns false (and
/// leaves x unspecified) when a pivot is not safely positive, which callers
/// use to grow a Levenberg shift.
inline bool ldlt_solve(const Tridiag& T, double shift, const std::vector<double>& b,
                       std::vector<double>& x, const std::vector<double>* shift_scale = nullptr) {
    const std::size_t n = T.size();
    if (b.size() != n) throw std::invalid_argument("ldlt_solve: size mismatch");
    std::vector<double> d(n), l(n > 0 ? n - 1 : 0);
    x.assign(n, 0.0);
    for (std::size_t i = 0; i < n; ++i) {
        double di = T.diag[i] + shift * (shift_scale ? (*shift_scale)[i] : 1.0);
        if (i > 0) di -= l[i - 1] * l[i - 1] * d[i - 1];
        if (!(di > 1e-300)) return false;
        d[i] = di;
        if (i + 1 < n) l[i] = T.off[i] / di;
    }
    // forward: L z = b, then scale, then back: L^T x = z/d
    for (std::size_t i = 0; i < n; ++i) x[i] = b[i] - (i > 0 ? l[i - 1] * x[i - 1] : 0.0);
    for (std::size_t i = 0; i < n; ++i) x[i] /= d[i];
    for (std::size_t i = n - 1; i-- > 0;) x[i] -= l[i] * x[i + 1];
    return true;
}

/// Number of eigenvalues of T strictly below lambda (Sturm sequence count).
inline std::size_t sturm_count(const Tridiag& T, double lambda) {
    const std::size_t n = T.size();
    std::size_t cnt = 0;
    double q = 1.0;
    for (std::size_t i = 0; i < n; ++i) {
        const double o2 = i > 0 ? T.off[i - 1] * T.off[i - 1] : 0.0;
        q = T.diag[i] - lambda - (q != 0.0 ? o2 / q : o2 / 1e-300);
        if (q < 0.0) ++cnt;
        if (q == 0.0) q = -1e-300;
    }
    return cnt;
}

/// Gershgorin bounds for the spectrum of T.
inline std::pair<double, double> gershgorin(const Tridiag& T) {
    double lo = std::numeric_limits<double>::infinity(), hi = -lo;
    for (std::size_t i = 0; i < T.size(); ++i) {
        double r = 0.0;
        if (i > 0) r += std::abs(T.off[i - 1]);
        if (i + 1 < T.size()) r += std::abs(T.off[i]);
        lo = std::min(lo, T.diag[i] - r);
        hi = std::max(hi, T.diag[i] + r);
    }
    return {lo, hi};
}

/// Smallest eigenvalue by Sturm bisection, refined to `tol` (absolute).
inline double smallest_eigenvalue(const Tridiag& T, double tol = 1e-12) {
    auto [lo, hi] = gershgorin(T);
    // invariant: count(lo) == 0, count(hi) >= 1
    while (sturm_count(T, lo) > 0) lo -= std::max(1.0, std::abs(lo));
    while (hi - lo > tol * std::max(1.0, std::abs(lo) + std::abs(hi))) {
        const double mid = 0.5 * (lo + hi);
        if (sturm_count(T, mid) >= 1)
            hi = mid;
        else
            lo = mid;
    }
    return 0.5 * (lo + hi);
}

/// Eigenvector for an eigenvalue estimate via inverse iteration; returns the
/// normalized vector (Euclidean).
inline std::vector<double> inverse_iteration(const Tridiag& T, double lambda,
                                             std::size_t iters = 8) {
    const std::size_t n = T.size();
    std::vector<double> v(n, 1.0), w;
    // deterministic, mildly irregular start to avoid orthogonal bad luck
    for (std::size_t i = 0; i < n; ++i) v[i] = 1.0 + 0.3 * std::sin(double(i) * 2.399963);
    for (std::size_t k = 0; k < iters; ++k) {
        double shift = -lambda;
        double eps = 1e-12 * std::max(1.0, std::abs(lambda));
        while (!ldlt_solve(T, shift, v, w)) {
            shift = -lambda + eps;
            eps *= 10.0;
            if (eps > 1.0) throw std::runtime_error("inverse_iteration: singular shift");
        }
        double nrm = 0.0;
        for (double t : w) nrm += t * t;
        nrm = std::sqrt(nrm);
        for (std::size_t i = 0; i < n; ++i) v[i] = w[i] / nrm;
    }
    return v;
}

}  // namespace notchwall
