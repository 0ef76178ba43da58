#include "notchwall/profile.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace notchwall {

NotchProfile NotchProfile::plateau(double s0, double a, double ramp) {
    if (!(s0 > 0.0) || s0 > 1.0) throw std::invalid_argument("plateau: s0 must be in (0, 1]");
    if (!(a > 0.0)) throw std::invalid_argument("plateau: a must be positive");
    if (ramp < 0.0 || ramp > a) throw std::invalid_argument("plateau: ramp must be in [0, a]");
    NotchProfile p;
    p.kind_ = Kind::Plateau;
    p.s0_ = s0;
    p.a_ = a;
    p.ramp_ = ramp;
    p.lipschitz_ = (s0 == 1.0) ? 0.0
                 : (ramp > 0.0) ? (1.0 - s0) / ramp
                                : std::numeric_limits<double>::infinity();
    return p;
}

NotchProfile NotchProfile::cosine_dip(double s0, double a) {
    if (!(s0 > 0.0) || s0 > 1.0) throw std::invalid_argument("cosine_dip: s0 must be in (0, 1]");
    if (!(a > 0.0)) throw std::invalid_argument("cosine_dip: a must be positive");
    NotchProfile p;
    p.kind_ = Kind::CosineDip;
    p.s0_ = s0;
    p.a_ = a;
    p.lipschitz_ = (1.0 - s0) * 0.5 * M_PI / a;
    return p;
}

NotchProfile NotchProfile::piecewise_linear(std::vector<std::pair<double, double>> nodes) {
    if (nodes.size() < 2) throw std::invalid_argument("piecewise_linear: need at least 2 nodes");
    for (std::size_t i = 1; i < nodes.size(); ++i)
        if (!(nodes[i].first > nodes[i - 1].first))
            throw std::invalid_argument("piecewise_linear: node abscissae must be strictly sorted");
    double smin = 1.0;
    for (const auto& [x, s] : nodes) {
        (void)x;
        if (s > 1.0 + 1e-12)
            throw std::invalid_argument("piecewise_linear: values above 1 are rejected; "
                                        "renormalize the section before constructing");
        if (!(s > 0.0)) throw std::invalid_argument("piecewise_linear: values must be positive");
        smin = std::min(smin, s);
    }
    if (std::abs(nodes.front().second - 1.0) > 1e-12 || std::abs(nodes.back().second - 1.0) > 1e-12)
        throw std::invalid_argument("piecewise_linear: boundary node values must equal 1");
    NotchProfile p;
    p.kind_ = Kind::PiecewiseLinear;
    p.nodes_ = std::move(nodes);
    p.s0_ = smin;
    double a = 0.0;
    double lip = 0.0;
    for (std::size_t i = 1; i < p.nodes_.size(); ++i) {
        const auto& [x0, s0] = p.nodes_[i - 1];
        const auto& [x1, s1] = p.nodes_[i];
        lip = std::max(lip, std::abs(s1 - s0) / (x1 - x0));
        if (s0 < 1.0 - 1e-15 || s1 < 1.0 - 1e-15) a = std::max({a, std::abs(x0), std::abs(x1)});
    }
    p.a_ = (a > 0.0) ? a : std::max(std::abs(p.nodes_.front().first), std::abs(p.nodes_.back().first));
    p.lipschitz_ = lip;
    return p;
}

double NotchProfile::operator()(double x) const {
    switch (kind_) {
        case Kind::Plateau: {
            const double r = std::abs(x);
            if (r >= a_) return 1.0;
            if (r <= a_ - ramp_) return s0_;
            return s0_ + (1.0 - s0_) * (r - (a_ - ramp_)) / ramp_;
        }
        case Kind::CosineDip: {
            const double r = std::abs(x);
            if (r >= a_) return 1.0;
            return 1.0 - (1.0 - s0_) * 0.5 * (1.0 + std::cos(M_PI * r / a_));
        }
        case Kind::PiecewiseLinear: {
            if (x <= nodes_.front().first || x >= nodes_.back().first) return 1.0;
            auto it = std::upper_bound(nodes_.begin(), nodes_.end(), x,
                                       [](double v, const auto& nd) { return v < nd.first; });
            const auto& [x1, v1] = *it;
            const auto& [x0, v0] = *(it - 1);
            return v0 + (v1 - v0) * (x - x0) / (x1 - x0);
        }
    }
    return 1.0;
}

double NotchProfile::notch_center() const {
    if (notchless()) return 0.0;
    if (kind_ == Kind::Plateau || kind_ == Kind::CosineDip) return 0.0;
    double best_x = 0.0, best_s = 2.0;
    const std::size_t m = 4097;
    for (std::size_t i = 0; i < m; ++i) {
        const double x = -a_ + 2.0 * a_ * double(i) / double(m - 1);
        const double s = (*this)(x);
        if (s < best_s - 1e-15) {
            best_s = s;
            best_x = x;
        }
    }
    return best_x;
}

std::vector<double> NotchProfile::kinks() const {
    if (notchless()) return {};
    switch (kind_) {
        case Kind::Plateau: {
            if (ramp_ == 0.0) return {-a_, a_};
            const double inner = a_ - ramp_;
            if (inner == 0.0) return {-a_, 0.0, a_};
            return {-a_, -inner, inner, a_};
        }
        case Kind::CosineDip:
            return {};  // C^1 at the edges and inside
        case Kind::PiecewiseLinear: {
            std::vector<double> k;
            for (const auto& [x, s] : nodes_) {
                (void)s;
                k.push_back(x);
            }
            return k;
        }
    }
    return {};
}

std::string NotchProfile::kind_name() const {
    switch (kind_) {
        case Kind::Plateau: return "plateau";
        case Kind::CosineDip: return "cosine_dip";
        case Kind::PiecewiseLinear: return "piecewise_linear";
    }
    return "unknown";
}

ProfileClass classify(const NotchProfile& profile, double tol) {
    ProfileClass c;
    c.tol = tol;
    const double a = profile.a();
    const std::size_t m = 4097;
    std::vector<double> s(m);
    for (std::size_t i = 0; i < m; ++i) s[i] = profile(-a + 2.0 * a * double(i) / double(m - 1));

    // unimodal: non-increasing up to the argmin, non-decreasing after
    std::size_t imin = 0;
    for (std::size_t i = 1; i < m; ++i)
        if (s[i] < s[imin]) imin = i;
    bool unimodal = true;
    for (std::size_t i = 1; i <= imin && unimodal; ++i)
        if (s[i] > s[i - 1] + tol) unimodal = false;
    for (std::size_t i = imin + 1; i < m && unimodal; ++i)
        if (s[i] < s[i - 1] - tol) unimodal = false;
    c.unimodal = unimodal;

    bool even = true;
    for (std::size_t i = 0; i < m && even; ++i)
        if (std::abs(s[i] - s[m - 1 - i]) > tol) even = false;
    c.symmetric = even && unimodal;
    return c;
}

ChangeOfVariable::ChangeOfVariable(const NotchProfile& profile, const Grid& grid)
    : grid_(grid), profile_(profile) {
    if (grid.L < profile.a())
        throw std::invalid_argument("ChangeOfVariable: grid must cover the notch support");
    const std::size_t n = grid.n;
    y_.assign(n, 0.0);
    // cumulative midpoint quadrature of 1/s, cells split at profile kinks so
    // the table is exact on piecewise-constant sections with node-aligned
    // jumps; accumulated outward from x = 0 so y is exactly odd for even s
    const std::size_t c = grid.center_index();
    const std::vector<double> kinks = profile.kinks();
    auto cell = [&](double xa, double xb) {
        double acc = 0.0, lo = xa;
        for (double k : kinks)
            if (k > lo && k < xb) {
                acc += (k - lo) / profile(0.5 * (lo + k));
                lo = k;
            }
        return acc + (xb - lo) / profile(0.5 * (lo + xb));
    };
    y_[c] = 0.0;
    for (std::size_t i = c; i + 1 < n; ++i) y_[i + 1] = y_[i] + cell(grid.node(i), grid.node(i + 1));
    for (std::size_t i = c; i > 0; --i) y_[i - 1] = y_[i] - cell(grid.node(i - 1), grid.node(i));
    a_minus_ = y_of_x(-profile.a());
    a_plus_ = y_of_x(profile.a());
}

double ChangeOfVariable::y_of_x(double x) const {
    const double x0 = grid_.node(0), x1 = grid_.node(grid_.n - 1);
    if (x <= x0) return y_.front() + (x - x0);
    if (x >= x1) return y_.back() + (x - x1);
    const double t = (x - x0) / grid_.h;
    const std::size_t i = std::min<std::size_t>(std::size_t(t), grid_.n - 2);
    const double frac = (x - grid_.node(i)) / grid_.h;
    return y_[i] + frac * (y_[i + 1] - y_[i]);
}

double ChangeOfVariable::x_of_y(double y) const {
    if (y <= y_.front()) return grid_.node(0) + (y - y_.front());
    if (y >= y_.back()) return grid_.node(grid_.n - 1) + (y - y_.back());
    auto it = std::upper_bound(y_.begin(), y_.end(), y);
    const std::size_t i = std::size_t(it - y_.begin()) - 1;
    const double frac = (y - y_[i]) / (y_[i + 1] - y_[i]);
    return grid_.node(i) + frac * grid_.h;
}

double ChangeOfVariable::sigma(double y) const {
    if (y < a_minus_ || y > a_plus_) return 1.0;
    return profile_(x_of_y(y));
}

}  // namespace notchwall
