#pragma once

#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "notchwall/grid.hpp"

namespace notchwall {

/// Cross-section profile s(x): equal to 1 outside [-a, a], bounded below by
/// s0 > 0 inside. Three families: closed-form plateau and cosine dips, plus
/// piecewise-linear node lists as the universal interchange format.
class NotchProfile {
  public:
    enum class Kind { PiecewiseLinear, Plateau, CosineDip };

    static NotchProfile plateau(double s0, double a, double ramp);
    static NotchProfile cosine_dip(double s0, double a);
    static NotchProfile piecewise_linear(std::vector<std::pair<double, double>> nodes);

    double operator()(double x) const;

    Kind kind() const { return kind_; }
    double s0() const { return s0_; }
    /// Support half-width: s(x) = 1 for |x| > a.
    double a() const { return a_; }
    double ramp() const { return ramp_; }
    const std::vector<std::pair<double, double>>& nodes() const { return nodes_; }

    /// 1 - min s; zero for the notchless wire.
    double depth() const { return 1.0 - s0_; }
    bool notchless() const { return depth() < 1e-15; }

    /// Location of the deepest point of the notch (leftmost argmin on ties).
    double notch_center() const;

    /// Lipschitz constant of the family (metadata; +inf for a zero-length ramp).
    double lipschitz() const { return lipschitz_; }

    /// Abscissae where s' jumps (empty for C^1 families); sorted.
    std::vector<double> kinks() const;

    std::string kind_name() const;

  private:
    NotchProfile() = default;

    Kind kind_ = Kind::Plateau;
    double s0_ = 1.0;
    double a_ = 1.0;
    double ramp_ = 0.0;
    std::vector<std::pair<double, double>> nodes_;
    double lipschitz_ = 0.0;
};

struct ProfileClass {
    bool general = true;
    bool unimodal = false;
    bool symmetric = false;
    double tol = 1e-10;
};

/// Sampled monotonicity/symmetry classification. symmetric implies unimodal.
ProfileClass classify(const NotchProfile& profile, double tol = 1e-10);

/// Tabulated Sturm-Liouville change of variable y(x) = int_0^x du/s(u),
/// its inverse, and the transported coefficient sigma(y) = s(x(y)).
class ChangeOfVariable {
  public:
    ChangeOfVariable(const NotchProfile& profile, const Grid& grid);

    /// y at grid node i (exact table value).
    double y_node(std::size_t i) const { return y_[i]; }
    const std::vector<double>& y_table() const { return y_; }

    /// y(x) for arbitrary x; linear in the table, exact slope-1 extension
    /// beyond the grid (where s = 1).
    double y_of_x(double x) const;
    double x_of_y(double y) const;
    double sigma(double y) const;

    double a_minus() const { return a_minus_; }
    double a_plus() const { return a_plus_; }

  private:
    Grid grid_;
    NotchProfile profile_;
    std::vector<double> y_;
    double a_minus_ = 0.0, a_plus_ = 0.0;
};

}  // namespace notchwall
