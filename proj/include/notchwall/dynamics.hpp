#pragma once

#include <cstdint>
#include <stdexcept>
#include <vector>

#include "notchwall/energy.hpp"
#include "notchwall/field.hpp"
#include "notchwall/grid.hpp"
#include "notchwall/profile.hpp"

namespace notchwall {

struct LLGOptions {
    double alpha_gilbert = 0.5;
    double dt = 0.0;         // 0: auto 0.2 * h^2 * s0
    double t_end = 100.0;
    std::size_t record_every = 100;
    double stop_tol = 0.0;   // ||m x H||_s threshold; 0 disables early stop
};

struct StepFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct LLGTrajectory {
    std::vector<double> times;
    std::vector<double> energies;
    std::vector<double> distances;  // mod-rotation distance to the reference (NaN without one)
    MagnetizationField final_field;
    double final_time = 0.0;
    bool stopped_early = false;
};

/// H(m) = (1/s)(s m')' - (m2 e2 + m3 e3), flux form with trapezoid weights so
/// that <H(m), dm>_s = -dE_s(m).dm exactly; the end nodes are pinned
/// (H = 0 there).
std::vector<Vec3> effective_field(const MagnetizationField& m, const EnergyWorkspace& ws);

/// ||m x H||_s (residual of stationarity).
double torque_norm(const MagnetizationField& m, const EnergyWorkspace& ws);

/// One explicit midpoint (RK2) step of
///   dm/dt = -m x H - alpha m x (m x H),
/// renormalized per node. The step is rejected and dt halved (up to 10
/// times) if the energy rises beyond 1e-10; StepFailure after that.
/// Returns the dt actually taken.
double llg_step(MagnetizationField& m, double dt, double alpha_gilbert,
                const EnergyWorkspace& ws);

/// Fitted rotation angle: phi = atan2(<m3, cos theta_ref>_s, <m2, cos theta_ref>_s).
double fit_rotation(const MagnetizationField& m, const AngleField& theta_ref,
                    const EnergyWorkspace& ws);

/// min over phi of sup-node |m - R_phi w_ref| using the fitted angle.
double distance_mod_rotation(const MagnetizationField& m, const AngleField& theta_ref,
                             const EnergyWorkspace& ws);

/// Integrate until t_end or the torque norm drops below stop_tol.
/// `theta_ref` (optional, pass nullptr to skip) provides the reference wall
/// for the distance series.
LLGTrajectory relax(const MagnetizationField& m0, const LLGOptions& opts,
                    const NotchProfile& profile, const Grid& grid,
                    const AngleField* theta_ref = nullptr);

/// Mobile-frame diagnostic: weighted norms of the transverse coordinates
/// r1 = <m, (cos theta, -sin theta cos phi, -sin theta sin phi)> and
/// r2 = <m, e3 rotated by phi>, after fitting phi.
std::pair<double, double> mobile_frame_norms(const MagnetizationField& m,
                                             const AngleField& theta_ref,
                                             const EnergyWorkspace& ws);

}  // namespace notchwall
