#pragma once

#include <string>
#include <utility>
#include <vector>

#include "notchwall/energy.hpp"
#include "notchwall/field.hpp"
#include "notchwall/grid.hpp"
#include "notchwall/profile.hpp"

namespace notchwall::io {

// --- CSV ------------------------------------------------------------------
// wall CSV:        x,theta,s
// magnetization:   x,m1,m2,m3
// trajectory:      t,energy,distance_mod_rotation
// path profile:    lambda,energy

void write_wall_csv(const std::string& path, const Grid& grid, const AngleField& theta,
                    const NotchProfile& profile);

struct WallData {
    Grid grid;
    AngleField theta;
};
WallData read_wall_csv(const std::string& path);

void write_magnetization_csv(const std::string& path, const Grid& grid,
                             const MagnetizationField& m);
MagnetizationField read_magnetization_csv(const std::string& path, Grid* grid_out = nullptr);

void write_trajectory_csv(const std::string& path, const std::vector<double>& t,
                          const std::vector<double>& energy, const std::vector<double>& dist);

void write_path_csv(const std::string& path, const std::vector<double>& lambdas,
                    const std::vector<double>& energies);

// --- profiles --------------------------------------------------------------
// JSON: {"kind": "plateau", "s0": .., "a": .., "ramp": ..}
//       {"kind": "cosine_dip", "s0": .., "a": ..}
//       {"kind": "piecewise_linear", "nodes": [[x, s], ...]}
// Inline: "plateau:0.5,1,0.25" | "cosine:0.5,1" | "uniform"
//         | "pwl:x0,s0;x1,s1;..." | a path to a .json file

NotchProfile profile_from_json_text(const std::string& text);
std::string profile_to_json_text(const NotchProfile& profile);
NotchProfile parse_profile_spec(const std::string& spec);

// --- reports ---------------------------------------------------------------

std::string energy_report_json(const EnergyReport& r);

/// Reads a whole file (throws on failure) / writes atomically-ish.
std::string slurp(const std::string& path);
void spit(const std::string& path, const std::string& content);

}  // namespace notchwall::io
