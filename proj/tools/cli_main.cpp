// Command-line front door: solve / shoot / transform / dynamics / path /
// spectrum / verify / sweep. Every JSON report records the seed and the
// resolved configuration so runs can be replayed byte-for-byte.

#include <algorithm>
#include <cmath>
#include <cstdint>
#include <future>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "notchwall/dynamics.hpp"
#include "notchwall/energy.hpp"
#include "notchwall/io.hpp"
#include "notchwall/paths.hpp"
#include "notchwall/solver.hpp"
#include "notchwall/spectral.hpp"
#include "notchwall/transforms.hpp"

using json = nlohmann::json;
using namespace notchwall;

namespace {

struct Common {
    std::string profile_spec = "plateau:0.5,1,0.25";
    double L = 20.0;
    std::size_t n = 2001;
    std::uint64_t seed = 0;
    std::string report_path;

    NotchProfile profile() const { return io::parse_profile_spec(profile_spec); }
    Grid grid() const { return Grid(L, n); }

    json base_report(const char* command) const {
        json j;
        j["command"] = command;
        j["seed"] = seed;
        j["profile"] = json::parse(io::profile_to_json_text(profile()));
        j["grid"] = {{"L", L}, {"n", n}, {"h", grid().h}};
        return j;
    }
};

void add_common(CLI::App* cmd, Common& c) {
    cmd->add_option("--profile", c.profile_spec,
                    "profile spec (plateau:s0,a,ramp | cosine:s0,a | pwl:x,s;... | uniform | file.json)");
    cmd->add_option("--L", c.L, "half-length of the truncated domain");
    cmd->add_option("--n", c.n, "node count (odd)");
    cmd->add_option("--seed", c.seed, "RNG seed, recorded in reports");
    cmd->add_option("--report", c.report_path, "write a JSON report here");
}

void emit_report(const Common& c, const json& j) {
    const std::string text = j.dump(2) + "\n";
    if (!c.report_path.empty())
        io::spit(c.report_path, text);
    else
        std::cout << text;
}

json energy_json(const EnergyReport& r) { return json::parse(io::energy_report_json(r)); }

void emit_plot_script(const std::string& path, const std::string& csv, const std::string& xcol,
                      const std::string& ycol) {
    std::string s;
    s += "#!/usr/bin/env python3\n";
    s += "import matplotlib.pyplot as plt\nimport csv\n";
    s += "xs, ys = [], []\n";
    s += "with open(" + json(csv).dump() + ") as f:\n";
    s += "    for row in csv.DictReader(f):\n";
    s += "        xs.append(float(row[" + json(xcol).dump() + "]))\n";
    s += "        ys.append(float(row[" + json(ycol).dump() + "]))\n";
    s += "plt.plot(xs, ys)\nplt.xlabel(" + json(xcol).dump() + ")\nplt.ylabel(" +
         json(ycol).dump() + ")\nplt.grid(True)\nplt.savefig(" +
         json(csv + ".png").dump() + ", dpi=150)\n";
    io::spit(path, s);
}

AngleField load_or_solve(const std::string& init_csv, const Common& c, const SolveOptions& opts) {
    if (!init_csv.empty()) {
        io::WallData w = io::read_wall_csv(init_csv);
        if (w.grid != c.grid()) throw std::runtime_error("init wall grid does not match --L/--n");
        return std::move(w.theta);
    }
    SolveResult s = minimize(c.profile(), c.grid(), opts);
    if (!s.converged) throw std::runtime_error("internal solve did not converge");
    return std::move(s.theta);
}

int cmd_solve(const Common& c, const SolveOptions& opts, const std::string& out_csv,
              const std::string& plot) {
    const NotchProfile p = c.profile();
    const Grid g = c.grid();
    SolveResult s = minimize(p, g, opts);
    json j = c.base_report("solve");
    j["energy"] = energy_json(s.report);
    j["iterations"] = s.iterations;
    j["converged"] = s.converged;
    j["monotone"] = s.monotone;
    j["odd_defect"] = s.odd_defect;
    j["zero"] = first_zero(s.theta, g);
    if (!out_csv.empty()) {
        io::write_wall_csv(out_csv, g, s.theta, p);
        if (!plot.empty()) emit_plot_script(plot, out_csv, "x", "theta");
    }
    emit_report(c, j);
    return s.converged ? 0 : 2;
}

int cmd_shoot(const Common& c, double x0, const std::string& out_csv) {
    const NotchProfile p = c.profile();
    const Grid g = c.grid();
    ShootResult s = shoot(p, g, x0);
    json j = c.base_report("shoot");
    j["x0"] = x0;
    j["slope_right"] = s.slope_right;
    j["slope_left"] = s.slope_left;
    j["bisections"] = s.bisections;
    j["energy"] = energy_json(energy(s.theta, p, g));
    if (!out_csv.empty()) io::write_wall_csv(out_csv, g, s.theta, p);
    emit_report(c, j);
    return 0;
}

int cmd_transform(const Common& c, const std::string& in_csv, const std::string& chain,
                  const std::string& out_csv) {
    const NotchProfile p = c.profile();
    const Grid g = c.grid();
    const EnergyWorkspace ws(p, g);
    AngleField theta = load_or_solve(in_csv, c, {});
    std::vector<std::string> names;
    std::stringstream ss(chain);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty()) names.push_back(item);
    const std::vector<TransformResult> steps = apply_chain(theta, names, p, ws);
    json j = c.base_report("transform");
    j["chain"] = names;
    json arr = json::array();
    for (const auto& st : steps) {
        json s;
        s["name"] = st.report.name;
        s["energy_before"] = st.report.energy_before;
        s["energy_after"] = st.report.energy_after;
        s["changed"] = st.report.changed;
        if (std::isfinite(st.report.rho)) s["rho"] = st.report.rho;
        arr.push_back(std::move(s));
    }
    j["steps"] = std::move(arr);
    if (!out_csv.empty() && !steps.empty())
        io::write_wall_csv(out_csv, g, steps.back().theta, p);
    emit_report(c, j);
    return 0;
}

int cmd_dynamics(const Common& c, const std::string& init_csv, const std::string& perturb,
                 LLGOptions llg, const std::string& traj_csv, const std::string& plot) {
    const NotchProfile p = c.profile();
    const Grid g = c.grid();
    const EnergyWorkspace ws(p, g);

    AngleField wall = load_or_solve(init_csv, c, {});
    MagnetizationField m0 = unlift(wall, RotationAngle(0.0));
    if (!perturb.empty()) {
        double amp = 0.1, width = 1.0;
        std::uint64_t pseed = c.seed;
        std::sscanf(perturb.c_str(), "%lf,%lf,%llu", &amp, &width,
                    reinterpret_cast<unsigned long long*>(&pseed));
        std::mt19937_64 rng(pseed);
        std::uniform_real_distribution<double> cdist(-g.L / 2, g.L / 2);
        const double ctr = cdist(rng);
        for (std::size_t i = 1; i + 1 < g.n; ++i) {
            const double r = (g.node(i) - ctr) / width;
            m0[i].z += amp * std::exp(-r * r);
            m0[i] = m0[i].normalized();
        }
    }
    LLGTrajectory tr = relax(m0, llg, p, g, &wall);
    json j = c.base_report("dynamics");
    j["alpha_gilbert"] = llg.alpha_gilbert;
    j["dt"] = llg.dt > 0 ? llg.dt : 0.2 * g.h * g.h * p.s0();
    j["t_end"] = llg.t_end;
    j["final_time"] = tr.final_time;
    j["final_energy"] = tr.energies.back();
    j["final_distance_mod_rotation"] = tr.distances.back();
    j["stopped_early"] = tr.stopped_early;
    auto [r1, r2] = mobile_frame_norms(tr.final_field, wall, ws);
    j["mobile_frame"] = {{"r1_norm", r1}, {"r2_norm", r2}};
    if (!traj_csv.empty()) {
        io::write_trajectory_csv(traj_csv, tr.times, tr.energies, tr.distances);
        if (!plot.empty()) emit_plot_script(plot, traj_csv, "t", "energy");
    }
    emit_report(c, j);
    return 0;
}

int cmd_path(const Common& c, const std::string& from_csv, const std::string& to_csv,
             std::size_t samples, const std::string& out_csv, const std::string& plot) {
    const NotchProfile p = c.profile();
    const Grid g = c.grid();
    AngleField a = load_or_solve(from_csv, c, {});
    PathSample ps;
    if (to_csv.empty()) {
        ps = convex_path_profile(a, p, g, samples);
    } else {
        io::WallData b = io::read_wall_csv(to_csv);
        if (b.grid != g) throw std::runtime_error("--to wall grid does not match --L/--n");
        ps = composite_path(a, b.theta, p, g, samples);
    }
    json j = c.base_report("path");
    j["samples"] = ps.lambdas.size();
    j["max_energy"] = ps.max_energy;
    j["max_lambda"] = ps.max_lambda;
    j["margin"] = ps.margin;
    j["x0"] = ps.x0;
    if (!out_csv.empty()) {
        io::write_path_csv(out_csv, ps.lambdas, ps.energies);
        if (!plot.empty()) emit_plot_script(plot, out_csv, "lambda", "energy");
    }
    emit_report(c, j);
    return 0;
}

int cmd_spectrum(const Common& c, const std::string& in_csv, std::size_t probes) {
    const NotchProfile p = c.profile();
    const Grid g = c.grid();
    AngleField wall = load_or_solve(in_csv, c, {});
    const SpectralReport r = spectral_report(wall, p, g, probes, c.seed);
    json j = c.base_report("spectrum");
    j["alpha"] = r.alpha;
    j["kernel_residual"] = r.kernel_residual;
    j["factorization_gap"] = r.factorization_gap;
    j["iterations"] = r.iterations;
    j["wall_converged"] = r.wall_converged;
    emit_report(c, j);
    return 0;
}

int cmd_verify(const Common& c, bool decay, bool monotone, bool defect, bool odd) {
    const NotchProfile p = c.profile();
    const Grid g = c.grid();
    if (!decay && !monotone && !defect && !odd) decay = monotone = defect = true;
    SolveResult s = minimize(p, g);
    json j = c.base_report("verify");
    bool ok = s.converged;
    json checks;
    checks["converged"] = s.converged;
    if (monotone) {
        checks["monotone"] = s.monotone;
        ok = ok && s.monotone;
    }
    if (defect) {
        const bool pass = s.report.defect_min >= -1e-5;
        checks["defect_min"] = s.report.defect_min;
        checks["defect_nonnegative"] = pass;
        ok = ok && pass;
    }
    if (decay) {
        const std::vector<double> margins = decay_check(s.theta, p, g);
        const double worst = *std::min_element(margins.begin(), margins.end());
        const bool pass = worst >= -1e-8;
        checks["decay_margin_min"] = worst;
        checks["decay_bound"] = pass;
        ok = ok && pass;
    }
    if (odd) {
        const bool pass = s.odd_defect <= 1e-6;
        checks["odd_defect"] = s.odd_defect;
        checks["odd"] = pass;
        ok = ok && pass;
    }
    j["checks"] = std::move(checks);
    j["pass"] = ok;
    emit_report(c, j);
    return ok ? 0 : 1;
}

int cmd_sweep(const Common& c, const std::string& s0_list, double a, double ramp,
              std::size_t samples) {
    std::vector<double> s0s;
    std::stringstream ss(s0_list);
    std::string cell;
    while (std::getline(ss, cell, ','))
        if (!cell.empty()) s0s.push_back(std::stod(cell));
    if (s0s.empty()) throw std::runtime_error("sweep: empty --s0-list");

    const Grid g = c.grid();
    auto one = [&](double s0) {
        const NotchProfile p = s0 >= 1.0 ? NotchProfile::plateau(1.0, a, 0.0)
                                         : NotchProfile::plateau(s0, a, ramp);
        SolveResult s = minimize(p, g);
        PathSample ps = composite_path(s.theta, s.theta, p, g, samples);
        json j;
        j["s0"] = s0;
        j["converged"] = s.converged;
        j["energy"] = s.report.total;
        j["max_path_energy"] = ps.max_energy;
        j["margin"] = ps.margin;
        return j;
    };
    std::vector<std::future<json>> futs;
    futs.reserve(s0s.size());
    for (double s0 : s0s) futs.push_back(std::async(std::launch::async, one, s0));
    json rows = json::array();
    for (auto& f : futs) rows.push_back(f.get());

    json j = c.base_report("sweep");
    j["a"] = a;
    j["ramp"] = ramp;
    j["rows"] = std::move(rows);
    emit_report(c, j);
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"domain walls in notched nanowires: solve, audit, and stress-test"};
    app.require_subcommand(1);
    app.set_config("--config", "", "read options from a config file");

    Common c;
    SolveOptions sopts;
    std::string out_csv, plot, in_csv, to_csv, chain = "threshold,reflect,envelope";
    std::string perturb, traj_csv, s0_list = "0.5,0.6,0.7,0.8,0.9";
    double x0 = 0.0, a = 1.0, ramp = 0.25;
    std::size_t samples = 102, probes = 50;
    LLGOptions llg;
    bool v_decay = false, v_monotone = false, v_defect = false, v_odd = false, use_gd = false;

    auto* solve_cmd = app.add_subcommand("solve", "minimize the wall energy");
    add_common(solve_cmd, c);
    solve_cmd->add_option("--out", out_csv, "wall CSV output");
    solve_cmd->add_option("--plot-script", plot, "emit a matplotlib script");
    solve_cmd->add_option("--max-iters", sopts.max_iters);
    solve_cmd->add_option("--grad-tol", sopts.grad_tol);
    solve_cmd->add_flag("--gd", use_gd, "plain gradient descent instead of Newton");

    auto* shoot_cmd = app.add_subcommand("shoot", "shooting method in the y-variable");
    add_common(shoot_cmd, c);
    shoot_cmd->add_option("--x0", x0, "prescribed zero of the wall");
    shoot_cmd->add_option("--out", out_csv);

    auto* tr_cmd = app.add_subcommand("transform", "apply the rearrangement chain");
    add_common(tr_cmd, c);
    tr_cmd->add_option("--in", in_csv, "input wall CSV (default: solve first)");
    tr_cmd->add_option("--chain", chain, "comma list: threshold,reflect,envelope,symmetrize,localize");
    tr_cmd->add_option("--out", out_csv);

    auto* dyn_cmd = app.add_subcommand("dynamics", "LLG relaxation");
    add_common(dyn_cmd, c);
    dyn_cmd->add_option("--init", in_csv, "initial wall CSV (default: solve first)");
    dyn_cmd->add_option("--perturb", perturb, "amp,width,seed transverse bump");
    dyn_cmd->add_option("--alpha", llg.alpha_gilbert);
    dyn_cmd->add_option("--dt", llg.dt);
    dyn_cmd->add_option("--t-end", llg.t_end);
    dyn_cmd->add_option("--record-every", llg.record_every);
    dyn_cmd->add_option("--traj", traj_csv, "trajectory CSV output");
    dyn_cmd->add_option("--plot-script", plot);

    auto* path_cmd = app.add_subcommand("path", "mountain-pass path energies");
    add_common(path_cmd, c);
    path_cmd->add_option("--from", in_csv, "first endpoint wall CSV (default: solve)");
    path_cmd->add_option("--to", to_csv, "second endpoint (composite path); omit for P_lambda only");
    path_cmd->add_option("--samples", samples);
    path_cmd->add_option("--out", out_csv);
    path_cmd->add_option("--plot-script", plot);

    auto* sp_cmd = app.add_subcommand("spectrum", "linearized operators audit");
    add_common(sp_cmd, c);
    sp_cmd->add_option("--in", in_csv, "wall CSV (default: solve first)");
    sp_cmd->add_option("--probes", probes);

    auto* ver_cmd = app.add_subcommand("verify", "solve and check paper properties");
    add_common(ver_cmd, c);
    ver_cmd->add_flag("--decay", v_decay);
    ver_cmd->add_flag("--monotone", v_monotone);
    ver_cmd->add_flag("--defect", v_defect);
    ver_cmd->add_flag("--odd", v_odd);

    auto* sw_cmd = app.add_subcommand("sweep", "notch-depth sweep of energies and margins");
    add_common(sw_cmd, c);
    sw_cmd->add_option("--s0-list", s0_list);
    sw_cmd->add_option("--a", a);
    sw_cmd->add_option("--ramp", ramp);
    sw_cmd->add_option("--samples", samples);

    CLI11_PARSE(app, argc, argv);
    sopts.use_newton = !use_gd;
    sopts.seed = c.seed;

    try {
        if (solve_cmd->parsed()) return cmd_solve(c, sopts, out_csv, plot);
        if (shoot_cmd->parsed()) return cmd_shoot(c, x0, out_csv);
        if (tr_cmd->parsed()) return cmd_transform(c, in_csv, chain, out_csv);
        if (dyn_cmd->parsed()) return cmd_dynamics(c, in_csv, perturb, llg, traj_csv, plot);
        if (path_cmd->parsed()) return cmd_path(c, in_csv, to_csv, samples, out_csv, plot);
        if (sp_cmd->parsed()) return cmd_spectrum(c, in_csv, probes);
        if (ver_cmd->parsed()) return cmd_verify(c, v_decay, v_monotone, v_defect, v_odd);
        if (sw_cmd->parsed()) return cmd_sweep(c, s0_list, a, ramp, samples);
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
