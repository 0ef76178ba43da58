#include "notchwall/io.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

#include <json.hpp>

using nlohmann::json;

namespace notchwall::io {

namespace {

std::vector<std::vector<double>> read_csv_columns(const std::string& path, std::size_t ncols,
                                                  const char* who) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error(std::string(who) + ": cannot open " + path);
    std::string line;
    std::getline(in, line);  // header
    std::vector<std::vector<double>> cols(ncols);
    std::size_t lineno = 1;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::stringstream ss(line);
        std::string cell;
        for (std::size_t c = 0; c < ncols; ++c) {
            if (!std::getline(ss, cell, ','))
                throw std::runtime_error(std::string(who) + ": " + path + " line " +
                                         std::to_string(lineno) + ": expected " +
                                         std::to_string(ncols) + " columns");
            cols[c].push_back(std::stod(cell));
        }
    }
    return cols;
}

Grid grid_from_x(const std::vector<double>& x, const char* who) {
    if (x.size() < 3 || x.size() % 2 == 0)
        throw std::runtime_error(std::string(who) + ": need an odd number (>= 3) of rows");
    const double h = x[1] - x[0];
    for (std::size_t i = 0; i + 1 < x.size(); ++i)
        if (std::abs(x[i + 1] - x[i] - h) > 1e-9 * std::max(1.0, std::abs(h)))
            throw std::runtime_error(std::string(who) + ": x column is not uniform");
    if (std::abs(x.front() + x.back()) > 1e-9)
        throw std::runtime_error(std::string(who) + ": grid must be symmetric about 0");
    return Grid(x.back(), x.size());
}

}  // namespace

void write_wall_csv(const std::string& path, const Grid& grid, const AngleField& theta,
                    const NotchProfile& profile) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_wall_csv: cannot open " + path);
    out << "x,theta,s\n";
    char buf[128];
    for (std::size_t i = 0; i < grid.n; ++i) {
        const double x = grid.node(i);
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", x, theta[i], profile(x));
        out << buf;
    }
}

WallData read_wall_csv(const std::string& path) {
    auto cols = read_csv_columns(path, 3, "read_wall_csv");
    WallData w{grid_from_x(cols[0], "read_wall_csv"), AngleField(std::move(cols[1]))};
    return w;
}

void write_magnetization_csv(const std::string& path, const Grid& grid,
                             const MagnetizationField& m) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_magnetization_csv: cannot open " + path);
    out << "x,m1,m2,m3\n";
    char buf[192];
    for (std::size_t i = 0; i < grid.n; ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g,%.12g\n", grid.node(i), m[i].x, m[i].y,
                      m[i].z);
        out << buf;
    }
}

MagnetizationField read_magnetization_csv(const std::string& path, Grid* grid_out) {
    auto cols = read_csv_columns(path, 4, "read_magnetization_csv");
    if (grid_out) *grid_out = grid_from_x(cols[0], "read_magnetization_csv");
    MagnetizationField m(cols[0].size());
    for (std::size_t i = 0; i < m.size(); ++i) m[i] = {cols[1][i], cols[2][i], cols[3][i]};
    return m;
}

void write_trajectory_csv(const std::string& path, const std::vector<double>& t,
                          const std::vector<double>& energy, const std::vector<double>& dist) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_trajectory_csv: cannot open " + path);
    out << "t,energy,distance_mod_rotation\n";
    char buf[128];
    for (std::size_t i = 0; i < t.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g,%.12g\n", t[i], energy[i], dist[i]);
        out << buf;
    }
}

void write_path_csv(const std::string& path, const std::vector<double>& lambdas,
                    const std::vector<double>& energies) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("write_path_csv: cannot open " + path);
    out << "lambda,energy\n";
    char buf[96];
    for (std::size_t i = 0; i < lambdas.size(); ++i) {
        std::snprintf(buf, sizeof buf, "%.12g,%.12g\n", lambdas[i], energies[i]);
        out << buf;
    }
}

NotchProfile profile_from_json_text(const std::string& text) {
    const json j = json::parse(text);
    const std::string kind = j.at("kind").get<std::string>();
    if (kind == "plateau")
        return NotchProfile::plateau(j.at("s0").get<double>(), j.at("a").get<double>(),
                                     j.value("ramp", 0.0));
    if (kind == "cosine_dip")
        return NotchProfile::cosine_dip(j.at("s0").get<double>(), j.at("a").get<double>());
    if (kind == "piecewise_linear") {
        std::vector<std::pair<double, double>> nodes;
        for (const auto& nd : j.at("nodes"))
            nodes.emplace_back(nd.at(0).get<double>(), nd.at(1).get<double>());
        return NotchProfile::piecewise_linear(std::move(nodes));
    }
    throw std::runtime_error("profile_from_json_text: unknown kind '" + kind + "'");
}

std::string profile_to_json_text(const NotchProfile& p) {
    json j;
    j["kind"] = p.kind_name();
    switch (p.kind()) {
        case NotchProfile::Kind::Plateau:
            j["s0"] = p.s0();
            j["a"] = p.a();
            j["ramp"] = p.ramp();
            break;
        case NotchProfile::Kind::CosineDip:
            j["s0"] = p.s0();
            j["a"] = p.a();
            break;
        case NotchProfile::Kind::PiecewiseLinear: {
            json nodes = json::array();
            for (const auto& [x, s] : p.nodes()) nodes.push_back(json::array({x, s}));
            j["nodes"] = std::move(nodes);
            break;
        }
    }
    return j.dump(2);
}

NotchProfile parse_profile_spec(const std::string& spec) {
    if (spec == "uniform" || spec == "notchless") return NotchProfile::plateau(1.0, 1.0, 0.0);
    const auto colon = spec.find(':');
    if (colon == std::string::npos) {
        // treat as a file path
        return profile_from_json_text(slurp(spec));
    }
    const std::string head = spec.substr(0, colon);
    const std::string rest = spec.substr(colon + 1);
    auto nums = [](const std::string& s, char sep) {
        std::vector<double> v;
        std::stringstream ss(s);
        std::string cell;
        while (std::getline(ss, cell, sep))
            if (!cell.empty()) v.push_back(std::stod(cell));
        return v;
    };
    if (head == "plateau") {
        const auto v = nums(rest, ',');
        if (v.size() != 3) throw std::runtime_error("plateau spec needs s0,a,ramp");
        return NotchProfile::plateau(v[0], v[1], v[2]);
    }
    if (head == "cosine" || head == "cosine_dip") {
        const auto v = nums(rest, ',');
        if (v.size() != 2) throw std::runtime_error("cosine spec needs s0,a");
        return NotchProfile::cosine_dip(v[0], v[1]);
    }
    if (head == "pwl" || head == "piecewise_linear") {
        std::vector<std::pair<double, double>> nodes;
        std::stringstream ss(rest);
        std::string seg;
        while (std::getline(ss, seg, ';')) {
            const auto v = nums(seg, ',');
            if (v.size() != 2) throw std::runtime_error("pwl spec segment needs x,s");
            nodes.emplace_back(v[0], v[1]);
        }
        return NotchProfile::piecewise_linear(std::move(nodes));
    }
    throw std::runtime_error("parse_profile_spec: unknown family '" + head + "'");
}

std::string energy_report_json(const EnergyReport& r) {
    json j;
    j["exchange"] = r.exchange;
    j["anisotropy"] = r.anisotropy;
    j["tail_energy"] = r.tail_energy;
    j["total"] = r.total;
    j["grad_norm"] = r.grad_norm;
    j["defect_min"] = r.defect_min;
    j["defect_max"] = r.defect_max;
    return j.dump(2);
}

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw std::runtime_error("slurp: cannot open " + path);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

void spit(const std::string& path, const std::string& content) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw std::runtime_error("spit: cannot open " + path);
    out << content;
}

}  // namespace notchwall::io
