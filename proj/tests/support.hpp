// Shared helpers for the test suites: small system builders, brute-force
// oracles, and output format validators. Everything in here is independent
// of the implementation paths it is used to check.
#pragma once

#include <cmath>
#include <cstdint>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "homogenization.hpp"
#include "lattice.hpp"
#include "simulation.hpp"

namespace perikon::test {

struct BlockSpec {
    int nx = 9, ny = 9, nz = 9;
    double dx = 0.01;
    double m_ratio = 4.0;
    double youngs = 32.0e9;
    double poisson = 0.2;
    double density = 2400.0;
    bool failure_enabled = false;
    bool eos_enabled = false;
    // Generous defaults keep bonds intact unless a test tightens them.
    double s0_tensile = 1.0;
    double s0_compressive = 1.0;
};

inline Simulation make_block(const BlockSpec& spec) {
    GeometrySpec g;
    g.size_x = spec.nx * spec.dx;
    g.size_y = spec.ny * spec.dx;
    g.size_z = spec.nz * spec.dx;
    g.dx = spec.dx;
    g.m_ratio = spec.m_ratio;

    SimulationSetup setup;
    setup.lattice = build_lattice(g);
    const Moduli m = moduli_from_youngs(spec.youngs, spec.poisson);
    for (auto& mat : setup.material) mat = {m, spec.density};
    setup.failure.enabled = spec.failure_enabled;
    for (auto& s : setup.failure.s0) s = {spec.s0_tensile, spec.s0_compressive};
    setup.eos.enabled = spec.eos_enabled;
    return Simulation(std::move(setup));
}

// O(N^2) reference neighbor lists: sorted ids within the horizon, using
// the same snapped search radius as the production path.
inline std::vector<std::vector<std::uint32_t>> brute_force_neighbors(
    const std::vector<Vec3>& pts, double delta) {
    const double r = horizon_search_radius(delta);
    const double r2 = r * r;
    std::vector<std::vector<std::uint32_t>> out(pts.size());
    for (std::size_t i = 0; i < pts.size(); ++i)
        for (std::size_t j = 0; j < pts.size(); ++j)
            if (i != j && norm2(pts[j] - pts[i]) <= r2)
                out[i].push_back(static_cast<std::uint32_t>(j));
    return out;
}

// Minimal VTK legacy POLYDATA grammar check; returns an empty string when
// the file conforms, otherwise a description of the first violation.
inline std::string validate_vtk(const std::string& path) {
    std::ifstream in(path);
    if (!in) return "cannot open " + path;
    std::string line;
    auto next = [&](const char* what) -> bool {
        if (!std::getline(in, line)) {
            line = std::string("missing ") + what;
            return false;
        }
        return true;
    };
    if (!next("header") || line.rfind("# vtk DataFile Version", 0) != 0)
        return "bad header: " + line;
    if (!next("title")) return line;
    if (!next("format") || line != "ASCII") return "expected ASCII, got " + line;
    if (!next("dataset") || line != "DATASET POLYDATA") return "expected POLYDATA: " + line;

    std::size_t npoints = 0;
    {
        if (!next("POINTS")) return line;
        std::istringstream ss(line);
        std::string kw, type;
        if (!(ss >> kw >> npoints >> type) || kw != "POINTS") return "bad POINTS line: " + line;
        for (std::size_t i = 0; i < npoints; ++i) {
            if (!next("point row")) return line;
            std::istringstream row(line);
            double x, y, z;
            if (!(row >> x >> y >> z)) return "bad point row: " + line;
            if (!std::isfinite(x) || !std::isfinite(y) || !std::isfinite(z))
                return "non-finite point: " + line;
        }
    }
    {
        if (!next("VERTICES")) return line;
        std::istringstream ss(line);
        std::string kw;
        std::size_t ncells = 0, nints = 0;
        if (!(ss >> kw >> ncells >> nints) || kw != "VERTICES" || ncells != npoints ||
            nints != 2 * npoints)
            return "bad VERTICES line: " + line;
        for (std::size_t i = 0; i < ncells; ++i) {
            if (!next("vertex row")) return line;
            std::istringstream row(line);
            std::size_t one = 0, id = 0;
            if (!(row >> one >> id) || one != 1 || id >= npoints)
                return "bad vertex row: " + line;
        }
    }
    if (std::getline(in, line)) {
        std::istringstream ss(line);
        std::string kw;
        std::size_t n = 0;
        if (!(ss >> kw >> n) || kw != "POINT_DATA" || n != npoints)
            return "bad POINT_DATA line: " + line;
        while (std::getline(in, line)) {
            std::istringstream head(line);
            std::string kind, name, type;
            head >> kind >> name >> type;
            std::size_t rows = npoints;
            std::size_t comps = 0;
            if (kind == "SCALARS") {
                if (!std::getline(in, line) || line.rfind("LOOKUP_TABLE", 0) != 0)
                    return "missing LOOKUP_TABLE after SCALARS " + name;
                comps = 1;
            } else if (kind == "VECTORS") {
                comps = 3;
            } else {
                return "unexpected attribute: " + line;
            }
            for (std::size_t i = 0; i < rows; ++i) {
                if (!std::getline(in, line)) return "truncated attribute " + name;
                std::istringstream row(line);
                double v;
                std::size_t got = 0;
                while (row >> v) {
                    if (!std::isfinite(v)) return "non-finite value in " + name;
                    ++got;
                }
                if (got != comps) return "bad arity in " + name + ": " + line;
            }
        }
    }
    return "";
}

// RFC 4180 check: CRLF line endings and a constant field count; returns
// empty on success.
inline std::string validate_csv(const std::string& path, std::size_t* rows_out = nullptr) {
    std::ifstream in(path, std::ios::binary);
    if (!in) return "cannot open " + path;
    std::string content((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    if (content.empty()) return "empty file";
    std::size_t fields = 0, rows = 0, pos = 0;
    while (pos < content.size()) {
        const std::size_t eol = content.find("\r\n", pos);
        if (eol == std::string::npos) return "line without CRLF terminator";
        const std::string rec = content.substr(pos, eol - pos);
        if (rec.find('\n') != std::string::npos || rec.find('\r') != std::string::npos)
            return "bare CR or LF inside record";
        const std::size_t n = static_cast<std::size_t>(std::count(rec.begin(), rec.end(), ',')) + 1;
        if (rows == 0)
            fields = n;
        else if (n != fields)
            return "inconsistent field count at row " + std::to_string(rows);
        ++rows;
        pos = eol + 2;
    }
    if (rows_out) *rows_out = rows;
    return "";
}

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

}  // namespace perikon::test
