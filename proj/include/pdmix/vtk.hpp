#pragma once

// Legacy VTK (ASCII 3.0) field dumps, one file per region.

#include "pdmix/analysis.hpp"

#include <cstdio>
#include <fstream>
#include <ostream>
#include <string>
#include <vector>

namespace pdmix {

namespace detail {

/// Triangles of one region with their vertices renumbered compactly.
struct RegionGrid {
    std::vector<std::size_t> points;   // mesh vertex ids
    std::vector<std::size_t> local;    // mesh vertex id -> local id or npos
    std::vector<std::size_t> cells;    // mesh triangle ids
};

inline RegionGrid region_grid(const BipartiteMesh& m, Region r)
{
    RegionGrid g;
    g.local.assign(m.vertices().size(), npos);
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        const auto& t = m.triangle(k);
        if (t.region != r) continue;
        g.cells.push_back(k);
        for (auto v : t.vertices) {
            if (g.local[v] == npos) {
                g.local[v] = g.points.size();
                g.points.push_back(v);
            }
        }
    }
    return g;
}

inline std::string num(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.10g", v);
    return buf;
}

inline void write_grid(std::ostream& os, const BipartiteMesh& m, const RegionGrid& g, const std::string& title)
{
    os << "# vtk DataFile Version 3.0\n" << title << "\nASCII\nDATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << g.points.size() << " double\n";
    for (auto v : g.points) os << num(m.vertex(v).x) << ' ' << num(m.vertex(v).y) << " 0\n";
    os << "CELLS " << g.cells.size() << ' ' << 4 * g.cells.size() << '\n';
    for (auto k : g.cells) {
        const auto& t = m.triangle(k).vertices;
        os << "3 " << g.local[t[0]] << ' ' << g.local[t[1]] << ' ' << g.local[t[2]] << '\n';
    }
    os << "CELL_TYPES " << g.cells.size() << '\n';
    for (std::size_t i = 0; i < g.cells.size(); ++i) os << "5\n";
}

} // namespace detail

/// Omega1: cell data p1 and u1 sampled at centroids.
inline void write_region1_vtk(const BipartiteMesh& m, const SolutionFields& s, std::ostream& os)
{
    const auto g = detail::region_grid(m, Region::one);
    detail::write_grid(os, m, g, "omega1 h_inv=" + std::to_string(m.level_inv()));
    const DiscreteEvaluator h{m, s};
    os << "CELL_DATA " << g.cells.size() << "\nSCALARS p1 double 1\nLOOKUP_TABLE default\n";
    for (auto k : g.cells) os << detail::num(h.p1(k)) << '\n';
    os << "VECTORS u1 double\n";
    for (auto k : g.cells) {
        const Vec2 u = h.u1(k, m.centroid(k));
        os << detail::num(u.x) << ' ' << detail::num(u.y) << " 0\n";
    }
}

/// Omega2: point data p2, cell data u2.
inline void write_region2_vtk(const BipartiteMesh& m, const SolutionFields& s, std::ostream& os)
{
    const auto g = detail::region_grid(m, Region::two);
    detail::write_grid(os, m, g, "omega2 h_inv=" + std::to_string(m.level_inv()));
    os << "POINT_DATA " << g.points.size() << "\nSCALARS p2 double 1\nLOOKUP_TABLE default\n";
    for (auto v : g.points) os << detail::num(s.p2[static_cast<Eigen::Index>(s.layout.vertex_to_p2[v])]) << '\n';
    os << "CELL_DATA " << g.cells.size() << "\nVECTORS u2 double\n";
    for (auto k : g.cells) os << detail::num(s.u2[k].x) << ' ' << detail::num(s.u2[k].y) << " 0\n";
}

/// Writes region1_<h_inv>.vtk and region2_<h_inv>.vtk into dir.
inline void write_field_dumps(const BipartiteMesh& m, const SolutionFields& s, const std::string& dir)
{
    const std::string tag = std::to_string(m.level_inv());
    for (int r = 1; r <= 2; ++r) {
        const std::string path = dir + "/region" + std::to_string(r) + "_" + tag + ".vtk";
        std::ofstream os(path);
        if (!os) throw std::runtime_error("cannot open " + path);
        if (r == 1) write_region1_vtk(m, s, os);
        else write_region2_vtk(m, s, os);
        if (!os) throw std::runtime_error("write failed: " + path);
    }
}

} // namespace pdmix
