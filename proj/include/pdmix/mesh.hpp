#pragma once

// Consistent Cartesian triangulations of the four-quadrant bipartite domain
// (-1,1)^2 with Omega1 = Q1 u Q3 and Omega2 = Q2 u Q4.

#include "pdmix/geometry.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <fstream>
#include <limits>
#include <ostream>
#include <span>
#include <sstream>
#include <stdexcept>
#include <string>
#include <tuple>
#include <vector>

namespace pdmix {

inline constexpr std::size_t npos = std::numeric_limits<std::size_t>::max();

enum class EdgeKind : std::uint8_t {
    interior_one,
    interior_two,
    interface,
    boundary_one,
    boundary_two,
};

/// Input record for a triangle; vertices in counterclockwise order.
struct TriangleSpec {
    std::array<std::size_t, 3> vertices;
    Region region;
    int component; // quadrant index 1..4 for the Cartesian builder
};

struct Triangle {
    std::array<std::size_t, 3> vertices;
    /// edges[k] is the global edge opposite local vertex k.
    std::array<std::size_t, 3> edges;
    Region region;
    int component;
};

struct Edge {
    /// Lower global vertex index first; the global normal is the
    /// clockwise rotation of (vertices[1] - vertices[0]).
    std::array<std::size_t, 2> vertices;
    std::array<std::size_t, 2> triangles{npos, npos};
    EdgeKind kind = EdgeKind::interior_one;
};

struct InterfaceEdge {
    std::size_t edge;
    std::size_t omega1_triangle;
    std::size_t omega2_triangle;
    /// Outer unit normal of the Omega1 triangle (points from Omega1 into Omega2).
    Vec2 normal;
};

class BipartiteMesh {
public:
    /// Builds edge connectivity, classification and interface normals from
    /// raw vertices and region-tagged triangles.
    BipartiteMesh(int level_inv, std::vector<Vec2> vertices, std::span<const TriangleSpec> triangles)
        : level_inv_(level_inv), vertices_(std::move(vertices))
    {
        if (level_inv_ < 1) throw std::invalid_argument("BipartiteMesh: level_inv must be >= 1");
        triangles_.reserve(triangles.size());
        for (const auto& t : triangles) {
            for (auto v : t.vertices) {
                if (v >= vertices_.size()) throw std::out_of_range("BipartiteMesh: vertex index out of range");
            }
            const auto& [a, b, c] = t.vertices;
            if (!(signed_area(vertices_[a], vertices_[b], vertices_[c]) > 0.0)) {
                throw std::invalid_argument("BipartiteMesh: triangle is not counterclockwise");
            }
            triangles_.push_back({t.vertices, {npos, npos, npos}, t.region, t.component});
        }
        build_edges();
    }

    [[nodiscard]] int level_inv() const { return level_inv_; }
    [[nodiscard]] double h() const { return 1.0 / level_inv_; }
    [[nodiscard]] std::span<const Vec2> vertices() const { return vertices_; }
    [[nodiscard]] std::span<const Triangle> triangles() const { return triangles_; }
    [[nodiscard]] std::span<const Edge> edges() const { return edges_; }
    [[nodiscard]] std::span<const InterfaceEdge> interface_edges() const { return interface_; }

    [[nodiscard]] const Vec2& vertex(std::size_t i) const { return vertices_.at(i); }
    [[nodiscard]] const Triangle& triangle(std::size_t i) const { return triangles_.at(i); }
    [[nodiscard]] const Edge& edge(std::size_t i) const { return edges_.at(i); }

    [[nodiscard]] std::array<Vec2, 3> corners(std::size_t tri) const
    {
        const auto& v = triangles_.at(tri).vertices;
        return {vertices_[v[0]], vertices_[v[1]], vertices_[v[2]]};
    }

    [[nodiscard]] double area(std::size_t tri) const
    {
        const auto p = corners(tri);
        return signed_area(p[0], p[1], p[2]);
    }

    [[nodiscard]] Vec2 centroid(std::size_t tri) const
    {
        const auto p = corners(tri);
        return (p[0] + p[1] + p[2]) / 3.0;
    }

    [[nodiscard]] double edge_length(std::size_t e) const
    {
        const auto& v = edges_.at(e).vertices;
        return norm(vertices_[v[1]] - vertices_[v[0]]);
    }

    [[nodiscard]] Vec2 edge_midpoint(std::size_t e) const
    {
        const auto& v = edges_.at(e).vertices;
        return 0.5 * (vertices_[v[0]] + vertices_[v[1]]);
    }

    /// Global unit normal of an edge (clockwise rotation of low->high tangent).
    [[nodiscard]] Vec2 edge_normal(std::size_t e) const
    {
        const auto& v = edges_.at(e).vertices;
        const Vec2 t = vertices_[v[1]] - vertices_[v[0]];
        return rotate_cw(t) / norm(t);
    }

    /// +1 when the global normal of local edge k of tri is the outer normal of tri.
    [[nodiscard]] int edge_sign(std::size_t tri, int k) const
    {
        const auto& t = triangles_.at(tri);
        const std::size_t a = t.vertices[(k + 1) % 3];
        const std::size_t b = t.vertices[(k + 2) % 3];
        return a < b ? 1 : -1;
    }

private:
    void build_edges()
    {
        struct Incidence {
            std::size_t lo, hi, tri;
            int local;
        };
        std::vector<Incidence> inc;
        inc.reserve(3 * triangles_.size());
        for (std::size_t t = 0; t < triangles_.size(); ++t) {
            const auto& v = triangles_[t].vertices;
            for (int k = 0; k < 3; ++k) {
                const std::size_t a = v[(k + 1) % 3];
                const std::size_t b = v[(k + 2) % 3];
                inc.push_back({std::min(a, b), std::max(a, b), t, k});
            }
        }
        std::sort(inc.begin(), inc.end(), [](const Incidence& l, const Incidence& r) {
            return std::tie(l.lo, l.hi, l.tri) < std::tie(r.lo, r.hi, r.tri);
        });

        for (std::size_t i = 0; i < inc.size();) {
            Edge e;
            e.vertices = {inc[i].lo, inc[i].hi};
            const std::size_t id = edges_.size();
            int count = 0;
            for (; i < inc.size() && inc[i].lo == e.vertices[0] && inc[i].hi == e.vertices[1]; ++i) {
                if (count == 2) throw std::invalid_argument("BipartiteMesh: edge shared by more than two triangles");
                e.triangles[count++] = inc[i].tri;
                triangles_[inc[i].tri].edges[inc[i].local] = id;
            }
            if (count == 1) {
                e.kind = triangles_[e.triangles[0]].region == Region::one ? EdgeKind::boundary_one
                                                                          : EdgeKind::boundary_two;
            } else {
                const Region r0 = triangles_[e.triangles[0]].region;
                const Region r1 = triangles_[e.triangles[1]].region;
                if (r0 != r1) {
                    e.kind = EdgeKind::interface;
                } else {
                    e.kind = r0 == Region::one ? EdgeKind::interior_one : EdgeKind::interior_two;
                }
            }
            edges_.push_back(e);
        }

        for (std::size_t e = 0; e < edges_.size(); ++e) {
            const Edge& ed = edges_[e];
            if (ed.kind != EdgeKind::interface) continue;
            std::size_t t1 = ed.triangles[0];
            std::size_t t2 = ed.triangles[1];
            if (triangles_[t1].region != Region::one) std::swap(t1, t2);
            // Outer normal of t1 on this edge.
            const auto& tv = triangles_[t1].vertices;
            int local = 0;
            while (triangles_[t1].edges[local] != e) ++local;
            const Vec2 a = vertices_[tv[(local + 1) % 3]];
            const Vec2 b = vertices_[tv[(local + 2) % 3]];
            const Vec2 t = b - a;
            interface_.push_back({e, t1, t2, rotate_cw(t) / norm(t)});
        }
    }

    int level_inv_;
    std::vector<Vec2> vertices_;
    std::vector<Triangle> triangles_;
    std::vector<Edge> edges_;
    std::vector<InterfaceEdge> interface_;
};

/// Cell split direction of the Cartesian builder.
enum class Diagonal : std::uint8_t {
    lower_left_to_upper_right,
    lower_right_to_upper_left,
};

/// Uniform grid of (2 n)^2 squares of side 1/n over (-1,1)^2, each split by
/// one diagonal (lower-left to upper-right unless requested otherwise).
inline BipartiteMesh build_cartesian_mesh(int level_inv, Diagonal diagonal = Diagonal::lower_left_to_upper_right)
{
    if (level_inv < 1) throw std::invalid_argument("build_cartesian_mesh: level_inv must be >= 1");
    const int cells = 2 * level_inv;
    const int stride = cells + 1;
    const double h = 1.0 / level_inv;

    std::vector<Vec2> vertices;
    vertices.reserve(static_cast<std::size_t>(stride) * stride);
    for (int j = 0; j <= cells; ++j) {
        for (int i = 0; i <= cells; ++i) {
            // Integer-indexed coordinates keep axis vertices exactly on 0.
            vertices.push_back({(i - level_inv) * h, (j - level_inv) * h});
        }
    }

    auto id = [stride](int i, int j) { return static_cast<std::size_t>(j * stride + i); };

    std::vector<TriangleSpec> tris;
    tris.reserve(2 * static_cast<std::size_t>(cells) * cells);
    for (int j = 0; j < cells; ++j) {
        for (int i = 0; i < cells; ++i) {
            const Vec2 c{(i + 0.5 - level_inv) * h, (j + 0.5 - level_inv) * h};
            const int quadrant = quadrant_of(c);
            const Region region = region_of_quadrant(quadrant);
            if (diagonal == Diagonal::lower_left_to_upper_right) {
                tris.push_back({{id(i, j), id(i + 1, j), id(i + 1, j + 1)}, region, quadrant});
                tris.push_back({{id(i, j), id(i + 1, j + 1), id(i, j + 1)}, region, quadrant});
            } else {
                tris.push_back({{id(i, j), id(i + 1, j), id(i, j + 1)}, region, quadrant});
                tris.push_back({{id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)}, region, quadrant});
            }
        }
    }
    return BipartiteMesh(level_inv, std::move(vertices), tris);
}

inline BipartiteMesh refine(const BipartiteMesh& m) { return build_cartesian_mesh(2 * m.level_inv()); }

struct ConsistencyReport {
    std::vector<std::size_t> mislabeled;  // centroid region disagrees with tag
    std::vector<std::size_t> straddling;  // interior crosses the interface
    [[nodiscard]] bool ok() const { return mislabeled.empty() && straddling.empty(); }
};

/// Checks that every triangle lies wholly inside the subdomain its tag names.
inline ConsistencyReport validate_consistency(const BipartiteMesh& m, double tol = 1e-12)
{
    ConsistencyReport report;
    for (std::size_t t = 0; t < m.triangles().size(); ++t) {
        const auto p = m.corners(t);
        double xmin = p[0].x, xmax = p[0].x, ymin = p[0].y, ymax = p[0].y;
        for (const auto& q : p) {
            xmin = std::min(xmin, q.x);
            xmax = std::max(xmax, q.x);
            ymin = std::min(ymin, q.y);
            ymax = std::max(ymax, q.y);
        }
        if ((xmin < -tol && xmax > tol) || (ymin < -tol && ymax > tol)) {
            report.straddling.push_back(t);
            continue;
        }
        const Vec2 c = m.centroid(t);
        if (c.x == 0.0 || c.y == 0.0 || region_of_quadrant(quadrant_of(c)) != m.triangle(t).region) {
            report.mislabeled.push_back(t);
        }
    }
    return report;
}

/// Legacy-VTK ASCII dump of the mesh with the region tag as cell data.
inline void write_mesh_vtk(const BipartiteMesh& m, std::ostream& os)
{
    os << "# vtk DataFile Version 3.0\n";
    os << "bipartite mesh h_inv=" << m.level_inv() << "\n";
    os << "ASCII\nDATASET UNSTRUCTURED_GRID\n";
    os << "POINTS " << m.vertices().size() << " double\n";
    os.precision(17);
    for (const auto& v : m.vertices()) os << v.x << ' ' << v.y << " 0\n";
    const std::size_t nt = m.triangles().size();
    os << "CELLS " << nt << ' ' << 4 * nt << '\n';
    for (const auto& t : m.triangles()) {
        os << "3 " << t.vertices[0] << ' ' << t.vertices[1] << ' ' << t.vertices[2] << '\n';
    }
    os << "CELL_TYPES " << nt << '\n';
    for (std::size_t i = 0; i < nt; ++i) os << "5\n";
    os << "CELL_DATA " << nt << '\n';
    os << "SCALARS region int 1\nLOOKUP_TABLE default\n";
    for (const auto& t : m.triangles()) os << static_cast<int>(t.region) << '\n';
}

} // namespace pdmix
