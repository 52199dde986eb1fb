#pragma once

// Discrete fields: RT0 fluxes on Omega1, continuous P1 pressure on Omega2,
// gradients of a pinned P1 potential on Omega2, P0 pressure on Omega1.

#include "pdmix/mesh.hpp"

#include <array>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdmix {

/// Block numbering of the unknowns, ordered [u1 | p2 | phi | p1].
struct DofLayout {
    std::size_t n_u1 = 0;
    std::size_t n_p2 = 0;
    std::size_t n_phi = 0;
    std::size_t n_p1 = 0;

    std::vector<std::size_t> edge_to_u1;      // npos for edges not touching Omega1
    std::vector<std::size_t> vertex_to_p2;    // npos for vertices not in Omega2
    std::vector<std::size_t> vertex_to_phi;   // npos for the pinned vertex and non-Omega2 vertices
    std::vector<std::size_t> triangle_to_p1;  // npos for Omega2 triangles
    std::vector<std::size_t> p2_to_vertex;
    std::vector<std::size_t> p1_to_triangle;
    std::size_t pinned_vertex = npos;

    [[nodiscard]] std::size_t n_x() const { return n_u1 + n_p2; }
    [[nodiscard]] std::size_t n_y() const { return n_phi + n_p1; }
    [[nodiscard]] std::size_t total() const { return n_x() + n_y(); }

    [[nodiscard]] std::size_t u1_offset() const { return 0; }
    [[nodiscard]] std::size_t p2_offset() const { return n_u1; }
    [[nodiscard]] std::size_t phi_offset() const { return n_u1 + n_p2; }
    [[nodiscard]] std::size_t p1_offset() const { return n_u1 + n_p2 + n_phi; }
};

/// Entity-order numbering. The potential is pinned to zero at the smallest
/// Omega2 vertex index unless another Omega2 vertex is requested.
inline DofLayout build_dof_layout(const BipartiteMesh& m, std::optional<std::size_t> pinned = std::nullopt)
{
    DofLayout d;
    const auto tris = m.triangles();
    const auto edges = m.edges();

    d.edge_to_u1.assign(edges.size(), npos);
    for (std::size_t e = 0; e < edges.size(); ++e) {
        const auto k = edges[e].kind;
        if (k == EdgeKind::interior_one || k == EdgeKind::boundary_one || k == EdgeKind::interface) {
            d.edge_to_u1[e] = d.n_u1++;
        }
    }

    std::vector<bool> in_two(m.vertices().size(), false);
    for (const auto& t : tris) {
        if (t.region == Region::two) {
            for (auto v : t.vertices) in_two[v] = true;
        }
    }
    d.vertex_to_p2.assign(m.vertices().size(), npos);
    for (std::size_t v = 0; v < in_two.size(); ++v) {
        if (in_two[v]) {
            d.vertex_to_p2[v] = d.n_p2++;
            d.p2_to_vertex.push_back(v);
        }
    }
    if (d.n_p2 == 0) throw std::invalid_argument("build_dof_layout: mesh has no Omega2 triangles");

    d.pinned_vertex = pinned.value_or(d.p2_to_vertex.front());
    if (d.pinned_vertex >= in_two.size() || !in_two[d.pinned_vertex]) {
        throw std::invalid_argument("build_dof_layout: pinned vertex is not an Omega2 vertex");
    }
    d.vertex_to_phi.assign(m.vertices().size(), npos);
    for (std::size_t v : d.p2_to_vertex) {
        if (v != d.pinned_vertex) d.vertex_to_phi[v] = d.n_phi++;
    }

    d.triangle_to_p1.assign(tris.size(), npos);
    for (std::size_t t = 0; t < tris.size(); ++t) {
        if (tris[t].region == Region::one) {
            d.triangle_to_p1[t] = d.n_p1++;
            d.p1_to_triangle.push_back(t);
        }
    }
    return d;
}

namespace detail {
inline void check_local(int k, const char* who)
{
    if (k < 0 || k > 2) throw std::out_of_range(std::string(who) + ": local index must be 0, 1 or 2");
}
} // namespace detail

/// Lowest-order Raviart-Thomas basis function of local edge k, normalised
/// so that its flux through the edge along the global edge normal is 1:
///   phi(x) = sigma / (2|K|) (x - p_opp).
inline Vec2 rt0_eval(const BipartiteMesh& m, std::size_t tri, int k, const Vec2& x)
{
    detail::check_local(k, "rt0_eval");
    const auto p = m.corners(tri);
    const double sigma = m.edge_sign(tri, k);
    return (sigma / (2.0 * m.area(tri))) * (x - p[k]);
}

/// Constant divergence sigma / |K|.
inline double rt0_div(const BipartiteMesh& m, std::size_t tri, int k)
{
    detail::check_local(k, "rt0_div");
    return m.edge_sign(tri, k) / m.area(tri);
}

/// Barycentric hat of local vertex k.
inline double p1_eval(const BipartiteMesh& m, std::size_t tri, int k, const Vec2& x)
{
    detail::check_local(k, "p1_eval");
    const auto p = m.corners(tri);
    return signed_area(x, p[(k + 1) % 3], p[(k + 2) % 3]) / m.area(tri);
}

inline Vec2 p1_grad(const BipartiteMesh& m, std::size_t tri, int k)
{
    detail::check_local(k, "p1_grad");
    const auto p = m.corners(tri);
    const Vec2 t = p[(k + 2) % 3] - p[(k + 1) % 3];
    return Vec2{-t.y, t.x} / (2.0 * m.area(tri));
}

/// u2 = grad(phi) per triangle (zero on Omega1 triangles); the pinned vertex
/// carries potential 0.
inline std::vector<Vec2> potential_to_velocity(std::span<const double> phi, const BipartiteMesh& m,
                                               const DofLayout& d)
{
    if (phi.size() != d.n_phi) throw std::invalid_argument("potential_to_velocity: length mismatch");
    std::vector<Vec2> u(m.triangles().size());
    for (std::size_t t = 0; t < m.triangles().size(); ++t) {
        const auto& tri = m.triangle(t);
        if (tri.region != Region::two) continue;
        Vec2 g;
        for (int k = 0; k < 3; ++k) {
            const std::size_t i = d.vertex_to_phi[tri.vertices[k]];
            if (i != npos) g += phi[i] * p1_grad(m, t, k);
        }
        u[t] = g;
    }
    return u;
}

} // namespace pdmix
