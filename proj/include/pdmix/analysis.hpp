#pragma once

// Error norms, convergence rates and convergence studies.

#include "pdmix/solver.hpp"

#include <Eigen/SparseCholesky>

#include <cmath>
#include <cstdio>
#include <functional>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdmix {

/// One value per table column.
struct NormSet {
    double p1 = 0.0;      // L2 on Omega1
    double p2_L2 = 0.0;
    double p2_H1 = 0.0;   // full H1: L2 plus seminorm
    double u1_L2 = 0.0;
    double u1_Hdiv = 0.0; // L2 plus divergence
    double u2 = 0.0;      // L2 on Omega2
};

/// Error measures of one solve.
///
/// `exact` holds the true norms of the error, integrated with a degree-10
/// rule. `cell_mean` holds the norms of its cell-wise L2 projection onto
/// constants, sqrt(sum_K |K| |mean_K e|^2) (for the divergence part this is
/// identically zero because div u1h equals the cell mean of F). The
/// published tables are reproduced by the cell-mean measure; see README.
struct ErrorReport {
    int level_inv = 0;
    NormSet exact;
    NormSet cell_mean;
    NormSet reference;      // true norms of the exact fields
    NormSet reference_mean; // cell-mean norms of the exact fields

    [[nodiscard]] const NormSet& errors(bool use_cell_mean) const { return use_cell_mean ? cell_mean : exact; }

    /// 100 e / |exact field| column by column, in the matching measure.
    [[nodiscard]] NormSet relative(bool use_cell_mean) const
    {
        const NormSet& e = errors(use_cell_mean);
        const NormSet& n = use_cell_mean ? reference_mean : reference;
        auto r = [](double a, double b) { return b > 0.0 ? 100.0 * a / b : 0.0; };
        return {r(e.p1, n.p1),       r(e.p2_L2, n.p2_L2),     r(e.p2_H1, n.p2_H1),
                r(e.u1_L2, n.u1_L2), r(e.u1_Hdiv, n.u1_Hdiv), r(e.u2, n.u2)};
    }
};

/// Discrete fields evaluated pointwise inside triangle k.
struct DiscreteEvaluator {
    const BipartiteMesh& m;
    const SolutionFields& s;

    [[nodiscard]] Vec2 u1(std::size_t k, Vec2 x) const
    {
        Vec2 u;
        const auto& tri = m.triangle(k);
        for (int i = 0; i < 3; ++i) {
            u += s.u1[static_cast<Eigen::Index>(s.layout.edge_to_u1[tri.edges[i]])] * rt0_eval(m, k, i, x);
        }
        return u;
    }
    [[nodiscard]] double div_u1(std::size_t k) const
    {
        double v = 0.0;
        const auto& tri = m.triangle(k);
        for (int i = 0; i < 3; ++i) {
            v += s.u1[static_cast<Eigen::Index>(s.layout.edge_to_u1[tri.edges[i]])] * rt0_div(m, k, i);
        }
        return v;
    }
    [[nodiscard]] double p2(std::size_t k, Vec2 x) const
    {
        double v = 0.0;
        const auto& tri = m.triangle(k);
        for (int i = 0; i < 3; ++i) {
            v += s.p2[static_cast<Eigen::Index>(s.layout.vertex_to_p2[tri.vertices[i]])] * p1_eval(m, k, i, x);
        }
        return v;
    }
    [[nodiscard]] Vec2 grad_p2(std::size_t k) const
    {
        Vec2 g;
        const auto& tri = m.triangle(k);
        for (int i = 0; i < 3; ++i) {
            g += s.p2[static_cast<Eigen::Index>(s.layout.vertex_to_p2[tri.vertices[i]])] * p1_grad(m, k, i);
        }
        return g;
    }
    [[nodiscard]] double p1(std::size_t k) const
    {
        return s.p1[static_cast<Eigen::Index>(s.layout.triangle_to_p1[k])];
    }
};

/// Element-wise quadrature of the discrete-minus-exact fields.
inline ErrorReport error_norms(const SolutionFields& sol, const ManufacturedCase& c, const BipartiteMesh& m,
                               int quadrature_degree = 10)
{
    const auto& d = sol.layout;
    if (d.triangle_to_p1.size() != m.triangles().size() || static_cast<std::size_t>(sol.u1.size()) != d.n_u1 ||
        sol.u2.size() != m.triangles().size()) {
        throw std::invalid_argument("error_norms: solution does not belong to this mesh");
    }
    const QuadRule rule = quadrature_degree <= 10 ? triangle_rule(quadrature_degree)
                                                  : collapsed_triangle_rule(quadrature_degree);
    const auto& ex = c.exact;
    const DiscreteEvaluator h{m, sol};

    // Squared contributions: [0] true, [1] cell mean; errors then reference norms.
    struct Acc {
        double p1 = 0, p2 = 0, gp2 = 0, u1 = 0, du1 = 0, u2 = 0;
    } err[2], ref[2];

    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        const auto corners = m.corners(k);
        const int q = quadrant_of(m.centroid(k));
        const double area = m.area(k);
        auto integrate = [&](auto f) { return integrate_on_triangle(f, corners, rule); };
        auto mean_sq_scalar = [&](auto f) { const double v = integrate(f) / area; return area * v * v; };
        auto mean_sq_vector = [&](auto f) {
            const Vec2 v{integrate([&](Vec2 x) { return f(x).x; }) / area,
                         integrate([&](Vec2 x) { return f(x).y; }) / area};
            return area * dot(v, v);
        };
        auto sq = [](double v) { return v * v; };

        if (m.triangle(k).region == Region::one) {
            const double ph = h.p1(k);
            const double dh = h.div_u1(k);
            auto ep = [&](Vec2 x) { return ph - ex.pressure(q, x); };
            auto eu = [&](Vec2 x) { return h.u1(k, x) - ex.velocity(q, x); };
            auto ed = [&](Vec2 x) { return dh - ex.source(q, x); };
            auto p = [&](Vec2 x) { return ex.pressure(q, x); };
            auto u = [&](Vec2 x) { return ex.velocity(q, x); };
            auto f = [&](Vec2 x) { return ex.source(q, x); };

            err[0].p1 += integrate([&](Vec2 x) { return sq(ep(x)); });
            err[0].u1 += integrate([&](Vec2 x) { const Vec2 e = eu(x); return dot(e, e); });
            err[0].du1 += integrate([&](Vec2 x) { return sq(ed(x)); });
            err[1].p1 += mean_sq_scalar(ep);
            err[1].u1 += mean_sq_vector(eu);
            err[1].du1 += mean_sq_scalar(ed);
            ref[0].p1 += integrate([&](Vec2 x) { return sq(p(x)); });
            ref[0].u1 += integrate([&](Vec2 x) { const Vec2 v = u(x); return dot(v, v); });
            ref[0].du1 += integrate([&](Vec2 x) { return sq(f(x)); });
            ref[1].p1 += mean_sq_scalar(p);
            ref[1].u1 += mean_sq_vector(u);
            ref[1].du1 += mean_sq_scalar(f);
        } else {
            const Vec2 gh = h.grad_p2(k);
            const Vec2 uh = sol.u2[k];
            auto ep = [&](Vec2 x) { return h.p2(k, x) - ex.pressure(q, x); };
            auto eg = [&](Vec2 x) { return gh - ex.pressure_gradient(q, x); };
            auto eu = [&](Vec2 x) { return uh - ex.velocity(q, x); };
            auto p = [&](Vec2 x) { return ex.pressure(q, x); };
            auto g = [&](Vec2 x) { return ex.pressure_gradient(q, x); };
            auto u = [&](Vec2 x) { return ex.velocity(q, x); };

            err[0].p2 += integrate([&](Vec2 x) { return sq(ep(x)); });
            err[0].gp2 += integrate([&](Vec2 x) { const Vec2 e = eg(x); return dot(e, e); });
            err[0].u2 += integrate([&](Vec2 x) { const Vec2 e = eu(x); return dot(e, e); });
            err[1].p2 += mean_sq_scalar(ep);
            err[1].gp2 += mean_sq_vector(eg);
            err[1].u2 += mean_sq_vector(eu);
            ref[0].p2 += integrate([&](Vec2 x) { return sq(p(x)); });
            ref[0].gp2 += integrate([&](Vec2 x) { const Vec2 v = g(x); return dot(v, v); });
            ref[0].u2 += integrate([&](Vec2 x) { const Vec2 v = u(x); return dot(v, v); });
            ref[1].p2 += mean_sq_scalar(p);
            ref[1].gp2 += mean_sq_vector(g);
            ref[1].u2 += mean_sq_vector(u);
        }
    }
    auto finish = [](const Acc& a) {
        return NormSet{std::sqrt(a.p1),        std::sqrt(a.p2), std::sqrt(a.p2 + a.gp2), std::sqrt(a.u1),
                       std::sqrt(a.u1 + a.du1), std::sqrt(a.u2)};
    };
    ErrorReport r;
    r.level_inv = m.level_inv();
    r.exact = finish(err[0]);
    r.cell_mean = finish(err[1]);
    r.reference = finish(ref[0]);
    r.reference_mean = finish(ref[1]);
    return r;
}

/// Degrees-of-freedom interpolant of the exact fields, stacked as
/// [u1 | p2 | phi | p1]: edge fluxes along the global normal, nodal values,
/// nodal potential relative to the pinned vertex, cell means.
inline Vector interpolate_exact(const ManufacturedCase& c, const BipartiteMesh& m, const DofLayout& d)
{
    const auto& ex = c.exact;
    if (!ex.potential) throw std::invalid_argument("interpolate_exact: case has no potential for u2");
    Vector x = Vector::Zero(static_cast<Eigen::Index>(d.total()));

    const QuadRule seg = segment_rule(11);
    for (std::size_t e = 0; e < m.edges().size(); ++e) {
        const std::size_t i = d.edge_to_u1[e];
        if (i == npos) continue;
        const auto& ed = m.edge(e);
        const std::size_t t = m.triangle(ed.triangles[0]).region == Region::one ? ed.triangles[0] : ed.triangles[1];
        const int q = quadrant_of(m.centroid(t));
        const Vec2 n = m.edge_normal(e);
        x[static_cast<Eigen::Index>(i)] = integrate_on_segment(
            [&](Vec2 p) { return dot(ex.velocity(q, p), n); }, m.vertex(ed.vertices[0]), m.vertex(ed.vertices[1]), seg);
    }

    std::vector<int> vertex_quadrant(m.vertices().size(), 0);
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        if (m.triangle(k).region != Region::two) continue;
        for (auto v : m.triangle(k).vertices) vertex_quadrant[v] = quadrant_of(m.centroid(k));
    }
    const std::size_t pin = d.pinned_vertex;
    const double phi_pin = ex.potential(vertex_quadrant[pin], m.vertex(pin));
    for (std::size_t v = 0; v < m.vertices().size(); ++v) {
        if (d.vertex_to_p2[v] == npos) continue;
        const int q = vertex_quadrant[v];
        x[static_cast<Eigen::Index>(d.p2_offset() + d.vertex_to_p2[v])] = ex.pressure(q, m.vertex(v));
        if (d.vertex_to_phi[v] != npos) {
            x[static_cast<Eigen::Index>(d.phi_offset() + d.vertex_to_phi[v])] = ex.potential(q, m.vertex(v)) - phi_pin;
        }
    }

    const QuadRule tri = triangle_rule(10);
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        if (m.triangle(k).region != Region::one) continue;
        const int q = quadrant_of(m.centroid(k));
        x[static_cast<Eigen::Index>(d.p1_offset() + d.triangle_to_p1[k])] =
            integrate_on_triangle([&](Vec2 p) { return ex.pressure(q, p); }, m.corners(k), tri) / m.area(k);
    }
    return x;
}

/// sqrt(r^T G^-1 r) for r = K x - b, with G the block-diagonal Gram matrix
/// of X x Y: the residual in the discrete dual norm.
inline double dual_norm_residual(const SaddleSystem& sys, const BipartiteMesh& m, const Vector& x)
{
    const Vector r = sys.global() * x - sys.rhs();
    const auto nx = static_cast<Eigen::Index>(sys.layout.n_x());
    const auto ny = static_cast<Eigen::Index>(sys.layout.n_y());
    Eigen::SimplicialLDLT<SparseMatrix> gx(assemble_gram_X(m, sys.layout));
    Eigen::SimplicialLDLT<SparseMatrix> gy(assemble_gram_Y(m, sys.layout));
    if (gx.info() != Eigen::Success || gy.info() != Eigen::Success) {
        throw SolverError("dual_norm_residual: Gram matrix factorization failed");
    }
    const Vector rx = r.head(nx), ry = r.tail(ny);
    return std::sqrt(rx.dot(gx.solve(rx)) + ry.dot(gy.solve(ry)));
}

/// (ln e_coarse - ln e_fine) / ln 2
inline double rate(double e_coarse, double e_fine)
{
    if (!(e_coarse > 0.0) || !(e_fine > 0.0)) throw std::domain_error("rate: errors must be positive");
    return (std::log(e_coarse) - std::log(e_fine)) / std::log(2.0);
}

/// Which error measure a table reports.
enum class Measure { exact, cell_mean };

inline std::string to_string(Measure m) { return m == Measure::exact ? "exact" : "cell_mean"; }

inline const NormSet& pick(const ErrorReport& r, Measure m) { return r.errors(m == Measure::cell_mean); }

inline NormSet rates_between(const NormSet& c, const NormSet& f)
{
    return {rate(c.p1, f.p1),       rate(c.p2_L2, f.p2_L2),     rate(c.p2_H1, f.p2_H1),
            rate(c.u1_L2, f.u1_L2), rate(c.u1_Hdiv, f.u1_Hdiv), rate(c.u2, f.u2)};
}

struct ConvergenceRow {
    ErrorReport errors;
    // Empty on the first row.
    std::optional<NormSet> exact_rates;
    std::optional<NormSet> cell_mean_rates;

    [[nodiscard]] const std::optional<NormSet>& rates(Measure m) const
    {
        return m == Measure::exact ? exact_rates : cell_mean_rates;
    }
};

struct ConvergenceReport {
    std::string case_name;
    std::vector<ConvergenceRow> rows;
};

/// Called with each solved level, e.g. to dump fields.
using LevelHook = std::function<void(const BipartiteMesh&, const SolutionFields&)>;

/// Mesh, layout, assembly, solve and norms on one level.
inline ErrorReport run_level(const ManufacturedCase& c, int level_inv, const LevelHook& hook = {})
{
    const BipartiteMesh m = build_cartesian_mesh(level_inv);
    const DofLayout d = build_dof_layout(m);
    const SaddleSystem sys = assemble_system(m, d, c);
    try {
        const SolutionFields s = solve(sys, m);
        if (hook) hook(m, s);
        return error_norms(s, c, m);
    } catch (const SolverError& e) {
        throw SolverError("level " + std::to_string(level_inv) + ": " + e.what());
    }
}

inline ConvergenceReport convergence_study(const ManufacturedCase& c, const std::vector<int>& levels,
                                           const LevelHook& hook = {})
{
    for (std::size_t i = 0; i < levels.size(); ++i) {
        const int l = levels[i];
        if (l < 1 || (l & (l - 1)) != 0) throw std::invalid_argument("convergence_study: levels must be powers of 2");
        if (i > 0 && l <= levels[i - 1]) throw std::invalid_argument("convergence_study: levels must increase");
    }
    ConvergenceReport rep;
    rep.case_name = c.name;
    for (int l : levels) {
        ConvergenceRow row{run_level(c, l, hook), std::nullopt, std::nullopt};
        if (!rep.rows.empty()) {
            const auto& prev = rep.rows.back().errors;
            row.exact_rates = rates_between(prev.exact, row.errors.exact);
            row.cell_mean_rates = rates_between(prev.cell_mean, row.errors.cell_mean);
        }
        rep.rows.push_back(row);
    }
    return rep;
}

/// Levels 1, 2, 4, ..., max_level_inv.
inline std::vector<int> dyadic_levels(int max_level_inv)
{
    std::vector<int> v;
    for (int l = 1; l <= max_level_inv; l *= 2) v.push_back(l);
    return v;
}

namespace detail {
inline std::string fmt6(double v)
{
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6g", v);
    return buf;
}

inline void write_row(std::ostream& os, int h_inv, const NormSet& e, const std::optional<NormSet>& r)
{
    auto rate_cell = [&r](double NormSet::*f) { return r ? fmt6((*r).*f) : std::string(); };
    os << h_inv;
    for (double NormSet::*f : {&NormSet::p1, &NormSet::p2_L2, &NormSet::p2_H1, &NormSet::u1_L2, &NormSet::u1_Hdiv,
                               &NormSet::u2}) {
        os << ',' << fmt6(e.*f) << ',' << rate_cell(f);
    }
    os << '\n';
}
} // namespace detail

/// One row per level, rate cells empty on the first row, %.6g.
inline void write_csv(const ConvergenceReport& rep, std::ostream& os, Measure measure = Measure::cell_mean)
{
    os << "h_inv,e_p1,r_p1,e_p2_L2,r_p2_L2,e_p2_H1,r_p2_H1,e_u1_L2,r_u1_L2,e_u1_Hdiv,r_u1_Hdiv,e_u2,r_u2\n";
    for (const auto& row : rep.rows) {
        detail::write_row(os, row.errors.level_inv, pick(row.errors, measure), row.rates(measure));
    }
}

/// Percentage relative errors 100 e / |exact|, one row per level.
inline void write_relative_csv(const ConvergenceReport& rep, std::ostream& os, Measure measure = Measure::cell_mean)
{
    os << "h_inv,rel_p1,rel_p2_L2,rel_p2_H1,rel_u1_L2,rel_u1_Hdiv,rel_u2\n";
    for (const auto& row : rep.rows) {
        const NormSet r = row.errors.relative(measure == Measure::cell_mean);
        os << row.errors.level_inv;
        for (double v : {r.p1, r.p2_L2, r.p2_H1, r.u1_L2, r.u1_Hdiv, r.u2}) os << ',' << detail::fmt6(v);
        os << '\n';
    }
}

} // namespace pdmix
