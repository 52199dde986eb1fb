#pragma once

// Block assembly of the primal-dual mixed system
//
//   [ A   -B^T ] [u1, p2]   [F1]
//   [ B    C   ] [phi, p1] = [F2]
//
// with A = [[M_a, S], [-S^T, M_beta]] on X = RT0(Omega1) x P1(Omega2) and
// Y = grad P1(Omega2) x P0(Omega1).

#include "pdmix/manufactured.hpp"
#include "pdmix/mesh.hpp"
#include "pdmix/quadrature.hpp"
#include "pdmix/spaces.hpp"

#include <Eigen/Sparse>
#include <unsupported/Eigen/SparseExtra>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdmix {

using SparseMatrix = Eigen::SparseMatrix<double>;
using Vector = Eigen::VectorXd;
using Triplets = std::vector<Eigen::Triplet<double>>;

/// Raised when a or beta violate positivity / nondegeneracy.
class AdmissibilityError : public std::domain_error {
public:
    using std::domain_error::domain_error;
};

/// a > 0 and finite at every bilinear quadrature point, beta >= 0 on every
/// interface point, and the integral of beta over the interface positive.
inline void check_admissibility(const BipartiteMesh& m, const CoefficientSet& coeffs)
{
    if (!coeffs.resistance || !coeffs.storage) throw AdmissibilityError("coefficient set is incomplete");
    const QuadRule tri = triangle_rule(2);
    for (std::size_t t = 0; t < m.triangles().size(); ++t) {
        const auto p = m.corners(t);
        for (const auto& b : tri.points) {
            const double a = coeffs.resistance(m.triangle(t).region, map_to_triangle(p, b));
            if (!(a > 0.0) || !std::isfinite(a)) {
                throw AdmissibilityError("resistance must be positive and finite (triangle " + std::to_string(t) + ")");
            }
        }
    }
    const QuadRule seg = segment_rule(2);
    double total = 0.0;
    for (const auto& ie : m.interface_edges()) {
        const auto& v = m.edge(ie.edge).vertices;
        const Vec2 a = m.vertex(v[0]), b = m.vertex(v[1]);
        for (const auto& pt : seg.points) {
            const double beta = coeffs.storage((1.0 - pt[0]) * a + pt[0] * b);
            if (!(beta >= 0.0) || !std::isfinite(beta)) {
                throw AdmissibilityError("storage rate must be nonnegative and finite on the interface");
            }
        }
        total += integrate_on_segment(coeffs.storage, a, b, seg);
    }
    if (!(total > 0.0)) throw AdmissibilityError("storage rate integrates to zero over the interface");
}

namespace detail {

inline SparseMatrix from_triplets(Eigen::Index rows, Eigen::Index cols, const Triplets& t)
{
    SparseMatrix s(rows, cols);
    s.setFromTriplets(t.begin(), t.end());
    s.makeCompressed();
    return s;
}

inline void check_layout(const BipartiteMesh& m, const DofLayout& d)
{
    if (d.edge_to_u1.size() != m.edges().size() || d.vertex_to_p2.size() != m.vertices().size() ||
        d.triangle_to_p1.size() != m.triangles().size()) {
        throw std::invalid_argument("layout does not match mesh");
    }
}

/// Edge endpoints of the interface edge in Omega1-triangle order together
/// with the constant normal trace of the RT0 basis function along n.
struct InterfaceTrace {
    Vec2 a, b;
    std::size_t va, vb;
    double trace;
};

inline InterfaceTrace interface_trace(const BipartiteMesh& m, const InterfaceEdge& ie)
{
    const auto& tri = m.triangle(ie.omega1_triangle);
    int k = 0;
    while (tri.edges[k] != ie.edge) ++k;
    const std::size_t va = tri.vertices[(k + 1) % 3], vb = tri.vertices[(k + 2) % 3];
    const Vec2 a = m.vertex(va), b = m.vertex(vb);
    const double trace = dot(rt0_eval(m, ie.omega1_triangle, k, 0.5 * (a + b)), ie.normal);
    return {a, b, va, vb, trace};
}

} // namespace detail

/// Parts of the X-block: a-weighted RT0 mass, beta-weighted interface trace
/// mass and the interface coupling S_ij = int_Gamma lambda_j (phi_i . n).
struct ABlock {
    SparseMatrix mass_a;    // n_u1 x n_u1
    SparseMatrix mass_beta; // n_p2 x n_p2
    SparseMatrix coupling;  // n_u1 x n_p2

    /// [[M_a, S], [-S^T, M_beta]]
    [[nodiscard]] SparseMatrix assembled() const
    {
        const auto nu = mass_a.rows(), np = mass_beta.rows();
        Triplets t;
        for (int k = 0; k < mass_a.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(mass_a, k); it; ++it) t.emplace_back(it.row(), it.col(), it.value());
        for (int k = 0; k < mass_beta.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(mass_beta, k); it; ++it)
                t.emplace_back(nu + it.row(), nu + it.col(), it.value());
        for (int k = 0; k < coupling.outerSize(); ++k)
            for (SparseMatrix::InnerIterator it(coupling, k); it; ++it) {
                t.emplace_back(it.row(), nu + it.col(), it.value());
                t.emplace_back(nu + it.col(), it.row(), -it.value());
            }
        return detail::from_triplets(nu + np, nu + np, t);
    }
};

inline ABlock assemble_A_parts(const BipartiteMesh& m, const DofLayout& d, const CoefficientSet& coeffs)
{
    detail::check_layout(m, d);
    const QuadRule tri_rule = triangle_rule(2);
    const QuadRule seg_rule = segment_rule(2);

    Triplets ta;
    for (std::size_t t = 0; t < m.triangles().size(); ++t) {
        const auto& tri = m.triangle(t);
        if (tri.region != Region::one) continue;
        const auto p = m.corners(t);
        for (int i = 0; i < 3; ++i) {
            for (int j = 0; j < 3; ++j) {
                const double v = integrate_on_triangle(
                    [&](Vec2 x) { return coeffs.resistance(Region::one, x) * dot(rt0_eval(m, t, i, x), rt0_eval(m, t, j, x)); },
                    p, tri_rule);
                ta.emplace_back(d.edge_to_u1[tri.edges[i]], d.edge_to_u1[tri.edges[j]], v);
            }
        }
    }

    Triplets tb, ts;
    for (const auto& ie : m.interface_edges()) {
        const auto tr = detail::interface_trace(m, ie);
        const std::size_t row = d.edge_to_u1[ie.edge];
        const std::array<std::size_t, 2> dofs{d.vertex_to_p2[tr.va], d.vertex_to_p2[tr.vb]};
        // hats along the segment a -> b: (1 - s), s
        for (int i = 0; i < 2; ++i) {
            for (int j = 0; j < 2; ++j) {
                double v = 0.0;
                for (std::size_t q = 0; q < seg_rule.size(); ++q) {
                    const double s = seg_rule.points[q][0];
                    const double li = i == 0 ? 1.0 - s : s, lj = j == 0 ? 1.0 - s : s;
                    v += seg_rule.weights[q] * coeffs.storage((1.0 - s) * tr.a + s * tr.b) * li * lj;
                }
                tb.emplace_back(dofs[i], dofs[j], v * norm(tr.b - tr.a));
            }
            ts.emplace_back(row, dofs[i], 0.5 * tr.trace * norm(tr.b - tr.a));
        }
    }
    const auto nu = static_cast<Eigen::Index>(d.n_u1), np = static_cast<Eigen::Index>(d.n_p2);
    return {detail::from_triplets(nu, nu, ta), detail::from_triplets(np, np, tb), detail::from_triplets(nu, np, ts)};
}

inline SparseMatrix assemble_A(const BipartiteMesh& m, const DofLayout& d, const CoefficientSet& coeffs,
                               bool enforce_admissibility = true)
{
    if (enforce_admissibility) check_admissibility(m, coeffs);
    return assemble_A_parts(m, d, coeffs).assembled();
}

/// Rows [phi | p1], columns [u1 | p2]: divergence pairing on Omega1 and the
/// unweighted P1 stiffness on Omega2.
inline SparseMatrix assemble_B(const BipartiteMesh& m, const DofLayout& d)
{
    detail::check_layout(m, d);
    Triplets t;
    const std::size_t p1_row = d.n_phi, p2_col = d.n_u1;
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        const auto& tri = m.triangle(k);
        if (tri.region == Region::one) {
            for (int i = 0; i < 3; ++i) {
                t.emplace_back(p1_row + d.triangle_to_p1[k], d.edge_to_u1[tri.edges[i]], rt0_div(m, k, i) * m.area(k));
            }
        } else {
            for (int i = 0; i < 3; ++i) {
                const std::size_t r = d.vertex_to_phi[tri.vertices[i]];
                if (r == npos) continue;
                for (int j = 0; j < 3; ++j) {
                    t.emplace_back(r, p2_col + d.vertex_to_p2[tri.vertices[j]],
                                   dot(p1_grad(m, k, i), p1_grad(m, k, j)) * m.area(k));
                }
            }
        }
    }
    return detail::from_triplets(static_cast<Eigen::Index>(d.n_y()), static_cast<Eigen::Index>(d.n_x()), t);
}

/// a-weighted stiffness on the phi DOFs, zero on the p1 block.
inline SparseMatrix assemble_C(const BipartiteMesh& m, const DofLayout& d, const CoefficientSet& coeffs)
{
    detail::check_layout(m, d);
    const QuadRule rule = triangle_rule(2);
    Triplets t;
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        const auto& tri = m.triangle(k);
        if (tri.region != Region::two) continue;
        const double a_int = integrate_on_triangle([&](Vec2 x) { return coeffs.resistance(Region::two, x); },
                                                   m.corners(k), rule);
        for (int i = 0; i < 3; ++i) {
            const std::size_t r = d.vertex_to_phi[tri.vertices[i]];
            if (r == npos) continue;
            for (int j = 0; j < 3; ++j) {
                const std::size_t c = d.vertex_to_phi[tri.vertices[j]];
                if (c == npos) continue;
                t.emplace_back(r, c, a_int * dot(p1_grad(m, k, i), p1_grad(m, k, j)));
            }
        }
    }
    const auto n = static_cast<Eigen::Index>(d.n_y());
    return detail::from_triplets(n, n, t);
}

/// Right-hand sides over the [u1, p2] and [phi, p1] test functions.
inline std::pair<Vector, Vector> assemble_rhs(const BipartiteMesh& m, const DofLayout& d, const ManufacturedCase& c)
{
    detail::check_layout(m, d);
    const QuadRule tri_rule = triangle_rule(10);
    const QuadRule seg_rule = segment_rule(6);
    const auto& ex = c.exact;
    Vector f1 = Vector::Zero(static_cast<Eigen::Index>(d.n_x()));
    Vector f2 = Vector::Zero(static_cast<Eigen::Index>(d.n_y()));

    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        const auto& tri = m.triangle(k);
        const auto p = m.corners(k);
        const int q = quadrant_of(m.centroid(k));
        if (tri.region == Region::one) {
            f2[static_cast<Eigen::Index>(d.n_phi + d.triangle_to_p1[k])] +=
                integrate_on_triangle([&](Vec2 x) { return ex.source(q, x); }, p, tri_rule);
            for (int i = 0; i < 3; ++i) {
                f1[static_cast<Eigen::Index>(d.edge_to_u1[tri.edges[i]])] -= integrate_on_triangle(
                    [&](Vec2 x) { return dot(ex.body_force(q, x), rt0_eval(m, k, i, x)); }, p, tri_rule);
            }
        } else {
            for (int i = 0; i < 3; ++i) {
                const std::size_t v = tri.vertices[i];
                f1[static_cast<Eigen::Index>(d.n_u1 + d.vertex_to_p2[v])] +=
                    integrate_on_triangle([&](Vec2 x) { return ex.source(q, x) * p1_eval(m, k, i, x); }, p, tri_rule);
                if (const std::size_t r = d.vertex_to_phi[v]; r != npos) {
                    const Vec2 g = p1_grad(m, k, i);
                    f2[static_cast<Eigen::Index>(r)] -=
                        integrate_on_triangle([&](Vec2 x) { return dot(ex.body_force(q, x), g); }, p, tri_rule);
                }
            }
        }
    }

    for (const auto& ie : m.interface_edges()) {
        const auto tr = detail::interface_trace(m, ie);
        const double len = norm(tr.b - tr.a);
        double stress = 0.0, flux_a = 0.0, flux_b = 0.0;
        for (std::size_t qp = 0; qp < seg_rule.size(); ++qp) {
            const double s = seg_rule.points[qp][0];
            const Vec2 x = (1.0 - s) * tr.a + s * tr.b;
            const double w = seg_rule.weights[qp] * len;
            stress += w * c.interface.stress(x, ie.normal);
            const double fn = c.interface.normal_flux(x, ie.normal);
            flux_a += w * fn * (1.0 - s);
            flux_b += w * fn * s;
        }
        f1[static_cast<Eigen::Index>(d.edge_to_u1[ie.edge])] += tr.trace * stress;
        f1[static_cast<Eigen::Index>(d.n_u1 + d.vertex_to_p2[tr.va])] -= flux_a;
        f1[static_cast<Eigen::Index>(d.n_u1 + d.vertex_to_p2[tr.vb])] -= flux_b;
    }
    return {f1, f2};
}

struct SymmetryDiagnostics {
    double coupling_skew = 0.0; // max |A_{u1,p2} + A_{p2,u1}^T|
    double c_asymmetry = 0.0;   // max |C - C^T|
};

struct SaddleSystem {
    SparseMatrix A, Bt, B, C;
    Vector F1, F2;
    DofLayout layout;
    SymmetryDiagnostics symmetry;

    /// [[A, -B^T], [B, C]]
    [[nodiscard]] SparseMatrix global() const
    {
        const auto nx = A.rows(), ny = C.rows();
        Triplets t;
        t.reserve(static_cast<std::size_t>(A.nonZeros() + 2 * B.nonZeros() + C.nonZeros()));
        auto add = [&t](const SparseMatrix& s, Eigen::Index r0, Eigen::Index c0, double scale) {
            for (int k = 0; k < s.outerSize(); ++k)
                for (SparseMatrix::InnerIterator it(s, k); it; ++it)
                    t.emplace_back(r0 + it.row(), c0 + it.col(), scale * it.value());
        };
        add(A, 0, 0, 1.0);
        add(Bt, 0, nx, -1.0);
        add(B, nx, 0, 1.0);
        add(C, nx, nx, 1.0);
        return detail::from_triplets(nx + ny, nx + ny, t);
    }

    [[nodiscard]] Vector rhs() const
    {
        Vector r(F1.size() + F2.size());
        r << F1, F2;
        return r;
    }
};

inline double max_abs(const SparseMatrix& s)
{
    double v = 0.0;
    for (int k = 0; k < s.outerSize(); ++k)
        for (SparseMatrix::InnerIterator it(s, k); it; ++it) v = std::max(v, std::abs(it.value()));
    return v;
}

inline SymmetryDiagnostics symmetry_diagnostics(const SparseMatrix& A, const SparseMatrix& C, std::size_t n_u1)
{
    const auto nu = static_cast<Eigen::Index>(n_u1);
    const auto np = A.rows() - nu;
    const SparseMatrix up = A.block(0, nu, nu, np);
    const SparseMatrix pu = A.block(nu, 0, np, nu);
    const SparseMatrix skew = up + SparseMatrix(pu.transpose());
    const SparseMatrix asym = C - SparseMatrix(C.transpose());
    return {max_abs(skew), max_abs(asym)};
}

/// Full system for a manufactured case. Admissibility of the coefficients
/// is enforced unless explicitly waived (used by degenerate fixtures).
inline SaddleSystem assemble_system(const BipartiteMesh& m, const DofLayout& d, const ManufacturedCase& c,
                                    bool enforce_admissibility = true)
{
    SaddleSystem s;
    s.A = assemble_A(m, d, c.coeffs, enforce_admissibility);
    s.B = assemble_B(m, d);
    s.Bt = s.B.transpose();
    s.C = assemble_C(m, d, c.coeffs);
    std::tie(s.F1, s.F2) = assemble_rhs(m, d, c);
    s.layout = d;
    s.symmetry = symmetry_diagnostics(s.A, s.C, d.n_u1);
    return s;
}

/// Gram matrix of X: RT0 mass + div-div on u1, P1 mass + stiffness on p2.
inline SparseMatrix assemble_gram_X(const BipartiteMesh& m, const DofLayout& d)
{
    detail::check_layout(m, d);
    const QuadRule rule = triangle_rule(2);
    Triplets t;
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        const auto& tri = m.triangle(k);
        const auto p = m.corners(k);
        if (tri.region == Region::one) {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double mass = integrate_on_triangle(
                        [&](Vec2 x) { return dot(rt0_eval(m, k, i, x), rt0_eval(m, k, j, x)); }, p, rule);
                    t.emplace_back(d.edge_to_u1[tri.edges[i]], d.edge_to_u1[tri.edges[j]],
                                   mass + rt0_div(m, k, i) * rt0_div(m, k, j) * m.area(k));
                }
        } else {
            for (int i = 0; i < 3; ++i)
                for (int j = 0; j < 3; ++j) {
                    const double mass = m.area(k) * (i == j ? 1.0 / 6.0 : 1.0 / 12.0);
                    t.emplace_back(d.n_u1 + d.vertex_to_p2[tri.vertices[i]], d.n_u1 + d.vertex_to_p2[tri.vertices[j]],
                                   mass + m.area(k) * dot(p1_grad(m, k, i), p1_grad(m, k, j)));
                }
        }
    }
    const auto n = static_cast<Eigen::Index>(d.n_x());
    return detail::from_triplets(n, n, t);
}

/// Gram matrix of Y: L2 of grad(phi) on the phi block, P0 mass on p1.
inline SparseMatrix assemble_gram_Y(const BipartiteMesh& m, const DofLayout& d)
{
    detail::check_layout(m, d);
    Triplets t;
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        const auto& tri = m.triangle(k);
        if (tri.region == Region::one) {
            const std::size_t r = d.n_phi + d.triangle_to_p1[k];
            t.emplace_back(r, r, m.area(k));
            continue;
        }
        for (int i = 0; i < 3; ++i) {
            const std::size_t r = d.vertex_to_phi[tri.vertices[i]];
            if (r == npos) continue;
            for (int j = 0; j < 3; ++j) {
                const std::size_t c = d.vertex_to_phi[tri.vertices[j]];
                if (c != npos) t.emplace_back(r, c, m.area(k) * dot(p1_grad(m, k, i), p1_grad(m, k, j)));
            }
        }
    }
    const auto n = static_cast<Eigen::Index>(d.n_y());
    return detail::from_triplets(n, n, t);
}

/// MatrixMarket coordinate dump of the global matrix.
inline void write_matrix_market(const SaddleSystem& s, const std::string& path)
{
    if (!Eigen::saveMarket(s.global(), path)) throw std::runtime_error("cannot write " + path);
}

} // namespace pdmix
