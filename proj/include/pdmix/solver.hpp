#pragma once

#include "pdmix/assembly.hpp"

#include <Eigen/Dense>
#include <Eigen/SparseLU>

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdmix {

class SolverError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

struct SolutionFields {
    Vector u1;              // RT0 edge fluxes
    Vector p2;              // nodal values on Omega2 vertices
    std::vector<Vec2> u2;   // per triangle, zero on Omega1
    Vector p1;              // per Omega1 triangle
    Vector phi;             // potential with the pinned value removed
    DofLayout layout;
    double residual = 0.0;  // max-norm residual relative to the rhs

    [[nodiscard]] Vector stacked() const
    {
        Vector x(u1.size() + p2.size() + phi.size() + p1.size());
        x << u1, p2, phi, p1;
        return x;
    }
};

inline double relative_residual(const SparseMatrix& K, const Vector& x, const Vector& b)
{
    const double r = (K * x - b).lpNorm<Eigen::Infinity>();
    const double scale = b.lpNorm<Eigen::Infinity>();
    return scale > 0.0 ? r / scale : r;
}

/// Splits a stacked [u1, p2, phi, p1] vector into fields.
inline SolutionFields unpack(const Vector& x, const BipartiteMesh& m, const DofLayout& d)
{
    if (static_cast<std::size_t>(x.size()) != d.total()) throw std::invalid_argument("unpack: length mismatch");
    SolutionFields s;
    s.layout = d;
    s.u1 = x.segment(static_cast<Eigen::Index>(d.u1_offset()), static_cast<Eigen::Index>(d.n_u1));
    s.p2 = x.segment(static_cast<Eigen::Index>(d.p2_offset()), static_cast<Eigen::Index>(d.n_p2));
    s.phi = x.segment(static_cast<Eigen::Index>(d.phi_offset()), static_cast<Eigen::Index>(d.n_phi));
    s.p1 = x.segment(static_cast<Eigen::Index>(d.p1_offset()), static_cast<Eigen::Index>(d.n_p1));
    s.u2 = potential_to_velocity(std::span<const double>(s.phi.data(), static_cast<std::size_t>(s.phi.size())), m, d);
    return s;
}

inline constexpr double residual_tolerance = 1e-10;

/// Sparse LU with partial pivoting on the global matrix.
inline SolutionFields solve(const SaddleSystem& sys, const BipartiteMesh& m)
{
    const SparseMatrix K = sys.global();
    const Vector b = sys.rhs();
    Eigen::SparseLU<SparseMatrix, Eigen::COLAMDOrdering<int>> lu;
    lu.analyzePattern(K);
    lu.factorize(K);
    if (lu.info() != Eigen::Success) {
        throw SolverError("factorization failed: " + lu.lastErrorMessage());
    }
    const Vector x = lu.solve(b);
    if (lu.info() != Eigen::Success || !x.allFinite()) throw SolverError("triangular solve failed");
    SolutionFields s = unpack(x, m, sys.layout);
    s.residual = relative_residual(K, x, b);
    if (!(s.residual <= residual_tolerance)) {
        throw SolverError("residual " + std::to_string(s.residual) + " exceeds tolerance");
    }
    return s;
}

struct WellposednessDiagnostics {
    double inf_sup = 0.0;     // smallest generalized singular value of B
    double coercivity = 0.0;  // min eigenvalue of sym(A) on ker B, X-norm scaled
    double c_min_eig = 0.0;   // min eigenvalue of C on the phi block
};

inline constexpr std::size_t dense_size_limit = 2000;

/// Dense Babuska-Brezzi quantities. Gram scalings from assemble_gram_X/Y.
inline WellposednessDiagnostics check_wellposedness(const SaddleSystem& sys, const BipartiteMesh& m)
{
    const auto& d = sys.layout;
    if (d.total() > dense_size_limit) {
        throw std::length_error("check_wellposedness: system size " + std::to_string(d.total()) + " exceeds " +
                                std::to_string(dense_size_limit));
    }
    using Dense = Eigen::MatrixXd;
    const Dense GX = Dense(assemble_gram_X(m, d));
    const Dense GY = Dense(assemble_gram_Y(m, d));
    const Dense B = Dense(sys.B);
    const Dense A = Dense(sys.A);

    WellposednessDiagnostics out;

    // inf-sup: lambda_min of (B GX^-1 B^T, GY)
    const Eigen::LLT<Dense> gx(GX);
    const Dense S = B * gx.solve(B.transpose());
    Eigen::GeneralizedSelfAdjointEigenSolver<Dense> infsup(0.5 * (S + S.transpose()), GY, Eigen::EigenvaluesOnly);
    out.inf_sup = std::sqrt(std::max(0.0, infsup.eigenvalues().minCoeff()));

    // coercivity on ker B
    Eigen::JacobiSVD<Dense> svd(B, Eigen::ComputeFullV);
    const auto& sv = svd.singularValues();
    const double tol = std::max(B.rows(), B.cols()) * sv(0) * std::numeric_limits<double>::epsilon() * 10.0;
    Eigen::Index rank = 0;
    while (rank < sv.size() && sv(rank) > tol) ++rank;
    const Dense Z = svd.matrixV().rightCols(B.cols() - rank);
    if (Z.cols() == 0) {
        out.coercivity = std::numeric_limits<double>::infinity();
    } else {
        const Dense symA = 0.5 * (A + A.transpose());
        const Dense K = Z.transpose() * symA * Z;
        const Dense G = Z.transpose() * GX * Z;
        Eigen::GeneralizedSelfAdjointEigenSolver<Dense> coer(0.5 * (K + K.transpose()), 0.5 * (G + G.transpose()),
                                                             Eigen::EigenvaluesOnly);
        out.coercivity = coer.eigenvalues().minCoeff();
    }

    const auto nphi = static_cast<Eigen::Index>(d.n_phi);
    const Dense Cphi = Dense(sys.C).topLeftCorner(nphi, nphi);
    out.c_min_eig = nphi > 0 ? Eigen::SelfAdjointEigenSolver<Dense>(Cphi, Eigen::EigenvaluesOnly).eigenvalues().minCoeff()
                             : 0.0;
    return out;
}

} // namespace pdmix
