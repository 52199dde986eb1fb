#pragma once

// Shared fixtures for the unit tests.

#include "pdmix/analysis.hpp"

namespace pdmix::testing {

/// Fields the discrete spaces reproduce exactly: constant flux c on Omega1
/// with zero pressure, globally linear pressure on Omega2 with zero
/// velocity. Body forces and interface data are chosen to match.
inline ManufacturedCase linear_patch_case(Vec2 c = {0.3, -0.7}, double p0 = 0.25, Vec2 b = {1.5, -0.5},
                                          double a_one = 2.0, double a_two = 3.0, double beta = 1.0)
{
    auto one = [](int q) { return region_of_quadrant(q) == Region::one; };
    ManufacturedCase mc;
    mc.name = "linear_patch";
    auto& f = mc.exact;
    f.pressure = [=](int q, Vec2 x) { return one(q) ? 0.0 : p0 + dot(b, x); };
    f.pressure_gradient = [=](int q, Vec2) { return one(q) ? Vec2{} : b; };
    f.pressure_laplacian = [](int, Vec2) { return 0.0; };
    f.velocity = [=](int q, Vec2) { return one(q) ? c : Vec2{}; };
    f.source = [](int, Vec2) { return 0.0; };
    f.body_force = [=](int q, Vec2) { return one(q) ? -a_one * c : -1.0 * b; };
    f.potential = [](int, Vec2) { return 0.0; };
    mc.coeffs = piecewise_constant_coefficients(a_one, a_two, beta);
    mc.interface = derive_interface_data(mc.exact, mc.coeffs);
    return mc;
}

/// Multiplies every forcing term of a case by lambda.
inline ManufacturedCase scaled_forcing(const ManufacturedCase& c, double lambda)
{
    ManufacturedCase s = c;
    s.exact.source = [f = c.exact.source, lambda](int q, Vec2 x) { return lambda * f(q, x); };
    s.exact.body_force = [g = c.exact.body_force, lambda](int q, Vec2 x) { return lambda * g(q, x); };
    s.interface.stress = [f = c.interface.stress, lambda](Vec2 x, Vec2 n) { return lambda * f(x, n); };
    s.interface.normal_flux = [f = c.interface.normal_flux, lambda](Vec2 x, Vec2 n) { return lambda * f(x, n); };
    return s;
}

struct Solved {
    BipartiteMesh mesh;
    DofLayout layout;
    SaddleSystem system;
    SolutionFields solution;
};

inline Solved solve_case(const ManufacturedCase& c, int level_inv)
{
    BipartiteMesh m = build_cartesian_mesh(level_inv);
    DofLayout d = build_dof_layout(m);
    SaddleSystem sys = assemble_system(m, d, c);
    SolutionFields s = solve(sys, m);
    return {std::move(m), std::move(d), std::move(sys), std::move(s)};
}

} // namespace pdmix::testing
