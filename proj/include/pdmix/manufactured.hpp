#pragma once

// Manufactured solutions on the four-quadrant domain. Exact fields are
// evaluated per quadrant so that one-sided limits on the interface are
// available for discontinuous cases.

#include "pdmix/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <numbers>
#include <random>
#include <stdexcept>
#include <string>

namespace pdmix {

enum class InterfaceMode { derived, paper_literal, constant_projection };

inline std::string to_string(InterfaceMode m)
{
    switch (m) {
    case InterfaceMode::derived: return "derived";
    case InterfaceMode::paper_literal: return "paper_literal";
    case InterfaceMode::constant_projection: return "constant_projection";
    }
    return "unknown";
}

inline InterfaceMode parse_interface_mode(const std::string& s)
{
    if (s == "derived") return InterfaceMode::derived;
    if (s == "paper_literal") return InterfaceMode::paper_literal;
    if (s == "constant_projection") return InterfaceMode::constant_projection;
    throw std::invalid_argument("unknown interface mode '" + s + "'");
}

/// Flow resistance a > 0 per region and interface storage rate beta >= 0.
struct CoefficientSet {
    std::function<double(Region, Vec2)> resistance;
    std::function<double(Vec2)> storage;
};

inline CoefficientSet piecewise_constant_coefficients(double a_one, double a_two, double beta)
{
    return {[a_one, a_two](Region r, Vec2) { return r == Region::one ? a_one : a_two; },
            [beta](Vec2) { return beta; }};
}

/// Exact fields, each evaluated on the closure of the given quadrant.
struct ExactFields {
    std::function<double(int, Vec2)> pressure;
    std::function<Vec2(int, Vec2)> pressure_gradient;
    std::function<double(int, Vec2)> pressure_laplacian; // may be empty
    std::function<Vec2(int, Vec2)> velocity;
    std::function<double(int, Vec2)> source;      // F = div u
    std::function<Vec2(int, Vec2)> body_force;    // g
    std::function<double(int, Vec2)> potential;   // phi with grad(phi) = u on Omega2
};

/// Interface data as functions of (point on the interface, unit normal
/// pointing from Omega1 into Omega2).
struct InterfaceData {
    std::function<double(Vec2, Vec2)> stress;
    std::function<double(Vec2, Vec2)> normal_flux;
};

struct ManufacturedCase {
    std::string name;
    ExactFields exact;
    CoefficientSet coeffs;
    InterfaceMode mode = InterfaceMode::derived;
    InterfaceData interface;
};

/// Interface data that make the exact fields satisfy
///   p2 - p1 = f_stress,  u1.n - u2.n = beta p2 + f_n
/// pointwise on the interface.
inline InterfaceData derive_interface_data(const ExactFields& exact, const CoefficientSet& coeffs)
{
    constexpr double offset = 1e-7;
    auto sides = [](Vec2 x, Vec2 n) {
        if (!on_interface(x, 1e-9)) {
            throw std::domain_error("derive_interface_data: point is not on the interface");
        }
        const int q1 = quadrant_of(x - offset * n);
        const int q2 = quadrant_of(x + offset * n);
        if (region_of_quadrant(q1) != Region::one || region_of_quadrant(q2) != Region::two) {
            throw std::domain_error("derive_interface_data: normal does not point from Omega1 into Omega2");
        }
        return std::pair{q1, q2};
    };
    InterfaceData d;
    d.stress = [exact, sides](Vec2 x, Vec2 n) {
        const auto [q1, q2] = sides(x, n);
        return exact.pressure(q2, x) - exact.pressure(q1, x);
    };
    d.normal_flux = [exact, coeffs, sides](Vec2 x, Vec2 n) {
        const auto [q1, q2] = sides(x, n);
        const Vec2 jump = exact.velocity(q1, x) - exact.velocity(q2, x);
        return dot(jump, n) - coeffs.storage(x) * exact.pressure(q2, x);
    };
    return d;
}

namespace detail {

/// Closed-form scalar pressure with gradient and Laplacian per quadrant.
struct Potential {
    std::function<double(int, Vec2)> value;
    std::function<Vec2(int, Vec2)> grad;
    std::function<double(int, Vec2)> lap;
};

/// Darcy fields u = -grad(p)/a, F = -lap(p)/a for region-constant a, g = 0.
inline ExactFields darcy_fields(const Potential& p, double a_one, double a_two)
{
    auto a = [a_one, a_two](int q) { return region_of_quadrant(q) == Region::one ? a_one : a_two; };
    ExactFields f;
    f.pressure = p.value;
    f.pressure_gradient = p.grad;
    f.pressure_laplacian = p.lap;
    f.velocity = [g = p.grad, a](int q, Vec2 x) { return (-1.0 / a(q)) * g(q, x); };
    f.source = [l = p.lap, a](int q, Vec2 x) { return -l(q, x) / a(q); };
    f.body_force = [](int, Vec2) { return Vec2{}; };
    f.potential = [v = p.value, a](int q, Vec2 x) { return -v(q, x) / a(q); };
    return f;
}

// t (t^2 - 1)^2 and its derivatives.
inline double bump(double t) { return t * (t * t - 1.0) * (t * t - 1.0); }
inline double bump_d1(double t) { return 5.0 * t * t * t * t - 6.0 * t * t + 1.0; }
inline double bump_d2(double t) { return 20.0 * t * t * t - 12.0 * t; }

inline Potential polynomial_pressure()
{
    return {[](int, Vec2 x) { return bump(x.x) * bump(x.y); },
            [](int, Vec2 x) { return Vec2{bump_d1(x.x) * bump(x.y), bump(x.x) * bump_d1(x.y)}; },
            [](int, Vec2 x) { return bump_d2(x.x) * bump(x.y) + bump(x.x) * bump_d2(x.y); }};
}

// Harmonic perturbation (1/20)((x-1)^2 - (y+1)^2) carried by quadrant 4.
inline Potential perturbed_polynomial_pressure()
{
    const Potential base = polynomial_pressure();
    return {[base](int q, Vec2 x) {
                const double v = base.value(q, x);
                return q == 4 ? v + ((x.x - 1.0) * (x.x - 1.0) - (x.y + 1.0) * (x.y + 1.0)) / 20.0 : v;
            },
            [base](int q, Vec2 x) {
                const Vec2 g = base.grad(q, x);
                return q == 4 ? g + Vec2{(x.x - 1.0) / 10.0, -(x.y + 1.0) / 10.0} : g;
            },
            base.lap};
}

// sin^2(pi/2 (t - 1)) and its derivatives.
inline double wave(double t)
{
    const double s = std::sin(0.5 * std::numbers::pi * (t - 1.0));
    return s * s;
}
inline double wave_d1(double t) { return 0.5 * std::numbers::pi * std::sin(std::numbers::pi * (t - 1.0)); }
inline double wave_d2(double t)
{
    return 0.5 * std::numbers::pi * std::numbers::pi * std::cos(std::numbers::pi * (t - 1.0));
}

inline Potential trigonometric_pressure()
{
    return {[](int, Vec2 x) { return wave(x.x) * wave(x.y); },
            [](int, Vec2 x) { return Vec2{wave_d1(x.x) * wave(x.y), wave(x.x) * wave_d1(x.y)}; },
            [](int, Vec2 x) { return wave_d2(x.x) * wave(x.y) + wave(x.x) * wave_d2(x.y); }};
}

inline bool on_horizontal_axis(Vec2 x) { return std::abs(x.y) <= 1e-12 && std::abs(x.x) > 1e-12; }

inline ManufacturedCase make_case(std::string name, const Potential& p, double a_one, double a_two,
                                  double beta)
{
    ManufacturedCase c;
    c.name = std::move(name);
    c.exact = darcy_fields(p, a_one, a_two);
    c.coeffs = piecewise_constant_coefficients(a_one, a_two, beta);
    c.mode = InterfaceMode::derived;
    c.interface = derive_interface_data(c.exact, c.coeffs);
    return c;
}

} // namespace detail

/// Smooth polynomial pressure, a = 1, continuous across the interface.
inline ManufacturedCase example1(double beta = 1.0)
{
    return detail::make_case("example1", detail::polynomial_pressure(), 1.0, 1.0, beta);
}

/// Example 1 plus a harmonic perturbation on the fourth quadrant, producing
/// jumps in pressure and normal flux across the Q4 interface edges.
inline ManufacturedCase example2(InterfaceMode mode = InterfaceMode::derived, double beta = 1.0)
{
    if (mode == InterfaceMode::constant_projection) {
        throw std::invalid_argument("example2: constant_projection mode is only defined for example 4");
    }
    auto c = detail::make_case("example2", detail::perturbed_polynomial_pressure(), 1.0, 1.0, beta);
    if (mode == InterfaceMode::paper_literal) {
        c.mode = mode;
        c.interface.stress = [](Vec2 x, Vec2) {
            if (detail::on_horizontal_axis(x)) return x.x > 0.0 ? ((x.x - 1.0) * (x.x - 1.0) - 1.0) / 20.0 : 0.0;
            return x.y < 0.0 ? (1.0 - (x.y + 1.0) * (x.y + 1.0)) / 20.0 : 0.0;
        };
        c.interface.normal_flux = [](Vec2 x, Vec2) {
            if (detail::on_horizontal_axis(x)) return x.x > 0.0 ? (x.x - 4.0) / 20.0 : 0.0;
            return x.y < 0.0 ? (4.0 - x.y) / 20.0 : 0.0;
        };
    }
    return c;
}

/// Example 1 pressure with resistance 1 on Omega1 and 5 on Omega2.
inline ManufacturedCase example3(InterfaceMode mode = InterfaceMode::derived, double beta = 1.0)
{
    if (mode == InterfaceMode::constant_projection) {
        throw std::invalid_argument("example3: constant_projection mode is only defined for example 4");
    }
    auto c = detail::make_case("example3", detail::polynomial_pressure(), 1.0, 5.0, beta);
    if (mode == InterfaceMode::paper_literal) {
        c.mode = mode;
        c.interface.stress = [](Vec2, Vec2) { return 0.0; };
        c.interface.normal_flux = [](Vec2 x, Vec2) {
            const double t = detail::on_horizontal_axis(x) ? x.x : x.y;
            return 0.8 * t * (t * t - 1.0) * (t * t - 1.0);
        };
    }
    return c;
}

/// Trigonometric pressure, resistance 1 / 5, beta = 1. With the derived data
/// f_n = -p on the interface; constant_projection replaces it by -1/sqrt(2).
inline ManufacturedCase example4(InterfaceMode mode = InterfaceMode::derived, double beta = 1.0)
{
    if (mode == InterfaceMode::paper_literal) {
        throw std::invalid_argument("example4: paper_literal mode is only defined for examples 2 and 3");
    }
    auto c = detail::make_case("example4", detail::trigonometric_pressure(), 1.0, 5.0, beta);
    if (mode == InterfaceMode::constant_projection) {
        c.mode = mode;
        c.interface.stress = [](Vec2, Vec2) { return 0.0; };
        c.interface.normal_flux = [](Vec2, Vec2) { return -1.0 / std::numbers::sqrt2; };
    }
    return c;
}

inline ManufacturedCase example_by_number(int n, InterfaceMode mode = InterfaceMode::derived, double beta = 1.0)
{
    switch (n) {
    case 1:
        if (mode != InterfaceMode::derived) {
            throw std::invalid_argument("example1: only the derived interface mode is defined");
        }
        return example1(beta);
    case 2: return example2(mode, beta);
    case 3: return example3(mode, beta);
    case 4: return example4(mode, beta);
    default: throw std::invalid_argument("example number must be 1, 2, 3 or 4");
    }
}

/// Worst discrepancy, relative to the sampled sup of each quantity, between
/// the closed-form calculus of a case and central differences (step 1e-5):
/// grad p vs differences of p, lap p vs differences of grad p, and
/// u = -grad(p)/a, F = -lap(p)/a for region-constant a.
inline double finite_difference_check(const ManufacturedCase& c, int samples_per_region = 200,
                                      double step = 1e-5)
{
    const auto& f = c.exact;
    std::mt19937_64 rng(20240611);
    std::uniform_real_distribution<double> coord(2.0 * step + 1e-3, 1.0 - 2.0 * step - 1e-3);

    double max_grad = 0.0, max_lap = 0.0, max_u = 0.0, max_f = 0.0;
    double err_grad = 0.0, err_lap = 0.0, err_u = 0.0, err_f = 0.0;

    for (int q = 1; q <= 4; ++q) {
        const double sx = (q == 1 || q == 4) ? 1.0 : -1.0;
        const double sy = (q == 1 || q == 2) ? 1.0 : -1.0;
        const Region region = region_of_quadrant(q);
        for (int s = 0; s < samples_per_region / 2; ++s) {
            const Vec2 x{sx * coord(rng), sy * coord(rng)};
            const Vec2 ex{step, 0.0}, ey{0.0, step};

            const Vec2 grad = f.pressure_gradient(q, x);
            const Vec2 fd_grad{(f.pressure(q, x + ex) - f.pressure(q, x - ex)) / (2.0 * step),
                               (f.pressure(q, x + ey) - f.pressure(q, x - ey)) / (2.0 * step)};
            max_grad = std::max(max_grad, norm(grad));
            err_grad = std::max(err_grad, norm(grad - fd_grad));

            const double a = c.coeffs.resistance(region, x);
            const Vec2 u = f.velocity(q, x);
            max_u = std::max(max_u, norm(u));
            err_u = std::max(err_u, norm(u + (1.0 / a) * fd_grad));

            const double fd_lap = (f.pressure_gradient(q, x + ex).x - f.pressure_gradient(q, x - ex).x +
                                   f.pressure_gradient(q, x + ey).y - f.pressure_gradient(q, x - ey).y) /
                                  (2.0 * step);
            if (f.pressure_laplacian) {
                const double lap = f.pressure_laplacian(q, x);
                max_lap = std::max(max_lap, std::abs(lap));
                err_lap = std::max(err_lap, std::abs(lap - fd_lap));
            }
            const double src = f.source(q, x);
            max_f = std::max(max_f, std::abs(src));
            err_f = std::max(err_f, std::abs(src + fd_lap / a));
        }
    }
    auto rel = [](double err, double scale) { return scale > 0.0 ? err / scale : err; };
    return std::max({rel(err_grad, max_grad), rel(err_lap, max_lap), rel(err_u, max_u), rel(err_f, max_f)});
}

} // namespace pdmix
