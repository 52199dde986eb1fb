#pragma once

// Quadrature on the reference triangle {(0,0),(1,0),(0,1)} and on [0,1].

#include "pdmix/geometry.hpp"

#include <array>
#include <cmath>
#include <functional>
#include <numbers>
#include <stdexcept>
#include <string>
#include <vector>

namespace pdmix {

struct QuadRule {
    /// Triangle rules store barycentric triples (l0, l1, l2); segment rules
    /// store the parameter t in the first slot.
    std::vector<std::array<double, 3>> points;
    std::vector<double> weights;
    int exact_degree = 0;

    [[nodiscard]] std::size_t size() const { return weights.size(); }
};

namespace detail {

// Symmetric orbit builders, barycentric coordinates.
inline void add_centroid(QuadRule& r, double w)
{
    r.points.push_back({1.0 / 3.0, 1.0 / 3.0, 1.0 / 3.0});
    r.weights.push_back(w);
}

// Orbit of (a, a, 1-2a).
inline void add_orbit3(QuadRule& r, double a, double w)
{
    const double b = 1.0 - 2.0 * a;
    r.points.push_back({a, a, b});
    r.points.push_back({a, b, a});
    r.points.push_back({b, a, a});
    r.weights.insert(r.weights.end(), 3, w);
}

// Orbit of ((1-b)/2, (1-b)/2, b).
inline void add_orbit3b(QuadRule& r, double b, double w) { add_orbit3(r, 0.5 * (1.0 - b), w); }

// Orbit of all permutations of (a, b, 1-a-b).
inline void add_orbit6(QuadRule& r, double a, double b, double w)
{
    const double c = 1.0 - a - b;
    for (const auto& p : {std::array{a, b, c}, std::array{b, a, c}, std::array{a, c, b},
                          std::array{c, a, b}, std::array{b, c, a}, std::array{c, b, a}}) {
        r.points.push_back(p);
    }
    r.weights.insert(r.weights.end(), 6, w);
}

/// Gauss-Legendre nodes and weights on [-1,1] by Newton iteration on P_n.
inline void gauss_legendre(int n, std::vector<double>& x, std::vector<double>& w)
{
    x.assign(n, 0.0);
    w.assign(n, 0.0);
    for (int i = 0; i < n; ++i) {
        double z = std::cos(std::numbers::pi * (i + 0.75) / (n + 0.5));
        double dp = 1.0;
        for (int it = 0; it < 100; ++it) {
            double p0 = 1.0, p1 = z;
            for (int k = 2; k <= n; ++k) {
                const double p2 = ((2.0 * k - 1.0) * z * p1 - (k - 1.0) * p0) / k;
                p0 = p1;
                p1 = p2;
            }
            // p1 = P_n(z), p0 = P_{n-1}(z)
            dp = n * (z * p1 - p0) / (z * z - 1.0);
            const double dz = p1 / dp;
            z -= dz;
            if (std::abs(dz) < 1e-16) break;
        }
        x[i] = z;
        w[i] = 2.0 / ((1.0 - z * z) * dp * dp);
    }
}

} // namespace detail

/// Symmetric rule on the reference triangle, exact for total degree
/// >= min_degree. Weights sum to 1/2.
inline QuadRule triangle_rule(int min_degree)
{
    if (min_degree < 1 || min_degree > 10) {
        throw std::invalid_argument("triangle_rule: unsupported degree " + std::to_string(min_degree));
    }
    QuadRule r;
    switch (min_degree) {
    case 1:
        detail::add_centroid(r, 0.5);
        r.exact_degree = 1;
        break;
    case 2:
        // edge midpoints
        detail::add_orbit3(r, 0.5, 1.0 / 6.0);
        r.exact_degree = 2;
        break;
    case 3:
    case 4:
        detail::add_orbit3(r, 0.091576213509770743460, 0.054975871827660933819);
        detail::add_orbit3(r, 0.44594849091596488632, 0.11169079483900573285);
        r.exact_degree = 4;
        break;
    case 5:
        detail::add_centroid(r, 0.1125);
        detail::add_orbit3(r, 0.10128650732345633880, 0.062969590272413576298);
        detail::add_orbit3(r, 0.47014206410511508977, 0.066197076394253090369);
        r.exact_degree = 5;
        break;
    case 6:
        detail::add_orbit3(r, 0.063089014491502228340, 0.025422453185103408460);
        detail::add_orbit3(r, 0.24928674517091042129, 0.058393137863189683013);
        detail::add_orbit6(r, 0.053145049844816947353, 0.31035245103378440542, 0.041425537809186787597);
        r.exact_degree = 6;
        break;
    case 7:
    case 8:
        detail::add_centroid(r, 0.0721578038388935841255455552445323);
        detail::add_orbit3(r, 0.170569307751760206622293501491464, 0.0516086852673591251408957751460645);
        detail::add_orbit3(r, 0.0505472283170309754584235505965989, 0.0162292488115990401554629641708902);
        detail::add_orbit3(r, 0.459292588292723156028815514494169, 0.0475458171336423123969480521942921);
        detail::add_orbit6(r, 0.008394777409957605337213834539296, 0.263112829634638113421785786284643,
                           0.0136151570872174971324223450369544);
        r.exact_degree = 8;
        break;
    case 9:
        detail::add_centroid(r, 0.0485678981413994169096209912536443);
        detail::add_orbit3b(r, 0.020634961602524744433, 0.0156673501135695352684274156436046);
        detail::add_orbit3b(r, 0.12582081701412672546, 0.0389137705023871396583696781497019);
        detail::add_orbit3(r, 0.188203535619032730240961280467335, 0.0398238694636051265164458871320226);
        detail::add_orbit3(r, 0.0447295133944527098651065899662763, 0.0127888378293490156308393992794999);
        detail::add_orbit6(r, 0.0368384120547362836348175987833851, 0.2219629891607656956751025276931919,
                           0.0216417696886446886446886446886446);
        r.exact_degree = 9;
        break;
    case 10:
        detail::add_centroid(r, 0.0454089951913767900476432975500142);
        detail::add_orbit3b(r, 0.028844733232685245264984935583748, 0.0183629788782333523585030359456832);
        detail::add_orbit3(r, 0.109481575485037054795458631340522, 0.0226605297177639673913028223692986);
        detail::add_orbit6(r, 0.141707219414879954756683250476361, 0.307939838764120950165155022930631,
                           0.0363789584227100543021575883096803);
        detail::add_orbit6(r, 0.025003534762686386073988481007746, 0.246672560639902693917276465411176,
                           0.0141636212655287424183685307910495);
        detail::add_orbit6(r, 0.0095408154002994575801528096228873, 0.0668032510122002657735402127620247,
                           4.71083348186641172996373548344341E-03);
        r.exact_degree = 10;
        break;
    default:
        break;
    }
    return r;
}

/// Gauss-Legendre rule on [0,1] with 2n-1 >= min_degree. Weights sum to 1.
inline QuadRule segment_rule(int min_degree)
{
    if (min_degree < 1 || min_degree > 11) {
        throw std::invalid_argument("segment_rule: unsupported degree " + std::to_string(min_degree));
    }
    const int n = (min_degree + 2) / 2;
    std::vector<double> x, w;
    detail::gauss_legendre(n, x, w);
    QuadRule r;
    for (int i = n - 1; i >= 0; --i) {
        r.points.push_back({0.5 * (x[i] + 1.0), 0.0, 0.0});
        r.weights.push_back(0.5 * w[i]);
    }
    r.exact_degree = 2 * n - 1;
    return r;
}

/// Collapsed (Duffy) Gauss product rule on the reference triangle, exact
/// for any requested degree. Not symmetric; used for saturation checks.
inline QuadRule collapsed_triangle_rule(int degree)
{
    if (degree < 1) throw std::invalid_argument("collapsed_triangle_rule: degree must be >= 1");
    const int n = (degree + 3) / 2; // exact for 2n-2 >= degree
    std::vector<double> x, w;
    detail::gauss_legendre(n, x, w);
    QuadRule r;
    for (int i = 0; i < n; ++i) {
        const double s = 0.5 * (x[i] + 1.0);
        for (int j = 0; j < n; ++j) {
            const double t = 0.5 * (x[j] + 1.0);
            // (s, t) in the unit square -> (xi, eta) = (s, t (1 - s)).
            const double xi = s;
            const double eta = t * (1.0 - s);
            r.points.push_back({1.0 - xi - eta, xi, eta});
            r.weights.push_back(0.25 * w[i] * w[j] * (1.0 - s));
        }
    }
    r.exact_degree = 2 * n - 2;
    return r;
}

/// Physical point of a barycentric triple on triangle p.
inline Vec2 map_to_triangle(const std::array<Vec2, 3>& p, const std::array<double, 3>& bary)
{
    return bary[0] * p[0] + bary[1] * p[1] + bary[2] * p[2];
}

inline double integrate_on_triangle(const std::function<double(Vec2)>& f, const std::array<Vec2, 3>& p,
                                    const QuadRule& rule)
{
    const double area = signed_area(p[0], p[1], p[2]);
    if (!(std::abs(area) > 0.0)) throw std::invalid_argument("integrate_on_triangle: degenerate triangle");
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) sum += rule.weights[q] * f(map_to_triangle(p, rule.points[q]));
    return 2.0 * std::abs(area) * sum;
}

inline double integrate_on_segment(const std::function<double(Vec2)>& f, const Vec2& a, const Vec2& b,
                                   const QuadRule& rule)
{
    const double len = norm(b - a);
    if (!(len > 0.0)) throw std::invalid_argument("integrate_on_segment: degenerate segment");
    double sum = 0.0;
    for (std::size_t q = 0; q < rule.size(); ++q) {
        const double t = rule.points[q][0];
        sum += rule.weights[q] * f((1.0 - t) * a + t * b);
    }
    return len * sum;
}

} // namespace pdmix
