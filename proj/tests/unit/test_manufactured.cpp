#include "pdmix/manufactured.hpp"
#include "pdmix/quadrature.hpp"

#include <gtest/gtest.h>

#include <numbers>

using namespace pdmix;

// Reference values below come from the symbolic oracle in tests/oracles/derive.py.

TEST(Manufactured, ExampleOneOracleValues)
{
    const auto c = example1();
    EXPECT_NEAR(c.exact.pressure(1, {0.5, 0.5}), 81.0 / 1024.0, 1e-15);
    EXPECT_NEAR(c.exact.source(1, {0.5, 1.0 / 3.0}), 1787.0 / 972.0, 1e-13);
    const Vec2 g = c.exact.pressure_gradient(1, {0.5, 1.0 / 3.0});
    EXPECT_NEAR(g.x, -4.0 / 81.0, 1e-15);
    EXPECT_NEAR(g.y, 1.0 / 9.0, 1e-15);
    const Vec2 u = c.exact.velocity(1, {0.5, 1.0 / 3.0});
    EXPECT_NEAR(u.x, 4.0 / 81.0, 1e-15);
    EXPECT_NEAR(u.y, -1.0 / 9.0, 1e-15);
}

TEST(Manufactured, ExampleTwoOracleValues)
{
    const auto c = example2();
    EXPECT_NEAR(c.exact.pressure(4, {0.5, -0.5}), -81.0 / 1024.0, 1e-15);
    EXPECT_NEAR(c.exact.pressure(3, {-0.5, -0.5}), 81.0 / 1024.0, 1e-15);
    const Vec2 n{0.0, -1.0};
    EXPECT_NEAR(c.interface.stress({0.5, 0.0}, n), -3.0 / 80.0, 1e-12);
    EXPECT_NEAR(c.interface.normal_flux({0.5, 0.0}, n), 11.0 / 80.0, 1e-12);
    // no jump on the quadrant-2 edges
    EXPECT_NEAR(c.interface.stress({-0.5, 0.0}, {0.0, 1.0}), 0.0, 1e-12);
}

TEST(Manufactured, ExampleTwoLiteralDiffersFromDerived)
{
    const auto lit = example2(InterfaceMode::paper_literal);
    const Vec2 n{0.0, -1.0};
    EXPECT_NEAR(lit.interface.stress({0.5, 0.0}, n), -3.0 / 80.0, 1e-15);
    EXPECT_NEAR(lit.interface.normal_flux({0.5, 0.0}, n), -0.175, 1e-15);
}

TEST(Manufactured, ExampleThreeDerivedFluxIsOddSymmetric)
{
    const auto c = example3();
    EXPECT_NEAR(c.interface.normal_flux({0.5, 0.0}, {0.0, -1.0}), 9.0 / 40.0, 1e-12);
    EXPECT_NEAR(c.interface.normal_flux({-0.5, 0.0}, {0.0, 1.0}), 9.0 / 40.0, 1e-12);
    const auto lit = example3(InterfaceMode::paper_literal);
    EXPECT_NEAR(lit.interface.normal_flux({0.5, 0.0}, {0.0, -1.0}), 9.0 / 40.0, 1e-15);
    EXPECT_NEAR(lit.interface.normal_flux({-0.5, 0.0}, {0.0, 1.0}), -9.0 / 40.0, 1e-15);
}

TEST(Manufactured, ExampleFourOracleValues)
{
    const auto c = example4();
    EXPECT_NEAR(c.exact.pressure(1, {0.5, 0.5}), 0.25, 1e-15);
    EXPECT_NEAR(c.exact.pressure(4, {0.5, 0.0}), 0.5, 1e-15);
    // derived normal flux is -p on the interface, p = wave(x) there
    EXPECT_NEAR(c.interface.normal_flux({0.5, 0.0}, {0.0, -1.0}), -0.5, 1e-6);
    EXPECT_NEAR(c.interface.stress({0.5, 0.0}, {0.0, -1.0}), 0.0, 1e-12);
    const auto cp = example4(InterfaceMode::constant_projection);
    EXPECT_DOUBLE_EQ(cp.interface.normal_flux({0.5, 0.0}, {0.0, -1.0}), -1.0 / std::numbers::sqrt2);
}

TEST(Manufactured, ExampleFourInterfaceMeanPressure)
{
    const auto c = example4();
    double integral = 0.0;
    for (int i = 0; i < 8; ++i) {
        const Vec2 a{-1.0 + 0.25 * i, 0.0}, b{-0.75 + 0.25 * i, 0.0};
        integral += integrate_on_segment([&](Vec2 x) { return c.exact.pressure(4, x); }, a, b, segment_rule(11));
    }
    EXPECT_NEAR(integral / 2.0, 0.5, 1e-9);
}

class AllExamples : public ::testing::TestWithParam<int> {};

TEST_P(AllExamples, ClosedFormsMatchFiniteDifferences)
{
    EXPECT_LE(finite_difference_check(example_by_number(GetParam())), 1e-6);
}

TEST_P(AllExamples, DerivedDataSatisfyTransmissionConditions)
{
    const auto c = example_by_number(GetParam());
    const double beta = c.coeffs.storage({});
    for (double t : {0.1, 0.37, 0.8}) {
        // (point, normal, Omega1 quadrant, Omega2 quadrant)
        const std::array<std::tuple<Vec2, Vec2, int, int>, 4> sites{
            std::tuple{Vec2{t, 0}, Vec2{0, -1}, 1, 4}, std::tuple{Vec2{-t, 0}, Vec2{0, 1}, 3, 2},
            std::tuple{Vec2{0, t}, Vec2{-1, 0}, 1, 2}, std::tuple{Vec2{0, -t}, Vec2{1, 0}, 3, 4}};
        for (const auto& [x, n, q1, q2] : sites) {
            const double p1 = c.exact.pressure(q1, x), p2 = c.exact.pressure(q2, x);
            EXPECT_NEAR(p2 - p1, c.interface.stress(x, n), 1e-6);
            const double jump = dot(c.exact.velocity(q1, x) - c.exact.velocity(q2, x), n);
            EXPECT_NEAR(jump, beta * p2 + c.interface.normal_flux(x, n), 1e-6);
        }
    }
}

TEST_P(AllExamples, OuterBoundaryConditionsHold)
{
    const auto c = example_by_number(GetParam());
    for (double t : {0.2, 0.5, 0.9}) {
        // pressure vanishes on the Omega1 outer boundary
        EXPECT_NEAR(c.exact.pressure(1, {1.0, t}), 0.0, 1e-14);
        EXPECT_NEAR(c.exact.pressure(3, {-t, -1.0}), 0.0, 1e-14);
        // no normal flow through the Omega2 outer boundary
        EXPECT_NEAR(c.exact.velocity(2, {-1.0, t}).x, 0.0, 1e-12);
        EXPECT_NEAR(c.exact.velocity(4, {t, -1.0}).y, 0.0, 1e-12);
    }
}

INSTANTIATE_TEST_SUITE_P(Examples, AllExamples, ::testing::Values(1, 2, 3, 4));

TEST(Manufactured, DerivedDataRejectOffInterfacePoints)
{
    const auto c = example1();
    EXPECT_THROW(c.interface.stress({0.3, 0.3}, {0.0, -1.0}), std::domain_error);
    EXPECT_THROW(c.interface.normal_flux({0.5, 0.0}, {0.0, 1.0}), std::domain_error);
}

TEST(Manufactured, InvalidModeCombinations)
{
    EXPECT_THROW(example_by_number(1, InterfaceMode::paper_literal), std::invalid_argument);
    EXPECT_THROW(example_by_number(2, InterfaceMode::constant_projection), std::invalid_argument);
    EXPECT_THROW(example_by_number(3, InterfaceMode::constant_projection), std::invalid_argument);
    EXPECT_THROW(example_by_number(4, InterfaceMode::paper_literal), std::invalid_argument);
    EXPECT_THROW(example_by_number(5), std::invalid_argument);
    EXPECT_THROW(parse_interface_mode("literal"), std::invalid_argument);
    EXPECT_EQ(parse_interface_mode(to_string(InterfaceMode::constant_projection)), InterfaceMode::constant_projection);
}
