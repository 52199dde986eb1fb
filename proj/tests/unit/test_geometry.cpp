#include "pdmix/geometry.hpp"

#include <gtest/gtest.h>

using namespace pdmix;

TEST(Geometry, QuadrantsAndRegions)
{
    EXPECT_EQ(quadrant_of({0.5, 0.5}), 1);
    EXPECT_EQ(quadrant_of({-0.5, 0.5}), 2);
    EXPECT_EQ(quadrant_of({-0.5, -0.5}), 3);
    EXPECT_EQ(quadrant_of({0.5, -0.5}), 4);
    EXPECT_EQ(region_of_quadrant(1), Region::one);
    EXPECT_EQ(region_of_quadrant(3), Region::one);
    EXPECT_EQ(region_of_quadrant(2), Region::two);
    EXPECT_EQ(region_of_quadrant(4), Region::two);
    EXPECT_THROW(quadrant_of({0.0, 0.5}), std::domain_error);
}

TEST(Geometry, InterfaceAndOrientation)
{
    EXPECT_TRUE(on_interface({0.0, 0.3}));
    EXPECT_TRUE(on_interface({-0.7, 0.0}));
    EXPECT_FALSE(on_interface({0.1, 0.1}));
    EXPECT_DOUBLE_EQ(signed_area({0, 0}, {1, 0}, {0, 1}), 0.5);
    EXPECT_DOUBLE_EQ(signed_area({0, 0}, {0, 1}, {1, 0}), -0.5);
    const Vec2 r = rotate_cw({0, 1});
    EXPECT_DOUBLE_EQ(r.x, 1.0);
    EXPECT_DOUBLE_EQ(r.y, 0.0);
}
