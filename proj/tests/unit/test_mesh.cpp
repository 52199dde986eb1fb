#include "pdmix/mesh.hpp"

#include <gtest/gtest.h>

#include <set>
#include <sstream>

using namespace pdmix;

namespace {

bool inside(const std::array<Vec2, 3>& t, Vec2 p)
{
    const double eps = 1e-12;
    return signed_area(t[0], t[1], p) >= -eps && signed_area(t[1], t[2], p) >= -eps &&
           signed_area(t[2], t[0], p) >= -eps;
}

std::size_t count_kind(const BipartiteMesh& m, EdgeKind k)
{
    std::size_t n = 0;
    for (const auto& e : m.edges()) n += e.kind == k;
    return n;
}

} // namespace

TEST(Mesh, LevelOneCounts)
{
    const auto m = build_cartesian_mesh(1);
    EXPECT_EQ(m.vertices().size(), 9u);
    EXPECT_EQ(m.triangles().size(), 8u);
    EXPECT_EQ(m.edges().size(), 16u);
    EXPECT_EQ(m.interface_edges().size(), 4u);
    int r1 = 0;
    for (const auto& t : m.triangles()) r1 += t.region == Region::one;
    EXPECT_EQ(r1, 4);
}

TEST(Mesh, LevelTwoCounts)
{
    const auto m = build_cartesian_mesh(2);
    EXPECT_EQ(m.vertices().size(), 25u);
    EXPECT_EQ(m.triangles().size(), 32u);
    ASSERT_EQ(m.interface_edges().size(), 8u);
    for (const auto& ie : m.interface_edges()) EXPECT_DOUBLE_EQ(m.edge_length(ie.edge), 0.5);
}

TEST(Mesh, RejectsLevelZero)
{
    EXPECT_THROW(build_cartesian_mesh(0), std::invalid_argument);
}

TEST(Mesh, RejectsClockwiseTriangle)
{
    std::vector<Vec2> v{{0, 0}, {1, 0}, {0, 1}};
    std::vector<TriangleSpec> t{{{0, 2, 1}, Region::one, 1}};
    EXPECT_THROW(BipartiteMesh(1, v, t), std::invalid_argument);
}

class MeshLevels : public ::testing::TestWithParam<int> {};

TEST_P(MeshLevels, AreaAndCountIdentities)
{
    const int n = GetParam();
    const auto m = build_cartesian_mesh(n);
    double area = 0.0;
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        EXPECT_GT(m.area(k), 0.0);
        area += m.area(k);
    }
    EXPECT_NEAR(area, 4.0, 1e-12);
    EXPECT_EQ(m.triangles().size(), static_cast<std::size_t>(2 * (2 * n) * (2 * n)));
    EXPECT_EQ(m.interface_edges().size(), static_cast<std::size_t>(4 * n));
}

TEST_P(MeshLevels, EdgeKindsPartitionEdges)
{
    const auto m = build_cartesian_mesh(GetParam());
    std::size_t total = 0;
    for (auto k : {EdgeKind::interior_one, EdgeKind::interior_two, EdgeKind::interface, EdgeKind::boundary_one,
                   EdgeKind::boundary_two}) {
        total += count_kind(m, k);
    }
    EXPECT_EQ(total, m.edges().size());
    EXPECT_EQ(count_kind(m, EdgeKind::interface), m.interface_edges().size());
}

TEST_P(MeshLevels, InterfaceEdgesOnAxesWithInwardNormals)
{
    const auto m = build_cartesian_mesh(GetParam());
    for (const auto& ie : m.interface_edges()) {
        const auto& e = m.edge(ie.edge);
        EXPECT_TRUE(on_interface(m.vertex(e.vertices[0])));
        EXPECT_TRUE(on_interface(m.vertex(e.vertices[1])));
        EXPECT_EQ(m.triangle(ie.omega1_triangle).region, Region::one);
        EXPECT_EQ(m.triangle(ie.omega2_triangle).region, Region::two);
        EXPECT_NEAR(norm(ie.normal), 1.0, 1e-15);
        EXPECT_GT(dot(ie.normal, m.centroid(ie.omega2_triangle) - m.edge_midpoint(ie.edge)), 0.0);
    }
}

TEST_P(MeshLevels, TriangleRegionsMatchQuadrants)
{
    const auto m = build_cartesian_mesh(GetParam());
    for (std::size_t k = 0; k < m.triangles().size(); ++k) {
        const int q = quadrant_of(m.centroid(k));
        EXPECT_EQ(m.triangle(k).component, q);
        EXPECT_EQ(m.triangle(k).region, region_of_quadrant(q));
    }
    EXPECT_TRUE(validate_consistency(m).ok());
}

INSTANTIATE_TEST_SUITE_P(Levels, MeshLevels, ::testing::Values(1, 2, 4, 8));

TEST(Mesh, NormalConventionPerHalfAxis)
{
    const auto m = build_cartesian_mesh(2);
    for (const auto& ie : m.interface_edges()) {
        const Vec2 mid = m.edge_midpoint(ie.edge);
        Vec2 expected;
        if (mid.y == 0.0) expected = mid.x > 0.0 ? Vec2{0, -1} : Vec2{0, 1};
        else expected = mid.y > 0.0 ? Vec2{-1, 0} : Vec2{1, 0};
        EXPECT_NEAR(ie.normal.x, expected.x, 1e-15);
        EXPECT_NEAR(ie.normal.y, expected.y, 1e-15);
    }
}

TEST(Mesh, EdgeSignsOppositeAcrossInteriorEdges)
{
    const auto m = build_cartesian_mesh(4);
    for (std::size_t e = 0; e < m.edges().size(); ++e) {
        const auto& ed = m.edge(e);
        if (ed.triangles[1] == npos) continue;
        int signs[2];
        for (int s = 0; s < 2; ++s) {
            const auto& t = m.triangle(ed.triangles[s]);
            int k = 0;
            while (t.edges[k] != e) ++k;
            signs[s] = m.edge_sign(ed.triangles[s], k);
        }
        EXPECT_EQ(signs[0], -signs[1]);
    }
}

TEST(Mesh, RefinementIsMonotone)
{
    const auto coarse = build_cartesian_mesh(1);
    const auto fine = refine(coarse);
    EXPECT_EQ(fine.level_inv(), 2);
    EXPECT_EQ(refine(fine).level_inv(), 4);

    std::vector<int> children(coarse.triangles().size(), 0);
    for (std::size_t k = 0; k < fine.triangles().size(); ++k) {
        int parents = 0;
        for (std::size_t p = 0; p < coarse.triangles().size(); ++p) {
            const auto c = coarse.corners(p);
            const auto f = fine.corners(k);
            if (inside(c, f[0]) && inside(c, f[1]) && inside(c, f[2])) {
                ++parents;
                ++children[p];
            }
        }
        EXPECT_EQ(parents, 1);
    }
    for (int c : children) EXPECT_EQ(c, 4);
}

TEST(Mesh, FlippedTagIsReported)
{
    const auto m = build_cartesian_mesh(2);
    std::vector<Vec2> v(m.vertices().begin(), m.vertices().end());
    std::vector<TriangleSpec> t;
    for (const auto& tri : m.triangles()) t.push_back({tri.vertices, tri.region, tri.component});
    t[5].region = t[5].region == Region::one ? Region::two : Region::one;
    const auto report = validate_consistency(BipartiteMesh(2, v, t));
    ASSERT_FALSE(report.ok());
    EXPECT_EQ(report.mislabeled, std::vector<std::size_t>{5});
}

TEST(Mesh, ShiftedGridStraddlesInterface)
{
    const auto m = build_cartesian_mesh(2);
    std::vector<Vec2> v(m.vertices().begin(), m.vertices().end());
    for (auto& p : v) p.x += 0.25;
    std::vector<TriangleSpec> t;
    for (const auto& tri : m.triangles()) t.push_back({tri.vertices, tri.region, tri.component});
    const auto report = validate_consistency(BipartiteMesh(2, v, t));
    EXPECT_FALSE(report.ok());
    EXPECT_FALSE(report.straddling.empty());
}

TEST(Mesh, AlternateDiagonalIsConsistent)
{
    const auto m = build_cartesian_mesh(4, Diagonal::lower_right_to_upper_left);
    EXPECT_TRUE(validate_consistency(m).ok());
    EXPECT_EQ(m.interface_edges().size(), 16u);
}

TEST(Mesh, VtkDumpHeader)
{
    std::ostringstream os;
    write_mesh_vtk(build_cartesian_mesh(1), os);
    const std::string s = os.str();
    EXPECT_EQ(s.rfind("# vtk DataFile Version 3.0", 0), 0u);
    EXPECT_NE(s.find("POINTS 9"), std::string::npos);
    EXPECT_NE(s.find("CELLS 8 32"), std::string::npos);
    EXPECT_NE(s.find("CELL_DATA 8"), std::string::npos);
}
