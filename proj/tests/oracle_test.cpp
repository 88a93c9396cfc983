#include "dist2/generators.hpp"
#include "dist2/oracle.hpp"

#include <gtest/gtest.h>

using namespace dist2;
using oracle::Pair;

TEST(DistancesLe2, PathOfFour)
{
    std::set<Pair> want{{0, 1}, {1, 2}, {2, 3}, {0, 2}, {1, 3}};
    EXPECT_EQ(oracle::distances_le2(path_graph(4)), want);
}

TEST(DistancesLe2, Hexagon) { EXPECT_EQ(oracle::distances_le2(cycle_graph(6)).size(), 12u); }

TEST(DistancesLe2, SingleVertex) { EXPECT_TRUE(oracle::distances_le2(path_graph(1)).empty()); }

TEST(Chi2Exact, Pentagon) { EXPECT_EQ(oracle::chi2_exact(cycle_graph(5)).chi2, 5); }

TEST(Chi2Exact, Octahedron) { EXPECT_EQ(oracle::chi2_exact(platonic("octahedron")).chi2, 6); }

TEST(Chi2Exact, Icosahedron)
{
    auto g = platonic("icosahedron");
    auto r = oracle::chi2_exact(g);
    EXPECT_EQ(r.chi2, 6);
    auto rep = verify_coloring(g, r.witness);
    EXPECT_TRUE(rep.valid);
    EXPECT_EQ(rep.colors_used, 6);
    EXPECT_TRUE(r.witness.is_total());
}

TEST(Chi2Exact, SmallCases)
{
    EXPECT_EQ(oracle::chi2_exact(path_graph(1)).chi2, 1);
    EXPECT_EQ(oracle::chi2_exact(path_graph(2)).chi2, 2);
    EXPECT_EQ(oracle::chi2_exact(path_graph(6)).chi2, 3);
    EXPECT_EQ(oracle::chi2_exact(cycle_graph(6)).chi2, 3);
    EXPECT_EQ(oracle::chi2_exact(cycle_graph(7)).chi2, 4);
    EXPECT_EQ(oracle::chi2_exact(platonic("cube")).chi2, 4);
}

TEST(Chi2Exact, Errors)
{
    auto big = square_grid(5, 5);
    try {
        oracle::chi2_exact(big);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::TooLarge);
    }
    oracle::ExactOptions opt;
    opt.upper_bound = 5;
    try {
        oracle::chi2_exact(platonic("octahedron"), opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Infeasible);
    }
    opt = {};
    opt.node_budget = 3;
    try {
        oracle::chi2_exact(platonic("icosahedron"), opt);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::Timeout);
    }
}

TEST(Chi2Exact, WitnessIsOptimalOnRandomGraphs)
{
    for (std::uint64_t s = 0; s < 15; ++s) {
        auto g = random_planar(12, s);
        auto r = oracle::chi2_exact(g);
        auto rep = verify_coloring(g, r.witness);
        EXPECT_TRUE(rep.valid);
        EXPECT_EQ(rep.colors_used, r.chi2);
        EXPECT_LE(r.chi2, 20);
        EXPECT_GE(r.chi2, g.max_degree() + 1);
    }
}

TEST(ProperWrt, SquareToTriangle)
{
    // C4 minus vertex 0, with 3 and 1 (ids 2 and 0 after the shift) joined
    auto g = cycle_graph(4);
    auto tri = cycle_graph(3);
    EXPECT_TRUE(oracle::is_proper_wrt(g, tri, 0).proper);
}

TEST(ProperWrt, PentagonWithoutChord)
{
    auto g = cycle_graph(5);
    auto d = delete_vertex(g, 0);
    auto r = oracle::is_proper_wrt(g, d.graph, 0);
    EXPECT_FALSE(r.proper);
    ASSERT_TRUE(r.witness);
    std::set<Vertex> got{r.witness->first, r.witness->second};
    std::set<Vertex> want(g.rotation(0).begin(), g.rotation(0).end());
    EXPECT_EQ(got, want);
}

TEST(ProperWrt, Mismatch)
{
    try {
        oracle::is_proper_wrt(cycle_graph(5), cycle_graph(5), 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::VertexSetMismatch);
    }
}
