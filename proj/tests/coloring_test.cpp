#include "dist2/coloring.hpp"
#include "dist2/generators.hpp"
#include "dist2/oracle.hpp"

#include <gtest/gtest.h>

#include <random>

using namespace dist2;

namespace {

EmbeddedGraph k4() { return platonic("tetrahedron"); }

std::set<oracle::Pair> square_pairs(const SquareGraph& sq)
{
    std::set<oracle::Pair> out;
    for (Vertex u = 0; u < static_cast<Vertex>(sq.adjacency.size()); ++u)
        for (Vertex w : sq.adjacency[u])
            if (u < w)
                out.emplace(u, w);
    return out;
}

// proper coloring of the square, checked pair by pair
bool proper_on_square(const std::set<oracle::Pair>& pairs, const Coloring& phi)
{
    for (auto [a, b] : pairs)
        if (phi.assignment[a] != uncolored && phi.assignment[a] == phi.assignment[b])
            return false;
    return true;
}

} // namespace

TEST(Square, PathOfThreeIsTriangle)
{
    auto sq = square(path_graph(3));
    EXPECT_EQ(sq.edge_count(), 3u);
    EXPECT_TRUE(sq.adjacent(0, 2));
}

TEST(Square, PentagonIsComplete)
{
    auto sq = square(cycle_graph(5));
    EXPECT_EQ(sq.edge_count(), 10u);
}

TEST(Square, HexagonIsFourRegular)
{
    auto g = cycle_graph(6);
    auto sq = square(g);
    for (const auto& a : sq.adjacency)
        EXPECT_EQ(a.size(), 4u);
    EXPECT_EQ(square_pairs(sq), oracle::distances_le2(g));
}

TEST(Square, AgreesWithOracleOnGenerators)
{
    std::vector<EmbeddedGraph> gs{platonic("dodecahedron"), square_grid(5, 6), tri_grid(4, 4), hex_grid(2)};
    for (std::uint64_t s = 0; s < 10; ++s)
        gs.push_back(random_planar(30, s));
    for (const auto& g : gs)
        EXPECT_EQ(square_pairs(square(g)), oracle::distances_le2(g));
}

TEST(Verify, PentagonRainbow)
{
    Coloring phi(5, 20);
    phi.assignment = {1, 2, 3, 4, 5};
    auto r = verify_coloring(cycle_graph(5), phi);
    EXPECT_TRUE(r.valid);
    EXPECT_EQ(r.colors_used, 5);
}

TEST(Verify, PentagonRepeatedColor)
{
    Coloring phi(5, 20);
    phi.assignment = {1, 2, 1, 2, 3};
    auto r = verify_coloring(cycle_graph(5), phi);
    EXPECT_FALSE(r.valid);
    ASSERT_FALSE(r.violations.empty());
    EXPECT_EQ(r.violations.front(), (Violation{0, 2, 2, 1}));
    EXPECT_TRUE(std::is_sorted(r.violations.begin(), r.violations.end(),
                               [](const Violation& a, const Violation& b) {
                                   return std::pair(a.u, a.w) < std::pair(b.u, b.w);
                               }));
}

TEST(Verify, EmptyAssignment)
{
    auto r = verify_coloring(cycle_graph(5), Coloring(5, 20));
    EXPECT_TRUE(r.valid);
    EXPECT_EQ(r.colors_used, 0);
}

TEST(Verify, OutOfPalette)
{
    Coloring phi(3, 4);
    phi.assignment = {1, 5, 2};
    try {
        verify_coloring(path_graph(3), phi);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::ColorOutOfPalette);
    }
}

TEST(Verify, MatchesSquarePropernessOnRandomColorings)
{
    std::mt19937_64 rng(7);
    for (std::uint64_t s = 0; s < 20; ++s) {
        auto g = random_planar(20, s);
        auto pairs = oracle::distances_le2(g);
        for (int trial = 0; trial < 20; ++trial) {
            Coloring phi(g.vertex_count(), 20);
            int k = 12 + trial % 9;
            for (auto& c : phi.assignment)
                c = static_cast<Color>(rng() % (k + 1));
            EXPECT_EQ(verify_coloring(g, phi).valid, proper_on_square(pairs, phi));
        }
    }
}

TEST(Greedy, CliqueUsesFourColors)
{
    auto g = k4();
    std::vector<Vertex> order{3, 1, 0, 2};
    auto phi = greedy_square_color(g, order, 20);
    EXPECT_EQ(phi.colors_used(), 4);
}

TEST(Greedy, PentagonUsesFive)
{
    auto g = cycle_graph(5);
    std::vector<Vertex> order{0, 1, 2, 3, 4};
    EXPECT_EQ(greedy_square_color(g, order, 20).colors_used(), 5);
}

TEST(Greedy, OctahedronFiveColorsExhausted)
{
    try {
        greedy_square_color(platonic("octahedron"), 5);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::PaletteExhausted);
    }
}

TEST(Greedy, RejectsNonPermutation)
{
    std::vector<Vertex> order{0, 0, 1};
    EXPECT_THROW(greedy_square_color(path_graph(3), order, 20), Error);
}

TEST(Greedy, OutputAlwaysVerifies)
{
    for (std::uint64_t s = 0; s < 25; ++s) {
        auto g = random_planar(60, s);
        auto phi = greedy_square_color(g);
        EXPECT_TRUE(phi.is_total());
        EXPECT_TRUE(verify_coloring(g, phi).valid);
    }
}
