#include "dist2/generators.hpp"
#include "dist2/oracle.hpp"
#include "dist2/reduction.hpp"

#include <gtest/gtest.h>

using namespace dist2;

namespace {

bool has_match(const std::vector<ConfigurationMatch>& ms, int config, Vertex center)
{
    return std::any_of(ms.begin(), ms.end(),
                       [&](const ConfigurationMatch& m) { return m.config == config && m.center == center; });
}

EmbeddedGraph star(int leaves)
{
    std::vector<std::vector<Vertex>> rot(leaves + 1);
    for (int i = 1; i <= leaves; ++i) {
        rot[0].push_back(i);
        rot[i] = {0};
    }
    return build_embedded(rot.size(), rot);
}

// Graphs seen along the reduction of g, g itself included.
std::vector<EmbeddedGraph> reduction_chain(const EmbeddedGraph& g)
{
    std::vector<EmbeddedGraph> out{g};
    while (out.back().vertex_count() > 1) {
        std::optional<EmbeddedGraph> next;
        for_each_match(out.back(), [&](const ConfigurationMatch& m) {
            auto o = try_plan(out.back(), m);
            if (o.reduced)
                next = std::move(o.reduced);
            return next.has_value();
        });
        if (!next)
            break;
        out.push_back(std::move(*next));
    }
    return out;
}

void expect_sound(const EmbeddedGraph& g, const ConfigurationMatch& m)
{
    auto o = try_plan(g, m);
    ASSERT_TRUE(o.plan) << m.id() << " " << m.variant << ": " << o.detail;
    const auto& h = *o.reduced;
    EXPECT_LE(h.max_degree(), 6) << m.id();
    EXPECT_LT(h.vertex_count() + h.edge_count(), g.vertex_count() + g.edge_count()) << m.id();
    EXPECT_TRUE(satisfies_euler(h)) << m.id();
    auto proper = oracle::is_proper_wrt(g, h, o.plan->deleted);
    EXPECT_TRUE(proper.proper) << m.id() << " " << m.variant;
    EXPECT_LE(static_cast<int>(distance2_neighborhood(g, o.plan->deleted).size()), o.plan->forbidden_bound);
    EXPECT_LE(o.plan->forbidden_bound, 19);
}

} // namespace

TEST(Catalog, NamesRoundTrip)
{
    EXPECT_EQ(catalog().size(), 24u);
    for (const auto& c : catalog())
        EXPECT_EQ(parse_config_name(config_name(c.id)), c.id);
    EXPECT_EQ(config_name(3), "K03");
    EXPECT_EQ(parse_config_name("K25"), 0);
    EXPECT_EQ(parse_config_name("x01"), 0);
}

TEST(DetectAll, EdgeHasLeavesAtBothEnds)
{
    auto ms = detect_all(path_graph(2));
    EXPECT_TRUE(has_match(ms, 1, 0));
    EXPECT_TRUE(has_match(ms, 1, 1));
}

TEST(DetectAll, OctahedronThreeTrianglesEverywhere)
{
    auto g = platonic("octahedron");
    auto ms = detect_all(g);
    for (Vertex v = 0; v < 6; ++v)
        EXPECT_TRUE(has_match(ms, 6, v));
}

TEST(DetectAll, IcosahedronEverywhere)
{
    auto ms = detect_all(platonic("icosahedron"));
    for (Vertex v = 0; v < 12; ++v)
        EXPECT_TRUE(has_match(ms, 13, v));
}

TEST(DetectAll, DegreeTooHigh)
{
    try {
        detect_all(star(7));
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DegreeTooHigh);
    }
    EXPECT_THROW(detect(star(7)), Error);
    EXPECT_THROW(color_by_reduction(star(7)), Error);
}

TEST(DetectAll, Deterministic)
{
    auto g = random_planar(40, 3);
    auto a = detect_all(g), b = detect_all(g);
    ASSERT_EQ(a.size(), b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
        EXPECT_EQ(a[i].config, b[i].config);
        EXPECT_EQ(a[i].chords, b[i].chords);
    }
    for (std::size_t i = 1; i < a.size(); ++i)
        EXPECT_LE(std::pair(a[i - 1].config, a[i - 1].center), std::pair(a[i].config, a[i].center));
}

TEST(Detect, SquarePicks2VertexAtZero)
{
    auto m = detect(cycle_graph(4));
    ASSERT_TRUE(m);
    EXPECT_EQ(m->config, 2);
    EXPECT_EQ(m->center, 0);
}

TEST(Detect, SingleVertexHasNothing) { EXPECT_FALSE(detect(path_graph(1))); }

TEST(Detect, CubePicks3VertexAtZero)
{
    auto m = detect(platonic("cube"));
    ASSERT_TRUE(m);
    EXPECT_EQ(m->config, 3);
    EXPECT_EQ(m->center, 0);
}

TEST(Plan, SquareBecomesTriangle)
{
    auto g = cycle_graph(4);
    auto m = *detect(g);
    auto p = plan(g, m);
    EXPECT_EQ(p.deleted, 0);
    ASSERT_EQ(p.add_edges.size(), 1u);
    EXPECT_EQ(p.add_edges[0], (Chord{1, 3}));
    auto h = apply(g, p);
    EXPECT_EQ(h.vertex_count(), 3u);
    EXPECT_EQ(h.edge_count(), 3u);
}

TEST(Plan, OctahedronChordDropped)
{
    auto g = platonic("octahedron");
    auto ms = detect_all(g);
    auto it = std::find_if(ms.begin(), ms.end(), [](const auto& m) { return m.config == 6; });
    ASSERT_NE(it, ms.end());
    auto p = plan(g, *it);
    EXPECT_TRUE(p.add_edges.empty());
    EXPECT_EQ(p.dropped.size(), 1u);
    auto h = apply(g, p);
    EXPECT_EQ(h.vertex_count(), 5u);
    EXPECT_EQ(h.edge_count(), 8u);
    std::multiset<std::size_t> degs;
    for (const auto& f : h.faces())
        degs.insert(f.degree());
    EXPECT_EQ(degs, (std::multiset<std::size_t>{3, 3, 3, 3, 4}));
}

TEST(Plan, IcosahedronDeletesOnly)
{
    auto g = platonic("icosahedron");
    auto m = *detect(g);
    EXPECT_EQ(m.config, 13);
    auto p = plan(g, m);
    EXPECT_TRUE(p.add_edges.empty());
    EXPECT_TRUE(p.dropped.empty());
}

TEST(Plan, RejectsCrossingConstruction)
{
    auto g = cycle_graph(5);
    ConfigurationMatch m = *detect(g);
    // neighbours of 0 in C5 are 1 and 4; a made-up construction with a
    // chord to a far vertex has to be refused, not applied
    m.chords = {{1, 3}, {2, 4}};
    auto o = try_plan(g, m);
    EXPECT_FALSE(o.plan);
    EXPECT_THROW(plan(g, m), Error);
}

TEST(Plan, RejectsNonProperConstruction)
{
    auto g = cycle_graph(5);
    ConfigurationMatch m = *detect(g);
    m.chords.clear();
    auto o = try_plan(g, m);
    ASSERT_TRUE(o.failure);
    EXPECT_EQ(*o.failure, PlanFailure::NotProper);
}

TEST(Apply, PentagonBecomesSquare)
{
    auto g = cycle_graph(5);
    auto h = apply(g, plan(g, *detect(g)));
    EXPECT_EQ(h.vertex_count(), 4u);
    EXPECT_EQ(h.edge_count(), 4u);
    for (Vertex v = 0; v < 4; ++v)
        EXPECT_EQ(h.degree(v), 2);
}

TEST(Apply, CubeNeighbourGainsTwoEdges)
{
    auto g = platonic("cube");
    auto m = *detect(g);
    auto p = plan(g, m);
    EXPECT_EQ(p.add_edges.size(), 2u);
    auto h = apply(g, p);
    EXPECT_EQ(h.vertex_count(), 7u);
    const Vertex v1 = m.role("v1");
    EXPECT_EQ(g.degree(v1), 3);
    EXPECT_EQ(h.degree(shift_after_delete(v1, m.deleted)), 4);
    // v1 loses its edge to v and gains two: 3 - 1 + 2
    EXPECT_EQ(h.edge_count(), 12u - 3u + 2u);
    EXPECT_LE(h.max_degree(), 6);
    EXPECT_TRUE(oracle::is_proper_wrt(g, h, m.deleted).proper);
}

TEST(Extend, MinimumFreeColor)
{
    auto g = star(20);
    Coloring phi(21, 20);
    for (int i = 1; i <= 6; ++i)
        phi.assignment[i] = i;
    EXPECT_EQ(extend(g, phi, 0), 7);
    EXPECT_EQ(extend(g, Coloring(21, 20), 0), 1);
    for (int i = 1; i <= 20; ++i)
        phi.assignment[i] = i;
    try {
        extend(g, phi, 0);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::NoSafeColor);
        EXPECT_NE(e.detail().find("1,2,3"), std::string::npos);
    }
}

TEST(ColorByReduction, Pentagon)
{
    auto g = cycle_graph(5);
    auto r = color_by_reduction(g);
    EXPECT_FALSE(r.fallback);
    auto rep = verify_coloring(g, r.coloring);
    EXPECT_TRUE(rep.valid);
    EXPECT_EQ(rep.colors_used, oracle::chi2_exact(g).chi2);
    EXPECT_EQ(rep.colors_used, 5);
}

TEST(ColorByReduction, Octahedron)
{
    auto g = platonic("octahedron");
    auto r = color_by_reduction(g);
    EXPECT_TRUE(verify_coloring(g, r.coloring).valid);
    EXPECT_EQ(r.coloring.colors_used(), 6);
}

TEST(ColorByReduction, Icosahedron)
{
    auto g = platonic("icosahedron");
    auto r = color_by_reduction(g);
    auto rep = verify_coloring(g, r.coloring);
    EXPECT_TRUE(rep.valid);
    EXPECT_LE(rep.colors_used, 20);
    EXPECT_GE(rep.colors_used, oracle::chi2_exact(g).chi2);
    EXPECT_EQ(oracle::chi2_exact(g).chi2, 6);
}

TEST(ColorByReduction, TraceIsConsistent)
{
    auto g = random_planar(50, 11);
    auto r = color_by_reduction(g);
    ASSERT_FALSE(r.fallback);
    EXPECT_EQ(r.trace.size(), g.vertex_count() - 1);
    std::set<Vertex> deleted;
    for (const auto& t : r.trace) {
        EXPECT_TRUE(deleted.insert(t.deleted).second);
        EXPECT_EQ(r.coloring.assignment[t.deleted], t.color);
        EXPECT_LE(t.forbidden, t.bound);
    }
    EXPECT_EQ(r.bound_violations, 0);
    EXPECT_EQ(r.extend_calls, r.trace.size());
}

TEST(ColorByReduction, EmptyAndTiny)
{
    auto r0 = color_by_reduction(build_embedded(0, {}));
    EXPECT_TRUE(r0.coloring.assignment.empty());
    auto r1 = color_by_reduction(path_graph(1));
    EXPECT_EQ(r1.coloring.assignment, std::vector<Color>{1});
    auto iso = build_embedded(3, {{}, {}, {}});
    auto r3 = color_by_reduction(iso);
    EXPECT_FALSE(r3.fallback);
    EXPECT_TRUE(verify_coloring(iso, r3.coloring).valid);
}

TEST(ColorByReduction, RandomGraphsValid)
{
    for (std::uint64_t s = 0; s < 60; ++s) {
        auto g = random_planar(10 + static_cast<int>(s), s);
        auto r = color_by_reduction(g);
        EXPECT_FALSE(r.fallback) << s;
        EXPECT_TRUE(r.coloring.is_total());
        auto rep = verify_coloring(g, r.coloring);
        EXPECT_TRUE(rep.valid) << s;
        EXPECT_LE(rep.colors_used, 20);
        EXPECT_LE(r.max_forbidden, 19);
    }
}

TEST(Soundness, EveryMatchOnSmallGraphs)
{
    std::size_t checked = 0;
    for (std::uint64_t s = 0; s < 150; ++s) {
        auto g = random_planar(4 + static_cast<int>(s % 11), s);
        for (const auto& h : reduction_chain(g))
            for (const auto& m : detect_all(h)) {
                expect_sound(h, m);
                ++checked;
            }
    }
    EXPECT_GT(checked, 1000u);
}

TEST(Soundness, EveryCatalogEntryExercised)
{
    // Larger graphs reach the 6-vertex entries; their reductions are checked
    // with the same oracle.
    std::set<int> hit;
    std::vector<EmbeddedGraph> pool{platonic("icosahedron"), tri_grid(6, 6), hex_grid(3)};
    for (std::uint64_t s = 0; s < 400 && hit.size() < 24; ++s)
        pool.push_back(random_planar(20 + static_cast<int>(s % 60), 1000 + s));
    for (const auto& g : pool) {
        if (hit.size() == 24)
            break;
        for (const auto& h : reduction_chain(g))
            for (const auto& m : detect_all(h))
                if (hit.insert(m.config).second)
                    expect_sound(h, m);
    }
    EXPECT_EQ(hit.size(), 24u);
}

TEST(Completeness, ConnectedGraphsAlwaysMatch)
{
    for (std::uint64_t s = 0; s < 100; ++s) {
        auto g = random_planar(2 + static_cast<int>(s), s + 77);
        ASSERT_EQ(g.component_count(), 1u);
        EXPECT_FALSE(detect_all(g).empty()) << s;
    }
    for (auto name : {"tetrahedron", "cube", "octahedron", "icosahedron", "dodecahedron"})
        EXPECT_FALSE(detect_all(platonic(name)).empty()) << name;
}
