#include "dist2/discharging.hpp"
#include "dist2/generators.hpp"

#include <gtest/gtest.h>

using namespace dist2;

namespace {

// 5-cycle 0..4 bounding a face, padded with leaves: vertex 0 ends as a
// 3-vertex, 1 and 4 as 6-vertices, 2 and 3 as 5-vertices.
EmbeddedGraph pentagon_fixture()
{
    const std::array<int, 5> target{3, 6, 5, 5, 6};
    std::vector<std::vector<Vertex>> rot(5);
    for (int i = 0; i < 5; ++i)
        rot[i] = {(i + 4) % 5, (i + 1) % 5};
    for (int i = 0; i < 5; ++i)
        for (int k = 2; k < target[i]; ++k) {
            Vertex leaf = static_cast<Vertex>(rot.size());
            rot.push_back({i});
            rot[i].push_back(leaf);
        }
    return build_embedded(rot.size(), rot);
}

FaceId inner_pentagon(const EmbeddedGraph& g)
{
    for (const auto& f : g.faces())
        if (f.degree() == 5)
            return f.id;
    return npos;
}

// Straight from the rule list, one element at a time, no ledger.
ChargeMap direct_final(const EmbeddedGraph& g)
{
    auto m3 = [&](Vertex v) { return triangle_corners(g, v); };
    auto faces_at = [&](Vertex v) {
        std::vector<FaceId> fs;
        for (std::size_t i = 0; i < g.rotation(v).size(); ++i)
            fs.push_back(g.corner_face(v, i));
        std::sort(fs.begin(), fs.end());
        fs.erase(std::unique(fs.begin(), fs.end()), fs.end());
        return fs;
    };
    auto face_has_3_next_to = [&](FaceId f, Vertex v) {
        for (Vertex u : g.face(f).vertices())
            if (g.degree(u) == 3 && g.adjacent(u, v))
                return true;
        return false;
    };
    auto sender6 = [&](Vertex w) { return g.degree(w) == 6 && m3(w) <= 5; };
    auto gets_from_big_face = [&](Vertex v, FaceId f) -> Charge {
        switch (g.degree(v)) {
        case 3: return Charge(1, 3);
        case 4: return Charge(1, 5);
        case 5: return Charge(1, 5);
        case 6: return face_has_3_next_to(f, v) ? Charge(1, 9) : Charge(1, 5);
        default: return 0;
        }
    };
    auto gets_from_6 = [&](Vertex u) -> Charge {
        switch (g.degree(u)) {
        case 3: return Charge(1, 9);
        case 4: return Charge(1, 15);
        case 5: return m3(u) >= 4 ? Charge(2, 15) : Charge(0);
        default: return 0;
        }
    };

    ChargeMap out = initial_charges(g);
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        for (FaceId f : faces_at(v)) {
            if (g.face(f).degree() == 3)
                out.vertex[v] -= Charge(1, 3);
            if (g.face(f).degree() >= 5)
                out.vertex[v] += gets_from_big_face(v, f);
        }
        for (Vertex w : g.rotation(v)) {
            if (sender6(w))
                out.vertex[v] += gets_from_6(v);
            if (sender6(v))
                out.vertex[v] -= gets_from_6(w);
        }
    }
    for (const auto& f : g.faces()) {
        auto vs = f.vertices();
        std::sort(vs.begin(), vs.end());
        vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
        for (Vertex v : vs) {
            if (f.degree() == 3)
                out.face[f.id] += Charge(1, 3);
            if (f.degree() >= 5)
                out.face[f.id] -= gets_from_big_face(v, f.id);
        }
    }
    return out;
}

} // namespace

TEST(Charge, Text)
{
    EXPECT_EQ(to_string(Charge(2, 45)), "2/45");
    EXPECT_EQ(to_string(Charge(-8)), "-8/1");
    EXPECT_EQ(parse_charge("-2/3"), Charge(-2, 3));
    EXPECT_EQ(parse_charge("4"), Charge(4));
    EXPECT_EQ(parse_charge("6/9"), Charge(2, 3));
    EXPECT_FALSE(parse_charge("1/0"));
    EXPECT_FALSE(parse_charge("0.5"));
    EXPECT_FALSE(parse_charge(""));
}

TEST(Element, Text)
{
    EXPECT_EQ(to_string(Element::vertex(3)), "v3");
    EXPECT_EQ(to_string(Element::face(12)), "f12");
    EXPECT_EQ(parse_element("f12"), Element::face(12));
    EXPECT_FALSE(parse_element("x1"));
    EXPECT_FALSE(parse_element("v"));
}

TEST(InitialCharges, Platonic)
{
    auto ico = initial_charges(platonic("icosahedron"));
    EXPECT_EQ(ico.vertex, std::vector<Charge>(12, Charge(1)));
    EXPECT_EQ(ico.face, std::vector<Charge>(20, Charge(-1)));
    EXPECT_EQ(ico.total(), Charge(-8));

    auto cube = initial_charges(platonic("cube"));
    EXPECT_EQ(cube.vertex, std::vector<Charge>(8, Charge(-1)));
    EXPECT_EQ(cube.face, std::vector<Charge>(6, Charge(0)));
    EXPECT_EQ(cube.total(), Charge(-8));

    auto oct = initial_charges(platonic("octahedron"));
    EXPECT_EQ(oct.vertex, std::vector<Charge>(6, Charge(0)));
    EXPECT_EQ(oct.face, std::vector<Charge>(8, Charge(-1)));
    EXPECT_EQ(oct.total(), Charge(-8));
}

TEST(ApplyRules, IcosahedronOnlyFirstRule)
{
    auto run = apply_rules(platonic("icosahedron"));
    EXPECT_EQ(run.ledger.size(), 60u);
    for (const auto& t : run.ledger)
        EXPECT_EQ(t.rule, 1);
    EXPECT_EQ(run.final_charges.vertex, std::vector<Charge>(12, Charge(-2, 3)));
    EXPECT_EQ(run.final_charges.face, std::vector<Charge>(20, Charge(0)));
    EXPECT_EQ(run.final_charges.total(), Charge(-8));
}

TEST(ApplyRules, CubeNothingFires)
{
    auto g = platonic("cube");
    auto run = apply_rules(g);
    EXPECT_TRUE(run.ledger.empty());
    EXPECT_EQ(run.final_charges, initial_charges(g));
}

TEST(ApplyRules, TriangleEndsAtZero)
{
    for (auto g : {platonic("octahedron"), platonic("icosahedron"), platonic("tetrahedron"), tri_grid(5, 5)}) {
        auto run = apply_rules(g);
        for (const auto& f : g.faces())
            if (f.degree() == 3) {
                EXPECT_EQ(run.final_charges.face[f.id], Charge(0));
            }
    }
}

TEST(ApplyRules, PentagonWithOneThreeVertex)
{
    auto g = pentagon_fixture();
    ASSERT_EQ(g.degree(0), 3);
    ASSERT_EQ(g.degree(1), 6);
    ASSERT_EQ(g.degree(2), 5);
    ASSERT_EQ(g.degree(3), 5);
    ASSERT_EQ(g.degree(4), 6);
    FaceId f = inner_pentagon(g);
    ASSERT_NE(f, npos);
    auto run = apply_rules(g);
    EXPECT_EQ(run.final_charges.face[f], Charge(2, 45));
    EXPECT_EQ(to_string(run.final_charges.face[f]), "2/45");

    std::map<int, int> rules_out;
    for (const auto& t : run.ledger)
        if (t.from == Element::face(f))
            ++rules_out[t.rule];
    EXPECT_EQ(rules_out, (std::map<int, int>{{3, 1}, {6, 2}, {9, 2}}));
}

TEST(ApplyRules, FourFacesUntouched)
{
    std::vector<EmbeddedGraph> gs{platonic("cube"), square_grid(4, 5)};
    for (std::uint64_t s = 0; s < 20; ++s)
        gs.push_back(random_planar(40, s));
    for (const auto& g : gs) {
        auto run = apply_rules(g);
        for (const auto& t : run.ledger)
            for (Element e : {t.from, t.to})
                if (!e.is_vertex()) {
                    EXPECT_NE(g.face(e.index).degree(), 4u);
                }
        for (const auto& f : g.faces())
            if (f.degree() == 4) {
                EXPECT_EQ(run.final_charges.face[f.id], Charge(0));
            }
    }
}

TEST(ApplyRules, DegreeTooHigh)
{
    std::vector<std::vector<Vertex>> rot(8);
    for (int i = 1; i <= 7; ++i) {
        rot[0].push_back(i);
        rot[i] = {0};
    }
    auto g = build_embedded(8, rot);
    try {
        apply_rules(g);
        FAIL();
    } catch (const Error& e) {
        EXPECT_EQ(e.code(), Errc::DegreeTooHigh);
    }
}

TEST(ApplyRules, MatchesDirectComputation)
{
    std::vector<EmbeddedGraph> gs{pentagon_fixture(), hex_grid(2), tri_grid(6, 4), square_grid(5, 5)};
    for (std::uint64_t s = 0; s < 60; ++s)
        gs.push_back(random_planar(10 + static_cast<std::size_t>(s), s));
    for (const auto& g : gs) {
        auto run = apply_rules(g);
        EXPECT_EQ(run.final_charges, direct_final(g));
        for (const auto& t : run.ledger) {
            EXPECT_GT(t.amount, Charge(0));
            EXPECT_EQ(45 % t.amount.denominator(), 0);
        }
        EXPECT_TRUE(std::is_sorted(run.ledger.begin(), run.ledger.end(), [](const Transfer& a, const Transfer& b) {
            return std::tie(a.rule, a.from, a.to) < std::tie(b.rule, b.from, b.to);
        }));
    }
}

TEST(Audit, Cube)
{
    auto r = audit(platonic("cube"));
    EXPECT_TRUE(r.conservation_ok);
    EXPECT_TRUE(r.closure_ok);
    ASSERT_EQ(r.negative_elements.size(), 8u);
    for (const auto& [e, c] : r.negative_elements) {
        EXPECT_TRUE(e.is_vertex());
        EXPECT_EQ(c, Charge(-1));
    }
    EXPECT_NE(std::find(r.matched_configs.begin(), r.matched_configs.end(), "K03"), r.matched_configs.end());
    EXPECT_TRUE(r.contradiction_ok);
    EXPECT_TRUE(r.unexplained.empty());
}

TEST(Audit, Icosahedron)
{
    auto r = audit(platonic("icosahedron"));
    EXPECT_TRUE(r.conservation_ok);
    ASSERT_EQ(r.negative_elements.size(), 12u);
    for (const auto& [e, c] : r.negative_elements)
        EXPECT_EQ(c, Charge(-2, 3));
    EXPECT_NE(std::find(r.matched_configs.begin(), r.matched_configs.end(), "K13"), r.matched_configs.end());
    EXPECT_TRUE(r.contradiction_ok);
}

TEST(Audit, ConservationOnRandomGraphs)
{
    for (std::uint64_t s = 0; s < 40; ++s) {
        auto g = random_planar(20 + static_cast<std::size_t>(s), 100 + s);
        auto r = audit(g);
        EXPECT_TRUE(r.conservation_ok);
        EXPECT_TRUE(r.closure_ok);
        EXPECT_EQ(r.initial.total(), Charge(-8));
        EXPECT_EQ(r.final_charges.total(), Charge(-8));
        EXPECT_TRUE(r.contradiction_ok);
    }
}

TEST(Audit, PerComponentTotals)
{
    // two disjoint triangles and an isolated vertex
    auto g = build_embedded(7, {{1, 2}, {2, 0}, {0, 1}, {4, 5}, {5, 3}, {3, 4}, {}});
    auto r = audit(g);
    ASSERT_EQ(r.components.size(), 3u);
    EXPECT_EQ(r.components[0].initial, Charge(-8));
    EXPECT_EQ(r.components[1].final_total, Charge(-8));
    EXPECT_FALSE(r.components[2].has_edges);
    EXPECT_EQ(r.components[2].initial, Charge(-8));
    ASSERT_EQ(r.initial.face.size(), g.faces().size() + 1);
    EXPECT_EQ(r.initial.face.back(), Charge(-4));
    EXPECT_TRUE(r.conservation_ok);
}

TEST(Audit, SingleVertex)
{
    auto r = audit(path_graph(1));
    EXPECT_EQ(r.initial.vertex, std::vector<Charge>{Charge(-4)});
    EXPECT_EQ(r.initial.face, std::vector<Charge>{Charge(-4)});
    EXPECT_EQ(r.final_charges.total(), Charge(-8));
    EXPECT_TRUE(r.conservation_ok);
    EXPECT_EQ(r.match_count, 0u);
}

TEST(Audit, TamperedLedgerBreaksClosure)
{
    auto g = platonic("octahedron");
    auto run = apply_rules(g);
    auto ledger = run.ledger;
    ledger.front().amount += Charge(1, 45);
    EXPECT_NE(replay(initial_charges(g), ledger), run.final_charges);
    EXPECT_EQ(replay(initial_charges(g), run.ledger), run.final_charges);
}

TEST(Table, HasRowPerElement)
{
    auto g = pentagon_fixture();
    auto r = audit(g);
    auto t = format_table(r);
    auto lines = std::count(t.begin(), t.end(), '\n');
    EXPECT_EQ(static_cast<std::size_t>(lines), 1 + g.vertex_count() + g.faces().size() + 2);
    EXPECT_NE(t.find("2/45"), std::string::npos);
    EXPECT_NE(t.find("(conserved)"), std::string::npos);
}
