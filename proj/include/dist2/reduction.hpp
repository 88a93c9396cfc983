#pragma once

// Reducible configurations: detection, reduction plans, and coloring by
// repeated reduction.
//
// Every detector reads the neighbours of its centre through a Labeling, which
// fixes a starting position and a direction in the rotation. All labelings are
// tried, so a predicate written for one placement of the faces covers every
// rotated or mirrored copy of it.

#include "coloring.hpp"
#include "graph.hpp"

#include <array>
#include <functional>
#include <map>

namespace dist2 {

inline constexpr int max_degree_supported = 6;
inline constexpr int catalog_size = 24;

struct ConfigInfo {
    int id;
    std::string_view trigger;
    std::string_view construction;
};

inline const std::array<ConfigInfo, catalog_size>& catalog()
{
    static const std::array<ConfigInfo, catalog_size> table{{
        {1, "vertex of degree at most 1", "G - v"},
        {2, "2-vertex v with N(v) = {x, y}", "G - v + xy"},
        {3, "3-vertex v with a 5-minus neighbour v1", "G - v + v1v2, v1v3"},
        {4, "3-vertex v on a 3-face [v v1 v2]", "G - v + v1v3"},
        {5, "3-vertex v on 4-faces [v v1 x v2], [v v2 y v3]", "G - v + v1v3"},
        {6, "4-vertex v on 3-faces [v v1 v2], [v v2 v3], [v v3 v4]", "G - v + v1v4"},
        {7, "4-vertex v, m3 = 2, on a 4-face [v v1 x v2]", "G - v + v1v4 or v3v4"},
        {8, "4-vertex v, m3 = 2, with a 5-minus neighbour", "G - v + v2v4 or v2v3, v4v1"},
        {9, "4-vertex v, m3 = 2, a triangle edge of N(v) on two 3-faces", "G - v + v2v4 or v2v3, v4v1"},
        {10, "4-vertex v, m3 = 1, three 4-faces", "G - v + v2v3, v1v4"},
        {11, "4-vertex v, m3 = 1, 1 <= m4 <= 2, a 4-vertex neighbour vi", "G - v + vi joined to all of N(v)"},
        {12, "4-vertex v, m3 = 1, 1 <= m4 <= 2, two 5-vertex neighbours", "G - v + chords by placement"},
        {13, "5-vertex v, m3 = 5, a 5-minus neighbour", "G - v"},
        {14, "5-vertex v, m3 = 5, a triangle edge of N(v) on two 3-faces", "G - v"},
        {15, "5-vertex v, m3 = 4, m4 = 1, heavy neighbourhood", "G - v + v5v1"},
        {16, "5-vertex v, m3 = 4, m5+ = 1, heavy neighbourhood", "G - v + v1v5"},
        {17, "5-vertex v, m3 = 4, m5+ = 1, profile (1,0,4) or (0,2,3), doubled triangle edge", "G - v + v5v1"},
        {18, "6-vertex v, m3 = 5, m4 = 1, heavy neighbourhood", "G - v or G - u (u a 5-neighbour) + chords"},
        {19, "6-vertex v, m3 = 5, m5+ = 1, heavy neighbourhood", "G - v + three chords"},
        {20, "6-vertex v, m3 = 4, m4 = 2, heavy neighbourhood", "G - v + four chords by placement"},
        {21, "6-vertex v, m3 = 4, m4 = 1, m5+ = 1, 3-vertex v2, 4-vertex v1 or v3", "G - v2 + v1y or v3x, v3y"},
        {22, "6-vertex v, m3 = 4, m5+ = 2, 3-vertex v2, 4-vertex v1 or v3", "G - v2 + v1y, v1z or v3y, v3z"},
        {23, "5-face [v1..v5] with 3-vertices v1 and v4", "G - v1 + v2v4, v4v6"},
        {24, "5-face [v1..v5] with 3-vertex v1 and 4-vertex v4", "G - v1 + v2v4, v4v6"},
    }};
    return table;
}

inline std::string config_name(int id)
{
    std::string s = std::to_string(id);
    return (s.size() < 2 ? "K0" : "K") + s;
}

inline int parse_config_name(std::string_view s)
{
    if (s.size() != 3 || s[0] != 'K' || !std::isdigit(static_cast<unsigned char>(s[1])) ||
        !std::isdigit(static_cast<unsigned char>(s[2])))
        return 0;
    int id = (s[1] - '0') * 10 + (s[2] - '0');
    return id >= 1 && id <= catalog_size ? id : 0;
}

using Chord = std::pair<Vertex, Vertex>;
using Binding = std::pair<std::string, Vertex>;

struct ConfigurationMatch {
    int config = 0;
    Vertex center = no_vertex;
    std::vector<Binding> bindings;
    std::vector<FaceId> matched_faces;
    std::string variant;
    // construction as read off the configuration
    Vertex deleted = no_vertex;
    std::vector<Chord> chords;
    int bound = 19;

    std::string id() const { return config_name(config); }

    Vertex role(std::string_view name) const
    {
        for (const auto& [k, v] : bindings)
            if (k == name)
                return v;
        return no_vertex;
    }
};

struct ReductionPlan {
    Vertex deleted = no_vertex;
    std::vector<Chord> add_edges;
    int source = 0;
    int forbidden_bound = 19;
    std::string variant;
    std::vector<Chord> dropped; // chords already present in G
};

enum class PlanFailure { ChordCrossing, DegreeOverflow, NotOnMergedFace, NoProgress, NotProper, BoundExceeded };

constexpr std::string_view failure_name(PlanFailure f) noexcept
{
    switch (f) {
    case PlanFailure::ChordCrossing: return "ChordCrossing";
    case PlanFailure::DegreeOverflow: return "DegreeOverflow";
    case PlanFailure::NotOnMergedFace: return "NotOnMergedFace";
    case PlanFailure::NoProgress: return "NoProgress";
    case PlanFailure::NotProper: return "NotProper";
    case PlanFailure::BoundExceeded: return "BoundExceeded";
    }
    return "Unknown";
}

namespace detail {

class Labeling {
public:
    Labeling(const EmbeddedGraph& g, Vertex v, std::size_t r, bool refl)
        : g_(&g)
        , v_(v)
        , d_(g.degree(v))
        , r_(r)
        , refl_(refl)
    {
    }

    int degree() const { return d_; }

    /// v_i for i = 1..d, read cyclically.
    Vertex at(int i) const
    {
        const auto k = static_cast<std::size_t>(((i - 1) % d_ + d_) % d_);
        const auto& rot = g_->rotation(v_);
        return refl_ ? rot[(r_ + d_ - k) % d_] : rot[(r_ + k) % d_];
    }

    /// Face at the corner between v_i and v_{i+1}.
    FaceId face(int i) const
    {
        const auto k = static_cast<std::size_t>(((i - 1) % d_ + d_) % d_);
        const auto corner = refl_ ? (r_ + 2 * d_ - k - 1) % d_ : (r_ + k) % d_;
        return g_->corner_face(v_, corner);
    }

    std::size_t fdeg(int i) const { return g_->face(face(i)).degree(); }
    int deg(int i) const { return g_->degree(at(i)); }

    std::string name() const { return "r" + std::to_string(r_) + (refl_ ? "m" : ""); }

private:
    const EmbeddedGraph* g_;
    Vertex v_;
    int d_;
    std::size_t r_;
    bool refl_;
};

struct NeighbourCounts {
    int n3 = 0, n4 = 0, n5 = 0, n6 = 0, low = 0; // low: degree <= 5
    int n4minus = 0;
};

class Scan {
public:
    explicit Scan(const EmbeddedGraph& g)
        : g(g)
        , m3(g.vertex_count())
    {
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
            m3[v] = triangle_corners(g, v);
    }

    NeighbourCounts counts(Vertex v) const
    {
        NeighbourCounts c;
        for (Vertex u : g.rotation(v)) {
            int d = g.degree(u);
            c.n3 += d == 3;
            c.n4 += d == 4;
            c.n5 += d == 5;
            c.n6 += d == 6;
            c.low += d <= 5;
            c.n4minus += d <= 4;
        }
        return c;
    }

    /// Edge ab has a 3-face on both sides.
    bool doubled(Vertex a, Vertex b) const
    {
        return g.face(g.face_of(Dart{a, b})).degree() == 3 && g.face(g.face_of(Dart{b, a})).degree() == 3;
    }

    /// Triangle corners i in [lo, hi] whose far edge v_i v_{i+1} lies on a second 3-face.
    int doubled_edges(const Labeling& L, int lo, int hi) const
    {
        int c = 0;
        for (int i = lo; i <= hi; ++i)
            if (L.fdeg(i) == 3 && doubled(L.at(i), L.at(i + 1)))
                ++c;
        return c;
    }

    /// Neighbour of u across the corner of u on face f, opposite to w.
    Vertex corner_partner(Vertex u, FaceId f, Vertex w) const
    {
        const auto& rot = g.rotation(u);
        for (std::size_t i = 0; i < rot.size(); ++i) {
            if (g.corner_face(u, i) != f)
                continue;
            Vertex a = rot[i], b = rot[(i + 1) % rot.size()];
            if (a == w)
                return b;
            if (b == w)
                return a;
        }
        return no_vertex;
    }

    const EmbeddedGraph& g;
    std::vector<int> m3;
};

using Emit = std::vector<ConfigurationMatch>;

inline ConfigurationMatch make_match(int id, Vertex center, const Labeling* L, std::string variant, int bound)
{
    ConfigurationMatch m;
    m.config = id;
    m.center = center;
    m.deleted = center;
    m.bound = bound;
    m.variant = std::move(variant);
    if (L) {
        for (int i = 1; i <= L->degree(); ++i) {
            m.bindings.emplace_back("v" + std::to_string(i), L->at(i));
            m.matched_faces.push_back(L->face(i));
        }
        m.variant += " [" + L->name() + "]";
    }
    return m;
}

inline void add_chords_by_index(ConfigurationMatch& m, const Labeling& L,
                                std::initializer_list<std::pair<int, int>> pairs)
{
    for (auto [i, j] : pairs)
        m.chords.emplace_back(L.at(i), L.at(j));
}

template <class F>
void for_each_labeling(const EmbeddedGraph& g, Vertex v, F&& f)
{
    const auto d = static_cast<std::size_t>(g.degree(v));
    for (std::size_t r = 0; r < d; ++r)
        for (bool refl : {false, true})
            f(Labeling(g, v, r, refl));
}

// A 5-vertex u with four 3-faces: delete it and join the pair at its one
// other corner. With five 3-faces nothing needs joining.
inline std::optional<std::vector<Chord>> close_five(const Scan& s, Vertex u)
{
    if (s.g.degree(u) != 5 || s.m3[u] < 4)
        return std::nullopt;
    std::vector<Chord> out;
    const auto& rot = s.g.rotation(u);
    for (std::size_t i = 0; i < 5; ++i)
        if (s.g.corner_face_degree(u, i) != 3)
            out.emplace_back(rot[i], rot[(i + 1) % 5]);
    return out;
}

inline void emit_close_five(const Scan& s, Emit& out, int id, Vertex v, const Labeling& L, int i,
                            const std::string& variant, int bound)
{
    const Vertex u = L.at(i);
    auto chords = close_five(s, u);
    if (!chords)
        return;
    auto m = make_match(id, v, &L, variant + " at v" + std::to_string(i), bound);
    m.deleted = u;
    m.chords = *chords;
    if (!chords->empty()) {
        m.bindings.emplace_back("x", chords->front().first);
        m.bindings.emplace_back("y", chords->front().second);
    }
    out.push_back(std::move(m));
}

// ---- degree at most 3 ----

// Isolated vertices only occur in disconnected inputs; a lone vertex is the
// base case and is left alone.
inline void detect_k01(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) == 0 && s.g.vertex_count() < 2)
        return;
    if (s.g.degree(v) <= 1) {
        auto m = make_match(1, v, nullptr, s.g.degree(v) == 0 ? "isolated" : "leaf", 6);
        if (s.g.degree(v) == 1)
            m.bindings.emplace_back("x", s.g.rotation(v)[0]);
        out.push_back(std::move(m));
    }
}

inline void detect_k02(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 2)
        return;
    auto m = make_match(2, v, nullptr, "", 12);
    Vertex x = s.g.rotation(v)[0], y = s.g.rotation(v)[1];
    m.bindings = {{"x", x}, {"y", y}};
    m.chords = {{x, y}};
    out.push_back(std::move(m));
}

inline void detect_k03(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 3)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.deg(1) <= 5) {
            auto m = make_match(3, v, &L, "5-minus v1", 17);
            add_chords_by_index(m, L, {{1, 2}, {1, 3}});
            out.push_back(std::move(m));
        }
    });
}

inline void detect_k04(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 3)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.fdeg(1) == 3) {
            auto m = make_match(4, v, &L, "3-face at v1v2", 16);
            add_chords_by_index(m, L, {{1, 3}});
            out.push_back(std::move(m));
        }
    });
}

inline void detect_k05(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 3)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.fdeg(1) == 4 && L.fdeg(2) == 4) {
            auto m = make_match(5, v, &L, "4-faces at v1v2, v2v3", 16);
            add_chords_by_index(m, L, {{1, 3}});
            out.push_back(std::move(m));
        }
    });
}

// ---- 4-vertices ----

inline void detect_k06(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 4)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.fdeg(1) == 3 && L.fdeg(2) == 3 && L.fdeg(3) == 3) {
            auto m = make_match(6, v, &L, "three consecutive 3-faces", 18);
            add_chords_by_index(m, L, {{1, 4}});
            out.push_back(std::move(m));
        }
    });
}

inline void detect_k07(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 4 || s.m3[v] != 2)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.fdeg(1) != 4)
            return;
        if (L.fdeg(2) == 3 && L.fdeg(3) == 3) {
            auto m = make_match(7, v, &L, "adjacent 3-faces", 19);
            add_chords_by_index(m, L, {{1, 4}});
            out.push_back(std::move(m));
        }
        if (L.fdeg(2) == 3 && L.fdeg(4) == 3) {
            auto m = make_match(7, v, &L, "separated 3-faces", 19);
            add_chords_by_index(m, L, {{3, 4}});
            out.push_back(std::move(m));
        }
    });
}

inline void emit_two_triangles(const Scan& s, Vertex v, Emit& out, int id, const std::string& why)
{
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.fdeg(1) != 3)
            return;
        if (L.fdeg(2) == 3) {
            auto m = make_match(id, v, &L, why + ", adjacent 3-faces", 19);
            add_chords_by_index(m, L, {{2, 4}});
            out.push_back(std::move(m));
        }
        if (L.fdeg(3) == 3) {
            auto m = make_match(id, v, &L, why + ", separated 3-faces", 19);
            add_chords_by_index(m, L, {{2, 3}, {4, 1}});
            out.push_back(std::move(m));
        }
    });
}

inline void detect_k08(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 4 || s.m3[v] != 2 || s.counts(v).low == 0)
        return;
    emit_two_triangles(s, v, out, 8, "5-minus neighbour");
}

inline void detect_k09(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 4 || s.m3[v] != 2)
        return;
    Labeling L0(s.g, v, 0, false);
    if (s.doubled_edges(L0, 1, 4) == 0)
        return;
    emit_two_triangles(s, v, out, 9, "doubled triangle edge");
}

inline int count_4faces(const Labeling& L)
{
    int c = 0;
    for (int i = 1; i <= L.degree(); ++i)
        c += L.fdeg(i) == 4;
    return c;
}

inline void detect_k10(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 4 || s.m3[v] != 1)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.fdeg(1) == 3 && L.fdeg(2) == 4 && L.fdeg(3) == 4 && L.fdeg(4) == 4) {
            auto m = make_match(10, v, &L, "three 4-faces", 19);
            add_chords_by_index(m, L, {{2, 3}, {1, 4}});
            out.push_back(std::move(m));
        }
    });
}

inline void detect_k11(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 4 || s.m3[v] != 1)
        return;
    std::optional<Labeling> L;
    for_each_labeling(s.g, v, [&](const Labeling& cand) {
        if (!L && cand.fdeg(1) == 3)
            L = cand;
    });
    const int m4 = count_4faces(*L);
    if (m4 < 1 || m4 > 2)
        return;
    std::vector<int> hubs;
    for (int i = 1; i <= 4; ++i)
        if (L->deg(i) == 4)
            hubs.push_back(i);
    // several hubs may qualify; smallest vertex id first
    std::sort(hubs.begin(), hubs.end(), [&](int a, int b) { return L->at(a) < L->at(b); });
    for (int i : hubs) {
        auto m = make_match(11, v, &*L, "fan from v" + std::to_string(i), m4 == 2 ? 18 : 19);
        m.bindings.emplace_back("vi", L->at(i));
        for (int j = 1; j <= 4; ++j)
            if (j != i && !s.g.adjacent(L->at(i), L->at(j)))
                m.chords.emplace_back(L->at(i), L->at(j));
        out.push_back(std::move(m));
    }
}

inline void detect_k12(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 4 || s.m3[v] != 1 || s.counts(v).n5 < 2)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.fdeg(1) != 3)
            return;
        const int m4 = count_4faces(L);
        if (m4 < 1 || m4 > 2)
            return;
        const int bound = m4 == 2 ? 18 : 19;
        if (m4 == 2 || L.fdeg(2) == 4) {
            if (L.deg(1) == 5) {
                auto m = make_match(12, v, &L, "5-vertex v1", bound);
                add_chords_by_index(m, L, {{1, 3}, {1, 4}});
                out.push_back(std::move(m));
            } else if (L.deg(2) == 5) {
                auto m = make_match(12, v, &L, "5-vertex v2", bound);
                add_chords_by_index(m, L, {{2, 3}, {2, 4}});
                out.push_back(std::move(m));
            } else if (L.deg(3) == 5 && L.deg(4) == 5) {
                auto m = make_match(12, v, &L, "5-vertices v3, v4", bound);
                add_chords_by_index(m, L, {{2, 3}, {3, 4}, {4, 1}});
                out.push_back(std::move(m));
            }
        }
        if (m4 == 1 && L.fdeg(3) == 4) {
            auto m = make_match(12, v, &L, "4-face opposite the 3-face", bound);
            add_chords_by_index(m, L, {{2, 3}, {4, 1}});
            out.push_back(std::move(m));
        }
    });
}

// ---- 5-vertices ----

inline void detect_k13(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 5 || s.m3[v] != 5 || s.counts(v).low == 0)
        return;
    Labeling L(s.g, v, 0, false);
    out.push_back(make_match(13, v, &L, "5-minus neighbour", 19));
}

inline void detect_k14(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 5 || s.m3[v] != 5)
        return;
    Labeling L(s.g, v, 0, false);
    if (s.doubled_edges(L, 1, 5) > 0)
        out.push_back(make_match(14, v, &L, "doubled triangle edge", 19));
}

inline bool four_triangles_then(const Labeling& L, int last_face_min, int last_face_max)
{
    for (int i = 1; i <= 4; ++i)
        if (L.fdeg(i) != 3)
            return false;
    const auto d5 = static_cast<int>(L.fdeg(5));
    return d5 >= last_face_min && d5 <= last_face_max;
}

inline void detect_k15(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 5 || s.m3[v] != 4)
        return;
    const auto c = s.counts(v);
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (!four_triangles_then(L, 4, 4))
            return;
        std::string why;
        if (c.n4minus >= 1)
            why = "4-minus neighbour";
        else if (c.n5 >= 2)
            why = "two 5-neighbours";
        else
            for (int i = 2; i <= 4 && why.empty(); ++i)
                if (L.deg(i) == 6 && s.m3[L.at(i)] == 6)
                    why = "v" + std::to_string(i) + " on six 3-faces";
        if (why.empty())
            return;
        auto m = make_match(15, v, &L, why, 19);
        add_chords_by_index(m, L, {{5, 1}});
        out.push_back(std::move(m));
    });
}

inline void detect_k16(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 5 || s.m3[v] != 4)
        return;
    const auto c = s.counts(v);
    const bool hit = c.n4 >= 2 || c.n5 >= 3 || (c.n4 >= 1 && c.n5 >= 1);
    if (!hit)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (!four_triangles_then(L, 5, std::numeric_limits<int>::max()))
            return;
        auto m = make_match(16, v, &L, c.n4 >= 2 ? "two 4-neighbours" : c.n5 >= 3 ? "three 5-neighbours"
                                                                                 : "4- and 5-neighbour",
                            c.n4 >= 2 ? 18 : 19);
        add_chords_by_index(m, L, {{1, 5}});
        out.push_back(std::move(m));
    });
}

inline void detect_k17(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 5 || s.m3[v] != 4)
        return;
    const auto c = s.counts(v);
    const bool a = c.n4 == 1 && c.n5 == 0 && c.n6 == 4;
    const bool b = c.n4 == 0 && c.n5 == 2 && c.n6 == 3;
    if (!a && !b)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (!four_triangles_then(L, 5, std::numeric_limits<int>::max()) || s.doubled_edges(L, 1, 4) == 0)
            return;
        auto m = make_match(17, v, &L, a ? "profile (1,0,4)" : "profile (0,2,3)", 19);
        add_chords_by_index(m, L, {{5, 1}});
        out.push_back(std::move(m));
    });
}

// ---- 6-vertices ----

inline bool five_triangles(const Labeling& L)
{
    for (int i = 1; i <= 5; ++i)
        if (L.fdeg(i) != 3)
            return false;
    return true;
}

inline void detect_k18(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 6 || s.m3[v] != 5)
        return;
    const auto c = s.counts(v);
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (!five_triangles(L) || L.fdeg(6) != 4)
            return;
        const int dbl = s.doubled_edges(L, 1, 5);
        auto emit = [&](std::string why, std::initializer_list<std::pair<int, int>> chords) {
            auto m = make_match(18, v, &L, std::move(why), 19);
            add_chords_by_index(m, L, chords);
            out.push_back(std::move(m));
        };
        if (L.deg(1) == 4 && L.deg(6) == 4 && c.n5 >= 2)
            emit("4-vertices v1, v6", {{1, 3}, {1, 5}, {1, 6}});
        if (L.deg(1) == 4 && c.n4 == 1 && (c.n5 >= 4 || (c.n5 == 3 && dbl >= 1)))
            emit("4-vertex v1", {{1, 3}, {1, 5}, {1, 6}});
        if (c.n4 != 0)
            return;
        if (c.n5 == 6)
            emit("six 5-neighbours", {{6, 1}, {3, 1}, {3, 5}});
        if (c.n5 == 5 && c.n6 == 1 && (L.deg(1) == 6 || L.deg(2) == 6 || L.deg(3) == 6) && dbl >= 1)
            emit("five 5-neighbours", {{6, 1}, {4, 2}, {4, 6}});
        if (c.n5 == 4 && c.n6 == 2) {
            if (L.deg(1) == 6 && L.deg(6) == 6) {
                emit_close_five(s, out, 18, v, L, 3, "four 5-neighbours, v1 and v6 of degree 6", 18);
                emit_close_five(s, out, 18, v, L, 4, "four 5-neighbours, v1 and v6 of degree 6", 18);
            } else if (dbl >= 2) {
                if (L.deg(1) == 6 && L.deg(2) == 6)
                    emit("four 5-neighbours, v1 and v2 of degree 6", {{2, 4}, {4, 6}, {6, 1}});
                else {
                    std::vector<int> picks;
                    for (int i = 2; i <= 5; ++i)
                        if (L.deg(i) == 5)
                            picks.push_back(i);
                    std::sort(picks.begin(), picks.end(), [&](int a, int b) { return L.at(a) < L.at(b); });
                    for (int i : picks) {
                        auto m = make_match(18, v, &L, "four 5-neighbours, hub v" + std::to_string(i), 19);
                        m.bindings.emplace_back("vi", L.at(i));
                        m.chords = {{L.at(6), L.at(1)}, {L.at(i), L.at(i - 2)}, {L.at(i), L.at(i + 2)}};
                        out.push_back(std::move(m));
                    }
                }
            }
        }
        if (c.n5 == 3 && c.n6 == 3) {
            int mask = 0;
            for (int i = 1; i <= 6; ++i)
                if (L.deg(i) == 5)
                    mask |= 1 << i;
            auto is = [&](int a, int b, int cc) { return mask == ((1 << a) | (1 << b) | (1 << cc)); };
            if (is(3, 4, 6) || is(3, 4, 5) || is(2, 4, 5))
                emit_close_five(s, out, 18, v, L, 4, "three 5-neighbours", 19);
            if (is(4, 5, 6) || is(3, 5, 6) || is(2, 5, 6) || is(1, 5, 6))
                emit_close_five(s, out, 18, v, L, 6, "three 5-neighbours", 19);
            if (is(2, 3, 6))
                emit_close_five(s, out, 18, v, L, 3, "three 5-neighbours", 19);
            if ((is(2, 4, 6) || is(1, 4, 6)) && dbl >= 3)
                emit("three 5-neighbours, three doubled edges", {{2, 4}, {4, 6}, {6, 1}});
        }
    });
}

inline void detect_k19(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 6 || s.m3[v] != 5)
        return;
    const auto c = s.counts(v);
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (!five_triangles(L) || L.fdeg(6) < 5)
            return;
        const int dbl = s.doubled_edges(L, 1, 5);
        auto emit = [&](std::string why, std::initializer_list<std::pair<int, int>> chords) {
            auto m = make_match(19, v, &L, std::move(why), 19);
            add_chords_by_index(m, L, chords);
            out.push_back(std::move(m));
        };
        if (L.deg(1) == 4 && L.deg(6) == 4 && c.n5 >= 3)
            emit("4-vertices v1, v6", {{1, 3}, {1, 5}, {1, 6}});
        if (L.deg(1) == 4 && c.n4 == 1 && (c.n5 >= 5 || (c.n5 == 4 && dbl >= 1)))
            emit("4-vertex v1", {{1, 3}, {1, 5}, {1, 6}});
        if (c.n4 != 0)
            return;
        if (c.n5 == 6 && dbl >= 1)
            emit("six 5-neighbours", {{4, 2}, {4, 6}, {1, 6}});
        if (c.n5 == 5 && c.n6 == 1 && (L.deg(1) == 6 || L.deg(2) == 6 || L.deg(3) == 6) && dbl >= 2)
            emit("five 5-neighbours", {{4, 2}, {4, 6}, {1, 6}});
    });
}

inline void detect_k20(const Scan& s, Vertex v, Emit& out)
{
    if (s.g.degree(v) != 6 || s.m3[v] != 4)
        return;
    const auto c = s.counts(v);
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        if (L.fdeg(1) != 4 || count_4faces(L) != 2)
            return;
        int second = 0;
        for (int k = 2; k <= 4; ++k)
            if (L.fdeg(k) == 4)
                second = k;
        if (second == 0)
            return;
        for (int i = 2; i <= 6; ++i)
            if (i != second && L.fdeg(i) != 3)
                return;
        const int dbl = s.doubled_edges(L, 1, 6);
        std::string why;
        if (c.n4 == 1 && c.n5 == 5)
            why = "one 4-neighbour, five 5-neighbours";
        else if (c.n5 == 6 && dbl >= 1)
            why = "six 5-neighbours, doubled edge";
        else
            return;
        auto m = make_match(20, v, &L, why + ", 4-faces at v1v2 and v" + std::to_string(second) + "v" +
                                           std::to_string(second + 1),
                            19);
        if (second == 2)
            add_chords_by_index(m, L, {{1, 2}, {2, 3}, {3, 5}, {5, 1}});
        else if (second == 3)
            add_chords_by_index(m, L, {{1, 2}, {3, 4}, {3, 5}, {5, 1}});
        else
            add_chords_by_index(m, L, {{1, 2}, {4, 5}, {1, 3}, {3, 5}});
        out.push_back(std::move(m));
    });
}

inline void detect_k21_k22(const Scan& s, Vertex v, Emit& out, int id)
{
    if (s.g.degree(v) != 6 || s.m3[v] != 4)
        return;
    for_each_labeling(s.g, v, [&](const Labeling& L) {
        const bool shape = id == 21 ? (L.fdeg(1) == 4 && L.fdeg(2) >= 5) : (L.fdeg(1) >= 5 && L.fdeg(2) >= 5);
        if (!shape || L.deg(2) != 3)
            return;
        for (int i = 3; i <= 6; ++i)
            if (L.fdeg(i) != 3)
                return;
        const Vertex v2 = L.at(2);
        const Vertex left = s.corner_partner(v2, L.face(1), v);
        const Vertex right = s.corner_partner(v2, L.face(2), v);
        if (left == no_vertex || right == no_vertex || left == right)
            return;
        const std::string ln = id == 21 ? "x" : "y";
        const std::string rn = id == 21 ? "y" : "z";
        const int bound = id == 21 ? 17 : 18;
        auto base = [&](std::string why) {
            auto m = make_match(id, v, &L, std::move(why), bound);
            m.deleted = v2;
            m.bindings.emplace_back(ln, left);
            m.bindings.emplace_back(rn, right);
            return m;
        };
        if (L.deg(1) == 4) {
            auto m = base("4-vertex v1");
            if (id == 21)
                m.chords = {{L.at(1), right}};
            else
                m.chords = {{L.at(1), left}, {L.at(1), right}};
            out.push_back(std::move(m));
        }
        if (L.deg(3) == 4) {
            auto m = base("4-vertex v3");
            m.chords = {{L.at(3), left}, {L.at(3), right}};
            out.push_back(std::move(m));
        }
    });
}

inline void detect_k21(const Scan& s, Vertex v, Emit& out) { detect_k21_k22(s, v, out, 21); }
inline void detect_k22(const Scan& s, Vertex v, Emit& out) { detect_k21_k22(s, v, out, 22); }

inline void detect_k23_k24(const Scan& s, Vertex v, Emit& out, int id)
{
    if (s.g.degree(v) != 3)
        return;
    const int want = id == 23 ? 3 : 4;
    std::set<FaceId> seen;
    for (std::size_t i = 0; i < 3; ++i) {
        const FaceId fid = s.g.corner_face(v, i);
        const Face& f = s.g.face(fid);
        if (f.degree() != 5 || !f.is_simple_cycle() || !seen.insert(fid).second)
            continue;
        const auto walk = f.vertices();
        const auto at = static_cast<std::size_t>(std::find(walk.begin(), walk.end(), v) - walk.begin());
        for (int dir : {1, 4}) {
            std::array<Vertex, 6> w{};
            for (int k = 0; k < 5; ++k)
                w[k + 1] = walk[(at + static_cast<std::size_t>(dir * k)) % 5];
            if (s.g.degree(w[4]) != want)
                continue;
            Vertex v6 = no_vertex;
            for (Vertex u : s.g.rotation(v))
                if (u != w[2] && u != w[5])
                    v6 = u;
            // the configuration has v6 off the face
            if (v6 == no_vertex || std::find(w.begin() + 1, w.end(), v6) != w.end())
                continue;
            auto m = make_match(id, v, nullptr, (id == 23 ? "3-vertex v4" : "4-vertex v4") +
                                                    std::string(dir == 1 ? " [fwd]" : " [rev]"),
                                18);
            for (int k = 1; k <= 5; ++k)
                m.bindings.emplace_back("v" + std::to_string(k), w[k]);
            m.bindings.emplace_back("v6", v6);
            m.matched_faces = {fid};
            m.chords = {{w[2], w[4]}, {w[4], v6}};
            out.push_back(std::move(m));
        }
    }
}

inline void detect_k23(const Scan& s, Vertex v, Emit& out) { detect_k23_k24(s, v, out, 23); }
inline void detect_k24(const Scan& s, Vertex v, Emit& out) { detect_k23_k24(s, v, out, 24); }

using Detector = void (*)(const Scan&, Vertex, Emit&);

inline constexpr std::array<Detector, catalog_size> detectors{
    detect_k01, detect_k02, detect_k03, detect_k04, detect_k05, detect_k06, detect_k07, detect_k08,
    detect_k09, detect_k10, detect_k11, detect_k12, detect_k13, detect_k14, detect_k15, detect_k16,
    detect_k17, detect_k18, detect_k19, detect_k20, detect_k21, detect_k22, detect_k23, detect_k24,
};

inline std::vector<Chord> normalized(std::vector<Chord> cs)
{
    for (auto& c : cs)
        if (c.first > c.second)
            std::swap(c.first, c.second);
    std::sort(cs.begin(), cs.end());
    cs.erase(std::unique(cs.begin(), cs.end()), cs.end());
    return cs;
}

inline void require_degree(const EmbeddedGraph& g)
{
    if (g.max_degree() > max_degree_supported)
        throw Error(Errc::DegreeTooHigh, "maximum degree " + std::to_string(g.max_degree()) + " exceeds 6");
}

} // namespace detail

/// Visits matches in priority order (config id, then centre id) until `visit`
/// returns true. Returns whether it was stopped.
inline bool for_each_match(const EmbeddedGraph& g, const std::function<bool(const ConfigurationMatch&)>& visit,
                           std::span<const int> only = {})
{
    detail::require_degree(g);
    detail::Scan scan(g);
    using Sig = std::tuple<Vertex, Vertex, std::vector<Chord>>;
    for (int id = 1; id <= catalog_size; ++id) {
        if (!only.empty() && std::find(only.begin(), only.end(), id) == only.end())
            continue;
        for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
            detail::Emit found;
            detail::detectors[id - 1](scan, v, found);
            std::set<Sig> seen;
            for (auto& m : found) {
                if (!seen.insert(Sig{m.center, m.deleted, detail::normalized(m.chords)}).second)
                    continue;
                if (visit(m))
                    return true;
            }
        }
    }
    return false;
}

inline std::vector<ConfigurationMatch> detect_all(const EmbeddedGraph& g)
{
    std::vector<ConfigurationMatch> out;
    for_each_match(g, [&](const ConfigurationMatch& m) {
        out.push_back(m);
        return false;
    });
    return out;
}

inline std::optional<ConfigurationMatch> detect(const EmbeddedGraph& g)
{
    std::optional<ConfigurationMatch> out;
    for_each_match(g, [&](const ConfigurationMatch& m) {
        out = m;
        return true;
    });
    return out;
}

struct PlanOutcome {
    std::optional<ReductionPlan> plan;
    std::optional<EmbeddedGraph> reduced;
    std::optional<PlanFailure> failure;
    std::string detail;
};

/// Builds and validates the reduction of a match; never throws for an invalid plan.
inline PlanOutcome try_plan(const EmbeddedGraph& g, const ConfigurationMatch& m)
{
    PlanOutcome out;
    auto fail = [&](PlanFailure f, std::string why) {
        out.failure = f;
        out.detail = std::string(failure_name(f)) + ": " + why;
        return out;
    };
    ReductionPlan p;
    p.deleted = m.deleted;
    p.source = m.config;
    p.forbidden_bound = m.bound;
    p.variant = m.variant;
    for (const auto& c : detail::normalized(m.chords)) {
        if (c.first == m.deleted || c.second == m.deleted || !g.valid_vertex(c.first) || !g.valid_vertex(c.second))
            return fail(PlanFailure::NotOnMergedFace, "chord touches the deleted vertex");
        if (g.adjacent(c.first, c.second))
            p.dropped.push_back(c);
        else
            p.add_edges.push_back(c);
    }
    const Vertex d = p.deleted;
    if (p.add_edges.size() >= static_cast<std::size_t>(g.degree(d)) + 1)
        return fail(PlanFailure::NoProgress, "chords do not pay for the deleted edges");

    EmbeddedGraph h;
    try {
        h = replace_vertex_by_chords(g, d, p.add_edges);
    } catch (const Error& e) {
        if (e.code() == Errc::CrossingChords)
            return fail(PlanFailure::ChordCrossing, e.detail());
        return fail(PlanFailure::NotOnMergedFace, e.detail());
    }
    for (const auto& c : p.add_edges)
        for (Vertex x : {c.first, c.second})
            if (h.degree(shift_after_delete(x, d)) > max_degree_supported)
                return fail(PlanFailure::DegreeOverflow, "vertex " + std::to_string(x) + " would reach degree " +
                                                             std::to_string(h.degree(shift_after_delete(x, d))));
    const auto& nb = g.rotation(d);
    for (std::size_t i = 0; i < nb.size(); ++i)
        for (std::size_t j = i + 1; j < nb.size(); ++j) {
            Vertex a = shift_after_delete(nb[i], d), b = shift_after_delete(nb[j], d);
            bool near = h.adjacent(a, b);
            for (Vertex w : h.rotation(a))
                near = near || h.adjacent(w, b);
            if (!near)
                return fail(PlanFailure::NotProper, "neighbours " + std::to_string(nb[i]) + " and " +
                                                        std::to_string(nb[j]) + " end up at distance 3 or more");
        }
    const auto d2 = static_cast<int>(distance2_neighborhood(g, d).size());
    if (d2 > p.forbidden_bound)
        return fail(PlanFailure::BoundExceeded,
                    "d2 = " + std::to_string(d2) + " exceeds " + std::to_string(p.forbidden_bound));
    out.plan = std::move(p);
    out.reduced = std::move(h);
    return out;
}

inline ReductionPlan plan(const EmbeddedGraph& g, const ConfigurationMatch& m)
{
    auto o = try_plan(g, m);
    if (!o.plan)
        throw Error(Errc::PlanInvalid, o.detail);
    return *o.plan;
}

/// G' = G - deleted + add_edges, ids above `deleted` shifted down.
inline EmbeddedGraph apply(const EmbeddedGraph& g, const ReductionPlan& p)
{
    return replace_vertex_by_chords(g, p.deleted, p.add_edges);
}

/// Distinct colors on the distance-2 neighbourhood of v, ascending.
inline std::vector<Color> forbidden_colors(const EmbeddedGraph& g, const Coloring& phi, Vertex v)
{
    std::set<Color> s;
    for (Vertex u : distance2_neighborhood(g, v))
        if (phi.assignment[u] != uncolored)
            s.insert(phi.assignment[u]);
    return {s.begin(), s.end()};
}

inline Color min_free(std::span<const Color> forbidden, int palette)
{
    for (Color c = 1; c <= palette; ++c)
        if (!std::binary_search(forbidden.begin(), forbidden.end(), c))
            return c;
    return uncolored;
}

/// Safe color for v: the smallest palette color not used within distance two.
inline Color extend(const EmbeddedGraph& g, const Coloring& phi, Vertex v)
{
    const auto forbidden = forbidden_colors(g, phi, v);
    const Color c = min_free(forbidden, phi.palette);
    if (c == uncolored) {
        std::string list;
        for (Color f : forbidden)
            list += (list.empty() ? "" : ",") + std::to_string(f);
        throw Error(Errc::NoSafeColor, "vertex " + std::to_string(v) + " forbidden {" + list + "}");
    }
    return c;
}

struct TraceStep {
    int config = 0;
    std::string variant;
    Vertex center = no_vertex;
    std::vector<Binding> bindings;
    Vertex deleted = no_vertex;
    std::vector<Chord> added;
    Color color = uncolored;
    int forbidden = 0;
    int bound = 19;

    bool operator==(const TraceStep&) const = default;
};

struct ReductionResult {
    Coloring coloring;
    std::vector<TraceStep> trace; // in reduction order, original vertex ids
    bool fallback = false;
    std::optional<EmbeddedGraph> witness; // graph on which no valid reduction was found
    std::vector<Vertex> witness_ids;      // its vertices in original ids
    int max_forbidden = 0;
    int bound_violations = 0; // extend calls with more forbidden colors than the plan allowed
    std::size_t extend_calls = 0;
};

inline std::string describe_trace(const std::vector<TraceStep>& trace)
{
    std::string s;
    for (const auto& t : trace) {
        s += config_name(t.config) + "@" + std::to_string(t.center) + " del " + std::to_string(t.deleted);
        for (const auto& [a, b] : t.added)
            s += " +" + std::to_string(a) + "-" + std::to_string(b);
        s += "; ";
    }
    return s;
}

inline ReductionResult color_by_reduction(const EmbeddedGraph& g, int palette = default_palette)
{
    detail::require_degree(g);
    if (palette < 1)
        throw Error(Errc::BadParams, "palette must be positive");
    struct Step {
        EmbeddedGraph graph;
        ReductionPlan plan;
        ConfigurationMatch match;
        std::vector<Vertex> orig;
    };
    std::vector<Step> steps;
    ReductionResult res;
    EmbeddedGraph cur = g;
    std::vector<Vertex> orig(g.vertex_count());
    std::iota(orig.begin(), orig.end(), 0);
    Coloring phi;

    while (cur.vertex_count() > 1) {
        std::optional<PlanOutcome> chosen;
        ConfigurationMatch picked;
        for_each_match(cur, [&](const ConfigurationMatch& m) {
            auto o = try_plan(cur, m);
            if (!o.plan)
                return false;
            chosen = std::move(o);
            picked = m;
            return true;
        });
        if (!chosen)
            break;
        EmbeddedGraph next = std::move(*chosen->reduced);
        auto next_orig = orig;
        next_orig.erase(next_orig.begin() + chosen->plan->deleted);
        steps.push_back({std::move(cur), std::move(*chosen->plan), std::move(picked), std::move(orig)});
        cur = std::move(next);
        orig = std::move(next_orig);
    }

    if (cur.vertex_count() <= 1) {
        phi = Coloring(cur.vertex_count(), palette);
        if (cur.vertex_count() == 1)
            phi.assignment[0] = 1;
    } else {
        res.fallback = true;
        res.witness = cur;
        res.witness_ids = orig;
        phi = greedy_square_color(cur, palette);
    }

    std::vector<TraceStep> trace(steps.size());
    for (std::size_t k = steps.size(); k-- > 0;) {
        const Step& s = steps[k];
        const Vertex d = s.plan.deleted;
        Coloring up(s.graph.vertex_count(), palette);
        for (Vertex u = 0; u < static_cast<Vertex>(s.graph.vertex_count()); ++u)
            if (u != d)
                up.assignment[u] = phi.assignment[shift_after_delete(u, d)];
        const auto forbidden = forbidden_colors(s.graph, up, d);
        const int size = static_cast<int>(forbidden.size());
        ++res.extend_calls;
        res.max_forbidden = std::max(res.max_forbidden, size);
        if (size > s.plan.forbidden_bound)
            ++res.bound_violations;
        Color c = min_free(forbidden, palette);
        TraceStep& t = trace[k];
        t.config = s.match.config;
        t.variant = s.match.variant;
        t.center = s.orig[s.match.center];
        for (const auto& [role, x] : s.match.bindings)
            t.bindings.emplace_back(role, s.orig[x]);
        t.deleted = s.orig[d];
        for (const auto& [a, b] : s.plan.add_edges)
            t.added.emplace_back(s.orig[a], s.orig[b]);
        t.forbidden = size;
        t.bound = s.plan.forbidden_bound;
        if (c == uncolored) {
            trace.erase(trace.begin(), trace.begin() + static_cast<std::ptrdiff_t>(k));
            throw Error(Errc::NoSafeColor, "vertex " + std::to_string(t.deleted) + " sees " + std::to_string(size) +
                                               " colors; trace: " + describe_trace(trace));
        }
        t.color = c;
        up.assignment[d] = c;
        phi = std::move(up);
    }
    res.coloring = std::move(phi);
    res.trace = std::move(trace);
    return res;
}

} // namespace dist2
