#pragma once

// Embedded planar simple graphs given by rotation systems.
//
// rotation(v) lists the neighbours of v in clockwise order. Faces are traced
// with the rule: the dart following (u -> v) is (v -> w), where w comes right
// after u in rotation(v). Under this rule the corner of v between rotation
// positions i and i+1 belongs to the face containing the dart
// (v -> rotation(v)[i+1]).

#include "error.hpp"

#include <algorithm>
#include <compare>
#include <cstddef>
#include <cstdint>
#include <numeric>
#include <optional>
#include <queue>
#include <set>
#include <span>
#include <string>
#include <utility>
#include <vector>

namespace dist2 {

using Vertex = int;
using FaceId = std::size_t;
inline constexpr Vertex no_vertex = -1;
inline constexpr std::size_t npos = static_cast<std::size_t>(-1);

struct Dart {
    Vertex tail = no_vertex;
    Vertex head = no_vertex;
    auto operator<=>(const Dart&) const = default;
};

inline std::string to_string(Dart d)
{
    return "(" + std::to_string(d.tail) + "->" + std::to_string(d.head) + ")";
}

struct Face {
    FaceId id = 0;
    std::vector<Dart> boundary; // closed walk, boundary[i].head == boundary[i+1].tail

    std::size_t degree() const noexcept { return boundary.size(); }

    /// Vertices in walk order (the tail of every dart); may repeat at cut vertices.
    std::vector<Vertex> vertices() const
    {
        std::vector<Vertex> out;
        out.reserve(boundary.size());
        for (const auto& d : boundary)
            out.push_back(d.tail);
        return out;
    }

    bool contains(Vertex v) const
    {
        return std::any_of(boundary.begin(), boundary.end(), [v](const Dart& d) { return d.tail == v; });
    }

    /// True when the walk visits every vertex at most once.
    bool is_simple_cycle() const
    {
        auto vs = vertices();
        std::sort(vs.begin(), vs.end());
        return std::adjacent_find(vs.begin(), vs.end()) == vs.end();
    }
};

/// Local profile of a vertex. Face counts are taken per corner, so a face that
/// passes a cut vertex twice is counted twice. Faces of degree below 3 only
/// occur around 1-vertices and are counted in m_small.
struct VertexStats {
    int degree = 0;
    int m3 = 0;
    int m4 = 0;
    int m5plus = 0;
    int m_small = 0;
    int n3 = 0;
    int n4 = 0;
    int n5 = 0;
    int n6 = 0;
    int n_small = 0; // neighbours of degree <= 2
    int n_large = 0; // neighbours of degree >= 7
    std::vector<FaceId> incident_faces; // corner i sits between rotation[i] and rotation[i+1]
};

class EmbeddedGraph {
public:
    EmbeddedGraph() = default;

    /// Validates a rotation system. Throws Error with the offending dart.
    static EmbeddedGraph build(std::size_t vertex_count, std::vector<std::vector<Vertex>> rotations,
                               std::vector<std::string> labels = {})
    {
        if (rotations.size() != vertex_count)
            throw Error(Errc::DanglingVertexId, "rotation table has " + std::to_string(rotations.size()) +
                                                    " rows for " + std::to_string(vertex_count) + " vertices");
        if (!labels.empty() && labels.size() != vertex_count)
            throw Error(Errc::DanglingVertexId, "label count does not match vertex count");
        const auto n = static_cast<Vertex>(vertex_count);
        for (Vertex v = 0; v < n; ++v) {
            const auto& rot = rotations[v];
            for (Vertex u : rot) {
                if (u < 0 || u >= n)
                    throw Error(Errc::DanglingVertexId, to_string(Dart{v, u}));
                if (u == v)
                    throw Error(Errc::LoopEdge, to_string(Dart{v, u}));
            }
            auto sorted = rot;
            std::sort(sorted.begin(), sorted.end());
            auto dup = std::adjacent_find(sorted.begin(), sorted.end());
            if (dup != sorted.end())
                throw Error(Errc::ParallelEdge, to_string(Dart{v, *dup}));
        }
        for (Vertex v = 0; v < n; ++v)
            for (Vertex u : rotations[v])
                if (std::find(rotations[u].begin(), rotations[u].end(), v) == rotations[u].end())
                    throw Error(Errc::AsymmetricAdjacency, to_string(Dart{v, u}) + " has no reverse dart");

        EmbeddedGraph g;
        g.rotation_ = std::move(rotations);
        g.labels_ = std::move(labels);
        g.trace_faces();
        return g;
    }

    std::size_t vertex_count() const noexcept { return rotation_.size(); }
    std::size_t edge_count() const noexcept { return dart_count() / 2; }
    std::size_t dart_count() const noexcept { return offset_.empty() ? 0 : offset_.back(); }
    std::size_t face_count() const noexcept { return faces_.size(); }

    const std::vector<std::vector<Vertex>>& rotations() const noexcept { return rotation_; }
    const std::vector<Vertex>& rotation(Vertex v) const { return rotation_.at(static_cast<std::size_t>(v)); }
    int degree(Vertex v) const { return static_cast<int>(rotation(v).size()); }
    const std::vector<std::string>& labels() const noexcept { return labels_; }
    bool valid_vertex(Vertex v) const noexcept { return v >= 0 && static_cast<std::size_t>(v) < rotation_.size(); }

    int max_degree() const noexcept
    {
        int d = 0;
        for (const auto& r : rotation_)
            d = std::max(d, static_cast<int>(r.size()));
        return d;
    }

    /// Index of u in rotation(v), or npos.
    std::size_t position(Vertex v, Vertex u) const
    {
        const auto& rot = rotation(v);
        auto it = std::find(rot.begin(), rot.end(), u);
        return it == rot.end() ? npos : static_cast<std::size_t>(it - rot.begin());
    }

    bool adjacent(Vertex u, Vertex w) const { return position(u, w) != npos; }

    const std::vector<Face>& faces() const noexcept { return faces_; }
    const Face& face(FaceId f) const { return faces_.at(f); }

    FaceId face_of(Dart d) const
    {
        auto i = position(d.tail, d.head);
        if (i == npos)
            throw Error(Errc::DanglingVertexId, "no dart " + to_string(d));
        return dart_face_[offset_[static_cast<std::size_t>(d.tail)] + i];
    }

    /// Face at the corner of v between rotation(v)[i] and rotation(v)[i+1].
    FaceId corner_face(Vertex v, std::size_t i) const
    {
        const auto d = rotation(v).size();
        return dart_face_[offset_[static_cast<std::size_t>(v)] + (i + 1) % d];
    }

    std::size_t corner_face_degree(Vertex v, std::size_t i) const { return faces_[corner_face(v, i)].degree(); }

    Dart next_dart(Dart d) const
    {
        const auto& rot = rotation(d.head);
        auto j = position(d.head, d.tail);
        return Dart{d.head, rot[(j + 1) % rot.size()]};
    }

    std::vector<std::pair<Vertex, Vertex>> edges() const
    {
        std::vector<std::pair<Vertex, Vertex>> out;
        out.reserve(edge_count());
        for (Vertex v = 0; v < static_cast<Vertex>(vertex_count()); ++v)
            for (Vertex u : rotation_[v])
                if (v < u)
                    out.emplace_back(v, u);
        std::sort(out.begin(), out.end());
        return out;
    }

    /// Component index per vertex, numbered by smallest member.
    std::vector<int> components() const
    {
        std::vector<int> comp(vertex_count(), -1);
        int next = 0;
        for (Vertex s = 0; s < static_cast<Vertex>(vertex_count()); ++s) {
            if (comp[s] >= 0)
                continue;
            std::vector<Vertex> stack{s};
            comp[s] = next;
            while (!stack.empty()) {
                Vertex v = stack.back();
                stack.pop_back();
                for (Vertex u : rotation_[v])
                    if (comp[u] < 0) {
                        comp[u] = next;
                        stack.push_back(u);
                    }
            }
            ++next;
        }
        return comp;
    }

    std::size_t component_count() const
    {
        auto c = components();
        return c.empty() ? 0 : static_cast<std::size_t>(*std::max_element(c.begin(), c.end()) + 1);
    }

    bool operator==(const EmbeddedGraph& o) const
    {
        return rotation_ == o.rotation_ && labels_ == o.labels_;
    }

private:
    void trace_faces()
    {
        offset_.assign(rotation_.size() + 1, 0);
        for (std::size_t v = 0; v < rotation_.size(); ++v)
            offset_[v + 1] = offset_[v] + rotation_[v].size();
        dart_face_.assign(dart_count(), npos);
        faces_.clear();
        for (Vertex v = 0; v < static_cast<Vertex>(rotation_.size()); ++v) {
            for (std::size_t i = 0; i < rotation_[v].size(); ++i) {
                if (dart_face_[offset_[v] + i] != npos)
                    continue;
                Face f;
                f.id = faces_.size();
                Dart start{v, rotation_[v][i]};
                Dart d = start;
                do {
                    dart_face_[offset_[static_cast<std::size_t>(d.tail)] + position(d.tail, d.head)] = f.id;
                    f.boundary.push_back(d);
                    d = next_dart(d);
                } while (d != start);
                faces_.push_back(std::move(f));
            }
        }
    }

    std::vector<std::vector<Vertex>> rotation_;
    std::vector<std::string> labels_;
    std::vector<std::size_t> offset_;
    std::vector<FaceId> dart_face_;
    std::vector<Face> faces_;
};

inline EmbeddedGraph build_embedded(std::size_t vertex_count, std::vector<std::vector<Vertex>> rotations,
                                    std::vector<std::string> labels = {})
{
    return EmbeddedGraph::build(vertex_count, std::move(rotations), std::move(labels));
}

inline const std::vector<Face>& faces(const EmbeddedGraph& g) { return g.faces(); }

/// |V| - |E| + |F| == 2 for every component. An isolated vertex counts as one
/// vertex and one (empty) face.
inline bool satisfies_euler(const EmbeddedGraph& g)
{
    const auto comp = g.components();
    const auto count = comp.empty() ? 0 : static_cast<std::size_t>(*std::max_element(comp.begin(), comp.end()) + 1);
    std::vector<long> v_cnt(count, 0), e2(count, 0), f_cnt(count, 0);
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        v_cnt[comp[v]] += 1;
        e2[comp[v]] += g.degree(v);
        if (g.degree(v) == 0)
            f_cnt[comp[v]] += 1;
    }
    for (const auto& f : g.faces())
        f_cnt[comp[f.boundary.front().tail]] += 1;
    for (std::size_t c = 0; c < count; ++c)
        if (2 * v_cnt[c] - e2[c] + 2 * f_cnt[c] != 4)
            return false;
    return true;
}

inline VertexStats vertex_stats(const EmbeddedGraph& g, Vertex v)
{
    VertexStats s;
    const auto& rot = g.rotation(v);
    s.degree = static_cast<int>(rot.size());
    for (std::size_t i = 0; i < rot.size(); ++i) {
        FaceId f = g.corner_face(v, i);
        s.incident_faces.push_back(f);
        auto deg = g.face(f).degree();
        if (deg == 3)
            ++s.m3;
        else if (deg == 4)
            ++s.m4;
        else if (deg >= 5)
            ++s.m5plus;
        else
            ++s.m_small;
    }
    for (Vertex u : rot) {
        switch (g.degree(u)) {
        case 3: ++s.n3; break;
        case 4: ++s.n4; break;
        case 5: ++s.n5; break;
        case 6: ++s.n6; break;
        default:
            if (g.degree(u) <= 2)
                ++s.n_small;
            else
                ++s.n_large;
        }
    }
    return s;
}

/// Number of 3-faces at the corners of v.
inline int triangle_corners(const EmbeddedGraph& g, Vertex v)
{
    int m3 = 0;
    for (std::size_t i = 0; i < g.rotation(v).size(); ++i)
        if (g.corner_face_degree(v, i) == 3)
            ++m3;
    return m3;
}

/// All u != v with d(u, v) <= 2, sorted.
inline std::vector<Vertex> distance2_neighborhood(const EmbeddedGraph& g, Vertex v)
{
    std::vector<Vertex> out;
    for (Vertex u : g.rotation(v)) {
        out.push_back(u);
        for (Vertex w : g.rotation(u))
            if (w != v)
                out.push_back(w);
    }
    std::sort(out.begin(), out.end());
    out.erase(std::unique(out.begin(), out.end()), out.end());
    return out;
}

/// Id of a surviving vertex after `removed` is deleted and ids are compacted.
constexpr Vertex shift_after_delete(Vertex u, Vertex removed) noexcept { return u > removed ? u - 1 : u; }

/// Inverse of shift_after_delete.
constexpr Vertex unshift_after_delete(Vertex u, Vertex removed) noexcept { return u >= removed ? u + 1 : u; }

struct Deletion {
    EmbeddedGraph graph;
    Face merged_face; // empty when v had no neighbour left with an edge
};

/// G - v with ids above v shifted down by one. The merged face is the face of
/// G - v that occupies the old corner of v at its first neighbour that still
/// has an edge; at a cut vertex the old region splits per component and only
/// that component's face is returned.
inline Deletion delete_vertex(const EmbeddedGraph& g, Vertex v)
{
    if (!g.valid_vertex(v))
        throw Error(Errc::DanglingVertexId, "vertex " + std::to_string(v));
    const auto n = g.vertex_count();
    std::vector<std::vector<Vertex>> rot;
    rot.reserve(n - 1);
    for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
        if (u == v)
            continue;
        std::vector<Vertex> r;
        for (Vertex w : g.rotation(u))
            if (w != v)
                r.push_back(shift_after_delete(w, v));
        rot.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (!g.labels().empty()) {
        labels = g.labels();
        labels.erase(labels.begin() + v);
    }
    Deletion out{EmbeddedGraph::build(n - 1, std::move(rot), std::move(labels)), Face{}};
    for (Vertex u : g.rotation(v)) {
        const Vertex nu = shift_after_delete(u, v);
        const auto& r = out.graph.rotation(nu);
        if (r.empty())
            continue;
        const auto slot = g.position(u, v) % r.size();
        out.merged_face = out.graph.face(out.graph.face_of(Dart{nu, r[slot]}));
        break;
    }
    return out;
}

namespace detail {

inline std::vector<std::vector<Vertex>> insert_edge_at(std::vector<std::vector<Vertex>> rot, Vertex a,
                                                       std::size_t slot_a, Vertex b, std::size_t slot_b)
{
    rot[a].insert(rot[a].begin() + static_cast<std::ptrdiff_t>(slot_a), b);
    rot[b].insert(rot[b].begin() + static_cast<std::ptrdiff_t>(slot_b), a);
    return rot;
}

/// Rotation slot at v for drawing a new edge into face f: right after the
/// predecessor of v on the walk. Returns npos if v is not on f.
inline std::size_t face_slot(const EmbeddedGraph& g, const Face& f, Vertex v)
{
    for (const auto& d : f.boundary)
        if (d.head == v)
            return g.position(v, d.tail) + 1;
    return npos;
}

inline bool interleaved(std::size_t a, std::size_t b, std::size_t c, std::size_t d)
{
    if (a > b)
        std::swap(a, b);
    bool c_in = c > a && c < b;
    bool d_in = d > a && d < b;
    return c != a && c != b && d != a && d != b && c_in != d_in;
}

} // namespace detail

/// Inserts chords into face `face` of g. Each chord is drawn inside the part of
/// the face that still contains both endpoints after the earlier chords.
inline EmbeddedGraph add_chords(const EmbeddedGraph& g, const Face& face,
                                std::span<const std::pair<Vertex, Vertex>> chords)
{
    const auto walk = face.vertices();
    auto first_pos = [&](Vertex v) {
        auto it = std::find(walk.begin(), walk.end(), v);
        return it == walk.end() ? npos : static_cast<std::size_t>(it - walk.begin());
    };
    std::set<std::pair<Vertex, Vertex>> seen;
    for (const auto& [a, b] : chords) {
        const std::string pair = "(" + std::to_string(a) + "," + std::to_string(b) + ")";
        if (a == b || first_pos(a) == npos || first_pos(b) == npos)
            throw Error(Errc::EndpointNotOnFace, pair);
        if (g.adjacent(a, b) || !seen.insert(std::minmax(a, b)).second)
            throw Error(Errc::ChordAlreadyEdge, pair);
    }
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            if (detail::interleaved(first_pos(chords[i].first), first_pos(chords[i].second),
                                    first_pos(chords[j].first), first_pos(chords[j].second)))
                throw Error(Errc::CrossingChords,
                            "(" + std::to_string(chords[i].first) + "," + std::to_string(chords[i].second) + ") x (" +
                                std::to_string(chords[j].first) + "," + std::to_string(chords[j].second) + ")");

    EmbeddedGraph cur = g;
    std::vector<Dart> regions{face.boundary.front()}; // one dart per candidate face
    for (const auto& [a, b] : chords) {
        bool placed = false;
        for (std::size_t r = 0; r < regions.size() && !placed; ++r) {
            const Face& f = cur.face(cur.face_of(regions[r]));
            auto sa = detail::face_slot(cur, f, a);
            auto sb = detail::face_slot(cur, f, b);
            if (sa == npos || sb == npos)
                continue;
            auto rot = detail::insert_edge_at(cur.rotations(), a, sa, b, sb);
            cur = EmbeddedGraph::build(cur.vertex_count(), std::move(rot), cur.labels());
            regions.erase(regions.begin() + static_cast<std::ptrdiff_t>(r));
            regions.push_back(Dart{a, b});
            regions.push_back(Dart{b, a});
            placed = true;
        }
        if (!placed)
            throw Error(Errc::CrossingChords, "(" + std::to_string(a) + "," + std::to_string(b) +
                                                  ") is separated by an earlier chord");
    }
    return cur;
}

/// Deletes v and draws every chord through the disk that v occupied. Chord
/// endpoints that are not neighbours of v must lie on a face incident to v; they
/// are first joined to v inside that face. Chords must be pairwise
/// non-crossing in the resulting cyclic order around v. Works at cut vertices,
/// where deleting v alone would split the surrounding region across components.
/// Ids above v shift down by one; chords are given in the ids of g.
inline EmbeddedGraph replace_vertex_by_chords(const EmbeddedGraph& g, Vertex v,
                                              std::span<const std::pair<Vertex, Vertex>> chords)
{
    EmbeddedGraph h = g;
    std::vector<Vertex> endpoints;
    for (const auto& [a, b] : chords) {
        if (a == v || b == v || a == b || !g.valid_vertex(a) || !g.valid_vertex(b))
            throw Error(Errc::EndpointNotOnFace, "(" + std::to_string(a) + "," + std::to_string(b) + ")");
        if (g.adjacent(a, b))
            throw Error(Errc::ChordAlreadyEdge, "(" + std::to_string(a) + "," + std::to_string(b) + ")");
        endpoints.push_back(a);
        endpoints.push_back(b);
    }
    std::sort(endpoints.begin(), endpoints.end());
    endpoints.erase(std::unique(endpoints.begin(), endpoints.end()), endpoints.end());
    for (Vertex p : endpoints) {
        if (h.adjacent(v, p))
            continue;
        std::optional<FaceId> host;
        for (std::size_t i = 0; i < h.rotation(v).size() && !host; ++i) {
            FaceId f = h.corner_face(v, i);
            if (h.face(f).contains(p))
                host = f;
        }
        if (!host)
            throw Error(Errc::EndpointNotOnFace, "vertex " + std::to_string(p) + " shares no face with " +
                                                     std::to_string(v));
        const std::pair<Vertex, Vertex> link{v, p};
        Face f = h.face(*host);
        h = add_chords(h, f, std::span(&link, 1));
    }

    const auto& around = h.rotation(v);
    const auto m = around.size();
    auto pos = [&](Vertex u) { return h.position(v, u); };
    for (std::size_t i = 0; i < chords.size(); ++i)
        for (std::size_t j = i + 1; j < chords.size(); ++j)
            if (detail::interleaved(pos(chords[i].first), pos(chords[i].second), pos(chords[j].first),
                                    pos(chords[j].second)))
                throw Error(Errc::CrossingChords,
                            "(" + std::to_string(chords[i].first) + "," + std::to_string(chords[i].second) + ") x (" +
                                std::to_string(chords[j].first) + "," + std::to_string(chords[j].second) + ")");

    std::vector<std::vector<Vertex>> partners(h.vertex_count());
    for (const auto& [a, b] : chords) {
        partners[a].push_back(b);
        partners[b].push_back(a);
    }
    const auto n = h.vertex_count();
    std::vector<std::vector<Vertex>> rot;
    rot.reserve(n - 1);
    for (Vertex u = 0; u < static_cast<Vertex>(n); ++u) {
        if (u == v)
            continue;
        auto fan = partners[u];
        const auto pu = pos(u);
        std::sort(fan.begin(), fan.end(), [&](Vertex x, Vertex y) {
            return (pos(x) + m - pu) % m < (pos(y) + m - pu) % m;
        });
        std::vector<Vertex> r;
        for (Vertex w : h.rotation(u)) {
            if (w != v) {
                r.push_back(shift_after_delete(w, v));
                continue;
            }
            for (Vertex x : fan)
                r.push_back(shift_after_delete(x, v));
        }
        rot.push_back(std::move(r));
    }
    std::vector<std::string> labels;
    if (!g.labels().empty()) {
        labels = g.labels();
        labels.erase(labels.begin() + v);
    }
    return EmbeddedGraph::build(n - 1, std::move(rot), std::move(labels));
}

} // namespace dist2
