#pragma once

// Square graphs and 2-distance colorings.

#include "graph.hpp"

#include <set>

namespace dist2 {

using Color = int;
inline constexpr Color uncolored = 0;
inline constexpr int default_palette = 20;

/// Partial assignment vertex -> 1..palette; 0 marks an uncolored vertex.
struct Coloring {
    std::vector<Color> assignment;
    int palette = default_palette;

    Coloring() = default;
    Coloring(std::size_t n, int palette_size)
        : assignment(n, uncolored)
        , palette(palette_size)
    {
    }

    bool is_total() const
    {
        return std::none_of(assignment.begin(), assignment.end(), [](Color c) { return c == uncolored; });
    }

    int colors_used() const
    {
        std::set<Color> used;
        for (Color c : assignment)
            if (c != uncolored)
                used.insert(c);
        return static_cast<int>(used.size());
    }

    bool operator==(const Coloring&) const = default;
};

struct Violation {
    Vertex u = no_vertex;
    Vertex w = no_vertex;
    int distance = 0;
    Color color = uncolored;
    bool operator==(const Violation&) const = default;
};

struct ValidityReport {
    bool valid = true;
    std::vector<Violation> violations;
    int colors_used = 0;
};

/// Adjacency of G^2: uw is an edge iff d_G(u, w) is 1 or 2.
struct SquareGraph {
    std::vector<std::vector<Vertex>> adjacency; // sorted

    std::size_t edge_count() const
    {
        std::size_t s = 0;
        for (const auto& a : adjacency)
            s += a.size();
        return s / 2;
    }

    bool adjacent(Vertex u, Vertex w) const
    {
        const auto& a = adjacency[u];
        return std::binary_search(a.begin(), a.end(), w);
    }
};

inline SquareGraph square(const EmbeddedGraph& g)
{
    SquareGraph sq;
    sq.adjacency.reserve(g.vertex_count());
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        sq.adjacency.push_back(distance2_neighborhood(g, v));
    return sq;
}

inline ValidityReport verify_coloring(const EmbeddedGraph& g, const Coloring& phi)
{
    if (phi.assignment.size() != g.vertex_count())
        throw Error(Errc::VertexSetMismatch, "coloring has " + std::to_string(phi.assignment.size()) +
                                                 " entries for " + std::to_string(g.vertex_count()) + " vertices");
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v) {
        Color c = phi.assignment[v];
        if (c != uncolored && (c < 1 || c > phi.palette))
            throw Error(Errc::ColorOutOfPalette,
                        "vertex " + std::to_string(v) + " has color " + std::to_string(c) + " outside 1.." +
                            std::to_string(phi.palette));
    }
    ValidityReport report;
    for (Vertex u = 0; u < static_cast<Vertex>(g.vertex_count()); ++u) {
        Color c = phi.assignment[u];
        if (c == uncolored)
            continue;
        for (Vertex w : distance2_neighborhood(g, u))
            if (w > u && phi.assignment[w] == c)
                report.violations.push_back({u, w, g.adjacent(u, w) ? 1 : 2, c});
    }
    report.valid = report.violations.empty();
    report.colors_used = phi.colors_used();
    return report;
}

/// Descending degree, then ascending id.
inline std::vector<Vertex> default_order(const EmbeddedGraph& g)
{
    std::vector<Vertex> order(g.vertex_count());
    std::iota(order.begin(), order.end(), 0);
    std::stable_sort(order.begin(), order.end(), [&](Vertex a, Vertex b) { return g.degree(a) > g.degree(b); });
    return order;
}

/// Each vertex in `order` gets the smallest color unused within distance two.
inline Coloring greedy_square_color(const EmbeddedGraph& g, std::span<const Vertex> order, int palette = default_palette)
{
    if (order.size() != g.vertex_count())
        throw Error(Errc::BadParams, "order is not a permutation of the vertex set");
    std::vector<char> seen(g.vertex_count(), 0);
    for (Vertex v : order) {
        if (!g.valid_vertex(v) || seen[v])
            throw Error(Errc::BadParams, "order is not a permutation of the vertex set");
        seen[v] = 1;
    }
    Coloring phi(g.vertex_count(), palette);
    for (Vertex v : order) {
        std::vector<char> taken(static_cast<std::size_t>(palette) + 1, 0);
        int forbidden = 0;
        for (Vertex u : distance2_neighborhood(g, v)) {
            Color c = phi.assignment[u];
            if (c != uncolored && !taken[c]) {
                taken[c] = 1;
                ++forbidden;
            }
        }
        Color pick = uncolored;
        for (Color c = 1; c <= palette && pick == uncolored; ++c)
            if (!taken[c])
                pick = c;
        if (pick == uncolored)
            throw Error(Errc::PaletteExhausted,
                        "vertex " + std::to_string(v) + " sees " + std::to_string(forbidden) + " colors");
        phi.assignment[v] = pick;
    }
    return phi;
}

inline Coloring greedy_square_color(const EmbeddedGraph& g, int palette = default_palette)
{
    auto order = default_order(g);
    return greedy_square_color(g, order, palette);
}

} // namespace dist2
