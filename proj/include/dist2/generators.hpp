#pragma once

// Corpus generators. Every generator returns a straight-line (or convex
// polyhedral) drawing translated into a rotation system.

#include "graph.hpp"

#include <array>
#include <cmath>
#include <map>
#include <random>
#include <sstream>
#include <string>
#include <variant>

namespace dist2 {

struct Point2 {
    double x = 0;
    double y = 0;
};

struct Point3 {
    double x = 0;
    double y = 0;
    double z = 0;
};

/// Rotation system of a straight-line drawing: neighbours sorted clockwise.
inline EmbeddedGraph embed_straight_line(const std::vector<Point2>& pos, std::span<const std::pair<Vertex, Vertex>> edges)
{
    std::vector<std::vector<Vertex>> rot(pos.size());
    for (auto [a, b] : edges) {
        rot[a].push_back(b);
        rot[b].push_back(a);
    }
    for (std::size_t v = 0; v < pos.size(); ++v) {
        auto angle = [&](Vertex u) { return std::atan2(pos[u].y - pos[v].y, pos[u].x - pos[v].x); };
        std::sort(rot[v].begin(), rot[v].end(), [&](Vertex a, Vertex b) { return angle(a) > angle(b); });
    }
    return EmbeddedGraph::build(pos.size(), std::move(rot));
}

/// Rotation system of a convex polyhedron centred at the origin, viewed from outside.
inline EmbeddedGraph embed_convex(const std::vector<Point3>& pos, std::span<const std::pair<Vertex, Vertex>> edges)
{
    std::vector<std::vector<Vertex>> rot(pos.size());
    for (auto [a, b] : edges) {
        rot[a].push_back(b);
        rot[b].push_back(a);
    }
    auto cross = [](Point3 a, Point3 b) {
        return Point3{a.y * b.z - a.z * b.y, a.z * b.x - a.x * b.z, a.x * b.y - a.y * b.x};
    };
    auto dot = [](Point3 a, Point3 b) { return a.x * b.x + a.y * b.y + a.z * b.z; };
    for (std::size_t v = 0; v < pos.size(); ++v) {
        const Point3 n = pos[v];
        Point3 helper = std::abs(n.x) < 0.9 * std::sqrt(dot(n, n)) ? Point3{1, 0, 0} : Point3{0, 1, 0};
        Point3 e1 = cross(n, helper);
        Point3 e2 = cross(n, e1);
        auto angle = [&](Vertex u) {
            Point3 d{pos[u].x - n.x, pos[u].y - n.y, pos[u].z - n.z};
            return std::atan2(dot(d, e2), dot(d, e1));
        };
        std::sort(rot[v].begin(), rot[v].end(), [&](Vertex a, Vertex b) { return angle(a) > angle(b); });
    }
    return EmbeddedGraph::build(pos.size(), std::move(rot));
}

namespace detail {

inline std::vector<std::pair<Vertex, Vertex>> shortest_pairs(const std::vector<Point3>& pos)
{
    auto d2 = [&](std::size_t a, std::size_t b) {
        double dx = pos[a].x - pos[b].x, dy = pos[a].y - pos[b].y, dz = pos[a].z - pos[b].z;
        return dx * dx + dy * dy + dz * dz;
    };
    double best = 1e300;
    for (std::size_t a = 0; a < pos.size(); ++a)
        for (std::size_t b = a + 1; b < pos.size(); ++b)
            best = std::min(best, d2(a, b));
    std::vector<std::pair<Vertex, Vertex>> out;
    for (std::size_t a = 0; a < pos.size(); ++a)
        for (std::size_t b = a + 1; b < pos.size(); ++b)
            if (d2(a, b) < best * (1 + 1e-6))
                out.emplace_back(static_cast<Vertex>(a), static_cast<Vertex>(b));
    return out;
}

inline std::vector<Point3> cyclic_perms(double a, double b, double c)
{
    return {{a, b, c}, {c, a, b}, {b, c, a}};
}

} // namespace detail

inline EmbeddedGraph platonic(std::string_view name)
{
    std::vector<Point3> pos;
    const double phi = (1 + std::sqrt(5.0)) / 2;
    if (name == "tetrahedron") {
        pos = {{1, 1, 1}, {1, -1, -1}, {-1, 1, -1}, {-1, -1, 1}};
    } else if (name == "cube") {
        for (int i = 0; i < 8; ++i)
            pos.push_back({i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0});
    } else if (name == "octahedron") {
        pos = {{1, 0, 0}, {-1, 0, 0}, {0, 1, 0}, {0, -1, 0}, {0, 0, 1}, {0, 0, -1}};
    } else if (name == "icosahedron") {
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0})
                for (auto p : detail::cyclic_perms(0, s1, s2 * phi))
                    pos.push_back(p);
    } else if (name == "dodecahedron") {
        for (int i = 0; i < 8; ++i)
            pos.push_back({i & 1 ? 1.0 : -1.0, i & 2 ? 1.0 : -1.0, i & 4 ? 1.0 : -1.0});
        for (double s1 : {1.0, -1.0})
            for (double s2 : {1.0, -1.0})
                for (auto p : detail::cyclic_perms(0, s1 / phi, s2 * phi))
                    pos.push_back(p);
    } else {
        throw Error(Errc::BadParams, "unknown platonic solid '" + std::string(name) + "'");
    }
    auto edges = detail::shortest_pairs(pos);
    return embed_convex(pos, edges);
}

inline EmbeddedGraph cycle_graph(int n)
{
    if (n < 3)
        throw Error(Errc::BadParams, "cycle needs n >= 3");
    std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
        rot[v] = {(v + n - 1) % n, (v + 1) % n};
    return EmbeddedGraph::build(static_cast<std::size_t>(n), std::move(rot));
}

inline EmbeddedGraph path_graph(int n)
{
    if (n < 1)
        throw Error(Errc::BadParams, "path needs n >= 1");
    std::vector<std::vector<Vertex>> rot(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v) {
        if (v > 0)
            rot[v].push_back(v - 1);
        if (v + 1 < n)
            rot[v].push_back(v + 1);
    }
    return EmbeddedGraph::build(static_cast<std::size_t>(n), std::move(rot));
}

namespace detail {

struct Lattice {
    std::vector<Point2> pos;
    std::vector<std::pair<Vertex, Vertex>> edges;
};

inline Lattice grid_lattice(int rows, int cols, bool diagonals)
{
    Lattice l;
    auto id = [cols](int r, int c) { return static_cast<Vertex>(r * cols + c); };
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c)
            l.pos.push_back({static_cast<double>(c), static_cast<double>(-r)});
    for (int r = 0; r < rows; ++r)
        for (int c = 0; c < cols; ++c) {
            if (c + 1 < cols)
                l.edges.emplace_back(id(r, c), id(r, c + 1));
            if (r + 1 < rows)
                l.edges.emplace_back(id(r, c), id(r + 1, c));
            if (diagonals && r + 1 < rows && c + 1 < cols)
                l.edges.emplace_back(id(r, c), id(r + 1, c + 1));
        }
    return l;
}

} // namespace detail

inline EmbeddedGraph square_grid(int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw Error(Errc::BadParams, "square_grid needs rows, cols >= 1");
    auto l = detail::grid_lattice(rows, cols, false);
    return embed_straight_line(l.pos, l.edges);
}

/// Square grid with one diagonal per cell: interior vertices are 6-vertices on six 3-faces.
inline EmbeddedGraph tri_grid(int rows, int cols)
{
    if (rows < 1 || cols < 1)
        throw Error(Errc::BadParams, "tri_grid needs rows, cols >= 1");
    auto l = detail::grid_lattice(rows, cols, true);
    return embed_straight_line(l.pos, l.edges);
}

/// Honeycomb patch of hexagonal cells within hex distance rings-1 of a centre cell.
inline EmbeddedGraph hex_grid(int rings)
{
    if (rings < 1)
        throw Error(Errc::BadParams, "hex_grid needs rings >= 1");
    const double s3 = std::sqrt(3.0);
    std::map<std::pair<long, long>, Vertex> index;
    std::vector<Point2> pos;
    std::set<std::pair<Vertex, Vertex>> edges;
    auto corner = [&](double x, double y) {
        std::pair<long, long> key{std::lround(x * 1000), std::lround(y * 1000)};
        auto [it, fresh] = index.emplace(key, static_cast<Vertex>(pos.size()));
        if (fresh)
            pos.push_back({x, y});
        return it->second;
    };
    const int r = rings - 1;
    for (int q = -r; q <= r; ++q)
        for (int s = -r; s <= r; ++s) {
            if (std::abs(q + s) > r)
                continue;
            const double cx = s3 * (q + s / 2.0), cy = 1.5 * s;
            std::array<Vertex, 6> c{};
            for (int k = 0; k < 6; ++k) {
                const double a = (30.0 + 60.0 * k) * std::acos(-1.0) / 180.0;
                c[k] = corner(cx + std::cos(a), cy + std::sin(a));
            }
            for (int k = 0; k < 6; ++k)
                edges.insert(std::minmax(c[k], c[(k + 1) % 6]));
        }
    std::vector<std::pair<Vertex, Vertex>> list(edges.begin(), edges.end());
    return embed_straight_line(pos, list);
}

/// Seeded planar graph with max degree <= max_degree: a triangulated lattice
/// patch thinned by connectivity-preserving vertex and edge deletions. Uses
/// std::mt19937_64 (fully specified by the standard) and plain modular
/// reduction, so the output is identical on every platform.
inline EmbeddedGraph random_planar(int n, std::uint64_t seed, int max_degree = 6)
{
    if (n < 1 || n > 5000 || max_degree < 1 || max_degree > 6)
        throw Error(Errc::BadParams, "random_planar needs 1 <= n <= 5000 and 1 <= max_degree <= 6");
    std::mt19937_64 rng(seed);
    auto pick = [&](std::size_t m) { return static_cast<std::size_t>(rng() % m); };

    int side = 1;
    while (side * side < n)
        ++side;
    auto lat = detail::grid_lattice(side, side, true);
    const auto total = lat.pos.size();
    std::vector<char> alive(total, 1);
    std::set<std::pair<Vertex, Vertex>> edges(lat.edges.begin(), lat.edges.end());

    auto connected = [&]() {
        std::vector<std::vector<Vertex>> adj(total);
        for (auto [a, b] : edges) {
            adj[a].push_back(b);
            adj[b].push_back(a);
        }
        Vertex start = no_vertex;
        std::size_t count = 0;
        for (std::size_t v = 0; v < total; ++v)
            if (alive[v]) {
                ++count;
                if (start == no_vertex)
                    start = static_cast<Vertex>(v);
            }
        if (count == 0)
            return true;
        std::vector<char> seen(total, 0);
        std::vector<Vertex> stack{start};
        seen[start] = 1;
        std::size_t reached = 1;
        while (!stack.empty()) {
            Vertex v = stack.back();
            stack.pop_back();
            for (Vertex u : adj[v])
                if (!seen[u]) {
                    seen[u] = 1;
                    ++reached;
                    stack.push_back(u);
                }
        }
        return reached == count;
    };

    std::size_t remaining = total;
    for (int attempts = 0; remaining > static_cast<std::size_t>(n) && attempts < 100000; ++attempts) {
        const auto v = static_cast<Vertex>(pick(total));
        if (!alive[v])
            continue;
        auto saved = edges;
        alive[v] = 0;
        for (auto it = edges.begin(); it != edges.end();)
            it = (it->first == v || it->second == v) ? edges.erase(it) : std::next(it);
        if (connected()) {
            --remaining;
        } else {
            alive[v] = 1;
            edges = std::move(saved);
        }
    }

    auto degree_of = [&](Vertex v) {
        return static_cast<int>(std::count_if(edges.begin(), edges.end(),
                                              [v](const auto& e) { return e.first == v || e.second == v; }));
    };
    const std::size_t drop_target = edges.size() * pick(46) / 100;
    std::size_t dropped = 0;
    for (int attempts = 0; dropped < drop_target && attempts < 20000; ++attempts) {
        auto it = std::next(edges.begin(), static_cast<std::ptrdiff_t>(pick(edges.size())));
        auto e = *it;
        edges.erase(it);
        if (connected())
            ++dropped;
        else
            edges.insert(e);
    }
    for (std::size_t v = 0; v < total; ++v) {
        while (alive[v] && degree_of(static_cast<Vertex>(v)) > max_degree) {
            std::vector<std::pair<Vertex, Vertex>> incident;
            for (const auto& e : edges)
                if (e.first == static_cast<Vertex>(v) || e.second == static_cast<Vertex>(v))
                    incident.push_back(e);
            edges.erase(incident[pick(incident.size())]);
        }
    }

    std::vector<Vertex> new_id(total, no_vertex);
    std::vector<Point2> pos;
    for (std::size_t v = 0; v < total; ++v)
        if (alive[v]) {
            new_id[v] = static_cast<Vertex>(pos.size());
            pos.push_back(lat.pos[v]);
        }
    std::vector<std::pair<Vertex, Vertex>> list;
    for (auto [a, b] : edges)
        list.emplace_back(new_id[a], new_id[b]);
    return embed_straight_line(pos, list);
}

struct GeneratorSpec {
    enum class Kind { Platonic, SquareGrid, HexGrid, TriGrid, Cycle, Path, RandomPlanar };
    Kind kind = Kind::Cycle;
    std::string name;     // platonic solid name
    std::vector<int> params; // rows/cols, rings, n
    std::uint64_t seed = 0;
    int max_degree = 6;
};

inline GeneratorSpec parse_generator(std::string_view kind, std::string_view params, std::uint64_t seed = 0)
{
    GeneratorSpec spec;
    spec.seed = seed;
    std::vector<std::string> parts;
    {
        std::string cur;
        for (char c : params) {
            if (c == ',') {
                parts.push_back(cur);
                cur.clear();
            } else if (c != ' ') {
                cur += c;
            }
        }
        if (!cur.empty())
            parts.push_back(cur);
    }
    auto ints = [&](std::size_t need_min, std::size_t need_max) {
        if (parts.size() < need_min || parts.size() > need_max)
            throw Error(Errc::BadParams, "generator '" + std::string(kind) + "' takes " + std::to_string(need_min) +
                                             ".." + std::to_string(need_max) + " parameters");
        for (const auto& p : parts) {
            try {
                std::size_t used = 0;
                spec.params.push_back(std::stoi(p, &used));
                if (used != p.size())
                    throw std::invalid_argument(p);
            } catch (const std::logic_error&) {
                throw Error(Errc::BadParams, "not an integer: '" + p + "'");
            }
        }
    };
    using K = GeneratorSpec::Kind;
    if (kind == "platonic") {
        spec.kind = K::Platonic;
        if (parts.size() != 1)
            throw Error(Errc::BadParams, "platonic takes a solid name");
        spec.name = parts[0];
    } else if (kind == "square_grid") {
        spec.kind = K::SquareGrid;
        ints(2, 2);
    } else if (kind == "tri_grid") {
        spec.kind = K::TriGrid;
        ints(2, 2);
    } else if (kind == "hex_grid") {
        spec.kind = K::HexGrid;
        ints(1, 1);
    } else if (kind == "cycle") {
        spec.kind = K::Cycle;
        ints(1, 1);
    } else if (kind == "path") {
        spec.kind = K::Path;
        ints(1, 1);
    } else if (kind == "random_planar") {
        spec.kind = K::RandomPlanar;
        ints(1, 2);
        if (spec.params.size() == 2)
            spec.max_degree = spec.params[1];
    } else {
        throw Error(Errc::BadParams, "unknown generator kind '" + std::string(kind) + "'");
    }
    return spec;
}

inline EmbeddedGraph generate(const GeneratorSpec& spec)
{
    using K = GeneratorSpec::Kind;
    switch (spec.kind) {
    case K::Platonic: return platonic(spec.name);
    case K::SquareGrid: return square_grid(spec.params.at(0), spec.params.at(1));
    case K::TriGrid: return tri_grid(spec.params.at(0), spec.params.at(1));
    case K::HexGrid: return hex_grid(spec.params.at(0));
    case K::Cycle: return cycle_graph(spec.params.at(0));
    case K::Path: return path_graph(spec.params.at(0));
    case K::RandomPlanar: return random_planar(spec.params.at(0), spec.seed, spec.max_degree);
    }
    throw Error(Errc::BadParams, "unknown generator");
}

} // namespace dist2
