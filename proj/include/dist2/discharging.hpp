#pragma once

// Charges mu(v) = d(v) - 4, mu(f) = d(f) - 4 and the nine transfer rules,
// all in exact rationals.

#include "graph.hpp"
#include "reduction.hpp"

#include <boost/rational.hpp>

#include <array>
#include <charconv>
#include <cstdint>
#include <deque>
#include <iomanip>
#include <map>
#include <sstream>

namespace dist2 {

using Charge = boost::rational<std::int64_t>;

inline std::string to_string(const Charge& c)
{
    return std::to_string(c.numerator()) + "/" + std::to_string(c.denominator());
}

/// Accepts "p/q" or a bare integer.
inline std::optional<Charge> parse_charge(std::string_view s)
{
    auto read = [](std::string_view t, std::int64_t& out) {
        if (t.empty())
            return false;
        auto [p, ec] = std::from_chars(t.data(), t.data() + t.size(), out);
        return ec == std::errc{} && p == t.data() + t.size();
    };
    std::int64_t num = 0, den = 1;
    auto slash = s.find('/');
    if (slash == std::string_view::npos) {
        if (!read(s, num))
            return std::nullopt;
    } else if (!read(s.substr(0, slash), num) || !read(s.substr(slash + 1), den) || den == 0) {
        return std::nullopt;
    }
    return Charge(num, den);
}

struct Element {
    enum class Kind : std::uint8_t { Vertex, Face };
    Kind kind = Kind::Vertex;
    std::size_t index = 0;

    static Element vertex(Vertex v) { return {Kind::Vertex, static_cast<std::size_t>(v)}; }
    static Element face(FaceId f) { return {Kind::Face, f}; }
    bool is_vertex() const { return kind == Kind::Vertex; }

    auto operator<=>(const Element&) const = default;
};

inline std::string to_string(Element e)
{
    return (e.is_vertex() ? "v" : "f") + std::to_string(e.index);
}

inline std::optional<Element> parse_element(std::string_view s)
{
    if (s.size() < 2 || (s[0] != 'v' && s[0] != 'f'))
        return std::nullopt;
    std::size_t idx = 0;
    auto [p, ec] = std::from_chars(s.data() + 1, s.data() + s.size(), idx);
    if (ec != std::errc{} || p != s.data() + s.size())
        return std::nullopt;
    return Element{s[0] == 'v' ? Element::Kind::Vertex : Element::Kind::Face, idx};
}

struct ChargeMap {
    std::vector<Charge> vertex;
    std::vector<Charge> face;

    Charge& operator[](Element e) { return e.is_vertex() ? vertex.at(e.index) : face.at(e.index); }
    const Charge& operator[](Element e) const { return e.is_vertex() ? vertex.at(e.index) : face.at(e.index); }

    Charge total() const
    {
        Charge s = 0;
        for (const auto& c : vertex)
            s += c;
        for (const auto& c : face)
            s += c;
        return s;
    }

    bool operator==(const ChargeMap&) const = default;
};

inline constexpr int rule_count = 9;

struct Transfer {
    int rule = 0; // 1..9
    Element from;
    Element to;
    Charge amount;

    bool operator==(const Transfer&) const = default;
};

using TransferLedger = std::vector<Transfer>;

/// Isolated vertices in id order. Each one owns an empty face that the face
/// tracer does not see; its charge element is f(|F| + k) for the k-th of them.
inline std::vector<Vertex> empty_face_vertices(const EmbeddedGraph& g)
{
    std::vector<Vertex> out;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        if (g.degree(v) == 0)
            out.push_back(v);
    return out;
}

inline ChargeMap initial_charges(const EmbeddedGraph& g)
{
    ChargeMap mu;
    for (Vertex v = 0; v < static_cast<Vertex>(g.vertex_count()); ++v)
        mu.vertex.emplace_back(g.degree(v) - 4);
    for (const auto& f : g.faces())
        mu.face.emplace_back(static_cast<std::int64_t>(f.degree()) - 4);
    mu.face.resize(mu.face.size() + empty_face_vertices(g).size(), Charge(-4));
    return mu;
}

struct Discharge {
    ChargeMap final_charges;
    TransferLedger ledger;
};

inline ChargeMap replay(const ChargeMap& initial, const TransferLedger& ledger)
{
    ChargeMap out = initial;
    for (const auto& t : ledger) {
        out[t.from] -= t.amount;
        out[t.to] += t.amount;
    }
    return out;
}

/// All rules fire at once from the initial state. Guards use the input embedding.
inline Discharge apply_rules(const EmbeddedGraph& g)
{
    const auto n = static_cast<Vertex>(g.vertex_count());
    for (Vertex v = 0; v < n; ++v)
        if (g.degree(v) > 6)
            throw Error(Errc::DegreeTooHigh, "vertex " + std::to_string(v) + " has degree " +
                                                 std::to_string(g.degree(v)));
    std::vector<int> m3(n);
    for (Vertex v = 0; v < n; ++v)
        m3[v] = triangle_corners(g, v);

    const Charge third(1, 3), fifth(1, 5), ninth(1, 9), fifteenth(1, 15), two_fifteenths(2, 15);
    TransferLedger ledger;
    auto send = [&](int rule, Element from, Element to, Charge amount) { ledger.push_back({rule, from, to, amount}); };

    // R1
    for (const auto& f : g.faces())
        if (f.degree() == 3)
            for (Vertex v : f.vertices())
                send(1, Element::vertex(v), Element::face(f.id), third);

    // R2, R5, R7
    for (Vertex u = 0; u < n; ++u) {
        const int d = g.degree(u);
        Charge amount = 0;
        int rule = 0;
        if (d == 3) {
            rule = 2;
            amount = ninth;
        } else if (d == 4) {
            rule = 5;
            amount = fifteenth;
        } else if (d == 5 && m3[u] >= 4) {
            rule = 7;
            amount = two_fifteenths;
        }
        if (!rule)
            continue;
        for (Vertex w : g.rotation(u))
            if (g.degree(w) == 6 && m3[w] <= 5)
                send(rule, Element::vertex(w), Element::vertex(u), amount);
    }

    // R3, R4, R6, R8, R9: one transfer per distinct (vertex, 5+-face) pair
    for (Vertex v = 0; v < n; ++v) {
        const int d = g.degree(v);
        if (d < 3)
            continue;
        std::vector<FaceId> seen;
        for (std::size_t i = 0; i < g.rotation(v).size(); ++i) {
            FaceId fid = g.corner_face(v, i);
            const auto& f = g.face(fid);
            if (f.degree() < 5 || std::find(seen.begin(), seen.end(), fid) != seen.end())
                continue;
            seen.push_back(fid);
            const Element from = Element::face(fid), to = Element::vertex(v);
            switch (d) {
            case 3: send(3, from, to, third); break;
            case 4: send(4, from, to, fifth); break;
            case 5: send(6, from, to, fifth); break;
            case 6: {
                bool near3 = false;
                for (Vertex u : f.vertices())
                    if (g.degree(u) == 3 && g.adjacent(u, v))
                        near3 = true;
                if (near3)
                    send(9, from, to, ninth);
                else
                    send(8, from, to, fifth);
                break;
            }
            default: break;
            }
        }
    }

    std::sort(ledger.begin(), ledger.end(), [](const Transfer& a, const Transfer& b) {
        return std::tie(a.rule, a.from, a.to) < std::tie(b.rule, b.from, b.to);
    });
    Discharge out;
    out.final_charges = replay(initial_charges(g), ledger);
    out.ledger = std::move(ledger);
    return out;
}

struct ComponentTotals {
    int component = 0;
    bool has_edges = false;
    Charge initial;
    Charge final_total;

    bool operator==(const ComponentTotals&) const = default;
};

struct DischargeReport {
    ChargeMap initial;
    ChargeMap final_charges;
    TransferLedger ledger;
    std::vector<std::pair<Element, Charge>> negative_elements;
    bool conservation_ok = false;
    bool closure_ok = false;
    std::vector<ComponentTotals> components;
    // cross-reference with the reduction engine
    std::size_t match_count = 0;
    std::vector<std::string> matched_configs; // distinct ids, sorted
    std::vector<Element> unexplained;         // negative and farther than 2 from every match
    bool contradiction_ok = false;            // a negative element and a match both exist

    bool operator==(const DischargeReport&) const = default;
};

namespace detail {

/// Elements within incidence distance 2 of some match. Vertices are joined to
/// their neighbours and to the faces at their corners.
inline std::vector<char> near_matches(const EmbeddedGraph& g, const std::vector<ConfigurationMatch>& matches)
{
    const auto n = g.vertex_count();
    const auto total = n + g.faces().size() + empty_face_vertices(g).size();
    std::vector<std::vector<std::size_t>> adj(total);
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
        for (Vertex u : g.rotation(v))
            adj[v].push_back(static_cast<std::size_t>(u));
        for (std::size_t i = 0; i < g.rotation(v).size(); ++i) {
            auto f = n + g.corner_face(v, i);
            adj[v].push_back(f);
            adj[f].push_back(static_cast<std::size_t>(v));
        }
    }
    std::vector<int> dist(total, -1);
    std::deque<std::size_t> q;
    auto seed = [&](std::size_t x) {
        if (x < total && dist[x] < 0) {
            dist[x] = 0;
            q.push_back(x);
        }
    };
    for (const auto& m : matches) {
        seed(static_cast<std::size_t>(m.center));
        if (m.deleted != no_vertex)
            seed(static_cast<std::size_t>(m.deleted));
        for (const auto& [name, v] : m.bindings)
            if (v != no_vertex)
                seed(static_cast<std::size_t>(v));
        for (FaceId f : m.matched_faces)
            seed(n + f);
    }
    while (!q.empty()) {
        auto x = q.front();
        q.pop_front();
        if (dist[x] == 2)
            continue;
        for (auto y : adj[x])
            if (dist[y] < 0) {
                dist[y] = dist[x] + 1;
                q.push_back(y);
            }
    }
    std::vector<char> near(total);
    for (std::size_t x = 0; x < total; ++x)
        near[x] = dist[x] >= 0;
    return near;
}

} // namespace detail

inline DischargeReport audit(const EmbeddedGraph& g)
{
    DischargeReport r;
    auto run = apply_rules(g);
    r.initial = initial_charges(g);
    r.final_charges = std::move(run.final_charges);
    r.ledger = std::move(run.ledger);
    r.closure_ok = replay(r.initial, r.ledger) == r.final_charges;

    const auto n = g.vertex_count();
    const auto comp = g.components();
    const int count = comp.empty() ? 0 : *std::max_element(comp.begin(), comp.end()) + 1;
    r.components.resize(count);
    for (int c = 0; c < count; ++c)
        r.components[c].component = c;
    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v) {
        auto& t = r.components[comp[v]];
        t.initial += r.initial.vertex[v];
        t.final_total += r.final_charges.vertex[v];
        if (g.degree(v) > 0)
            t.has_edges = true;
    }
    std::vector<Vertex> face_owner;
    for (const auto& f : g.faces())
        face_owner.push_back(f.boundary.front().tail);
    for (Vertex v : empty_face_vertices(g))
        face_owner.push_back(v);
    for (std::size_t f = 0; f < face_owner.size(); ++f) {
        auto& t = r.components[comp[face_owner[f]]];
        t.initial += r.initial.face[f];
        t.final_total += r.final_charges.face[f];
    }
    r.conservation_ok = r.closure_ok && r.initial.total() == r.final_charges.total();
    for (const auto& t : r.components)
        if (t.initial != t.final_total || t.initial != Charge(-8))
            r.conservation_ok = false;

    for (Vertex v = 0; v < static_cast<Vertex>(n); ++v)
        if (r.final_charges.vertex[v] < Charge(0))
            r.negative_elements.emplace_back(Element::vertex(v), r.final_charges.vertex[v]);
    for (std::size_t f = 0; f < r.final_charges.face.size(); ++f)
        if (r.final_charges.face[f] < Charge(0))
            r.negative_elements.emplace_back(Element::face(f), r.final_charges.face[f]);

    const auto matches = detect_all(g);
    r.match_count = matches.size();
    for (const auto& m : matches)
        r.matched_configs.push_back(m.id());
    std::sort(r.matched_configs.begin(), r.matched_configs.end());
    r.matched_configs.erase(std::unique(r.matched_configs.begin(), r.matched_configs.end()), r.matched_configs.end());
    const auto near = detail::near_matches(g, matches);
    for (const auto& [e, c] : r.negative_elements)
        if (!near[e.is_vertex() ? e.index : n + e.index])
            r.unexplained.push_back(e);
    r.contradiction_ok = !r.negative_elements.empty() && !matches.empty();
    return r;
}

/// One row per element: initial, the net change under each rule, final.
inline std::string format_table(const DischargeReport& r)
{
    std::map<Element, std::array<Charge, rule_count>> delta;
    for (const auto& t : r.ledger) {
        delta[t.from][t.rule - 1] -= t.amount;
        delta[t.to][t.rule - 1] += t.amount;
    }
    std::ostringstream os;
    auto cell = [&](const std::string& s, int w) { os << std::setw(w) << s; };
    cell("element", 8);
    cell("initial", 8);
    for (int k = 1; k <= rule_count; ++k)
        cell("R" + std::to_string(k), 7);
    cell("final", 8);
    os << '\n';
    auto row = [&](Element e, const Charge& init, const Charge& fin) {
        cell(to_string(e), 8);
        cell(to_string(init), 8);
        auto it = delta.find(e);
        for (int k = 0; k < rule_count; ++k) {
            if (it == delta.end() || it->second[k].numerator() == 0)
                cell(".", 7);
            else
                cell(to_string(it->second[k]), 7);
        }
        cell(to_string(fin), 8);
        os << '\n';
    };
    for (std::size_t v = 0; v < r.initial.vertex.size(); ++v)
        row(Element::vertex(static_cast<Vertex>(v)), r.initial.vertex[v], r.final_charges.vertex[v]);
    for (std::size_t f = 0; f < r.initial.face.size(); ++f)
        row(Element::face(f), r.initial.face[f], r.final_charges.face[f]);
    os << "total " << to_string(r.initial.total()) << " -> " << to_string(r.final_charges.total())
       << (r.conservation_ok ? " (conserved)" : " (NOT conserved)") << '\n';
    os << "negative elements: " << r.negative_elements.size() << ", matches: " << r.match_count;
    if (!r.matched_configs.empty()) {
        os << " (";
        for (std::size_t i = 0; i < r.matched_configs.size(); ++i)
            os << (i ? " " : "") << r.matched_configs[i];
        os << ")";
    }
    os << ", unexplained: " << r.unexplained.size() << '\n';
    return os.str();
}

} // namespace dist2
