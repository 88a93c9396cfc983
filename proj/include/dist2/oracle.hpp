#pragma once

// Brute-force ground truth. Nothing here reuses the neighbourhood or square
// code of the other modules.

#include "coloring.hpp"
#include "graph.hpp"

#include <bit>
#include <cstdint>
#include <deque>
#include <set>

namespace dist2::oracle {

using Pair = std::pair<Vertex, Vertex>;

/// Unordered pairs (u < w) at distance 1 or 2, by breadth-first search from every vertex.
inline std::set<Pair> distances_le2(const EmbeddedGraph& g)
{
    std::set<Pair> out;
    const auto n = g.vertex_count();
    std::vector<int> dist(n);
    for (Vertex s = 0; s < static_cast<Vertex>(n); ++s) {
        std::fill(dist.begin(), dist.end(), -1);
        std::deque<Vertex> q{s};
        dist[s] = 0;
        while (!q.empty()) {
            Vertex x = q.front();
            q.pop_front();
            if (dist[x] == 2)
                continue;
            for (Vertex y : g.rotation(x))
                if (dist[y] < 0) {
                    dist[y] = dist[x] + 1;
                    q.push_back(y);
                }
        }
        for (Vertex t = s + 1; t < static_cast<Vertex>(n); ++t)
            if (dist[t] == 1 || dist[t] == 2)
                out.emplace(s, t);
    }
    return out;
}

struct ExactResult {
    int chi2 = 0;
    Coloring witness;
    std::uint64_t nodes_explored = 0;
};

struct ExactOptions {
    int upper_bound = 20;
    std::size_t vertex_limit = 16;
    std::uint64_t node_budget = 200'000'000;
};

namespace detail {

class SquareSearch {
public:
    SquareSearch(std::vector<std::uint64_t> adj, std::uint64_t budget)
        : adj_(std::move(adj))
        , n_(static_cast<int>(adj_.size()))
        , budget_(budget)
        , color_(adj_.size(), 0)
    {
    }

    std::vector<int> greedy_clique() const
    {
        std::vector<int> best;
        for (int s = 0; s < n_; ++s) {
            std::vector<int> clique{s};
            std::uint64_t cand = adj_[s];
            while (cand) {
                int pick = -1, pick_deg = -1;
                for (std::uint64_t c = cand; c; c &= c - 1) {
                    int v = std::countr_zero(c);
                    int deg = std::popcount(adj_[v] & cand);
                    if (deg > pick_deg) {
                        pick = v;
                        pick_deg = deg;
                    }
                }
                clique.push_back(pick);
                cand &= adj_[pick];
            }
            if (clique.size() > best.size())
                best = clique;
        }
        return best;
    }

    /// Tries to color with k colors; the clique is fixed to colors 1..|clique|.
    bool solve(int k, const std::vector<int>& clique)
    {
        std::fill(color_.begin(), color_.end(), 0);
        for (std::size_t i = 0; i < clique.size(); ++i)
            color_[clique[i]] = static_cast<int>(i) + 1;
        return extend(k, static_cast<int>(clique.size()));
    }

    const std::vector<int>& colors() const { return color_; }
    std::uint64_t nodes() const { return nodes_; }
    bool exhausted() const { return nodes_ > budget_; }

private:
    bool extend(int k, int used)
    {
        if (++nodes_ > budget_)
            return false;
        int pick = -1, pick_sat = -1, pick_deg = -1;
        for (int v = 0; v < n_; ++v) {
            if (color_[v])
                continue;
            std::uint64_t seen = 0;
            for (std::uint64_t c = adj_[v]; c; c &= c - 1)
                if (int col = color_[std::countr_zero(c)])
                    seen |= std::uint64_t{1} << col;
            int sat = std::popcount(seen);
            int deg = std::popcount(adj_[v]);
            if (sat > pick_sat || (sat == pick_sat && deg > pick_deg)) {
                pick = v;
                pick_sat = sat;
                pick_deg = deg;
            }
        }
        if (pick < 0)
            return true;
        std::uint64_t seen = 0;
        for (std::uint64_t c = adj_[pick]; c; c &= c - 1)
            if (int col = color_[std::countr_zero(c)])
                seen |= std::uint64_t{1} << col;
        const int top = std::min(k, used + 1);
        for (int col = 1; col <= top; ++col) {
            if (seen >> col & 1)
                continue;
            color_[pick] = col;
            if (extend(k, std::max(used, col)))
                return true;
            if (exhausted())
                break;
        }
        color_[pick] = 0;
        return false;
    }

    std::vector<std::uint64_t> adj_;
    int n_;
    std::uint64_t budget_;
    std::uint64_t nodes_ = 0;
    std::vector<int> color_;
};

} // namespace detail

/// Exact 2-distance chromatic number by branch and bound on the square graph.
inline ExactResult chi2_exact(const EmbeddedGraph& g, const ExactOptions& opt = {})
{
    const auto n = g.vertex_count();
    if (n > opt.vertex_limit || n > 63)
        throw Error(Errc::TooLarge, std::to_string(n) + " vertices exceeds the limit of " +
                                        std::to_string(std::min<std::size_t>(opt.vertex_limit, 63)));
    ExactResult res;
    res.witness = Coloring(n, opt.upper_bound);
    if (n == 0)
        return res;
    std::vector<std::uint64_t> adj(n, 0);
    for (auto [a, b] : distances_le2(g)) {
        adj[a] |= std::uint64_t{1} << b;
        adj[b] |= std::uint64_t{1} << a;
    }
    detail::SquareSearch search(adj, opt.node_budget);
    const auto clique = search.greedy_clique();
    for (int k = static_cast<int>(clique.size()); k <= opt.upper_bound; ++k) {
        if (search.solve(k, clique)) {
            res.chi2 = k;
            res.witness.assignment = search.colors();
            res.nodes_explored += search.nodes();
            return res;
        }
        res.nodes_explored += search.nodes();
        if (search.exhausted())
            throw Error(Errc::Timeout, "search budget exhausted while testing " + std::to_string(k) + " colors");
    }
    throw Error(Errc::Infeasible, "more than " + std::to_string(opt.upper_bound) + " colors needed");
}

struct ProperResult {
    bool proper = true;
    std::optional<Pair> witness; // ids of the original graph
};

/// Whether every pair of surviving vertices at distance <= 2 in g is still at
/// distance <= 2 in reduced, where reduced is g with `deleted` removed (ids
/// compacted) and some edges added.
inline ProperResult is_proper_wrt(const EmbeddedGraph& g, const EmbeddedGraph& reduced, Vertex deleted)
{
    if (!g.valid_vertex(deleted) || reduced.vertex_count() + 1 != g.vertex_count())
        throw Error(Errc::VertexSetMismatch, "reduced graph must have exactly one vertex fewer");
    const auto after = distances_le2(reduced);
    for (auto [a, b] : distances_le2(g)) {
        if (a == deleted || b == deleted)
            continue;
        Pair mapped{shift_after_delete(a, deleted), shift_after_delete(b, deleted)};
        if (!after.contains(mapped))
            return {false, Pair{a, b}};
    }
    return {};
}

} // namespace dist2::oracle
