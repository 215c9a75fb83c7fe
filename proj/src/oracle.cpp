#include "sbk/oracle.hpp"

#include <algorithm>
#include <deque>
#include <map>

#include "sbk/error.hpp"

namespace sbk {

namespace {

// Shared BFS. A vertex in `barriers` is included when reached but its
// outgoing (forward) or incoming (backward) edges are not followed, so no
// path is extended through it.
std::set<VertexId> reach(const DirectedMultigraph& g, const std::vector<VertexId>& starts,
                         const std::set<VertexId>& barriers, Direction dir) {
    std::set<VertexId> result;
    std::deque<VertexId> queue;
    for (VertexId s : starts) {
        if (result.insert(s).second && !barriers.count(s)) queue.push_back(s);
    }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        auto span = dir == Direction::forward ? g.out_edges(v) : g.in_edges(v);
        for (EdgeId e : span) {
            VertexId u = dir == Direction::forward ? g.edge(e).target : g.edge(e).source;
            if (result.insert(u).second && !barriers.count(u)) queue.push_back(u);
        }
    }
    return result;
}

bool induced_subgraph_is_dag(const DirectedMultigraph& g, const std::set<VertexId>& u_set) {
    // Kahn's algorithm restricted to edges with both endpoints in the set.
    std::map<VertexId, std::size_t> indeg;
    for (VertexId v : u_set) indeg[v] = 0;
    for (VertexId v : u_set) {
        for (EdgeId e : g.out_edges(v)) {
            VertexId w = g.edge(e).target;
            if (u_set.count(w)) ++indeg[w];
        }
    }
    std::deque<VertexId> queue;
    for (auto& [v, d] : indeg) {
        if (d == 0) queue.push_back(v);
    }
    std::size_t processed = 0;
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        ++processed;
        for (EdgeId e : g.out_edges(v)) {
            VertexId w = g.edge(e).target;
            if (u_set.count(w) && --indeg[w] == 0) queue.push_back(w);
        }
    }
    return processed == u_set.size();
}

// The first three conditions only; minimality is defined in terms of them.
bool passes_first_three(const DirectedMultigraph& g, VertexId s, VertexId t) {
    if (!reachable_from(g, s).count(t)) return false;
    auto to_set = reachable_without_passing(g, s, t, Direction::forward);
    auto from_set = reachable_without_passing(g, t, s, Direction::backward);
    if (to_set != from_set) return false;
    return induced_subgraph_is_dag(g, to_set);
}

}

std::set<VertexId> reachable_without_passing(const DirectedMultigraph& g, VertexId start,
                                             VertexId barrier, Direction dir) {
    if (start >= g.vertex_count() || barrier >= g.vertex_count()) {
        throw UsageError("vertex id out of range");
    }
    if (start == barrier) throw UsageError("start and barrier must differ");
    return reach(g, {start}, {barrier}, dir);
}

std::set<VertexId> reachable_from(const DirectedMultigraph& g, VertexId start) {
    if (start >= g.vertex_count()) throw UsageError("vertex id out of range");
    return reach(g, {start}, {}, Direction::forward);
}

SuperbubbleCheck check_superbubble(const DirectedMultigraph& g, VertexId s, VertexId t) {
    if (s >= g.vertex_count() || t >= g.vertex_count()) {
        throw UsageError("vertex id out of range");
    }
    if (s == t) throw UsageError("entrance and exit must differ");

    SuperbubbleCheck result;
    result.reachability = reachable_from(g, s).count(t) > 0;

    auto to_set = reachable_without_passing(g, s, t, Direction::forward);
    auto from_set = reachable_without_passing(g, t, s, Direction::backward);
    result.vertex_set = to_set;
    result.matching = (to_set == from_set);
    result.acyclicity = induced_subgraph_is_dag(g, to_set);

    // Minimal means no other vertex of the set closes a valid region with s
    // on its own; each candidate is re-checked against the first three
    // conditions from scratch.
    result.minimality = true;
    for (VertexId cand : to_set) {
        if (cand == s || cand == t) continue;
        if (passes_first_three(g, s, cand)) {
            result.minimality = false;
            break;
        }
    }
    return result;
}

std::vector<Superbubble> enumerate_brute_force(const DirectedMultigraph& g,
                                               std::size_t max_vertices) {
    if (g.vertex_count() > max_vertices) {
        throw UsageError("graph has " + std::to_string(g.vertex_count()) +
                         " vertices; brute-force enumeration is capped at " +
                         std::to_string(max_vertices));
    }
    std::vector<Superbubble> found;
    for (VertexId s = 0; s < g.vertex_count(); ++s) {
        for (VertexId t = 0; t < g.vertex_count(); ++t) {
            if (s == t) continue;
            auto check = check_superbubble(g, s, t);
            if (!check.ok()) continue;
            Superbubble sb;
            sb.entrance = s;
            sb.exit = t;
            for (VertexId v : check.vertex_set) {
                if (v != s && v != t) sb.interior.push_back(v);
            }
            found.push_back(std::move(sb));
        }
    }
    std::sort(found.begin(), found.end());
    return found;
}

}
