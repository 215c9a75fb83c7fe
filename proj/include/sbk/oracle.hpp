#ifndef sbk_oracle_hpp
#define sbk_oracle_hpp

#include <set>
#include <vector>

#include "sbk/graph.hpp"
#include "sbk/superbubble_types.hpp"

namespace sbk {

enum class Direction { forward, backward };

// Vertices reachable from start in the given direction, where the barrier
// vertex may be reached (and is then included) but is never expanded.
// In other words, no path continues through the barrier.
std::set<VertexId> reachable_without_passing(const DirectedMultigraph& g, VertexId start,
                                             VertexId barrier, Direction dir);

// Plain forward reachability, start included.
std::set<VertexId> reachable_from(const DirectedMultigraph& g, VertexId start);

struct SuperbubbleCheck {
    bool reachability = false;  // t reachable from s
    bool matching = false;      // forward set from s equals backward set from t
    bool acyclicity = false;    // induced subgraph on the forward set is a DAG
    bool minimality = false;    // no earlier vertex in the set also closes with s
    std::set<VertexId> vertex_set;  // the forward set (candidate superbubble vertices)

    bool ok() const { return reachability && matching && acyclicity && minimality; }
};

// Checks each defining condition of an <s,t> superbubble independently,
// by direct evaluation on the graph. Quadratic-ish and meant for small graphs.
SuperbubbleCheck check_superbubble(const DirectedMultigraph& g, VertexId s, VertexId t);

// Tries every ordered vertex pair and keeps those that pass check_superbubble.
// Refuses graphs above max_vertices since the scan is O(n^2) checks.
std::vector<Superbubble> enumerate_brute_force(const DirectedMultigraph& g,
                                               std::size_t max_vertices = 16);

}

#endif
