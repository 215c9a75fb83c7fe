#ifndef sbk_unipath_hpp
#define sbk_unipath_hpp

#include <cstdint>
#include <string>
#include <vector>

#include "sbk/debruijn.hpp"
#include "sbk/graph.hpp"

namespace sbk {

struct UnipathGraph {
    DirectedMultigraph graph;
    std::vector<VertexId> origin_ids;        // new id -> id in the input graph
    std::vector<std::string> origin_names;   // new id -> name of that input vertex
    std::vector<std::uint32_t> edge_lengths; // per edge: input edges merged into it
};

// Collapses every maximal chain of vertices with indegree and outdegree
// exactly 1 into a single edge whose label is the concatenation of the
// chain's labels. Kept vertices are exactly those with any other degree
// pattern: branches, merges, sources, and sinks. A cycle consisting only of
// chain vertices has no kept vertex to anchor it, so its lowest-id vertex is
// kept and the cycle becomes a self-loop labeled with the full walk.
UnipathGraph compact_graph(const DirectedMultigraph& g, const std::vector<std::string>& names);

UnipathGraph compact(const DeBruijnGraph& dbg);

// Characters on an edge label.
std::size_t edge_label_length(const UnipathGraph& g, EdgeId e);

}

#endif
