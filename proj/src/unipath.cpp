#include "sbk/unipath.hpp"

#include <algorithm>

#include "sbk/error.hpp"

namespace sbk {

UnipathGraph compact_graph(const DirectedMultigraph& g, const std::vector<std::string>& names) {
    if (!names.empty() && names.size() != g.vertex_count()) {
        throw UsageError("name table size does not match vertex count");
    }
    const std::size_t n = g.vertex_count();

    std::vector<bool> keep(n);
    for (VertexId v = 0; v < n; ++v) {
        keep[v] = !(g.outdeg(v) == 1 && g.indeg(v) == 1);
    }

    struct Chain {
        VertexId source, target;  // input ids
        std::string label;
        std::uint32_t length;
    };
    std::vector<Chain> chains;
    std::vector<bool> used(g.edge_count(), false);

    // Walk forward from every kept vertex, swallowing chain vertices.
    for (VertexId u = 0; u < n; ++u) {
        if (!keep[u]) continue;
        for (EdgeId first : g.out_edges(u)) {
            Chain chain{u, 0, g.edge(first).label, 1};
            used[first] = true;
            VertexId cur = g.edge(first).target;
            while (!keep[cur]) {
                EdgeId next = g.out_edges(cur)[0];
                used[next] = true;
                chain.label += g.edge(next).label;
                ++chain.length;
                cur = g.edge(next).target;
            }
            chain.target = cur;
            chains.push_back(std::move(chain));
        }
    }

    // Any edge still unused sits on a cycle made only of chain vertices.
    for (EdgeId e = 0; e < g.edge_count(); ++e) {
        if (used[e]) continue;
        VertexId rep = g.edge(e).source;
        for (VertexId cur = g.edge(e).target; cur != g.edge(e).source;
             cur = g.edge(g.out_edges(cur)[0]).target) {
            rep = std::min(rep, cur);
        }
        keep[rep] = true;
        Chain chain{rep, rep, "", 0};
        VertexId cur = rep;
        do {
            EdgeId step = g.out_edges(cur)[0];
            used[step] = true;
            chain.label += g.edge(step).label;
            ++chain.length;
            cur = g.edge(step).target;
        } while (cur != rep);
        chains.push_back(std::move(chain));
    }

    UnipathGraph result;
    std::vector<VertexId> new_id(n, 0);
    for (VertexId v = 0; v < n; ++v) {
        if (!keep[v]) continue;
        new_id[v] = static_cast<VertexId>(result.origin_ids.size());
        result.origin_ids.push_back(v);
        result.origin_names.push_back(names.empty() ? std::to_string(v) : names[v]);
    }

    std::vector<Edge> edges;
    edges.reserve(chains.size());
    result.edge_lengths.reserve(chains.size());
    for (Chain& chain : chains) {
        edges.push_back({new_id[chain.source], new_id[chain.target], std::move(chain.label)});
        result.edge_lengths.push_back(chain.length);
    }
    result.graph = DirectedMultigraph(result.origin_ids.size(), std::move(edges));
    return result;
}

UnipathGraph compact(const DeBruijnGraph& dbg) {
    return compact_graph(dbg.graph, dbg.names);
}

std::size_t edge_label_length(const UnipathGraph& g, EdgeId e) {
    if (e >= g.graph.edge_count()) throw UsageError("edge id out of range");
    return g.graph.edge(e).label.size();
}

}
