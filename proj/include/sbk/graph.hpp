#ifndef sbk_graph_hpp
#define sbk_graph_hpp

#include <cstdint>
#include <iosfwd>
#include <span>
#include <string>
#include <vector>

namespace sbk {

using VertexId = std::uint32_t;
using EdgeId = std::uint32_t;

struct Edge {
    VertexId source = 0;
    VertexId target = 0;
    std::string label;  // over {A,C,G,T}; empty for abstract graphs
};

/*
 * Immutable directed multigraph over dense vertex ids 0..n-1.
 * Self-loops and parallel edges are allowed. Edges keep their
 * insertion order; per-vertex adjacency is stored as CSR-style
 * index arrays into the edge vector, preserving insertion order,
 * so iteration is deterministic.
 */
class DirectedMultigraph {
public:
    DirectedMultigraph() = default;
    DirectedMultigraph(std::size_t vertex_count, std::vector<Edge> edges);

    std::size_t vertex_count() const { return vertex_count_; }
    std::size_t edge_count() const { return edges_.size(); }

    const Edge& edge(EdgeId e) const { return edges_[e]; }
    const std::vector<Edge>& edges() const { return edges_; }

    // Edge ids leaving / entering v, in insertion order.
    std::span<const EdgeId> out_edges(VertexId v) const;
    std::span<const EdgeId> in_edges(VertexId v) const;

    std::size_t outdeg(VertexId v) const { return out_edges(v).size(); }
    std::size_t indeg(VertexId v) const { return in_edges(v).size(); }

    // Successor / predecessor vertices with multiplicity, in stored order.
    std::vector<VertexId> children(VertexId v) const;
    std::vector<VertexId> parents(VertexId v) const;

    // True if at least one u->v edge exists.
    bool has_edge(VertexId u, VertexId v) const;

private:
    void check_vertex(VertexId v) const;

    std::size_t vertex_count_ = 0;
    std::vector<Edge> edges_;
    std::vector<std::uint32_t> out_offsets_{0};
    std::vector<EdgeId> out_ids_;
    std::vector<std::uint32_t> in_offsets_{0};
    std::vector<EdgeId> in_ids_;
};

// Text edge list: one "u<TAB>v[<TAB>label]" line per edge, '#' starts a
// comment, and an optional "#vertices N" header pins the vertex count
// (otherwise it is 1 + the largest id seen, or 0 for an empty file).
DirectedMultigraph read_edge_list(std::istream& in);
DirectedMultigraph read_edge_list_file(const std::string& path);
void write_edge_list(const DirectedMultigraph& g, std::ostream& out);
void write_edge_list_file(const DirectedMultigraph& g, const std::string& path);

// Compact binary form of the same data, magic "SBG1".
void write_graph_binary(const DirectedMultigraph& g, std::ostream& out);
DirectedMultigraph read_graph_binary(std::istream& in);

// Reads either format, sniffing the magic bytes.
DirectedMultigraph read_graph_auto(const std::string& path);
void write_graph_auto(const DirectedMultigraph& g, const std::string& path);

// Side table mapping vertex ids to display names ("id<TAB>name" lines).
void write_name_table(const std::vector<std::string>& names, const std::string& path);
std::vector<std::string> read_name_table(const std::string& path, std::size_t expected_size);

}

#endif
