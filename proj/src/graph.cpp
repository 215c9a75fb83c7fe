#include "sbk/graph.hpp"

#include <algorithm>
#include <fstream>
#include <istream>
#include <limits>
#include <ostream>
#include <sstream>

#include "sbk/error.hpp"

namespace sbk {

namespace {

bool valid_label(const std::string& label) {
    for (char c : label) {
        if (c != 'A' && c != 'C' && c != 'G' && c != 'T') return false;
    }
    return true;
}

}

DirectedMultigraph::DirectedMultigraph(std::size_t vertex_count, std::vector<Edge> edges)
    : vertex_count_(vertex_count), edges_(std::move(edges)) {
    if (vertex_count_ > std::numeric_limits<VertexId>::max()) {
        throw UsageError("vertex count too large");
    }
    if (edges_.size() > std::numeric_limits<EdgeId>::max()) {
        throw UsageError("edge count too large");
    }
    for (const Edge& e : edges_) {
        if (e.source >= vertex_count_ || e.target >= vertex_count_) {
            throw UsageError("edge endpoint out of range");
        }
        if (!valid_label(e.label)) {
            throw UsageError("edge label contains characters outside ACGT");
        }
    }

    // Counting sort by endpoint keeps per-vertex lists in insertion order.
    out_offsets_.assign(vertex_count_ + 1, 0);
    in_offsets_.assign(vertex_count_ + 1, 0);
    for (const Edge& e : edges_) {
        ++out_offsets_[e.source + 1];
        ++in_offsets_[e.target + 1];
    }
    for (std::size_t v = 0; v < vertex_count_; ++v) {
        out_offsets_[v + 1] += out_offsets_[v];
        in_offsets_[v + 1] += in_offsets_[v];
    }
    out_ids_.resize(edges_.size());
    in_ids_.resize(edges_.size());
    std::vector<std::uint32_t> out_pos(out_offsets_.begin(), out_offsets_.end() - 1);
    std::vector<std::uint32_t> in_pos(in_offsets_.begin(), in_offsets_.end() - 1);
    for (EdgeId e = 0; e < edges_.size(); ++e) {
        out_ids_[out_pos[edges_[e].source]++] = e;
        in_ids_[in_pos[edges_[e].target]++] = e;
    }
}

void DirectedMultigraph::check_vertex(VertexId v) const {
    if (v >= vertex_count_) {
        throw UsageError("vertex id " + std::to_string(v) + " out of range (vertex count " +
                         std::to_string(vertex_count_) + ")");
    }
}

std::span<const EdgeId> DirectedMultigraph::out_edges(VertexId v) const {
    check_vertex(v);
    return {out_ids_.data() + out_offsets_[v], out_ids_.data() + out_offsets_[v + 1]};
}

std::span<const EdgeId> DirectedMultigraph::in_edges(VertexId v) const {
    check_vertex(v);
    return {in_ids_.data() + in_offsets_[v], in_ids_.data() + in_offsets_[v + 1]};
}

std::vector<VertexId> DirectedMultigraph::children(VertexId v) const {
    std::vector<VertexId> result;
    auto span = out_edges(v);
    result.reserve(span.size());
    for (EdgeId e : span) result.push_back(edges_[e].target);
    return result;
}

std::vector<VertexId> DirectedMultigraph::parents(VertexId v) const {
    std::vector<VertexId> result;
    auto span = in_edges(v);
    result.reserve(span.size());
    for (EdgeId e : span) result.push_back(edges_[e].source);
    return result;
}

bool DirectedMultigraph::has_edge(VertexId u, VertexId v) const {
    check_vertex(u);
    check_vertex(v);
    // Scan whichever endpoint has the shorter list.
    if (outdeg(u) <= indeg(v)) {
        for (EdgeId e : out_edges(u)) {
            if (edges_[e].target == v) return true;
        }
    } else {
        for (EdgeId e : in_edges(v)) {
            if (edges_[e].source == u) return true;
        }
    }
    return false;
}

DirectedMultigraph read_edge_list(std::istream& in) {
    std::vector<Edge> edges;
    bool have_header = false;
    std::size_t header_count = 0;
    VertexId max_id = 0;
    bool any_vertex = false;

    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        if (line[0] == '#') {
            std::istringstream hs(line.substr(1));
            std::string word;
            if (hs >> word && word == "vertices") {
                long long n = -1;
                if (!(hs >> n) || n < 0) {
                    throw InputError("line " + std::to_string(line_no) + ": bad vertex count header");
                }
                have_header = true;
                header_count = static_cast<std::size_t>(n);
            }
            continue;
        }
        std::istringstream ls(line);
        long long u = -1, v = -1;
        std::string label;
        if (!(ls >> u >> v) || u < 0 || v < 0 ||
            u > std::numeric_limits<VertexId>::max() || v > std::numeric_limits<VertexId>::max()) {
            throw InputError("line " + std::to_string(line_no) + ": expected \"u<TAB>v[<TAB>label]\"");
        }
        ls >> label;  // optional third column
        std::string extra;
        if (ls >> extra) {
            throw InputError("line " + std::to_string(line_no) + ": trailing fields");
        }
        if (!valid_label(label)) {
            throw InputError("line " + std::to_string(line_no) + ": label not over ACGT");
        }
        edges.push_back({static_cast<VertexId>(u), static_cast<VertexId>(v), std::move(label)});
        max_id = std::max({max_id, edges.back().source, edges.back().target});
        any_vertex = true;
    }

    std::size_t n = have_header ? header_count : (any_vertex ? static_cast<std::size_t>(max_id) + 1 : 0);
    if (have_header && any_vertex && static_cast<std::size_t>(max_id) >= header_count) {
        throw InputError("edge references vertex " + std::to_string(max_id) +
                         " but header declares " + std::to_string(header_count) + " vertices");
    }
    return DirectedMultigraph(n, std::move(edges));
}

DirectedMultigraph read_edge_list_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    return read_edge_list(in);
}

void write_edge_list(const DirectedMultigraph& g, std::ostream& out) {
    out << "#vertices " << g.vertex_count() << '\n';
    for (const Edge& e : g.edges()) {
        out << e.source << '\t' << e.target;
        if (!e.label.empty()) out << '\t' << e.label;
        out << '\n';
    }
}

void write_edge_list_file(const DirectedMultigraph& g, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    write_edge_list(g, out);
    if (!out) throw InputError("write failed: " + path);
}

namespace {

constexpr char kMagic[4] = {'S', 'B', 'G', '1'};

template <typename T>
void put(std::ostream& out, T value) {
    unsigned char buf[sizeof(T)];
    for (std::size_t i = 0; i < sizeof(T); ++i) buf[i] = static_cast<unsigned char>(value >> (8 * i));
    out.write(reinterpret_cast<const char*>(buf), sizeof(T));
}

template <typename T>
T get(std::istream& in) {
    unsigned char buf[sizeof(T)];
    in.read(reinterpret_cast<char*>(buf), sizeof(T));
    if (!in) throw InputError("truncated binary graph");
    T value = 0;
    for (std::size_t i = 0; i < sizeof(T); ++i) value |= static_cast<T>(buf[i]) << (8 * i);
    return value;
}

}

void write_graph_binary(const DirectedMultigraph& g, std::ostream& out) {
    out.write(kMagic, 4);
    put<std::uint64_t>(out, g.vertex_count());
    put<std::uint64_t>(out, g.edge_count());
    for (const Edge& e : g.edges()) {
        put<std::uint32_t>(out, e.source);
        put<std::uint32_t>(out, e.target);
        put<std::uint32_t>(out, static_cast<std::uint32_t>(e.label.size()));
        out.write(e.label.data(), static_cast<std::streamsize>(e.label.size()));
    }
}

DirectedMultigraph read_graph_binary(std::istream& in) {
    char magic[4];
    in.read(magic, 4);
    if (!in || !std::equal(magic, magic + 4, kMagic)) {
        throw InputError("missing SBG1 magic");
    }
    auto n = get<std::uint64_t>(in);
    auto m = get<std::uint64_t>(in);
    std::vector<Edge> edges;
    edges.reserve(m);
    for (std::uint64_t i = 0; i < m; ++i) {
        Edge e;
        e.source = get<std::uint32_t>(in);
        e.target = get<std::uint32_t>(in);
        auto len = get<std::uint32_t>(in);
        e.label.resize(len);
        in.read(e.label.data(), len);
        if (!in) throw InputError("truncated binary graph");
        edges.push_back(std::move(e));
    }
    return DirectedMultigraph(n, std::move(edges));
}

DirectedMultigraph read_graph_auto(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw InputError("cannot open " + path);
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    in.clear();
    in.seekg(0);
    if (in.gcount() == 4 && std::equal(magic, magic + 4, kMagic)) {
        return read_graph_binary(in);
    }
    return read_edge_list(in);
}

void write_graph_auto(const DirectedMultigraph& g, const std::string& path) {
    if (path.size() >= 4 && path.compare(path.size() - 4, 4, ".sbg") == 0) {
        std::ofstream out(path, std::ios::binary);
        if (!out) throw InputError("cannot open " + path + " for writing");
        write_graph_binary(g, out);
        if (!out) throw InputError("write failed: " + path);
    } else {
        write_edge_list_file(g, path);
    }
}

void write_name_table(const std::vector<std::string>& names, const std::string& path) {
    std::ofstream out(path);
    if (!out) throw InputError("cannot open " + path + " for writing");
    for (std::size_t i = 0; i < names.size(); ++i) {
        out << i << '\t' << names[i] << '\n';
    }
    if (!out) throw InputError("write failed: " + path);
}

std::vector<std::string> read_name_table(const std::string& path, std::size_t expected_size) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open " + path);
    std::vector<std::string> names(expected_size);
    std::vector<bool> seen(expected_size, false);
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty() || line[0] == '#') continue;
        std::istringstream ls(line);
        long long id = -1;
        std::string name;
        if (!(ls >> id >> name) || id < 0 || static_cast<std::size_t>(id) >= expected_size) {
            throw InputError(path + " line " + std::to_string(line_no) + ": bad name table row");
        }
        names[static_cast<std::size_t>(id)] = name;
        seen[static_cast<std::size_t>(id)] = true;
    }
    for (std::size_t i = 0; i < expected_size; ++i) {
        if (!seen[i]) throw InputError(path + ": missing name for vertex " + std::to_string(i));
    }
    return names;
}

}
