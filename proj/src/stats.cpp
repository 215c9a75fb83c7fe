#include "sbk/stats.hpp"

#include <algorithm>
#include <deque>
#include <limits>
#include <unordered_map>

#include <json.hpp>

#include "sbk/error.hpp"

namespace sbk {

const char* SizeHistogram::bucket_name(std::size_t bucket) {
    static const char* names[kBuckets] = {"2",     "3-9",   "10-19", "20-29",
                                          "30-39", "40-49", "50-59", "60+"};
    return names[bucket];
}

std::size_t SizeHistogram::bucket_of(std::size_t size) {
    if (size <= 2) return 0;
    if (size <= 9) return 1;
    if (size >= 60) return 7;
    return 2 + (size - 10) / 10;
}

std::uint64_t SizeHistogram::total() const {
    std::uint64_t sum = 0;
    for (auto c : counts) sum += c;
    return sum;
}

SizeHistogram size_histogram(const std::vector<Superbubble>& bubbles) {
    SizeHistogram hist;
    for (const Superbubble& sb : bubbles) ++hist.counts[SizeHistogram::bucket_of(sb.size())];
    return hist;
}

PathExtremes path_length_extremes(const DirectedMultigraph& g, const Superbubble& sb) {
    // Dense rank for the region's vertices.
    std::unordered_map<VertexId, std::uint32_t> rank;
    std::vector<VertexId> members;
    auto add_member = [&](VertexId v) {
        if (v >= g.vertex_count()) throw UsageError("superbubble vertex out of range");
        if (rank.emplace(v, static_cast<std::uint32_t>(members.size())).second) {
            members.push_back(v);
        }
    };
    add_member(sb.entrance);
    for (VertexId v : sb.interior) add_member(v);
    add_member(sb.exit);
    if (sb.entrance == sb.exit || rank.size() != sb.interior.size() + 2) {
        throw UsageError("superbubble vertices are not distinct");
    }

    struct Arc {
        std::uint32_t from, to;
        std::uint64_t weight;
    };
    std::vector<Arc> arcs;
    std::vector<std::uint32_t> indeg(members.size(), 0);
    for (std::uint32_t i = 0; i < members.size(); ++i) {
        for (EdgeId e : g.out_edges(members[i])) {
            auto it = rank.find(g.edge(e).target);
            if (it == rank.end()) continue;
            std::uint64_t w = g.edge(e).label.empty() ? 1 : g.edge(e).label.size();
            arcs.push_back({i, it->second, w});
            ++indeg[it->second];
        }
    }

    // Topological order; a cycle here means the caller's region is not one.
    std::vector<std::vector<std::uint32_t>> out(members.size());
    for (std::uint32_t a = 0; a < arcs.size(); ++a) out[arcs[a].from].push_back(a);
    std::deque<std::uint32_t> queue;
    for (std::uint32_t i = 0; i < members.size(); ++i) {
        if (indeg[i] == 0) queue.push_back(i);
    }
    std::vector<std::uint32_t> topo;
    while (!queue.empty()) {
        std::uint32_t i = queue.front();
        queue.pop_front();
        topo.push_back(i);
        for (std::uint32_t a : out[i]) {
            if (--indeg[arcs[a].to] == 0) queue.push_back(arcs[a].to);
        }
    }
    if (topo.size() != members.size()) {
        throw InternalError("superbubble region contains a cycle");
    }

    constexpr std::uint64_t kUnset = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> shortest(members.size(), kUnset);
    std::vector<std::uint64_t> longest(members.size(), kUnset);
    shortest[rank.at(sb.entrance)] = 0;
    longest[rank.at(sb.entrance)] = 0;
    for (std::uint32_t i : topo) {
        if (shortest[i] == kUnset) continue;
        for (std::uint32_t a : out[i]) {
            const Arc& arc = arcs[a];
            shortest[arc.to] = std::min(shortest[arc.to], shortest[i] + arc.weight);
            if (longest[arc.to] == kUnset || longest[arc.to] < longest[i] + arc.weight) {
                longest[arc.to] = longest[i] + arc.weight;
            }
        }
    }
    std::uint32_t exit_rank = rank.at(sb.exit);
    if (shortest[exit_rank] == kUnset) {
        throw InternalError("exit unreachable from entrance inside the region");
    }
    return {shortest[exit_rank], longest[exit_rank]};
}

RatioSummary ratio_classification(const std::vector<BubbleMetrics>& metrics, double threshold,
                                  std::size_t min_size) {
    if (!(threshold > 0.0)) throw UsageError("ratio threshold must be positive");
    RatioSummary summary;
    for (const BubbleMetrics& m : metrics) {
        if (m.size < min_size) continue;
        ++summary.total;
        if (m.extremes.ratio() < threshold) ++summary.qualifying;
    }
    summary.fraction = summary.total == 0
                           ? 0.0
                           : static_cast<double>(summary.qualifying) /
                                 static_cast<double>(summary.total);
    return summary;
}

SuperbubbleReport build_report(const DirectedMultigraph& g,
                               const std::vector<Superbubble>& bubbles,
                               std::uint64_t visited_total, double wall_time_seconds,
                               double threshold, std::size_t min_size) {
    SuperbubbleReport report;
    report.vertices = g.vertex_count();
    report.edges = g.edge_count();
    report.superbubble_count = bubbles.size();
    report.histogram = size_histogram(bubbles);
    report.ratio_threshold = threshold;
    report.ratio_min_size = min_size;
    report.visited_total = visited_total;
    report.wall_time_seconds = wall_time_seconds;

    std::vector<BubbleMetrics> metrics;
    for (const Superbubble& sb : bubbles) {
        if (sb.size() < min_size) continue;  // extremes are only reported above the cutoff
        metrics.push_back({sb.size(), path_length_extremes(g, sb)});
    }
    report.ratios = ratio_classification(metrics, threshold, min_size);
    return report;
}

std::string report_to_json(const SuperbubbleReport& report) {
    nlohmann::json doc;
    doc["vertices"] = report.vertices;
    doc["edges"] = report.edges;
    doc["superbubbles"] = report.superbubble_count;
    nlohmann::json hist = nlohmann::json::object();
    for (std::size_t b = 0; b < SizeHistogram::kBuckets; ++b) {
        hist[SizeHistogram::bucket_name(b)] = report.histogram.counts[b];
    }
    doc["size_histogram"] = hist;
    doc["ratio"] = {{"threshold", report.ratio_threshold},
                    {"min_size", report.ratio_min_size},
                    {"qualifying", report.ratios.qualifying},
                    {"total", report.ratios.total},
                    {"fraction", report.ratios.fraction}};
    doc["visited"] = report.visited_total;
    doc["wall_time_seconds"] = report.wall_time_seconds;
    return doc.dump(2) + "\n";
}

}
