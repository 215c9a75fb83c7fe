#ifndef sbk_stats_hpp
#define sbk_stats_hpp

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "sbk/graph.hpp"
#include "sbk/superbubble_types.hpp"

namespace sbk {

// Size buckets: 2, 3-9, 10-19, 20-29, 30-39, 40-49, 50-59, 60+.
struct SizeHistogram {
    static constexpr std::size_t kBuckets = 8;
    std::array<std::uint64_t, kBuckets> counts{};

    static const char* bucket_name(std::size_t bucket);
    static std::size_t bucket_of(std::size_t size);
    std::uint64_t total() const;
};

SizeHistogram size_histogram(const std::vector<Superbubble>& bubbles);

struct PathExtremes {
    std::uint64_t shortest = 0;
    std::uint64_t longest = 0;

    double ratio() const { return static_cast<double>(longest) / static_cast<double>(shortest); }
};

// Shortest and longest entrance-to-exit path lengths inside the superbubble,
// by dynamic programming over a topological order of the induced subgraph.
// An edge contributes its label length, or 1 if unlabeled; parallel edges
// are relaxed individually.
PathExtremes path_length_extremes(const DirectedMultigraph& g, const Superbubble& sb);

struct BubbleMetrics {
    std::size_t size = 0;
    PathExtremes extremes;
};

struct RatioSummary {
    std::uint64_t qualifying = 0;  // ratio below the threshold
    std::uint64_t total = 0;       // bubbles of at least min_size
    double fraction = 0.0;         // qualifying / total, 0 when total is 0
};

RatioSummary ratio_classification(const std::vector<BubbleMetrics>& metrics,
                                  double threshold = 1.05, std::size_t min_size = 5);

struct SuperbubbleReport {
    std::size_t vertices = 0;
    std::size_t edges = 0;
    std::uint64_t superbubble_count = 0;
    SizeHistogram histogram;
    RatioSummary ratios;
    double ratio_threshold = 1.05;
    std::size_t ratio_min_size = 5;
    std::uint64_t visited_total = 0;
    double wall_time_seconds = 0.0;
};

SuperbubbleReport build_report(const DirectedMultigraph& g,
                               const std::vector<Superbubble>& bubbles,
                               std::uint64_t visited_total, double wall_time_seconds,
                               double threshold = 1.05, std::size_t min_size = 5);

std::string report_to_json(const SuperbubbleReport& report);

}

#endif
