#ifndef sbk_pipeline_hpp
#define sbk_pipeline_hpp

#include <cstdint>
#include <iosfwd>
#include <string>
#include <vector>

#include "sbk/stats.hpp"
#include "sbk/superbubble_types.hpp"

namespace sbk {

// Superbubble lists travel between stages as TSV:
//   entrance<TAB>exit<TAB>size<TAB>interior
// with interior comma-separated ("-" when empty) and an optional
// "#visited N" comment carrying the detection effort forward.
void write_superbubbles_tsv(const std::vector<Superbubble>& bubbles, std::uint64_t visited,
                            std::ostream& out);
void write_superbubbles_tsv(const std::vector<Superbubble>& bubbles, std::uint64_t visited,
                            const std::string& path);

struct SuperbubbleFile {
    std::vector<Superbubble> bubbles;
    std::uint64_t visited = 0;
};

SuperbubbleFile read_superbubbles_tsv(const std::string& path);

// Each stage reads and writes files only, so chaining them by hand equals
// running the pipeline; artifacts are byte-identical either way.

struct BuildGraphSummary {
    std::size_t reads = 0;
    std::uint64_t kmers = 0;   // windows counted
    std::size_t solid = 0;     // distinct k-mers at or above d
    std::size_t vertices = 0;
    std::size_t edges = 0;
};

BuildGraphSummary stage_build_graph(const std::string& reads_path, int k, std::uint32_t d,
                                    bool canonical, unsigned threads,
                                    const std::string& out_path);

struct CompactSummary {
    std::size_t vertices = 0;
    std::size_t edges = 0;
};

CompactSummary stage_compact(const std::string& in_path, const std::string& out_path);

struct DetectSummary {
    std::uint64_t superbubbles = 0;
    std::uint64_t visited = 0;
    double wall_seconds = 0.0;  // logged, never written into artifacts
};

DetectSummary stage_find_superbubbles(const std::string& in_path, std::size_t min_size,
                                      unsigned threads, const std::string& out_path);

SuperbubbleReport compute_stats(const std::string& graph_path, const std::string& bubbles_path,
                                double threshold, std::size_t min_size);

SuperbubbleReport stage_stats(const std::string& graph_path, const std::string& bubbles_path,
                              double threshold, std::size_t min_size,
                              const std::string& out_path);

struct PipelineConfig {
    std::string reads_path;
    std::string workdir;
    int k = 27;
    std::uint32_t d = 3;
    bool canonical = false;
    std::size_t min_size = 2;
    double ratio_threshold = 1.05;
    std::size_t ratio_min_size = 5;
    unsigned threads = 1;
};

void validate_config(const PipelineConfig& config);

struct PipelineResult {
    BuildGraphSummary build;
    CompactSummary compact;
    DetectSummary detect;
    SuperbubbleReport report;
    std::string graph_path;
    std::string unipath_path;
    std::string superbubbles_path;
    std::string report_path;
};

// build-graph -> compact -> find-superbubbles -> stats, leaving each stage's
// artifact in the work directory.
PipelineResult run_pipeline(const PipelineConfig& config);

}

#endif
