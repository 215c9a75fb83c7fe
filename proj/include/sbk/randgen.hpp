#ifndef sbk_randgen_hpp
#define sbk_randgen_hpp

#include <cstdint>
#include <string>
#include <vector>

#include "sbk/graph.hpp"
#include "sbk/superbubble_types.hpp"

namespace sbk {

/*
 * Small, fast, splittable generator. Trial i of a simulation derives its own
 * stream from (master seed, i), so results are independent of how trials are
 * distributed over threads.
 */
class SplitMix64 {
public:
    explicit SplitMix64(std::uint64_t seed) : state_(seed) {}

    std::uint64_t next() {
        std::uint64_t z = (state_ += 0x9E3779B97F4A7C15ULL);
        z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
        z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
        return z ^ (z >> 31);
    }

    // Uniform in [0, 1).
    double next_double() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

    // Uniform in [0, bound).
    std::uint64_t next_below(std::uint64_t bound);

private:
    std::uint64_t state_;
};

SplitMix64 derive_stream(std::uint64_t master_seed, std::uint64_t index);

// Branching process: a vertex is fertile with probability p, and a fertile
// vertex has i children with probability child_dist[i]. The mean number of
// children per vertex is r = p * sum(i * child_dist[i]).
struct BranchingModel {
    double p = 0.0;
    std::vector<double> child_dist;
    double r = 0.0;
};

BranchingModel make_branching_model(double p, std::vector<double> child_dist);

// Checks p and child_dist are proper probabilities and that the stored r
// agrees with the one recomputed from them (1e-9 slack).
void validate_model(const BranchingModel& model);

// 1 / (1 - r) for r < 1, +infinity otherwise.
double expected_tree_size(const BranchingModel& model);

struct GwOutcome {
    std::uint64_t size = 0;
    bool truncated = false;  // the tree hit max_nodes and was cut off
};

GwOutcome simulate_gw_tree(const BranchingModel& model, SplitMix64& rng,
                           std::uint64_t max_nodes = 10'000'000);

struct GwTrialStats {
    std::uint64_t trials = 0;
    std::uint64_t truncated = 0;  // excluded from mean and variance
    double mean = 0.0;
    double variance = 0.0;  // sample variance
    double expected = 0.0;  // closed-form 1/(1-r)
};

// Monte-Carlo over `trials` independent trees. Sums are accumulated in
// integers, so the result is identical for any thread count.
GwTrialStats run_gw_trials(const BranchingModel& model, std::uint64_t trials,
                           std::uint64_t seed, std::uint64_t max_nodes = 10'000'000,
                           unsigned threads = 1);

// Reads the branching parameters off a graph: p is the fraction of vertices
// with indegree exactly 1, child_dist[i] the fraction with outdegree i.
BranchingModel estimate_model_from_graph(const DirectedMultigraph& g);

// --- synthetic graphs -------------------------------------------------

// One planted region: a layered DAG between a fresh entrance and exit.
// Several sizes in one entry share boundary vertices (the exit of one region
// is the entrance of the next). Sizes count entrance + interior + exit.
struct PlantedBubbleSpec {
    std::vector<std::uint32_t> sizes;
    std::uint32_t skip_edges = 0;  // extra layer-skipping edges per region
};

struct PlantedGraphSpec {
    std::uint64_t seed = 0;
    std::uint32_t junctions = 0;  // background vertices between regions
    // fanout_weights[i] ~ probability a junction wires i forward targets
    std::vector<double> fanout_weights = {0.0, 0.5, 0.35, 0.15};
    double terminal_exit_prob = 0.15;  // chance a region exit attaches nowhere
    std::vector<PlantedBubbleSpec> bubbles;
};

struct PlantedGraph {
    DirectedMultigraph graph;
    std::vector<Superbubble> ground_truth;  // sorted by entrance
};

// Builds a graph in which the planted regions are, provably, the only
// superbubbles. The background is wired so that no vertex pair outside the
// planted regions can satisfy the matching condition: every junction carries
// a private childless escape vertex that shows up on the forward side of any
// candidate pair but can never appear on the backward side.
PlantedGraph generate_planted_graph(const PlantedGraphSpec& spec);

PlantedGraphSpec planted_spec_from_json(const std::string& json_text);

// Sparse random graph with a degree profile resembling a compacted read
// graph: most vertices pass through, some branch, some terminate. Estimated
// branching mean stays comfortably below 1.
DirectedMultigraph generate_unipath_like(std::size_t n, std::uint64_t seed);

}

#endif
