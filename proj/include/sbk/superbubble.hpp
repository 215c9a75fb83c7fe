#ifndef sbk_superbubble_hpp
#define sbk_superbubble_hpp

#include <cstdint>
#include <optional>
#include <vector>

#include "sbk/graph.hpp"
#include "sbk/superbubble_types.hpp"

namespace sbk {

enum class AbortReason : std::uint8_t {
    none,                // an exit was returned
    tip,                 // picked a childless vertex
    cycle,               // walked back into the entrance, or exit closes a loop
    frontier_exhausted,  // frontier emptied without closing
};

const char* abort_reason_name(AbortReason reason);

/*
 * Scratch space for exit searches. Labels are validated against a run
 * stamp instead of being cleared, so starting a run costs O(1) plus the
 * size of the previous run's frontier, not O(n). One state serves many
 * runs; concurrent runs need one state each.
 */
class DetectionState {
public:
    explicit DetectionState(std::size_t vertex_count);

    std::uint64_t total_visited() const { return total_visited_; }
    std::uint64_t run_visited() const { return run_visited_; }

    // Vertices visited by the most recent run, in visit order.
    const std::vector<VertexId>& visit_order() const { return visit_order_; }

private:
    friend struct ExitSearchAccess;

    enum : std::uint8_t { kSeen = 1, kVisited = 2 };

    void begin_run();
    std::uint8_t mark_of(VertexId v) const { return stamp_[v] == run_ ? mark_[v] : 0; }
    void set_mark(VertexId v, std::uint8_t m) {
        stamp_[v] = run_;
        mark_[v] = m;
    }

    std::vector<std::uint64_t> stamp_;
    std::vector<std::uint8_t> mark_;
    std::vector<VertexId> frontier_;  // sorted descending; lowest id sits at the back
    std::vector<VertexId> visit_order_;
    std::uint64_t run_ = 0;
    std::size_t seen_not_visited_ = 0;
    std::uint64_t run_visited_ = 0;
    std::uint64_t total_visited_ = 0;
};

struct ExitSearchResult {
    std::optional<VertexId> exit;
    AbortReason reason = AbortReason::none;
};

struct DetectionOptions {
    // Re-derives the frontier bookkeeping from scratch after every visit and
    // compares. Quadratic; only for tests on small graphs.
    bool check_invariants = false;
};

// Searches for the exit vertex paired with entrance s, expanding vertices in
// increasing id order and aborting on tips, cycles through s, or a dead
// frontier. The state's visit counters accumulate across calls.
ExitSearchResult find_exit(const DirectedMultigraph& g, VertexId s, DetectionState& state,
                           const DetectionOptions& options = {});

struct EnumerationResult {
    std::vector<Superbubble> superbubbles;  // sorted by entrance
    std::uint64_t visited_total = 0;        // picks across all runs
};

// Runs find_exit from every vertex. With threads > 1 the entrance range is
// split across workers, each with its own state; the merged result is
// identical to a sequential run.
EnumerationResult enumerate_superbubbles(const DirectedMultigraph& g, unsigned threads = 1,
                                         const DetectionOptions& options = {});

}

#endif
