#include "sbk/superbubble.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <thread>

#include "sbk/error.hpp"

namespace sbk {

const char* abort_reason_name(AbortReason reason) {
    switch (reason) {
        case AbortReason::none: return "none";
        case AbortReason::tip: return "tip";
        case AbortReason::cycle: return "cycle";
        case AbortReason::frontier_exhausted: return "frontier-exhausted";
    }
    return "?";
}

DetectionState::DetectionState(std::size_t vertex_count)
    : stamp_(vertex_count, 0), mark_(vertex_count, 0) {}

void DetectionState::begin_run() {
    ++run_;
    frontier_.clear();
    visit_order_.clear();
    seen_not_visited_ = 0;
    run_visited_ = 0;
}

// Gives find_exit access to the state internals without exposing them.
struct ExitSearchAccess {
    static ExitSearchResult search(const DirectedMultigraph& g, VertexId s, DetectionState& st,
                                   const DetectionOptions& options);
    static void check_frontier_sets(const DirectedMultigraph& g, VertexId s,
                                    const DetectionState& st);
};

namespace {

// Frontier kept sorted descending so the minimum id sits at the back.
bool frontier_insert(std::vector<VertexId>& frontier, VertexId v) {
    auto it = std::lower_bound(frontier.begin(), frontier.end(), v, std::greater<VertexId>());
    if (it != frontier.end() && *it == v) return false;
    frontier.insert(it, v);
    return true;
}

std::set<VertexId> bfs_avoiding(const DirectedMultigraph& g, const std::set<VertexId>& starts,
                                const std::set<VertexId>& blocked, bool forward) {
    std::set<VertexId> result;
    std::deque<VertexId> queue;
    for (VertexId v : starts) {
        if (result.insert(v).second && !blocked.count(v)) queue.push_back(v);
    }
    while (!queue.empty()) {
        VertexId v = queue.front();
        queue.pop_front();
        auto span = forward ? g.out_edges(v) : g.in_edges(v);
        for (EdgeId e : span) {
            VertexId u = forward ? g.edge(e).target : g.edge(e).source;
            if (result.insert(u).second && !blocked.count(u)) queue.push_back(u);
        }
    }
    return result;
}

}

ExitSearchResult ExitSearchAccess::search(const DirectedMultigraph& g, VertexId s,
                                          DetectionState& st, const DetectionOptions& options) {
    st.begin_run();
    st.set_mark(s, DetectionState::kSeen);
    st.seen_not_visited_ = 1;
    st.frontier_.push_back(s);

    while (!st.frontier_.empty()) {
        VertexId v = st.frontier_.back();
        st.frontier_.pop_back();
        st.set_mark(v, DetectionState::kVisited);
        --st.seen_not_visited_;
        ++st.run_visited_;
        ++st.total_visited_;
        st.visit_order_.push_back(v);

        if (g.outdeg(v) == 0) {
            return {std::nullopt, AbortReason::tip};
        }
        for (EdgeId e : g.out_edges(v)) {
            VertexId u = g.edge(e).target;
            if (u == s) {
                return {std::nullopt, AbortReason::cycle};
            }
            if (st.mark_of(u) == 0) {
                st.set_mark(u, DetectionState::kSeen);
                ++st.seen_not_visited_;
            }
            if (st.mark_of(u) == DetectionState::kVisited) continue;
            bool all_parents_visited = true;
            for (EdgeId pe : g.in_edges(u)) {
                if (st.mark_of(g.edge(pe).source) != DetectionState::kVisited) {
                    all_parents_visited = false;
                    break;
                }
            }
            if (all_parents_visited) {
                frontier_insert(st.frontier_, u);
            }
        }

        if (options.check_invariants) {
            check_frontier_sets(g, s, st);
        }

        if (st.frontier_.size() == 1 && st.seen_not_visited_ == 1) {
            VertexId t = st.frontier_.back();
            if (g.has_edge(t, s)) {
                return {std::nullopt, AbortReason::cycle};
            }
            return {t, AbortReason::none};
        }
    }
    return {std::nullopt, AbortReason::frontier_exhausted};
}

// After every visit the region under search is characterized two ways:
// walking forward from s while never continuing through a vertex that is
// seen-but-unvisited must reach exactly the visited and seen vertices, and
// walking backward from the visited set and frontier while never continuing
// through s must reach exactly the visited set and frontier. A mismatch
// means the bookkeeping lost track of the region boundary.
void ExitSearchAccess::check_frontier_sets(const DirectedMultigraph& g, VertexId s,
                                           const DetectionState& st) {
    std::set<VertexId> visited(st.visit_order_.begin(), st.visit_order_.end());
    std::set<VertexId> seen;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (st.mark_of(v) == DetectionState::kSeen) seen.insert(v);
    }
    std::set<VertexId> frontier(st.frontier_.begin(), st.frontier_.end());

    std::set<VertexId> expected_to = visited;
    expected_to.insert(seen.begin(), seen.end());
    auto actual_to = bfs_avoiding(g, {s}, seen, true);
    if (actual_to != expected_to) {
        throw InternalError("forward region does not match visited+seen after visit " +
                            std::to_string(st.visit_order_.back()));
    }

    std::set<VertexId> sources = visited;
    sources.insert(frontier.begin(), frontier.end());
    sources.erase(s);
    auto actual_from = bfs_avoiding(g, sources, {s}, false);
    actual_from.insert(s);
    std::set<VertexId> expected_from = visited;
    expected_from.insert(frontier.begin(), frontier.end());
    if (actual_from != expected_from) {
        throw InternalError("backward region does not match visited+frontier after visit " +
                            std::to_string(st.visit_order_.back()));
    }
}

ExitSearchResult find_exit(const DirectedMultigraph& g, VertexId s, DetectionState& state,
                           const DetectionOptions& options) {
    if (s >= g.vertex_count()) throw UsageError("entrance id out of range");
    return ExitSearchAccess::search(g, s, state, options);
}

EnumerationResult enumerate_superbubbles(const DirectedMultigraph& g, unsigned threads,
                                         const DetectionOptions& options) {
    if (threads == 0) throw UsageError("thread count must be positive");
    const std::size_t n = g.vertex_count();

    auto run_range = [&](VertexId begin, VertexId end, EnumerationResult& out) {
        DetectionState state(n);
        for (VertexId s = begin; s < end; ++s) {
            auto res = find_exit(g, s, state, options);
            if (!res.exit) continue;
            Superbubble sb;
            sb.entrance = s;
            sb.exit = *res.exit;
            const auto& order = state.visit_order();
            sb.interior.assign(order.begin() + 1, order.end());
            std::sort(sb.interior.begin(), sb.interior.end());
            out.superbubbles.push_back(std::move(sb));
        }
        out.visited_total = state.total_visited();
    };

    if (threads == 1 || n < 2 * threads) {
        EnumerationResult result;
        run_range(0, static_cast<VertexId>(n), result);
        return result;
    }

    std::vector<EnumerationResult> parts(threads);
    std::vector<std::thread> workers;
    const std::size_t chunk = (n + threads - 1) / threads;
    for (unsigned w = 0; w < threads; ++w) {
        std::size_t begin = std::min(n, w * chunk);
        std::size_t end = std::min(n, begin + chunk);
        workers.emplace_back(run_range, static_cast<VertexId>(begin),
                             static_cast<VertexId>(end), std::ref(parts[w]));
    }
    for (auto& t : workers) t.join();

    EnumerationResult result;
    for (auto& part : parts) {
        result.visited_total += part.visited_total;
        result.superbubbles.insert(result.superbubbles.end(),
                                   std::make_move_iterator(part.superbubbles.begin()),
                                   std::make_move_iterator(part.superbubbles.end()));
    }
    return result;
}

}
