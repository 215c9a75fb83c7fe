#include "sbk/randgen.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

#include <json.hpp>

#include "sbk/error.hpp"

namespace sbk {

std::uint64_t SplitMix64::next_below(std::uint64_t bound) {
    if (bound == 0) throw UsageError("empty range");
    // Rejection keeps the draw unbiased.
    std::uint64_t limit = std::numeric_limits<std::uint64_t>::max() -
                          std::numeric_limits<std::uint64_t>::max() % bound;
    std::uint64_t x;
    do {
        x = next();
    } while (x >= limit);
    return x % bound;
}

SplitMix64 derive_stream(std::uint64_t master_seed, std::uint64_t index) {
    SplitMix64 mixer(master_seed ^ (index + 1) * 0xD1B54A32D192ED03ULL);
    return SplitMix64(mixer.next());
}

BranchingModel make_branching_model(double p, std::vector<double> child_dist) {
    BranchingModel model;
    model.p = p;
    model.child_dist = std::move(child_dist);
    double mean_children = 0.0;
    for (std::size_t i = 0; i < model.child_dist.size(); ++i) {
        mean_children += static_cast<double>(i) * model.child_dist[i];
    }
    model.r = p * mean_children;
    validate_model(model);
    return model;
}

void validate_model(const BranchingModel& model) {
    if (!(model.p >= 0.0 && model.p <= 1.0)) {
        throw UsageError("p must lie in [0, 1]");
    }
    double sum = 0.0;
    for (double q : model.child_dist) {
        if (!(q >= 0.0) || !std::isfinite(q)) throw UsageError("child distribution entries must be non-negative");
        sum += q;
    }
    if (std::abs(sum - 1.0) > 1e-9) {
        throw UsageError("child distribution must sum to 1");
    }
    double mean_children = 0.0;
    for (std::size_t i = 0; i < model.child_dist.size(); ++i) {
        mean_children += static_cast<double>(i) * model.child_dist[i];
    }
    if (std::abs(model.p * mean_children - model.r) > 1e-9) {
        throw InternalError("stored r does not match p and child distribution");
    }
}

double expected_tree_size(const BranchingModel& model) {
    if (model.r >= 1.0) return std::numeric_limits<double>::infinity();
    return 1.0 / (1.0 - model.r);
}

GwOutcome simulate_gw_tree(const BranchingModel& model, SplitMix64& rng,
                           std::uint64_t max_nodes) {
    if (max_nodes == 0) throw UsageError("max_nodes must be positive");
    std::uint64_t nodes = 1;    // the root
    std::uint64_t pending = 1;  // nodes whose offspring are not yet drawn
    while (pending > 0) {
        --pending;
        if (rng.next_double() >= model.p) continue;  // infertile
        double u = rng.next_double();
        std::size_t count = 0;
        for (std::size_t i = 0; i < model.child_dist.size(); ++i) {
            if (u < model.child_dist[i]) {
                count = i;
                break;
            }
            u -= model.child_dist[i];
            count = i;  // rounding leftovers land on the last entry
        }
        nodes += count;
        pending += count;
        if (nodes >= max_nodes) return {max_nodes, true};
    }
    return {nodes, false};
}

GwTrialStats run_gw_trials(const BranchingModel& model, std::uint64_t trials,
                           std::uint64_t seed, std::uint64_t max_nodes, unsigned threads) {
    validate_model(model);
    if (threads == 0) throw UsageError("thread count must be positive");

    struct Partial {
        unsigned __int128 sum = 0;
        unsigned __int128 sum_sq = 0;
        std::uint64_t kept = 0;
        std::uint64_t truncated = 0;
    };

    auto run_range = [&](std::uint64_t begin, std::uint64_t end, Partial& out) {
        for (std::uint64_t i = begin; i < end; ++i) {
            SplitMix64 rng = derive_stream(seed, i);
            GwOutcome outcome = simulate_gw_tree(model, rng, max_nodes);
            if (outcome.truncated) {
                ++out.truncated;
                continue;
            }
            out.sum += outcome.size;
            out.sum_sq += static_cast<unsigned __int128>(outcome.size) * outcome.size;
            ++out.kept;
        }
    };

    Partial total;
    if (threads == 1 || trials < 2 * threads) {
        run_range(0, trials, total);
    } else {
        std::vector<Partial> parts(threads);
        std::vector<std::thread> workers;
        const std::uint64_t chunk = (trials + threads - 1) / threads;
        for (unsigned w = 0; w < threads; ++w) {
            std::uint64_t begin = std::min<std::uint64_t>(trials, w * chunk);
            std::uint64_t end = std::min<std::uint64_t>(trials, begin + chunk);
            workers.emplace_back(run_range, begin, end, std::ref(parts[w]));
        }
        for (auto& t : workers) t.join();
        for (const Partial& p : parts) {
            total.sum += p.sum;
            total.sum_sq += p.sum_sq;
            total.kept += p.kept;
            total.truncated += p.truncated;
        }
    }

    GwTrialStats stats;
    stats.trials = trials;
    stats.truncated = total.truncated;
    stats.expected = expected_tree_size(model);
    if (total.kept > 0) {
        double n = static_cast<double>(total.kept);
        double sum = static_cast<double>(total.sum);
        stats.mean = sum / n;
        if (total.kept > 1) {
            double sum_sq = static_cast<double>(total.sum_sq);
            stats.variance = (sum_sq - sum * sum / n) / (n - 1.0);
        }
    }
    return stats;
}

BranchingModel estimate_model_from_graph(const DirectedMultigraph& g) {
    if (g.vertex_count() == 0) throw UsageError("cannot estimate a model from an empty graph");
    const double n = static_cast<double>(g.vertex_count());
    std::size_t indeg_one = 0;
    std::size_t max_out = 0;
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        if (g.indeg(v) == 1) ++indeg_one;
        max_out = std::max(max_out, g.outdeg(v));
    }
    std::vector<double> dist(max_out + 1, 0.0);
    for (VertexId v = 0; v < g.vertex_count(); ++v) {
        dist[g.outdeg(v)] += 1.0 / n;
    }
    return make_branching_model(static_cast<double>(indeg_one) / n, std::move(dist));
}

// --- planted graphs ----------------------------------------------------

namespace {

// Mutable edge soup collected before the final graph is frozen.
struct GraphDraft {
    std::vector<Edge> edges;
    VertexId next_id = 0;

    VertexId fresh() { return next_id++; }
    void link(VertexId u, VertexId v) { edges.push_back({u, v, ""}); }
};

// Partition `total` interior vertices into layer widths of 2..4 so that no
// single vertex separates entrance from exit.
std::vector<std::uint32_t> layer_widths(std::uint32_t total, SplitMix64& rng) {
    std::vector<std::uint32_t> widths;
    std::uint32_t rem = total;
    while (rem > 0) {
        std::uint32_t w = 2 + static_cast<std::uint32_t>(rng.next_below(3));
        if (w > rem) w = rem;
        if (rem - w == 1) w = (w == 2) ? 3 : w - 1;
        widths.push_back(w);
        rem -= w;
    }
    return widths;
}

// Builds one region of the given size between `entrance` (already allocated)
// and a fresh exit; returns the exit. Appends the region to `truth`.
VertexId plant_region(GraphDraft& draft, VertexId entrance, std::uint32_t size,
                      std::uint32_t skip_edges, SplitMix64& rng,
                      std::vector<Superbubble>& truth) {
    Superbubble sb;
    sb.entrance = entrance;

    std::vector<std::vector<VertexId>> layers;
    layers.push_back({entrance});
    if (size == 3) {
        VertexId v = draft.fresh();
        sb.interior.push_back(v);
        layers.push_back({v});
    } else if (size > 3) {
        for (std::uint32_t w : layer_widths(size - 2, rng)) {
            std::vector<VertexId> layer;
            for (std::uint32_t i = 0; i < w; ++i) {
                VertexId v = draft.fresh();
                sb.interior.push_back(v);
                layer.push_back(v);
            }
            layers.push_back(std::move(layer));
        }
    }
    VertexId exit = draft.fresh();
    layers.push_back({exit});
    sb.exit = exit;

    for (std::size_t i = 0; i + 1 < layers.size(); ++i) {
        for (VertexId u : layers[i]) {
            for (VertexId v : layers[i + 1]) draft.link(u, v);
        }
    }
    if (size == 2) {
        draft.link(entrance, exit);  // second parallel edge: the classic two-path bubble
    }
    if (size == 3) {
        draft.link(entrance, exit);  // bypass keeps the lone interior vertex from closing early
    }
    if (layers.size() >= 3) {
        for (std::uint32_t i = 0; i < skip_edges; ++i) {
            std::size_t from = rng.next_below(layers.size() - 2);
            std::size_t to = from + 2 + rng.next_below(layers.size() - from - 2);
            VertexId u = layers[from][rng.next_below(layers[from].size())];
            VertexId v = layers[to][rng.next_below(layers[to].size())];
            draft.link(u, v);
        }
    }

    std::sort(sb.interior.begin(), sb.interior.end());
    truth.push_back(std::move(sb));
    return exit;
}

std::size_t sample_weighted(const std::vector<double>& weights, double total, SplitMix64& rng) {
    double u = rng.next_double() * total;
    for (std::size_t i = 0; i < weights.size(); ++i) {
        if (u < weights[i]) return i;
        u -= weights[i];
    }
    return weights.empty() ? 0 : weights.size() - 1;
}

}

PlantedGraph generate_planted_graph(const PlantedGraphSpec& spec) {
    double weight_total = 0.0;
    for (double w : spec.fanout_weights) {
        if (!(w >= 0.0) || !std::isfinite(w)) throw UsageError("fanout weights must be non-negative");
        weight_total += w;
    }
    if (!spec.fanout_weights.empty() && weight_total <= 0.0) {
        throw UsageError("fanout weights must not all be zero");
    }
    if (!(spec.terminal_exit_prob >= 0.0 && spec.terminal_exit_prob <= 1.0)) {
        throw UsageError("terminal exit probability must lie in [0, 1]");
    }
    for (const auto& bubble : spec.bubbles) {
        if (bubble.sizes.empty()) throw UsageError("planted region needs at least one size");
        for (std::uint32_t s : bubble.sizes) {
            if (s < 2) throw UsageError("planted region size must be at least 2");
        }
    }

    SplitMix64 rng = derive_stream(spec.seed, 0);
    GraphDraft draft;
    PlantedGraph result;

    std::vector<VertexId> junction_ids;
    for (std::uint32_t i = 0; i < spec.junctions; ++i) junction_ids.push_back(draft.fresh());

    std::vector<VertexId> entrances;
    std::vector<VertexId> exits;
    for (const auto& bubble : spec.bubbles) {
        VertexId boundary = draft.fresh();
        entrances.push_back(boundary);
        for (std::uint32_t size : bubble.sizes) {
            boundary = plant_region(draft, boundary, size, bubble.skip_edges, rng,
                                    result.ground_truth);
        }
        exits.push_back(boundary);
    }

    // Junction wiring. Every junction gets one private childless escape
    // vertex; forward targets are later junctions or region entrances. A
    // junction with nothing to point at gets a second escape so no vertex
    // pair around it can close.
    for (std::size_t i = 0; i < junction_ids.size(); ++i) {
        VertexId j = junction_ids[i];
        draft.link(j, draft.fresh());  // escape

        std::vector<VertexId> pool;
        for (std::size_t later = i + 1; later < junction_ids.size(); ++later) {
            pool.push_back(junction_ids[later]);
        }
        pool.insert(pool.end(), entrances.begin(), entrances.end());

        std::size_t want = spec.fanout_weights.empty()
                               ? 1
                               : sample_weighted(spec.fanout_weights, weight_total, rng);
        want = std::min(want, pool.size());
        if (want == 0) {
            if (!pool.empty()) {
                want = 1;  // a junction must point somewhere besides its escape
            } else {
                draft.link(j, draft.fresh());  // second escape
                continue;
            }
        }
        // Draw `want` distinct targets.
        for (std::size_t picked = 0; picked < want; ++picked) {
            std::size_t at = rng.next_below(pool.size());
            draft.link(j, pool[at]);
            pool[at] = pool.back();
            pool.pop_back();
        }
    }

    // Region exits attach to at least two junctions or to none at all; a
    // single attachment could form a spurious two-vertex pair.
    for (VertexId exit : exits) {
        if (junction_ids.size() < 2 || rng.next_double() < spec.terminal_exit_prob) continue;
        std::size_t want = 2 + rng.next_below(std::min<std::uint64_t>(2, junction_ids.size() - 1));
        std::vector<VertexId> pool = junction_ids;
        for (std::size_t picked = 0; picked < want && !pool.empty(); ++picked) {
            std::size_t at = rng.next_below(pool.size());
            draft.link(exit, pool[at]);
            pool[at] = pool.back();
            pool.pop_back();
        }
    }

    result.graph = DirectedMultigraph(draft.next_id, std::move(draft.edges));
    std::sort(result.ground_truth.begin(), result.ground_truth.end());
    return result;
}

PlantedGraphSpec planted_spec_from_json(const std::string& json_text) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(json_text);
    } catch (const nlohmann::json::parse_error& e) {
        throw InputError(std::string("bad spec JSON: ") + e.what());
    }
    PlantedGraphSpec spec;
    try {
        if (doc.contains("seed")) spec.seed = doc.at("seed").get<std::uint64_t>();
        if (doc.contains("background")) {
            const auto& bg = doc.at("background");
            if (bg.contains("junctions")) spec.junctions = bg.at("junctions").get<std::uint32_t>();
            if (bg.contains("fanout_weights")) {
                spec.fanout_weights = bg.at("fanout_weights").get<std::vector<double>>();
            }
            if (bg.contains("terminal_exit_prob")) {
                spec.terminal_exit_prob = bg.at("terminal_exit_prob").get<double>();
            }
        }
        if (doc.contains("bubbles")) {
            for (const auto& entry : doc.at("bubbles")) {
                PlantedBubbleSpec bubble;
                if (entry.contains("size")) {
                    bubble.sizes.push_back(entry.at("size").get<std::uint32_t>());
                } else if (entry.contains("chain")) {
                    bubble.sizes = entry.at("chain").get<std::vector<std::uint32_t>>();
                }
                if (entry.contains("skip_edges")) {
                    bubble.skip_edges = entry.at("skip_edges").get<std::uint32_t>();
                }
                spec.bubbles.push_back(std::move(bubble));
            }
        }
    } catch (const nlohmann::json::exception& e) {
        throw InputError(std::string("bad spec JSON: ") + e.what());
    }
    return spec;
}

DirectedMultigraph generate_unipath_like(std::size_t n, std::uint64_t seed) {
    if (n == 0) return DirectedMultigraph(0, {});
    SplitMix64 rng = derive_stream(seed, 1);

    // Outdegree profile: mostly chains, a few branches, some dead ends.
    auto draw_outdeg = [&rng]() -> int {
        double u = rng.next_double();
        if (u < 0.08) return 0;
        if (u < 0.90) return 1;
        if (u < 0.99) return 2;
        return 3;
    };

    // First edge of every emitting vertex follows a random permutation, so
    // most vertices keep indegree exactly 1 and long pass-through chains
    // appear, as they do after compaction.
    std::vector<VertexId> perm(n);
    for (std::size_t i = 0; i < n; ++i) perm[i] = static_cast<VertexId>(i);
    for (std::size_t i = n - 1; i > 0; --i) {
        std::size_t j = rng.next_below(i + 1);
        std::swap(perm[i], perm[j]);
    }

    std::vector<Edge> edges;
    edges.reserve(static_cast<std::size_t>(1.05 * static_cast<double>(n)));
    for (std::size_t v = 0; v < n; ++v) {
        int deg = draw_outdeg();
        if (deg == 0) continue;
        edges.push_back({static_cast<VertexId>(v), perm[v], ""});
        for (int extra = 1; extra < deg; ++extra) {
            edges.push_back({static_cast<VertexId>(v),
                             static_cast<VertexId>(rng.next_below(n)), ""});
        }
    }
    return DirectedMultigraph(n, std::move(edges));
}

}
