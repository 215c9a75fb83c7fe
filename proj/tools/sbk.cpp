#include <chrono>
#include <cmath>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "sbk/debruijn.hpp"
#include "sbk/error.hpp"
#include "sbk/graph.hpp"
#include "sbk/oracle.hpp"
#include "sbk/pipeline.hpp"
#include "sbk/randgen.hpp"
#include "sbk/stats.hpp"
#include "sbk/superbubble.hpp"
#include "sbk/unipath.hpp"

namespace {

constexpr const char* kVersion = "sbk 1.0.0";

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

void log_line(const std::string& fields) { std::cerr << "[sbk] " << fields << "\n"; }

// "-" means stdout.
void emit(const std::string& out_path, const std::string& text) {
    if (out_path == "-") {
        std::cout << text;
        return;
    }
    std::ofstream out(out_path, std::ios::binary);
    if (!out) throw sbk::InputError("cannot open " + out_path + " for writing");
    out << text;
    if (!out) throw sbk::InputError("failed writing " + out_path);
}

struct BuildGraphArgs {
    std::string reads, out;
    int k = 27;
    std::uint32_t d = 3;
    bool canonical = false;
    unsigned threads = 1;
};

void run_build_graph(const BuildGraphArgs& a) {
    auto start = Clock::now();
    sbk::BuildGraphSummary s = sbk::stage_build_graph(a.reads, a.k, a.d, a.canonical, a.threads, a.out);
    std::ostringstream line;
    line << "stage=build-graph reads=" << s.reads << " kmers=" << s.kmers << " solid=" << s.solid
         << " vertices=" << s.vertices << " edges=" << s.edges << " seconds=" << seconds_since(start);
    log_line(line.str());
}

struct CompactArgs {
    std::string in, out;
};

void run_compact(const CompactArgs& a) {
    auto start = Clock::now();
    sbk::CompactSummary s = sbk::stage_compact(a.in, a.out);
    std::ostringstream line;
    line << "stage=compact vertices=" << s.vertices << " edges=" << s.edges
         << " seconds=" << seconds_since(start);
    log_line(line.str());
}

struct FindArgs {
    std::string in, out = "-", report = "tsv";
    std::size_t min_size = 2;
    unsigned threads = 1;
};

void run_find(const FindArgs& a) {
    sbk::DirectedMultigraph g = sbk::read_graph_auto(a.in);

    auto start = Clock::now();
    sbk::EnumerationResult result = sbk::enumerate_superbubbles(g, a.threads);
    double elapsed = seconds_since(start);

    std::vector<sbk::Superbubble> kept;
    for (sbk::Superbubble& sb : result.superbubbles) {
        if (sb.size() >= a.min_size) kept.push_back(std::move(sb));
    }

    if (a.report == "tsv") {
        std::ostringstream text;
        sbk::write_superbubbles_tsv(kept, result.visited_total, text);
        emit(a.out, text.str());
    } else {
        // The JSON report from a live search carries the measured wall time;
        // the stats subcommand is the deterministic-artifact surface.
        sbk::SuperbubbleReport report =
            sbk::build_report(g, kept, result.visited_total, elapsed);
        emit(a.out, sbk::report_to_json(report) + "\n");
    }

    std::ostringstream line;
    line << "stage=find-superbubbles vertices=" << g.vertex_count() << " edges=" << g.edge_count()
         << " superbubbles=" << kept.size() << " visited=" << result.visited_total
         << " seconds=" << elapsed;
    log_line(line.str());
}

struct StatsArgs {
    std::string in, bubbles, out = "-";
    double threshold = 1.05;
    std::size_t min_size = 5;
};

void run_stats(const StatsArgs& a) {
    sbk::SuperbubbleReport report = sbk::compute_stats(a.in, a.bubbles, a.threshold, a.min_size);
    emit(a.out, sbk::report_to_json(report) + "\n");
}

struct OracleCheckArgs {
    std::string in;
    std::vector<std::uint32_t> pair;
    std::size_t max_vertices = 16;
};

std::string yn(bool b) { return b ? "yes" : "no"; }

void print_check(const sbk::DirectedMultigraph& g, sbk::VertexId s, sbk::VertexId t) {
    sbk::SuperbubbleCheck c = sbk::check_superbubble(g, s, t);
    std::cout << s << " -> " << t << " reachability=" << yn(c.reachability)
              << " matching=" << yn(c.matching) << " acyclicity=" << yn(c.acyclicity)
              << " minimality=" << yn(c.minimality)
              << " verdict=" << (c.ok() ? "superbubble" : "not-a-superbubble") << "\n";
}

void run_oracle_check(const OracleCheckArgs& a) {
    sbk::DirectedMultigraph g = sbk::read_graph_auto(a.in);
    if (!a.pair.empty()) {
        if (a.pair[0] >= g.vertex_count() || a.pair[1] >= g.vertex_count()) {
            throw sbk::UsageError("pair vertex out of range");
        }
        print_check(g, a.pair[0], a.pair[1]);
        return;
    }
    if (g.vertex_count() > a.max_vertices) {
        throw sbk::UsageError("graph has " + std::to_string(g.vertex_count()) +
                              " vertices; exhaustive checking is capped at " +
                              std::to_string(a.max_vertices) + " (raise --max-vertices)");
    }
    for (sbk::VertexId s = 0; s < g.vertex_count(); ++s) {
        for (sbk::VertexId t = 0; t < g.vertex_count(); ++t) {
            if (s != t) print_check(g, s, t);
        }
    }
}

struct OracleEnumArgs {
    std::string in, out = "-";
    std::size_t max_vertices = 16;
};

void run_oracle_enum(const OracleEnumArgs& a) {
    sbk::DirectedMultigraph g = sbk::read_graph_auto(a.in);
    std::vector<sbk::Superbubble> found = sbk::enumerate_brute_force(g, a.max_vertices);
    std::ostringstream text;
    sbk::write_superbubbles_tsv(found, 0, text);
    emit(a.out, text.str());
}

struct GenRandomArgs {
    std::string spec, out, truth;
    std::uint64_t unipath_like = 0;
    std::uint64_t seed = 0;
    bool seed_given = false;
};

void run_gen_random(const GenRandomArgs& a) {
    if ((a.spec.empty()) == (a.unipath_like == 0)) {
        throw sbk::UsageError("exactly one of --spec and --unipath-like is required");
    }
    if (a.unipath_like > 0) {
        if (!a.truth.empty()) {
            throw sbk::UsageError("--truth is only available with --spec");
        }
        sbk::DirectedMultigraph g = sbk::generate_unipath_like(a.unipath_like, a.seed);
        sbk::write_graph_auto(g, a.out);
        std::ostringstream line;
        line << "stage=gen-random kind=unipath-like vertices=" << g.vertex_count()
             << " edges=" << g.edge_count();
        log_line(line.str());
        return;
    }
    std::ifstream in(a.spec, std::ios::binary);
    if (!in) throw sbk::InputError("cannot open " + a.spec);
    std::ostringstream buf;
    buf << in.rdbuf();
    sbk::PlantedGraphSpec spec = sbk::planted_spec_from_json(buf.str());
    if (a.seed_given) spec.seed = a.seed;
    sbk::PlantedGraph planted = sbk::generate_planted_graph(spec);
    sbk::write_graph_auto(planted.graph, a.out);
    if (!a.truth.empty()) sbk::write_superbubbles_tsv(planted.ground_truth, 0, a.truth);
    std::ostringstream line;
    line << "stage=gen-random kind=planted vertices=" << planted.graph.vertex_count()
         << " edges=" << planted.graph.edge_count()
         << " superbubbles=" << planted.ground_truth.size();
    log_line(line.str());
}

struct GwSimArgs {
    double p = 0.0;
    std::string dist;
    std::uint64_t trials = 1'000'000;
    std::uint64_t seed = 0;
    std::uint64_t max_nodes = 10'000'000;
    unsigned threads = 1;
    bool json = false;
};

std::vector<double> parse_dist(const std::string& text) {
    std::vector<double> dist;
    std::istringstream in(text);
    std::string item;
    while (std::getline(in, item, ',')) {
        try {
            std::size_t used = 0;
            dist.push_back(std::stod(item, &used));
            if (used != item.size()) throw std::invalid_argument(item);
        } catch (const std::logic_error&) {
            throw sbk::UsageError("bad probability '" + item + "' in --dist");
        }
    }
    if (dist.empty()) throw sbk::UsageError("--dist must list at least one probability");
    return dist;
}

void run_gw_sim(const GwSimArgs& a) {
    sbk::BranchingModel model = sbk::make_branching_model(a.p, parse_dist(a.dist));
    double expected = sbk::expected_tree_size(model);

    auto start = Clock::now();
    sbk::GwTrialStats stats = sbk::run_gw_trials(model, a.trials, a.seed, a.max_nodes, a.threads);
    double elapsed = seconds_since(start);

    if (a.json) {
        nlohmann::json j;
        j["p"] = model.p;
        j["r"] = model.r;
        j["expected_size"] = std::isfinite(expected) ? nlohmann::json(expected) : nlohmann::json();
        j["trials"] = stats.trials;
        j["truncated"] = stats.truncated;
        j["mean"] = stats.mean;
        j["variance"] = stats.variance;
        std::cout << j.dump(2) << "\n";
    } else {
        std::cout << "p " << model.p << "\n";
        std::cout << "r " << model.r << "\n";
        std::cout << "expected_size ";
        if (std::isfinite(expected)) {
            std::cout << expected << "\n";
        } else {
            std::cout << "inf\n";
        }
        std::cout << "trials " << stats.trials << "\n";
        std::cout << "truncated " << stats.truncated << "\n";
        std::cout << "mean " << stats.mean << "\n";
        std::cout << "variance " << stats.variance << "\n";
    }

    std::ostringstream line;
    line << "stage=gw-sim trials=" << stats.trials << " seconds=" << elapsed;
    log_line(line.str());
}

void run_pipeline_cmd(const sbk::PipelineConfig& config) {
    auto start = Clock::now();
    sbk::PipelineResult r = sbk::run_pipeline(config);

    std::ostringstream b;
    b << "stage=build-graph reads=" << r.build.reads << " kmers=" << r.build.kmers
      << " solid=" << r.build.solid << " vertices=" << r.build.vertices
      << " edges=" << r.build.edges;
    log_line(b.str());
    std::ostringstream c;
    c << "stage=compact vertices=" << r.compact.vertices << " edges=" << r.compact.edges;
    log_line(c.str());
    std::ostringstream f;
    f << "stage=find-superbubbles superbubbles=" << r.detect.superbubbles
      << " visited=" << r.detect.visited << " seconds=" << r.detect.wall_seconds;
    log_line(f.str());
    std::ostringstream p;
    p << "stage=pipeline workdir=" << config.workdir << " seconds=" << seconds_since(start);
    log_line(p.str());

    std::cout << sbk::report_to_json(r.report) << "\n";
}

}

int main(int argc, char** argv) {
    CLI::App app{"superbubble toolkit: assembly-style graphs, detection, and models"};
    app.require_subcommand(1);

    BuildGraphArgs build_args;
    CompactArgs compact_args;
    FindArgs find_args;
    StatsArgs stats_args;
    OracleCheckArgs check_args;
    OracleEnumArgs enum_args;
    GenRandomArgs gen_args;
    GwSimArgs gw_args;
    sbk::PipelineConfig pipe_config;

    CLI::App* build = app.add_subcommand("build-graph", "count k-mers in reads and write the graph");
    build->add_option("--reads", build_args.reads, "FASTA or FASTQ file")->required();
    build->add_option("-k,--k", build_args.k, "k-mer length")->envname("SBK_K")
        ->capture_default_str();
    build->add_option("-d,--min-count", build_args.d, "keep k-mers seen at least this often")
        ->envname("SBK_D")->capture_default_str();
    build->add_flag("--canonical", build_args.canonical, "fold each k-mer with its reverse complement");
    build->add_option("--threads", build_args.threads, "worker threads")->envname("SBK_THREADS")
        ->capture_default_str();
    build->add_option("-o,--out", build_args.out, "output graph (names written alongside)")->required();
    build->callback([&] { run_build_graph(build_args); });

    CLI::App* compact = app.add_subcommand("compact", "collapse unbranching chains into single edges");
    compact->add_option("-i,--in", compact_args.in, "input graph")->required();
    compact->add_option("-o,--out", compact_args.out, "output graph (names written alongside)")->required();
    compact->callback([&] { run_compact(compact_args); });

    CLI::App* find = app.add_subcommand("find-superbubbles", "enumerate all superbubbles");
    find->add_option("-i,--in", find_args.in, "input graph")->required();
    find->add_option("--min-size", find_args.min_size, "drop superbubbles with fewer vertices")
        ->envname("SBK_MIN_SIZE")->capture_default_str();
    find->add_option("--threads", find_args.threads, "worker threads")->envname("SBK_THREADS")
        ->capture_default_str();
    find->add_option("--report", find_args.report, "output format")
        ->check(CLI::IsMember({"tsv", "json"}))->capture_default_str();
    find->add_option("-o,--out", find_args.out, "output file, - for stdout")->capture_default_str();
    find->callback([&] { run_find(find_args); });

    CLI::App* stats = app.add_subcommand("stats", "summarize a superbubble list against its graph");
    stats->add_option("-i,--in", stats_args.in, "input graph")->required();
    stats->add_option("--bubbles", stats_args.bubbles, "superbubble TSV")->required();
    stats->add_option("--threshold", stats_args.threshold, "longest/shortest ratio cutoff")
        ->capture_default_str();
    stats->add_option("--min-size", stats_args.min_size, "smallest size included in path metrics")
        ->capture_default_str();
    stats->add_option("-o,--out", stats_args.out, "output file, - for stdout")->capture_default_str();
    stats->callback([&] { run_stats(stats_args); });

    CLI::App* check = app.add_subcommand("oracle-check",
                                         "test vertex pairs against the definition directly");
    check->add_option("-i,--in", check_args.in, "input graph")->required();
    check->add_option("--pair", check_args.pair, "entrance and exit to test")->expected(2);
    check->add_option("--max-vertices", check_args.max_vertices,
                      "largest graph the exhaustive scan accepts")->capture_default_str();
    check->callback([&] { run_oracle_check(check_args); });

    CLI::App* oenum = app.add_subcommand("oracle-enum",
                                         "enumerate superbubbles by exhaustive definition checks");
    oenum->add_option("-i,--in", enum_args.in, "input graph")->required();
    oenum->add_option("--max-vertices", enum_args.max_vertices,
                      "largest graph the exhaustive scan accepts")->capture_default_str();
    oenum->add_option("-o,--out", enum_args.out, "output TSV, - for stdout")->capture_default_str();
    oenum->callback([&] { run_oracle_enum(enum_args); });

    CLI::App* gen = app.add_subcommand("gen-random", "generate benchmark graphs");
    gen->add_option("--spec", gen_args.spec, "planted-superbubble spec (JSON)");
    gen->add_option("--unipath-like", gen_args.unipath_like,
                    "make a sparse random graph with this many vertices");
    CLI::Option* seed_opt = gen->add_option("--seed", gen_args.seed, "random seed")
        ->envname("SBK_SEED")->capture_default_str();
    gen->add_option("-o,--out", gen_args.out, "output graph")->required();
    gen->add_option("--truth", gen_args.truth, "also write the planted superbubbles as TSV");
    gen->callback([&] {
        gen_args.seed_given = seed_opt->count() > 0;
        run_gen_random(gen_args);
    });

    CLI::App* gw = app.add_subcommand("gw-sim", "Monte-Carlo the branching-process size model");
    gw->add_option("-p,--p", gw_args.p, "probability a vertex is fertile")->required();
    gw->add_option("--dist", gw_args.dist, "child-count probabilities, e.g. 0.25,0.5,0.25")
        ->required();
    gw->add_option("--trials", gw_args.trials, "number of trees")->capture_default_str();
    gw->add_option("--seed", gw_args.seed, "random seed")->envname("SBK_SEED")
        ->capture_default_str();
    gw->add_option("--max-nodes", gw_args.max_nodes, "truncate trees at this many nodes")
        ->capture_default_str();
    gw->add_option("--threads", gw_args.threads, "worker threads")->envname("SBK_THREADS")
        ->capture_default_str();
    gw->add_flag("--json", gw_args.json, "emit JSON instead of text");
    gw->callback([&] { run_gw_sim(gw_args); });

    CLI::App* pipe = app.add_subcommand("pipeline",
                                        "reads -> graph -> compacted graph -> superbubbles -> report");
    pipe->add_option("--reads", pipe_config.reads_path, "FASTA or FASTQ file")->required();
    pipe->add_option("--workdir", pipe_config.workdir, "directory for stage artifacts")->required();
    pipe->add_option("-k,--k", pipe_config.k, "k-mer length")->envname("SBK_K")
        ->capture_default_str();
    pipe->add_option("-d,--min-count", pipe_config.d, "keep k-mers seen at least this often")
        ->envname("SBK_D")->capture_default_str();
    pipe->add_flag("--canonical", pipe_config.canonical, "fold each k-mer with its reverse complement");
    pipe->add_option("--min-size", pipe_config.min_size, "drop superbubbles with fewer vertices")
        ->envname("SBK_MIN_SIZE")->capture_default_str();
    pipe->add_option("--threshold", pipe_config.ratio_threshold, "longest/shortest ratio cutoff")
        ->capture_default_str();
    pipe->add_option("--ratio-min-size", pipe_config.ratio_min_size,
                     "smallest size included in path metrics")->capture_default_str();
    pipe->add_option("--threads", pipe_config.threads, "worker threads")->envname("SBK_THREADS")
        ->capture_default_str();
    pipe->callback([&] { run_pipeline_cmd(pipe_config); });

    app.set_version_flag("--version", kVersion);
    for (CLI::App* sub : {build, compact, find, stats, check, oenum, gen, gw, pipe}) {
        sub->set_version_flag("--version", kVersion);
    }

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForVersion& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        app.exit(e);
        return 1;
    } catch (const sbk::UsageError& e) {
        std::cerr << "sbk: " << e.what() << "\n";
        return 1;
    } catch (const sbk::InputError& e) {
        std::cerr << "sbk: " << e.what() << "\n";
        return 2;
    } catch (const sbk::InternalError& e) {
        std::cerr << "sbk: internal error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "sbk: unexpected error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
