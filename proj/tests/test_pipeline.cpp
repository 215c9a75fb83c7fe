#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sbk/error.hpp"
#include "sbk/graph.hpp"
#include "sbk/pipeline.hpp"

using namespace sbk;
namespace fs = std::filesystem;

namespace {

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name) : path(fs::temp_directory_path() / name) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    std::string file(const std::string& name) const { return (path / name).string(); }
};

std::string slurp(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    REQUIRE(in);
    std::ostringstream buf;
    buf << in.rdbuf();
    return buf.str();
}

void write_fixture_reads(const std::string& path) {
    std::ofstream out(path);
    out << ">r1\nAACCTGCGA\n>r2\nAACCGGCGA\n>r3\nTGCGATT\n>r4\nTGCGAC\n";
}

}

TEST_CASE("superbubble TSV round trip") {
    TempDir dir("sbk_test_tsv");
    std::vector<Superbubble> bubbles = {{0, 3, {1, 2}}, {4, 5, {}}};
    write_superbubbles_tsv(bubbles, 99, dir.file("sb.tsv"));

    SuperbubbleFile file = read_superbubbles_tsv(dir.file("sb.tsv"));
    CHECK(file.visited == 99);
    CHECK(file.bubbles == bubbles);

    std::string text = slurp(dir.file("sb.tsv"));
    CHECK(text.find("0\t3\t4\t1,2\n") != std::string::npos);
    CHECK(text.find("4\t5\t2\t-\n") != std::string::npos);
    CHECK(text.find("#visited 99\n") != std::string::npos);
}

TEST_CASE("superbubble TSV parser rejects malformed rows") {
    TempDir dir("sbk_test_tsv_bad");
    auto write_and_read = [&](const std::string& text) {
        std::ofstream out(dir.file("bad.tsv"));
        out << text;
        out.close();
        return read_superbubbles_tsv(dir.file("bad.tsv"));
    };
    CHECK_THROWS_AS(write_and_read("0\t1\n"), InputError);              // missing columns
    CHECK_THROWS_AS(write_and_read("0\t1\t5\t-\n"), InputError);        // size disagrees
    CHECK_THROWS_AS(write_and_read("0\tx\t2\t-\n"), InputError);        // bad number
    CHECK_THROWS_AS(read_superbubbles_tsv(dir.file("absent.tsv")), InputError);
    CHECK(write_and_read("#visited 7\n").visited == 7);
    CHECK(write_and_read("").bubbles.empty());
}

TEST_CASE("pipeline produces the expected artifacts") {
    TempDir dir("sbk_test_pipeline");
    write_fixture_reads(dir.file("reads.fa"));

    PipelineConfig config;
    config.reads_path = dir.file("reads.fa");
    config.workdir = dir.file("work");
    config.k = 5;
    config.d = 1;
    PipelineResult result = run_pipeline(config);

    CHECK(result.build.reads == 4);
    CHECK(result.build.kmers == 15);
    CHECK(result.build.solid == 13);
    CHECK(result.build.vertices == 13);
    CHECK(result.build.edges == 13);
    CHECK(result.compact.vertices == 4);
    CHECK(result.compact.edges == 4);
    CHECK(result.detect.superbubbles == 1);
    CHECK(result.report.superbubble_count == 1);
    CHECK(result.report.histogram.counts[0] == 1);

    DirectedMultigraph unipath = read_graph_auto(result.unipath_path);
    std::vector<std::string> names = read_name_table(result.unipath_path + ".names", 4);
    CHECK(names == std::vector<std::string>{"AACC", "GATT", "GCGA", "CGAC"});
    REQUIRE(unipath.edge_count() == 4);
    CHECK(unipath.edge(0).label == "GGCGA");
    CHECK(unipath.edge(1).label == "TGCGA");
    CHECK(unipath.edge(2).label == "C");
    CHECK(unipath.edge(3).label == "TT");

    SuperbubbleFile found = read_superbubbles_tsv(result.superbubbles_path);
    REQUIRE(found.bubbles.size() == 1);
    CHECK(found.bubbles[0] == Superbubble{0, 2, {}});  // AACC -> GCGA
}

TEST_CASE("stage-by-stage runs write byte-identical artifacts") {
    TempDir dir("sbk_test_stages");
    write_fixture_reads(dir.file("reads.fa"));

    PipelineConfig config;
    config.reads_path = dir.file("reads.fa");
    config.workdir = dir.file("work");
    config.k = 5;
    config.d = 1;
    PipelineResult result = run_pipeline(config);

    stage_build_graph(dir.file("reads.fa"), 5, 1, false, 1, dir.file("g.edges"));
    stage_compact(dir.file("g.edges"), dir.file("u.edges"));
    stage_find_superbubbles(dir.file("u.edges"), 2, 1, dir.file("sb.tsv"));
    stage_stats(dir.file("u.edges"), dir.file("sb.tsv"), 1.05, 5, dir.file("report.json"));

    CHECK(slurp(dir.file("g.edges")) == slurp(result.graph_path));
    CHECK(slurp(dir.file("g.edges.names")) == slurp(result.graph_path + ".names"));
    CHECK(slurp(dir.file("u.edges")) == slurp(result.unipath_path));
    CHECK(slurp(dir.file("u.edges.names")) == slurp(result.unipath_path + ".names"));
    CHECK(slurp(dir.file("sb.tsv")) == slurp(result.superbubbles_path));
    CHECK(slurp(dir.file("report.json")) == slurp(result.report_path));
}

TEST_CASE("thread count leaves pipeline artifacts unchanged") {
    TempDir dir("sbk_test_pipeline_threads");
    write_fixture_reads(dir.file("reads.fa"));

    PipelineConfig config;
    config.reads_path = dir.file("reads.fa");
    config.workdir = dir.file("one");
    config.k = 5;
    config.d = 1;
    run_pipeline(config);
    config.workdir = dir.file("many");
    config.threads = 4;
    run_pipeline(config);

    for (const char* name : {"graph.edges", "unipath.edges", "superbubbles.tsv", "report.json"}) {
        CHECK(slurp((dir.path / "one" / name).string()) ==
              slurp((dir.path / "many" / name).string()));
    }
}

TEST_CASE("min size filters the detected list") {
    TempDir dir("sbk_test_minsize");
    write_fixture_reads(dir.file("reads.fa"));

    PipelineConfig config;
    config.reads_path = dir.file("reads.fa");
    config.workdir = dir.file("work");
    config.k = 5;
    config.d = 1;
    config.min_size = 3;  // the only bubble has size 2
    PipelineResult result = run_pipeline(config);
    CHECK(result.detect.superbubbles == 0);
    CHECK(read_superbubbles_tsv(result.superbubbles_path).bubbles.empty());
    // the search effort is reported regardless of filtering
    CHECK(result.detect.visited > 0);
}

TEST_CASE("config validation") {
    PipelineConfig config;
    config.reads_path = "reads.fa";
    config.workdir = "w";
    CHECK_NOTHROW(validate_config(config));

    PipelineConfig bad = config;
    bad.reads_path = "";
    CHECK_THROWS_AS(validate_config(bad), UsageError);
    bad = config;
    bad.k = 1;
    CHECK_THROWS_AS(validate_config(bad), UsageError);
    bad = config;
    bad.k = 65;
    CHECK_THROWS_AS(validate_config(bad), UsageError);
    bad = config;
    bad.d = 0;
    CHECK_THROWS_AS(validate_config(bad), UsageError);
    bad = config;
    bad.threads = 0;
    CHECK_THROWS_AS(validate_config(bad), UsageError);
    bad = config;
    bad.min_size = 1;
    CHECK_THROWS_AS(validate_config(bad), UsageError);
}

TEST_CASE("missing reads file is an input error") {
    TempDir dir("sbk_test_missing");
    PipelineConfig config;
    config.reads_path = dir.file("nope.fa");
    config.workdir = dir.file("work");
    CHECK_THROWS_AS(run_pipeline(config), InputError);
}
