#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "sbk/error.hpp"
#include "sbk/graph.hpp"

using namespace sbk;

namespace {

DirectedMultigraph diamond() {
    return DirectedMultigraph(4, {{0, 1, ""}, {0, 2, ""}, {1, 3, ""}, {2, 3, ""}});
}

}

TEST_CASE("adjacency of a diamond") {
    DirectedMultigraph g = diamond();
    CHECK(g.vertex_count() == 4);
    CHECK(g.edge_count() == 4);
    CHECK(g.outdeg(0) == 2);
    CHECK(g.indeg(0) == 0);
    CHECK(g.outdeg(3) == 0);
    CHECK(g.indeg(3) == 2);
    CHECK(g.children(0) == std::vector<VertexId>{1, 2});
    CHECK(g.parents(3) == std::vector<VertexId>{1, 2});
    CHECK(g.has_edge(0, 1));
    CHECK(g.has_edge(2, 3));
    CHECK(!g.has_edge(1, 0));
    CHECK(!g.has_edge(0, 3));
}

TEST_CASE("parallel edges and self-loops are distinct edges") {
    DirectedMultigraph g(2, {{0, 1, "A"}, {0, 1, "C"}, {1, 1, "G"}});
    CHECK(g.edge_count() == 3);
    CHECK(g.outdeg(0) == 2);
    CHECK(g.indeg(1) == 3);
    CHECK(g.outdeg(1) == 1);
    CHECK(g.children(0) == std::vector<VertexId>{1, 1});  // one entry per parallel edge
    CHECK(g.children(1) == std::vector<VertexId>{1});
    CHECK(g.parents(1) == std::vector<VertexId>{0, 0, 1});
    CHECK(g.has_edge(1, 1));
    CHECK(g.edge(0).label == "A");
    CHECK(g.edge(1).label == "C");
}

TEST_CASE("per-vertex edge lists preserve insertion order") {
    DirectedMultigraph g(3, {{0, 2, "T"}, {0, 1, "A"}, {0, 2, "G"}});
    auto out = g.out_edges(0);
    REQUIRE(out.size() == 3);
    CHECK(g.edge(out[0]).label == "T");
    CHECK(g.edge(out[1]).label == "A");
    CHECK(g.edge(out[2]).label == "G");
}

TEST_CASE("construction rejects bad edges") {
    CHECK_THROWS_AS(DirectedMultigraph(2, {{0, 2, ""}}), UsageError);
    CHECK_THROWS_AS(DirectedMultigraph(2, {{2, 0, ""}}), UsageError);
    CHECK_THROWS_AS(DirectedMultigraph(2, {{0, 1, "AXC"}}), UsageError);
    CHECK_THROWS_AS(DirectedMultigraph(2, {{0, 1, "acgt"}}), UsageError);
}

TEST_CASE("vertex queries validate the id") {
    DirectedMultigraph g = diamond();
    CHECK_THROWS_AS(g.outdeg(4), UsageError);
    CHECK_THROWS_AS(g.children(100), UsageError);
}

TEST_CASE("edge list round trip") {
    DirectedMultigraph g(5, {{0, 1, "ACGT"}, {1, 2, ""}, {2, 0, "T"}, {3, 3, "G"}});
    std::stringstream buf;
    write_edge_list(g, buf);
    DirectedMultigraph h = read_edge_list(buf);
    CHECK(h.vertex_count() == 5);
    REQUIRE(h.edge_count() == 4);
    for (EdgeId e = 0; e < 4; ++e) {
        CHECK(h.edge(e).source == g.edge(e).source);
        CHECK(h.edge(e).target == g.edge(e).target);
        CHECK(h.edge(e).label == g.edge(e).label);
    }
}

TEST_CASE("edge list parsing") {
    SUBCASE("header fixes the vertex count") {
        std::istringstream in("#vertices 7\n0\t1\n");
        CHECK(read_edge_list(in).vertex_count() == 7);
    }
    SUBCASE("without header the count comes from the largest id") {
        std::istringstream in("0\t1\n5\t2\tAC\n");
        CHECK(read_edge_list(in).vertex_count() == 6);
    }
    SUBCASE("comments, blank lines, and CRLF are tolerated") {
        std::istringstream in("# a comment\r\n\n0\t1\tAC\r\n");
        DirectedMultigraph g = read_edge_list(in);
        CHECK(g.edge_count() == 1);
        CHECK(g.edge(0).label == "AC");
    }
    SUBCASE("empty input is an empty graph") {
        std::istringstream in("");
        CHECK(read_edge_list(in).vertex_count() == 0);
    }
    SUBCASE("spaces work as separators too") {
        std::istringstream in("0 1 ACT\n");
        CHECK(read_edge_list(in).edge(0).label == "ACT");
    }
}

TEST_CASE("edge list parse errors carry the line number") {
    auto error_of = [](const std::string& text) {
        std::istringstream in(text);
        try {
            read_edge_list(in);
        } catch (const InputError& e) {
            return std::string(e.what());
        }
        return std::string("no error");
    };
    CHECK(error_of("0\t1\nx\t2\n").find("line 2") != std::string::npos);
    CHECK(error_of("0\t-1\n").find("line 1") != std::string::npos);
    CHECK(error_of("0\t1\tAC\textra\n").find("trailing") != std::string::npos);
    CHECK(error_of("0\t1\tAXT\n").find("ACGT") != std::string::npos);
    CHECK(error_of("#vertices -3\n").find("header") != std::string::npos);
    CHECK(error_of("#vertices 2\n0\t5\n").find("declares") != std::string::npos);
}

TEST_CASE("binary graph round trip") {
    DirectedMultigraph g(3, {{0, 1, "ACGT"}, {1, 2, ""}, {2, 2, "T"}});
    std::stringstream buf(std::ios::in | std::ios::out | std::ios::binary);
    write_graph_binary(g, buf);
    DirectedMultigraph h = read_graph_binary(buf);
    CHECK(h.vertex_count() == 3);
    REQUIRE(h.edge_count() == 3);
    for (EdgeId e = 0; e < 3; ++e) {
        CHECK(h.edge(e).source == g.edge(e).source);
        CHECK(h.edge(e).target == g.edge(e).target);
        CHECK(h.edge(e).label == g.edge(e).label);
    }
}

TEST_CASE("binary reader rejects garbage") {
    std::istringstream bad("not a graph at all");
    CHECK_THROWS_AS(read_graph_binary(bad), InputError);
    std::istringstream truncated(std::string("SBG1\x02", 5));
    CHECK_THROWS_AS(read_graph_binary(truncated), InputError);
}

TEST_CASE("auto format picks binary by extension and sniffs on read") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sbk_test_graph_auto";
    fs::create_directories(dir);
    DirectedMultigraph g(2, {{0, 1, "AC"}});

    std::string text_path = (dir / "g.edges").string();
    std::string bin_path = (dir / "g.sbg").string();
    write_graph_auto(g, text_path);
    write_graph_auto(g, bin_path);

    std::ifstream bin(bin_path, std::ios::binary);
    char magic[4];
    bin.read(magic, 4);
    CHECK(std::string(magic, 4) == "SBG1");

    CHECK(read_graph_auto(text_path).edge(0).label == "AC");
    CHECK(read_graph_auto(bin_path).edge(0).label == "AC");
    fs::remove_all(dir);
}

TEST_CASE("name table round trip and validation") {
    namespace fs = std::filesystem;
    fs::path dir = fs::temp_directory_path() / "sbk_test_graph_names";
    fs::create_directories(dir);
    std::string path = (dir / "g.names").string();

    write_name_table({"AACC", "GCGA", "TTGG"}, path);
    std::vector<std::string> names = read_name_table(path, 3);
    CHECK(names == std::vector<std::string>{"AACC", "GCGA", "TTGG"});
    CHECK_THROWS_AS(read_name_table(path, 4), InputError);
    CHECK_THROWS_AS(read_name_table((dir / "missing").string(), 1), InputError);
    fs::remove_all(dir);
}
