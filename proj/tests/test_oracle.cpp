#include <doctest.h>

#include "sbk/error.hpp"
#include "sbk/graph.hpp"
#include "sbk/oracle.hpp"

using namespace sbk;

namespace {

DirectedMultigraph diamond() {
    return DirectedMultigraph(4, {{0, 1, ""}, {0, 2, ""}, {1, 3, ""}, {2, 3, ""}});
}

// 0 -> {1,2} -> 3 -> {4,5} -> 6, two diamonds sharing vertex 3.
DirectedMultigraph two_diamonds() {
    return DirectedMultigraph(7, {{0, 1, ""},
                                  {0, 2, ""},
                                  {1, 3, ""},
                                  {2, 3, ""},
                                  {3, 4, ""},
                                  {3, 5, ""},
                                  {4, 6, ""},
                                  {5, 6, ""}});
}

}

TEST_CASE("reachability with a barrier") {
    DirectedMultigraph path(3, {{0, 1, ""}, {1, 2, ""}});
    CHECK(reachable_without_passing(path, 0, 1, Direction::forward) ==
          std::set<VertexId>{0, 1});
    CHECK(reachable_without_passing(path, 2, 1, Direction::backward) ==
          std::set<VertexId>{1, 2});
    CHECK(reachable_from(path, 0) == std::set<VertexId>{0, 1, 2});
    CHECK(reachable_from(path, 2) == std::set<VertexId>{2});

    DirectedMultigraph g = diamond();
    // The barrier blocks only paths through it; 0->2->3 bypasses vertex 1.
    CHECK(reachable_without_passing(g, 0, 1, Direction::forward) ==
          std::set<VertexId>{0, 1, 2, 3});
    CHECK(reachable_without_passing(g, 0, 3, Direction::forward) ==
          std::set<VertexId>{0, 1, 2, 3});

    CHECK_THROWS_AS(reachable_without_passing(g, 0, 0, Direction::forward), UsageError);
    CHECK_THROWS_AS(reachable_from(g, 9), UsageError);
}

TEST_CASE("diamond has exactly one superbubble") {
    DirectedMultigraph g = diamond();
    SuperbubbleCheck c = check_superbubble(g, 0, 3);
    CHECK(c.reachability);
    CHECK(c.matching);
    CHECK(c.acyclicity);
    CHECK(c.minimality);
    CHECK(c.ok());
    CHECK(c.vertex_set == std::set<VertexId>{0, 1, 2, 3});

    // Every other ordered pair fails at least one condition.
    for (VertexId s = 0; s < 4; ++s) {
        for (VertexId t = 0; t < 4; ++t) {
            if (s == t || (s == 0 && t == 3)) continue;
            CHECK(!check_superbubble(g, s, t).ok());
        }
    }
    CHECK(!check_superbubble(g, 3, 0).reachability);
    CHECK(!check_superbubble(g, 1, 3).matching);
}

TEST_CASE("a single edge forms a two-vertex superbubble") {
    DirectedMultigraph g(2, {{0, 1, ""}});
    CHECK(check_superbubble(g, 0, 1).ok());
}

TEST_CASE("parallel edges form a two-vertex superbubble") {
    DirectedMultigraph g(2, {{0, 1, "A"}, {0, 1, "C"}});
    SuperbubbleCheck c = check_superbubble(g, 0, 1);
    CHECK(c.ok());
    CHECK(c.vertex_set == std::set<VertexId>{0, 1});
}

TEST_CASE("a two-cycle fails acyclicity") {
    DirectedMultigraph g(2, {{0, 1, ""}, {1, 0, ""}});
    SuperbubbleCheck c = check_superbubble(g, 0, 1);
    CHECK(c.reachability);
    CHECK(c.matching);
    CHECK(!c.acyclicity);
    CHECK(!c.ok());
}

TEST_CASE("a self-loop on the exit fails acyclicity") {
    DirectedMultigraph g(2, {{0, 1, ""}, {1, 1, ""}});
    SuperbubbleCheck c = check_superbubble(g, 0, 1);
    CHECK(c.matching);
    CHECK(!c.acyclicity);
}

TEST_CASE("a tip hanging off the region breaks the matching") {
    // 0 -> 1, 0 -> 2 -> 3: vertex 1 dead-ends, so no pair anchored at 0 works.
    DirectedMultigraph g(4, {{0, 1, ""}, {0, 2, ""}, {2, 3, ""}});
    CHECK(!check_superbubble(g, 0, 3).matching);
    CHECK(!check_superbubble(g, 0, 2).matching);
    CHECK(check_superbubble(g, 2, 3).ok());
    CHECK(enumerate_brute_force(g) == std::vector<Superbubble>{{2, 3, {}}});
}

TEST_CASE("the outer pair of nested regions fails minimality") {
    DirectedMultigraph g = two_diamonds();
    SuperbubbleCheck outer = check_superbubble(g, 0, 6);
    CHECK(outer.reachability);
    CHECK(outer.matching);
    CHECK(outer.acyclicity);
    CHECK(!outer.minimality);

    std::vector<Superbubble> expected = {{0, 3, {1, 2}}, {3, 6, {4, 5}}};
    CHECK(enumerate_brute_force(g) == expected);
}

TEST_CASE("check rejects identical endpoints and bad ids") {
    DirectedMultigraph g = diamond();
    CHECK_THROWS_AS(check_superbubble(g, 1, 1), UsageError);
    CHECK_THROWS_AS(check_superbubble(g, 0, 7), UsageError);
}

TEST_CASE("brute force refuses oversized graphs") {
    DirectedMultigraph g(17, {});
    CHECK_THROWS_AS(enumerate_brute_force(g), UsageError);
    CHECK(enumerate_brute_force(g, 17).empty());
}

TEST_CASE("brute force output is sorted by entrance") {
    DirectedMultigraph g = two_diamonds();
    auto found = enumerate_brute_force(g);
    REQUIRE(found.size() == 2);
    CHECK(found[0].entrance < found[1].entrance);
    CHECK(found[0].interior == std::vector<VertexId>{1, 2});
    CHECK(found[0].size() == 4);
}
