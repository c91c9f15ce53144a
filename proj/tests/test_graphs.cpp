#include "doctest.h"
#include "ffdist/graphs.hpp"

using namespace ffdist;

TEST_CASE("graph parsing and round-trips") {
    DistanceGraph g = parse_graph("n=4; e 0 1 l=1; e 1 2 l=2; e 2 3 l=1");
    CHECK(g.vertices() == 4);
    CHECK(g.edges().size() == 3);
    CHECK(g.is_path());
    CHECK(g.edges()[1].label == 2);

    DistanceGraph again = parse_graph(g.spec());
    CHECK(again.edges() == g.edges());
    CHECK(again.vertices() == g.vertices());

    // endpoints normalize to u < v
    DistanceGraph swapped = parse_graph("n=3; e 2 0 l=5");
    CHECK(swapped.edges()[0].u == 0);
    CHECK(swapped.edges()[0].v == 2);

    CHECK_THROWS_AS(parse_graph("e 0 1 l=1"), ConfigParseError);          // missing n
    CHECK_THROWS_AS(parse_graph("n=2; e 0 0 l=1"), ConfigParseError);     // self loop
    CHECK_THROWS_AS(parse_graph("n=2; e 0 1 l=1; e 1 0 l=2"), ConfigParseError);
    CHECK_THROWS_AS(parse_graph("n=2; e 0 5 l=1"), IndexOutOfRangeError);
    CHECK_THROWS_AS(parse_graph("n=2; x 0 1"), ConfigParseError);
    CHECK_THROWS_AS(parse_graph("n=2; e 0 1 t=1"), ConfigParseError);
}

TEST_CASE("graph shape generators") {
    DistanceGraph path = make_graph("path:3", 1);
    CHECK(path.vertices() == 4);
    CHECK(path.is_path());
    CHECK(path.is_tree());
    CHECK_FALSE(path.is_cycle());

    DistanceGraph cycle = make_graph("cycle:5", 2);
    CHECK(cycle.vertices() == 5);
    CHECK(cycle.is_cycle());
    CHECK_FALSE(cycle.is_tree());
    CHECK(cycle.edges().size() == 5);
    for (const Edge& e : cycle.edges()) CHECK(e.label == 2);

    DistanceGraph star = make_graph("star:4", 1);
    CHECK(star.is_tree());
    CHECK(star.max_degree() == 4);
    CHECK_FALSE(star.is_path());

    DistanceGraph match = make_graph("matching:3", 1);
    CHECK(match.vertices() == 6);
    CHECK(match.edges().size() == 3);
    CHECK(match.max_degree() == 1);
    CHECK_FALSE(match.connected());
    CHECK(match.isolated_count() == 0);

    DistanceGraph k4 = make_graph("complete:4", 1);
    CHECK(k4.edges().size() == 6);
    CHECK(k4.max_degree() == 3);

    DistanceGraph t1 = make_graph("random-tree:9:42", 1);
    DistanceGraph t2 = make_graph("random-tree:9:42", 1);
    DistanceGraph t3 = make_graph("random-tree:9:43", 1);
    CHECK(t1.is_tree());
    CHECK(t1.edges() == t2.edges());
    CHECK(t1.spec() != t3.spec());

    CHECK_THROWS_AS(make_graph("cycle:2", 1), ZeroParameterError);
    CHECK_THROWS_AS(make_graph("path:0", 1), ZeroParameterError);
    CHECK_THROWS_AS(make_graph("blob:3", 1), ConfigParseError);
    CHECK_THROWS_AS(make_graph("path:x", 1), ConfigParseError);
}

TEST_CASE("uniform relabeling and isolated vertices") {
    DistanceGraph g = parse_graph("n=5; e 0 1 l=1; e 1 2 l=2");
    CHECK(g.isolated_count() == 2);
    CHECK_FALSE(g.connected());
    DistanceGraph u = g.with_uniform_label(7);
    for (const Edge& e : u.edges()) CHECK(e.label == 7);
    CHECK(u.vertices() == 5);
}
