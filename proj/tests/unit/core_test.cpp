#include <doctest.h>

#include <mug/error.hpp>
#include <mug/graph.hpp>
#include <mug/json_io.hpp>

#include <cmath>

using namespace mug;

TEST_CASE("label types print and parse") {
    for (const char* s : {"bool", "num", "vec(3)", "symset", "unit", "(num,bool)", "((num,vec(2)),symset)"}) {
        LabelType t = parse_label_type(s);
        CHECK(to_string(t) == s);
    }
    CHECK(parse_label_type(" ( num , bool ) ") == LabelType::prod(LabelType::num(), LabelType::boolean()));
    CHECK_THROWS_AS(parse_label_type("vec(x)"), Error);
    CHECK_THROWS_AS(parse_label_type("(num,"), Error);
}

TEST_CASE("numeric width of products") {
    LabelType t = LabelType::prod(LabelType::num(), LabelType::prod(LabelType::vec(3), LabelType::num()));
    CHECK(t.is_numeric());
    CHECK(t.numeric_width() == 5);
    CHECK_FALSE(LabelType::prod(LabelType::num(), LabelType::boolean()).is_numeric());
}

TEST_CASE("values know their type") {
    Value p = Value::pair(Value(1.0), Value(true));
    CHECK(p.type() == LabelType::prod(LabelType::num(), LabelType::boolean()));
    CHECK(p.left().as_num() == 1.0);
    CHECK(p.right().as_bool());
    CHECK_THROWS_AS(Value(1.0).left(), Error);
    CHECK_THROWS_AS(Value(true).as_num(), Error);
    CHECK(has_type(Value(Vec{1, 2}), LabelType::vec(2)));
    CHECK_FALSE(has_type(Value(Vec{1, 2}), LabelType::vec(3)));
}

TEST_CASE("identical compares bit patterns") {
    CHECK(identical(Value(0.5), Value(0.5)));
    CHECK_FALSE(identical(Value(0.0), Value(-0.0)));
    CHECK(Value(0.0) == Value(-0.0));
    double nan = std::nan("");
    CHECK(identical(Value(nan), Value(nan)));
}

TEST_CASE("symbol sets are sorted and deduplicated") {
    SymSet s({"q", "p", "q"});
    CHECK(s.size() == 2);
    CHECK(s.items().front() == "p");
    CHECK(s.contains("q"));
    CHECK_FALSE(s.contains("r"));
}

TEST_CASE("incidence lists follow edge order") {
    Graph g(3, {{0, 1}, {2, 1}, {1, 1}, {1, 0}});
    auto in = preset(g, 1);
    REQUIRE(in.size() == 3);
    CHECK(in[0] == Incidence{0, 0});
    CHECK(in[1] == Incidence{1, 2});
    CHECK(in[2] == Incidence{2, 1});
    auto out = poset(g, 1);
    REQUIRE(out.size() == 2);
    CHECK(out[0] == Incidence{2, 1});
    CHECK(out[1] == Incidence{3, 0});
    CHECK_THROWS_AS(preset(g, 3), Error);
}

TEST_CASE("graphs reject bad edges") {
    CHECK_THROWS_AS(Graph(2, {{0, 2}}), Error);
    CHECK_THROWS_AS(Graph(2, {{0, 1}, {1, 0}}, {Value(1.0), Value(true)}), Error);
    CHECK_THROWS_AS(Graph(2, {{0, 1}}, {Value(1.0), Value(2.0)}), Error);
}

TEST_CASE("labelings pair and project") {
    NodeLabeling a({Value(1.0), Value(2.0)}, LabelType::num());
    NodeLabeling b({Value(true), Value(false)}, LabelType::boolean());
    NodeLabeling p = pair_labelings(a, b);
    CHECK(p.type() == LabelType::prod(LabelType::num(), LabelType::boolean()));
    CHECK(identical(project_left(p), a));
    CHECK(identical(project_right(p), b));
    CHECK_THROWS_AS(project_left(a), Error);
    CHECK_THROWS_AS(NodeLabeling::infer({Value(1.0), Value(true)}), Error);
}

TEST_CASE("graph JSON round-trips") {
    auto j = nlohmann::json::parse(R"({"n": 3,
        "nodes": [{"id": 2, "label": {"pair": [1.5, ["b", "a"]]}},
                  {"id": 0, "label": {"pair": [0, []]}},
                  {"id": 1, "label": {"pair": [-2, ["c"]]}}],
        "edges": [{"src": 0, "dst": 1, "label": [1, 2]}, {"src": 2, "dst": 2, "label": [0, 0]}]})");
    LabeledGraph lg = graph_from_json(j);
    CHECK(lg.graph.node_count() == 3);
    CHECK(lg.graph.edge_type() == LabelType::vec(2));
    CHECK(lg.labels.type() == LabelType::prod(LabelType::num(), LabelType::symset()));
    CHECK(lg.labels[2].right().as_symset().contains("a"));

    LabeledGraph again = graph_from_json(graph_to_json(lg.graph, lg.labels));
    CHECK(identical(again.labels, lg.labels));
    CHECK(again.graph.edges() == lg.graph.edges());
}

TEST_CASE("graph JSON is validated") {
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(R"({"n": 2, "nodes": [{"id": 0, "label": 1}]})")), Error);
    CHECK_THROWS_AS(graph_from_json(nlohmann::json::parse(
                        R"({"n": 1, "nodes": [{"id": 0, "label": 1}, {"id": 0, "label": 2}]})")),
                    Error);
    CHECK_THROWS_AS(read_graph_file("/nonexistent/g.json"), Error);
    try {
        read_graph_file("/nonexistent/g.json");
    } catch (const Error& e) {
        CHECK(e.kind() == ErrorKind::Io);
    }
}

TEST_CASE("empty graph") {
    LabeledGraph lg = graph_from_json(nlohmann::json::parse(R"({"n": 0, "nodes": [], "edges": []})"));
    CHECK(lg.graph.node_count() == 0);
    CHECK(lg.labels.size() == 0);
}
