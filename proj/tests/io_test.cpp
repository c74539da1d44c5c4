#include <gtest/gtest.h>

#include <universe/universe.hpp>

#include "fixtures.hpp"

using namespace universe;

namespace {

std::string sample(const std::string& rel) { return std::string(SAMPLES_DIR) + "/" + rel; }

GraphPtr round_trip(const GraphPtr& g) {
  json j = graph_to_json(*g);
  return graph_from_json(parse_json_text(j.dump(2), "round trip"));
}

template <class F>
std::string error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.what();
  }
  return "";
}

}  // namespace

TEST(Io, SampleGraphsRoundTrip) {
  for (auto name : {"succ_twice", "copy_pair", "greater", "apply_const", "iter_succ"}) {
    json j = load_json(sample(std::string("graphs/") + name + ".json"));
    GraphPtr g = graph_from_json(j);
    EXPECT_TRUE(check(g->data()).empty()) << name;
    GraphPtr h = round_trip(g);
    EXPECT_TRUE(graph_equal(*g, *h)) << name;
    EXPECT_EQ(graph_to_json(*h), graph_to_json(*g)) << name;
  }
}

TEST(Io, LibraryGraphsRoundTrip) {
  const TypeExpr N = TypeExpr::nat();
  GraphPtr gt = relation_graph(parse_relation("gt(_1;_2)"), 2, "gt");
  GraphPtr gt1 = relation_graph(parse_relation("gt(_1;3)"), 1);
  std::vector<GraphPtr> gs{build_rec(N),         grzegorczyk_iterator(N), forall_exists_graph(),
                           tree_add_graph(),     tree_del_graph(),        bounded_search_g(toy_enumeration(), nat_equality()),
                           l_plus(gt1, 3),       lem_build(gt),           fixtures::alternating_sequence()};
  for (const auto& g : gs) {
    GraphPtr h = round_trip(g);
    EXPECT_TRUE(graph_equal(*g, *h)) << g->data().name;
    EXPECT_EQ(h->signature(), g->signature());
  }
  // the round-tripped Rec still computes
  GraphPtr rec = round_trip(build_rec(N));
  auto s = fixtures::sequences()[2];
  Value f = evaluate(rec, {Value::nat(4), s.seq}).values()[0];
  EXPECT_EQ(apply_nat(f, 1), reference::grzegorczyk(1, s.fn, 5));
}

TEST(Io, ValuesRoundTrip) {
  TypeExpr sum = parse_type("(N + (N x N))");
  std::vector<Value> vs{Value::nat(7),
                        Value::pair(Value::nat(1), Value::pair(Value::nat(2), Value::nat(3))),
                        Value::tagged(Side::Right, Value::pair(Value::nat(4), Value::nat(5)), sum),
                        Value::op(fixtures::succ_graph()),
                        Value::type(parse_type("(N -> N)")),
                        Value::proof(witness::trichotomy(RelKind::Greater, 5, 3, 3)),
                        Value::continuum(parse_grid("#.\n##\n"))};
  for (const auto& v : vs) {
    json j = value_to_json(v);
    Value w = value_from_json(json::parse(j.dump()), "value");
    EXPECT_TRUE(value_equal(v, w)) << j.dump();
  }
  EXPECT_THROW(value_from_json(json(0), "value"), ParseError);
  EXPECT_THROW(value_from_json(json::parse(R"j({"left": 3, "type": "(N x N)"})j"), "value"), ParseError);
  EXPECT_THROW(value_from_json(json::parse(R"j({"left": [1, 2], "type": "(N + N)"})j"), "value"), ParseError);
}

TEST(Io, TypesRoundTrip) {
  for (auto text : {"N", "(N x (N -> N))", "(N; N -> (N + N))", "(N -> Types1)", "(C x N)"}) {
    TypeExpr t = parse_type(text);
    EXPECT_EQ(type_from_json(type_to_json(t), "type"), t) << text;
  }
  for (auto text : {"gt(_1;3)", "not(eq(2;2))", "and(lt(1;2); gt(3;1))", "or(eq(1;1); pi(_1; gt(_1;2)))"}) {
    TypeExpr t = parse_relation(text);
    EXPECT_EQ(type_from_json(type_to_json(t), "type"), t) << text;
  }
  TypeExpr q = forall_exists_graph()->output_types()[0];
  json j = type_to_json(q);
  EXPECT_TRUE(j.is_object());
  EXPECT_EQ(type_from_json(json::parse(j.dump()), "type"), q);
}

TEST(Io, WitnessesRoundTrip) {
  using namespace witness;
  std::vector<Witness> ws{axiom("reflexivity", {3}), trichotomy(RelKind::Lesser, 2, 9, 2),
                          both(left(axiom("a", {})), right(trichotomy(RelKind::Equal, 4, 4, 4))),
                          bounded({axiom("x", {1}), axiom("x", {2})}), exists(5, axiom("succ_greater", {5}))};
  for (const auto& w : ws) {
    json j = witness_to_json(w);
    EXPECT_TRUE(witness_equal(w, witness_from_json(json::parse(j.dump()), "w"))) << j.dump();
  }
  EXPECT_THROW(witness_from_json(json::parse(R"j({"kind": "hunch"})j"), "w"), ParseError);
}

TEST(Io, ErrorsCarryTheirLocation) {
  std::string e = error_of([] { load_json(sample("graphs/malformed.json")); });
  EXPECT_NE(e.find("line 4"), std::string::npos) << e;
  EXPECT_THROW(load_json(sample("graphs/malformed.json")), ParseError);
  EXPECT_THROW(read_file(sample("graphs/missing.json")), IoError);

  json bad = json::parse(R"j({"nodes": [{"id": "x", "kind": "input", "params": {"type": "(N x"}}]})j");
  e = error_of([&] { graph_from_json(bad); });
  EXPECT_NE(e.find("graph.nodes[0].params.type"), std::string::npos) << e;

  json unknown = json::parse(R"j({"nodes": [{"id": "x", "kind": "teleport"}]})j");
  e = error_of([&] { graph_from_json(unknown); });
  EXPECT_NE(e.find("graph.nodes[0].kind"), std::string::npos) << e;

  json wire = json::parse(R"j({"nodes": [{"id": "x", "kind": "input", "params": {"type": "N"}}],
                              "wires": [{"from": ["x", 0], "to": ["y", 0]}]})j");
  e = error_of([&] { graph_from_json(wire); });
  EXPECT_NE(e.find("graph.wires[0].to"), std::string::npos) << e;
  EXPECT_NE(e.find("'y'"), std::string::npos) << e;
}

TEST(Io, ViolatingSamplesParseButFailTheCheck) {
  for (auto name : {"bad_double_consumption", "bad_dangling", "bad_type_mismatch", "bad_cycle", "bad_missing_copy"}) {
    GraphData d = graph_data_from_json(load_json(sample(std::string("graphs/") + name + ".json")), "graph");
    EXPECT_FALSE(check(d).empty()) << name;
    EXPECT_THROW(Graph::make(d), CheckError) << name;
  }
}

TEST(Io, Grids) {
  auto c = parse_grid("#..#\n....\n.##.\n#..#\n");
  EXPECT_EQ(c.side(), 4);
  EXPECT_EQ(c.active_count(), 6u);
  EXPECT_TRUE(c.active({1, 1}));
  EXPECT_FALSE(c.active({1, 2}));
  EXPECT_EQ(parse_grid(grid_to_text(c)), c);
  EXPECT_EQ(continuum_from_json(json::parse(continuum_to_json(c).dump())), c);
  EXPECT_EQ(load_continuum_text(R"j({"grid": ["#..#", "....", ".##.", "#..#"]})j"), c);

  std::string e = error_of([] { parse_grid("##\n#x\n"); });
  EXPECT_NE(e.find("line 2"), std::string::npos) << e;
  e = error_of([] { parse_grid("##\n#\n"); });
  EXPECT_NE(e.find("row 2"), std::string::npos) << e;
  EXPECT_THROW(parse_grid("###\n###\n###\n"), ParseError);
  EXPECT_THROW(parse_grid(""), ParseError);
  e = error_of([] { continuum_from_json(json::parse(R"j({"dim": 2, "resolution": 1, "active": [[1, 3]]})j")); });
  EXPECT_NE(e.find("continuum.active[0]"), std::string::npos) << e;

  auto cube = load_continuum_text(read_file(sample("grids/cube_diagonal.json")));
  EXPECT_EQ(cube.dim(), 3u);
  EXPECT_EQ(cube.active_count(), 2u);
  EXPECT_THROW(grid_to_text(cube), Error);
}

TEST(Io, SampleInputsEvaluate) {
  GraphPtr g = graph_from_json(load_json(sample("graphs/iter_succ.json")));
  json in = load_json(sample("inputs/iter_four_ten.json"));
  std::vector<Value> args;
  for (std::size_t i = 0; i < in.size(); ++i) args.push_back(value_from_json(in[i], "input"));
  EXPECT_EQ(evaluate(g, args).values()[0].as_nat(), 14);
}
