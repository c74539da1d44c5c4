#include <gtest/gtest.h>

#include <algorithm>
#include <random>

#include <universe/universe.hpp>

#include "random_graphs.hpp"

using namespace universe;

namespace {

const TypeExpr N = TypeExpr::nat();

bool has(const std::vector<Violation>& v, ViolationKind k) {
  return std::any_of(v.begin(), v.end(), [&](const Violation& x) { return x.kind == k; });
}

}  // namespace

TEST(Check, AcceptsLinearGraph) {
  GraphBuilder b("pair");
  auto x = b.input(N);
  auto c = b.add(prim::copy(N), {x});
  b.output(b.add1(prim::join(N, N), {c[0], b.add1(prim::succ(), {c[1]})}));
  EXPECT_TRUE(check(b.data()).empty());
  GraphPtr g = b.build();
  EXPECT_EQ(g->signature(), parse_type("(N -> (N x N))"));
}

TEST(Check, DoubleConsumption) {
  GraphBuilder b("dc");
  auto x = b.input(N);
  b.output(b.add1(prim::succ(), {x}));
  b.output(b.add1(prim::pred(), {x}));
  auto v = check(b.data());
  EXPECT_TRUE(has(v, ViolationKind::DoubleConsumption));
  EXPECT_THROW(b.build(), CheckError);
}

TEST(Check, DanglingOutputAndInput) {
  GraphBuilder b("dangling");
  auto x = b.input(N);
  auto c = b.add(prim::copy(N), {x});
  b.output(c[0]);
  EXPECT_TRUE(has(check(b.data()), ViolationKind::DanglingOutput));

  GraphData d = b.data();
  d.wires.erase(std::remove_if(d.wires.begin(), d.wires.end(), [](const Wire& w) { return w.to.node == 1; }),
                d.wires.end());
  EXPECT_TRUE(has(check(d), ViolationKind::DanglingInput));
}

TEST(Check, TypeMismatch) {
  GraphBuilder b("tm");
  auto x = b.input(N);
  auto y = b.input(N);
  b.output(b.add1(prim::succ(), {b.add1(prim::equal(), {x, y})}));
  auto v = check(b.data());
  ASSERT_TRUE(has(v, ViolationKind::TypeMismatch));
}

TEST(Check, Cycle) {
  GraphBuilder b("cyc");
  auto x = b.input(N);
  auto s1 = b.add1(prim::succ(), {x});
  auto s2 = b.add1(prim::succ(), {s1});
  b.output(s2);
  GraphData d = b.data();
  // s1 now feeds on s2 and s2's output goes nowhere else
  for (auto& w : d.wires)
    if (w.to == SocketRef{s1.node, 0}) w.from = s2;
  for (auto& w : d.wires)
    if (w.to.node == d.outputs[0]) w.from = x;
  EXPECT_TRUE(has(check(d), ViolationKind::Cycle));
}

TEST(Check, BadPortsAndEndpoints) {
  GraphBuilder b("ports");
  auto x = b.input(N);
  b.output(b.add1(prim::succ(), {x}));
  GraphData d = b.data();
  d.wires[0].from.socket = 3;
  EXPECT_FALSE(check(d).empty());
  d = b.data();
  d.wires[0].to.node = 99;
  EXPECT_FALSE(check(d).empty());
}

TEST(Check, ExclusiveSidesMustMerge) {
  // get produces (N || N); consuming only one side leaves the other dangling
  GraphBuilder b("excl");
  auto x = b.input(TypeExpr::sum(N, N));
  auto g = b.add(prim::get(N, N), {x});
  b.output_exclusive({g[0]}, {g[1]});
  GraphPtr ok = b.build();
  EXPECT_EQ(ok->output_board().size(), 1u);
  EXPECT_TRUE(ok->output_board()[0].is(TypeTag::Excl));
}

TEST(Topology, OrderRespectsWires) {
  std::mt19937 rng(3);
  for (int i = 0; i < 30; ++i) {
    auto s = randgraph::make(rng, 2 + i % 2, 2, 12);
    const auto& order = s.graph->topo_order();
    std::vector<std::size_t> pos(order.size());
    for (std::size_t k = 0; k < order.size(); ++k) pos[order[k]] = k;
    for (const auto& w : s.graph->data().wires) EXPECT_LT(pos[w.from.node], pos[w.to.node]);
  }
}

TEST(Linearity, RandomGraphsPassAndBreakWhenRewired) {
  std::mt19937 rng(11);
  for (int i = 0; i < 50; ++i) {
    auto s = randgraph::make(rng, 2, 2, 10);
    ASSERT_TRUE(check(s.graph->data()).empty());
    // point one wire at a source that is already consumed elsewhere
    GraphData d = s.graph->data();
    if (d.wires.size() < 2) continue;
    std::size_t a = rng() % d.wires.size(), c = rng() % d.wires.size();
    if (d.wires[a].from == d.wires[c].from) continue;
    d.wires[a].from = d.wires[c].from;
    EXPECT_FALSE(check(d).empty());
  }
}

TEST(Equality, StructuralNotIdentity) {
  auto g1 = randgraph::succ_op();
  auto g2 = randgraph::succ_op();
  EXPECT_TRUE(graph_equal(*g1, *g2));
  EXPECT_FALSE(g1->same_construction(*g2));
  EXPECT_FALSE(graph_equal(*g1, *iter_graph(g1, 2)));
}

TEST(Copy, CopiesAreEqualButDistinctHandles) {
  GraphBuilder b("copy_op");
  auto f = b.input(TypeExpr::arrow(N, N));
  auto c = b.add(prim::copy(TypeExpr::arrow(N, N)), {f});
  b.outputs({c[0], c[1]});
  Value op = Value::op(randgraph::succ_op());
  auto out = evaluate(b.build(), {op}).values();
  ASSERT_EQ(out.size(), 2u);
  EXPECT_TRUE(value_equal(out[0], out[1]));
  EXPECT_NE(out[0].as_op().get(), out[1].as_op().get());
  EXPECT_EQ(apply_nat(out[1], 4), 5);
}

TEST(Builder, RejectsWrongArity) {
  GraphBuilder b("arity");
  auto x = b.input(N);
  EXPECT_THROW(b.add(prim::join(N, N), {x}), TypeError);
}
