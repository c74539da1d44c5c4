#include <gtest/gtest.h>

#include <random>

#include <universe/universe.hpp>

#include "oracles.hpp"
#include "random_graphs.hpp"

using namespace universe;

namespace {

const TypeExpr N = TypeExpr::nat();

GraphPtr nat_op(const Primitive& p, const char* name) {
  GraphBuilder b(name);
  auto x = b.input(N);
  b.output(b.add1(p, {x}));
  return b.build();
}

// cond(x) = lt(x; k)
GraphPtr below(std::int64_t k) { return relation_graph(instantiate(parse_type("lt(_1;_2)"), {{2, k}}), 1, "below"); }

}  // namespace

TEST(Evaluate, RandomGraphsMatchTheirModel) {
  std::mt19937 rng(5);
  for (int i = 0; i < 60; ++i) {
    auto s = randgraph::make(rng, 2, 2, 14);
    for (std::int64_t a = 1; a <= 6; ++a)
      for (std::int64_t b = 1; b <= 6; ++b) EXPECT_EQ(randgraph::run(s.graph, {a, b}), s.model({a, b}));
  }
}

TEST(Evaluate, ValuesAreConserved) {
  std::mt19937 rng(9);
  for (int i = 0; i < 40; ++i) {
    auto s = randgraph::make(rng, 3, 2, 12);
    auto r = evaluate(s.graph, {Value::nat(2), Value::nat(3), Value::nat(4)});
    EXPECT_TRUE(r.all_active());
    EXPECT_EQ(r.produced, r.consumed);
  }
}

TEST(Evaluate, ArgumentCountAndTypesChecked) {
  auto inc = nat_op(prim::succ(), "succ");
  EXPECT_THROW(evaluate(inc, {}), EvalError);
  EXPECT_THROW(evaluate(inc, {Value::type(N)}), TypeError);
}

TEST(Evaluate, ZeroInputGraph) {
  GraphBuilder b("seven");
  b.output(b.add1(prim::succ(), {b.nat(6)}));
  EXPECT_EQ(evaluate(b.build(), {}).values()[0].as_nat(), 7);
}

TEST(Branches, IteTakesOneSideAndPrunesTheOther) {
  GraphBuilder b("branch");
  auto x = b.input(N);
  auto op = b.add1(prim::if_then_else({N}, {N}, {N}, 1),
                   {b.op(below(5)), b.op(nat_op(prim::succ(), "succ")), b.op(nat_op(prim::pred(), "pred"))});
  auto out = b.add(prim::apply({N}, {TypeExpr::excl(N, N)}), {op, x});
  b.output_exclusive({out[0]}, {out[1]});
  GraphPtr g = b.build();
  auto lo = evaluate(g, {Value::nat(2)});
  EXPECT_EQ(lo.outputs[0]->as_nat(), 3);
  EXPECT_FALSE(lo.outputs[1].has_value());
  auto hi = evaluate(g, {Value::nat(9)});
  EXPECT_FALSE(hi.outputs[0].has_value());
  EXPECT_EQ(hi.outputs[1]->as_nat(), 8);
}

TEST(Branches, MergeRejoinsAndDownstreamPruningPropagates) {
  GraphBuilder b("merged");
  auto x = b.input(N);
  auto op = b.add1(prim::if_then_else({N}, {N}, {N}, 1),
                   {b.op(below(5)), b.op(nat_op(prim::succ(), "succ")), b.op(nat_op(prim::pred(), "pred"))});
  auto out = b.add(prim::apply({N}, {TypeExpr::excl(N, N)}), {op, x});
  b.output(b.add1(prim::merge({N}), out));
  GraphPtr g = b.build();
  for (std::int64_t a = 1; a <= 10; ++a) EXPECT_EQ(evaluate(g, {Value::nat(a)}).values()[0].as_nat(), a < 5 ? a + 1 : a - 1);
}

TEST(Branches, NonRelationalConditionIsAnError) {
  GraphBuilder cb("types");
  auto x = cb.input(N);
  cb.add(prim::drop(N), {x});
  cb.output(cb.constant(Value::type(N), TypeExpr::types(0)));
  Value cond = Value::op(cb.build());
  Value inc = Value::op(nat_op(prim::succ(), "succ"));
  Value g = Value::op(ite_graph({N}, {N}, {N}, 0, cond, inc, inc));
  EXPECT_THROW(apply_op(g, {Value::nat(1)}), EvalError);
}

TEST(Branches, UndecidableConditionIsAnError) {
  // forall i. gt(i; x) has no bound to check against
  GraphPtr fam = template_family(parse_type("gt(_1;_2)"), 1);
  GraphBuilder cb("forall");
  auto x = cb.input(N);
  cb.add(prim::drop(N), {x});
  cb.output(cb.constant(Value::type(TypeExpr::pi(fam, N, 1)), TypeExpr::types(2)));
  Value cond = Value::op(cb.build());
  Value inc = Value::op(nat_op(prim::succ(), "succ"));
  Value g = Value::op(ite_graph({N}, {N}, {N}, 2, cond, inc, inc));
  EXPECT_THROW(apply_op(g, {Value::nat(1)}), EvalError);
}

TEST(While, StopsAtFirstFailedCheck) {
  Value inc = Value::op(nat_op(prim::succ(), "succ"));
  Value cond = Value::op(below(6));
  for (std::int64_t n = 1; n <= 8; ++n)
    for (std::int64_t a = 1; a <= 8; ++a) {
      auto out = evaluate(while_graph({N}, 1, n, cond, inc), {Value::nat(a)});
      // model: up to n rounds of (check x < 6, then x + 1)
      std::int64_t x = a;
      bool all = true;
      for (std::int64_t i = 0; i < n; ++i) {
        if (!(x < 6)) {
          all = false;
          break;
        }
        ++x;
      }
      ASSERT_EQ(out.outputs[0].has_value(), all);
      EXPECT_EQ((all ? out.outputs[0] : out.outputs[1])->as_nat(), x);
    }
}

TEST(Transforms, CurryUncurryRoundTrip) {
  std::mt19937 rng(21);
  for (int i = 0; i < 20; ++i) {
    auto s = randgraph::make(rng, 3, 1, 10);
    GraphPtr c = curry_transform(s.graph, 1 + static_cast<std::size_t>(i % 2));
    GraphPtr u = uncurry_transform(c);
    GraphPtr cu = curry_transform(uncurry_transform(c), 1 + static_cast<std::size_t>(i % 2));
    for (std::int64_t a = 1; a <= 4; ++a)
      for (std::int64_t b = 1; b <= 4; ++b)
        for (std::int64_t d = 1; d <= 4; ++d) {
          EXPECT_EQ(randgraph::run(u, {a, b, d}), s.model({a, b, d}));
          std::vector<Value> head{Value::nat(a)};
          std::vector<Value> tail{Value::nat(b), Value::nat(d)};
          if (i % 2) {
            head.push_back(Value::nat(b));
            tail = {Value::nat(d)};
          }
          Value h1 = evaluate(c, head).values()[0];
          Value h2 = evaluate(cu, head).values()[0];
          EXPECT_EQ(apply_op(h1, tail)[0].as_nat(), apply_op(h2, tail)[0].as_nat());
        }
  }
}

TEST(Transforms, PartialApplyAndPermute) {
  std::mt19937 rng(4);
  auto s = randgraph::make(rng, 3, 1, 12);
  GraphPtr p = partial_apply(s.graph, {{1, Value::nat(5)}});
  GraphPtr q = permute_inputs(s.graph, {2, 0, 1});
  for (std::int64_t a = 1; a <= 5; ++a)
    for (std::int64_t b = 1; b <= 5; ++b) {
      EXPECT_EQ(randgraph::run(p, {a, b}), s.model({a, 5, b}));
      EXPECT_EQ(randgraph::run(q, {a, b, 3}), s.model({b, 3, a}));
    }
  EXPECT_THROW(partial_apply(s.graph, {{0, Value::nat(1)}, {0, Value::nat(2)}}), TypeError);
  EXPECT_THROW(partial_apply(s.graph, {{0, Value::type(N)}}), TypeError);
  EXPECT_THROW(permute_inputs(s.graph, {0, 0, 1}), TypeError);
}

TEST(Transforms, ComposeGraphsPairsOutputsToInputs) {
  GraphPtr inc = nat_op(prim::succ(), "succ");
  GraphBuilder b("add");
  auto x = b.input(N);
  auto y = b.input(N);
  b.output(b.add1(prim::apply(N, N), {b.add1(prim::iter(N), {x, b.op(inc)}), y}));
  GraphPtr add = b.build();
  GraphPtr g = compose_graphs(inc, add, {{0, 1}});  // add(y; succ(x)) with inputs (x; y)
  for (std::int64_t x0 = 1; x0 <= 4; ++x0)
    for (std::int64_t y0 = 1; y0 <= 4; ++y0) EXPECT_EQ(randgraph::run(g, {x0, y0})[0], x0 + 1 + y0);
}

TEST(Iter, MatchesRepeatedApplication) {
  GraphPtr inc = nat_op(prim::succ(), "succ");
  Value patched = Value::op(change_graph(N, 5, Value::nat(1), Value::op(inc)));
  reference::Fn fp = [](std::int64_t x) { return x == 5 ? 1 : x + 1; };
  for (std::int64_t n = 1; n <= 12; ++n) {
    Value it = Value::op(iter_graph(patched.as_op(), n));
    for (std::int64_t a = 1; a <= 30; ++a) EXPECT_EQ(apply_nat(it, a), oracle::iterate(fp, n, a));
  }
}

TEST(Options, BoundDecidesQuantifiers) {
  GraphPtr fam = template_family(parse_type("gt(_1;4)"), 1);
  GraphBuilder b("exists");
  auto f = b.input(TypeExpr::arrow(N, TypeExpr::types(1)));
  b.output(b.add1(prim::sigma_type(N, 1), {f}));
  auto t = evaluate(b.build(), {Value::op(fam)}).values()[0].as_type();
  EXPECT_TRUE(eval_relational(t, 10).inhabited());
  EXPECT_TRUE(eval_relational(t, 3).empty());
}

TEST(Options, DepthLimit) {
  GraphPtr inc = nat_op(prim::succ(), "succ");
  GraphPtr g = inc;
  for (int i = 0; i < 12; ++i) g = compose_graphs(g, inc);
  EvalOptions o;
  o.max_depth = 3;
  EXPECT_THROW(evaluate(g, {Value::nat(1)}, o), EvalError);
  EXPECT_EQ(evaluate(g, {Value::nat(1)}).values()[0].as_nat(), 14);
}

TEST(Options, EvaluateOpValueIsApply) {
  Value inc = Value::op(nat_op(prim::succ(), "succ"));
  EXPECT_EQ(evaluate_op_value(inc, {Value::nat(41)})[0].as_nat(), 42);
}
