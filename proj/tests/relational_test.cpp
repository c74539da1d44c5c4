#include <gtest/gtest.h>

#include <functional>
#include <map>
#include <random>

#include <universe/universe.hpp>

#include "oracles.hpp"
#include "random_relations.hpp"

using namespace universe;

namespace {

const TypeExpr N = TypeExpr::nat();
constexpr std::int64_t kBound = randrel::kBound;
using randrel::Gen;
using randrel::random_relation;

bool decide(const TypeExpr& t) {
  RelResult r = eval_relational(t, kBound);
  EXPECT_NE(r.decision, Decision::Undecidable) << to_string(t);
  if (r.inhabited()) {
    EXPECT_TRUE(check_witness(t, r.witness, kBound)) << to_string(t);
  }
  return r.inhabited();
}

}  // namespace

TEST(Trichotomy, ExactlyOneOutcome) {
  for (std::int64_t n = 1; n <= 50; ++n)
    for (std::int64_t k = 1; k <= 50; ++k) {
      int inhabited = 0;
      for (RelKind r : {RelKind::Equal, RelKind::Lesser, RelKind::Greater}) {
        auto res = eval_relational(TypeExpr::rel_atom(r, n, k));
        bool expect = r == RelKind::Equal ? n == k : r == RelKind::Lesser ? n < k : n > k;
        EXPECT_EQ(res.inhabited(), expect);
        inhabited += res.inhabited();
      }
      EXPECT_EQ(inhabited, 1);
      EXPECT_EQ(procedure_n(n, k).witness->rounds, std::min(n, k));
    }
}

TEST(Witness, ForgedWitnessesAreRejected) {
  auto lt = TypeExpr::rel_atom(RelKind::Lesser, 2, 5);
  auto w = eval_relational(lt).witness;
  EXPECT_TRUE(check_witness(lt, w));
  EXPECT_FALSE(check_witness(TypeExpr::rel_atom(RelKind::Lesser, 2, 6), w));
  EXPECT_FALSE(check_witness(TypeExpr::rel_atom(RelKind::Greater, 5, 2), w));
  EXPECT_FALSE(check_witness(TypeExpr::neg(lt), w));
  EXPECT_FALSE(check_witness(lt, witness::trichotomy(RelKind::Lesser, 2, 5, 4)));
  EXPECT_FALSE(check_witness(lt, nullptr));
  // the axiom route proves the flipped atom
  auto ax = witness::axiom("lt_to_gt", {2, 5});
  EXPECT_FALSE(check_witness(TypeExpr::rel_atom(RelKind::Greater, 5, 2), ax));
  auto ax2 = std::make_shared<WitnessNode>(*ax);
  ax2->parts = {w};
  EXPECT_TRUE(check_witness(TypeExpr::rel_atom(RelKind::Greater, 5, 2), ax2));
}

TEST(Algebra, RandomInstancesAgreeWithModel) {
  std::mt19937 rng(17);
  for (int i = 0; i < 200; ++i) {
    Gen g = random_relation(rng, 4, 0);
    TypeExpr r = parse_relation(g.text);
    bool truth = g.truth({});
    EXPECT_EQ(decide(r), truth) << g.text;
    EXPECT_EQ(decide(negate(r)), !truth) << g.text;
    EXPECT_EQ(decide(negate(negate(r))), truth) << g.text;
    EXPECT_EQ(decide(TypeExpr::neg(TypeExpr::neg(r))), truth) << g.text;
    EXPECT_TRUE(decide(lem(r))) << g.text;
    EXPECT_TRUE(decide(equiv(r, negate(negate(r))))) << g.text;
  }
}

TEST(Algebra, UnboundedQuantifiersAreUndecidable) {
  TypeExpr t = parse_relation("pi(_1; gt(_1; 3))");
  EXPECT_EQ(eval_relational(t).decision, Decision::Undecidable);
  EXPECT_TRUE(eval_relational(t, 10).empty());
  EXPECT_TRUE(eval_relational(negate(t), 10).inhabited());
  EXPECT_EQ(eval_relational(parse_type("lt(_1;4)")).decision, Decision::Undecidable);
}

TEST(Text, ParseAndHoles) {
  TypeExpr t = parse_relation("and(lt(_1;_3); sigma(_2; eq(_2;_1)))");
  EXPECT_EQ(free_holes(t), (std::set<unsigned>{1, 3}));
  EXPECT_EQ(template_arity(t), 3u);
  TypeExpr bound = instantiate(t, {{1, 2}, {3, 5}});
  EXPECT_TRUE(free_holes(bound).empty());
  EXPECT_TRUE(eval_relational(bound, 4).inhabited());
  EXPECT_THROW(parse_relation("pi(3; eq(1;1))"), ParseError);
  EXPECT_THROW(parse_relation("xor(eq(1;1); eq(1;1))"), ParseError);
  EXPECT_THROW(parse_relation("eq(1;1) extra"), ParseError);
}

// --- combinators -------------------------------------------------------------

namespace {

using randrel::unary_relations;

bool decide_op(const GraphPtr& g, std::vector<std::int64_t> args) { return decide_at(g, args, kBound).inhabited(); }

}  // namespace

TEST(Windows, LPlusAndLTimesMatchBruteForce) {
  for (const auto& u : unary_relations()) {
    GraphPtr r = relation_graph(parse_relation(u.text), 1);
    for (std::int64_t k = 1; k <= 5; ++k) {
      GraphPtr lp = l_plus(r, k), lt = l_times(r, k);
      for (std::int64_t n = 1; n <= 8; ++n) {
        EXPECT_EQ(decide_op(lp, {n}), oracle::window_or(u.truth, k, n)) << u.text << " k=" << k << " n=" << n;
        EXPECT_EQ(decide_op(lt, {n}), oracle::window_and(u.truth, k, n)) << u.text << " k=" << k << " n=" << n;
      }
    }
  }
}

TEST(Windows, QPlusShiftsTheFirstRelation) {
  GraphPtr r1 = relation_graph(parse_relation("eq(_1;3)"), 1);
  GraphPtr r2 = relation_graph(parse_relation("eq(_1;5)"), 1);
  GraphPtr q = q_plus(r1, r2);
  EXPECT_EQ(to_string(relation_at(q, {2})), "or(eq(3;3); eq(2;5))");
  for (std::int64_t i = 1; i <= 8; ++i) {
    EXPECT_EQ(decide_op(q, {i}), i + 1 == 3 || i == 5);
    EXPECT_EQ(decide_op(q_times(r1, r2), {i}), i + 1 == 3 && i == 5);
  }
}

TEST(Windows, NestedQuantifierCompose) {
  struct Binary {
    const char* text;
    std::function<bool(std::int64_t, std::int64_t)> truth;
  };
  for (const Binary& b : {Binary{"gt(_1;_2)", [](auto i, auto j) { return i > j; }},
                          Binary{"or(eq(_1;_2); eq(_1;4))", [](auto i, auto j) { return i == j || i == 4; }},
                          Binary{"not(eq(_2;3))", [](auto, auto j) { return j != 3; }}}) {
    GraphPtr p = nested_quantifier_compose(relation_graph(parse_relation(b.text), 2));
    for (std::int64_t n = 1; n <= 5; ++n) {
      Value row = evaluate(p, {Value::nat(n)}).values()[0];
      for (std::int64_t k = 1; k <= 5; ++k) {
        bool expect = oracle::window_or([&](std::int64_t i) { return oracle::window_and([&](std::int64_t j) { return b.truth(i, j); }, 1, k); }, 1, n);
        TypeExpr t = apply_op(row, {Value::nat(k)})[0].as_type();
        EXPECT_EQ(eval_relational(t).inhabited(), expect) << b.text << " n=" << n << " k=" << k;
      }
    }
  }
}

TEST(Equivalence, GreaterAgainstFlippedLesser) {
  GraphPtr gt = relation_graph(parse_relation("gt(_1;_2)"), 2, "gt");
  GraphPtr lt = permute_inputs(relation_graph(parse_relation("lt(_1;_2)"), 2, "lt"), {1, 0});
  GraphPtr e = equiv_build(gt, lt);
  for (std::int64_t n = 1; n <= 20; ++n)
    for (std::int64_t k = 1; k <= 20; ++k) EXPECT_TRUE(decide_op(e, {n, k}));
  // not equivalent without the flip
  GraphPtr bad = equiv_build(gt, relation_graph(parse_relation("lt(_1;_2)"), 2));
  EXPECT_FALSE(decide_op(bad, {3, 2}));
}

TEST(Equivalence, LemBuildAlwaysHolds) {
  for (const auto& u : unary_relations()) {
    GraphPtr l = lem_build(relation_graph(parse_relation(u.text), 1));
    for (std::int64_t i = 1; i <= 10; ++i) EXPECT_TRUE(decide_op(l, {i}));
  }
  EXPECT_THROW(equiv_build(relation_graph(parse_relation("eq(_1;1)"), 1), relation_graph(parse_relation("eq(_1;_2)"), 2)),
               TypeError);
}
