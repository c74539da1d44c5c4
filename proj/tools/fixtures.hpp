#pragma once

// Operation values and sequences shared by the reproductions and the tests,
// each paired with its plain-integer meaning.

#include <string>
#include <vector>

#include <universe/universe.hpp>

#include "reference.hpp"

namespace fixtures {

using namespace universe;

inline GraphPtr succ_graph() {
  GraphBuilder b("succ");
  auto x = b.input(TypeExpr::nat());
  b.output(b.add1(prim::succ(), {x}));
  return b.build();
}

struct NatOp {
  std::string name;
  Value op;
  reference::Fn fn;
};

// Succ, iter(2; Succ) and Succ patched by Change at 5 -> 1.
inline std::vector<NatOp> nat_ops() {
  const TypeExpr N = TypeExpr::nat();
  Value succ = Value::op(succ_graph());
  Value twice = Value::op(iter_graph(succ_graph(), 2));
  Value patched = Value::op(change_graph(N, 5, Value::nat(1), succ));
  return {{"succ", succ, [](std::int64_t x) { return x + 1; }},
          {"iter2_succ", twice, [](std::int64_t x) { return x + 2; }},
          {"change5_succ", patched, [](std::int64_t x) { return x == 5 ? 1 : x + 1; }}};
}

struct Sequence {
  std::string name;
  Value seq;  // N -> (N -> N)
  std::function<reference::Fn(std::int64_t)> fn;
};

// i -> succ for odd i, iter(2; succ) for even i: iterate a swap i times
// on the pair (iter2, succ) and keep the first component.
inline GraphPtr alternating_sequence() {
  const TypeExpr N = TypeExpr::nat(), E = endo(N), P = TypeExpr::product(E, E);
  GraphBuilder sw("swap");
  {
    auto p = sw.input(P);
    auto xy = sw.add(prim::proj(E, E), {p});
    sw.output(sw.add1(prim::join(E, E), {xy[1], xy[0]}));
  }
  GraphBuilder b("alternating");
  auto i = b.input(N);
  auto it = b.add1(prim::iter(P), {i, b.op(sw.build())});
  auto start = b.constant(Value::pair(Value::op(iter_graph(succ_graph(), 2)), Value::op(succ_graph())), P);
  auto xy = b.add(prim::proj(E, E), {b.add1(prim::apply(P, P), {it, start})});
  b.add(prim::drop(E), {xy[1]});
  b.output(xy[0]);
  return b.build();
}

inline std::vector<Sequence> sequences() {
  const TypeExpr N = TypeExpr::nat(), E = endo(N);
  Value succ = Value::op(succ_graph());
  Value twice = Value::op(iter_graph(succ_graph(), 2));
  Value constant = Value::op(const_graph(succ, E, N));
  Value patched = Value::op(change_graph(E, 3, twice, constant));
  reference::Fn plus1 = [](std::int64_t x) { return x + 1; };
  reference::Fn plus2 = [](std::int64_t x) { return x + 2; };
  return {{"const_succ", constant, [=](std::int64_t) { return plus1; }},
          {"alternating", Value::op(alternating_sequence()),
           [=](std::int64_t i) { return i % 2 == 1 ? plus1 : plus2; }},
          {"change3_const", patched, [=](std::int64_t i) { return i == 3 ? plus2 : plus1; }}};
}

}  // namespace fixtures
