#pragma once

// Condition combinators built as construction graphs: pointwise
// equivalence and excluded middle, Q+/Qx, the windowed L+/Lx and the
// nested row/column combinator P.

#include <string>
#include <utility>
#include <vector>

#include "evaluator.hpp"
#include "relational.hpp"
#include "transforms.hpp"

namespace universe {

// N -> Types(level): the type of unary relation families.
inline TypeExpr family_type(unsigned level = 1) { return TypeExpr::arrow(TypeExpr::nat(), TypeExpr::types(level)); }

namespace detail {

inline SocketRef apply1(GraphBuilder& b, SocketRef f, SocketRef x, const TypeExpr& out) {
  return b.add1(prim::apply(TypeExpr::nat(), out), {f, x});
}

// Copies every input of `in` into two boards.
inline std::pair<std::vector<SocketRef>, std::vector<SocketRef>> copy_board(GraphBuilder& b,
                                                                            const std::vector<SocketRef>& in,
                                                                            const Board& types) {
  std::vector<SocketRef> x, y;
  for (std::size_t i = 0; i < in.size(); ++i) {
    auto c = b.add(prim::copy(types[i]), {in[i]});
    x.push_back(c[0]);
    y.push_back(c[1]);
  }
  return {x, y};
}

inline unsigned relation_level(const GraphPtr& r) {
  const auto& out = r->output_board();
  if (out.size() != 1 || !out[0].is(TypeTag::Types)) throw TypeError("'" + r->name() + "' is not a relation");
  return out[0].level();
}

}  // namespace detail

// (R; X; i) -> X(i+1) op R(i), where op is + (plus) or x.
inline GraphPtr q_graph(bool plus, unsigned level = 1) {
  const TypeExpr N = TypeExpr::nat(), T = TypeExpr::types(level), C = family_type(level);
  GraphBuilder b(plus ? "Q+" : "Qx");
  auto r = b.input(C);
  auto x = b.input(C);
  auto i = b.input(N);
  auto is = b.add(prim::copy(N), {i});
  auto next = b.add1(prim::succ(), {is[0]});
  auto tx = detail::apply1(b, x, next, T);
  auto tr = detail::apply1(b, r, is[1], T);
  b.output(b.add1(plus ? prim::type_sum(level) : prim::type_product(level), {tx, tr}));
  return b.build();
}

// Q+(R1; R2)(i) = R1(i+1) + R2(i)
inline GraphPtr q_plus(const GraphPtr& r1, const GraphPtr& r2) {
  unsigned level = detail::relation_level(r1);
  return partial_apply(q_graph(true, level), {{0, Value::op(r2)}, {1, Value::op(r1)}});
}

inline GraphPtr q_times(const GraphPtr& r1, const GraphPtr& r2) {
  unsigned level = detail::relation_level(r1);
  return partial_apply(q_graph(false, level), {{0, Value::op(r2)}, {1, Value::op(r1)}});
}

// Neutral element of the window fold: never true for +, always true for x.
inline GraphPtr neutral_family(bool plus, unsigned level = 1) {
  // TODO: lift the neutral atom for windows over quantified (level >= 2) relations
  if (level != 1) throw TypeError("window folds support level-1 relations only");
  const TypeExpr N = TypeExpr::nat();
  GraphBuilder b(plus ? "never" : "always");
  auto i = b.input(N);
  SocketRef t;
  if (plus) {
    t = b.add1(prim::lesser(), {i, b.nat(1)});
  } else {
    auto is = b.add(prim::copy(N), {i});
    t = b.add1(prim::greater(), {b.add1(prim::succ(), {is[0]}), is[1]});
  }
  b.output(t);
  return b.build();
}

// (R; k; n) -> R(k) op R(k+1) op ... op R(k+n-1), folded with Iter over
// F = curry(Q(R)) starting from the neutral family.
inline GraphPtr lbar_graph(bool plus, unsigned level = 1) {
  const TypeExpr N = TypeExpr::nat(), T = TypeExpr::types(level), C = family_type(level);
  GraphPtr q = q_graph(plus, level);
  GraphBuilder b(plus ? "L+" : "Lx");
  auto r = b.input(C);
  auto k = b.input(N);
  auto n = b.input(N);
  Board q_in{C, C, N};
  auto qr = b.add1(prim::apply(q_in, {T}, 1), {b.op(q), r});          // (X; i) -> T
  auto f = b.add1(prim::curry({C, N}, {T}, 1), {qr});                  // C -> C
  auto it = b.add1(prim::iter(C), {n, f});                             // C -> C
  auto x = b.add1(prim::apply(C, C), {it, b.op(neutral_family(plus, level))});
  b.output(detail::apply1(b, x, k, T));
  return b.build();
}

// n -> L+(R; k)(n)
inline GraphPtr l_plus(const GraphPtr& r, std::int64_t k) {
  return partial_apply(lbar_graph(true, detail::relation_level(r)), {{0, Value::op(r)}, {1, Value::nat(k)}});
}

inline GraphPtr l_times(const GraphPtr& r, std::int64_t k) {
  return partial_apply(lbar_graph(false, detail::relation_level(r)), {{0, Value::op(r)}, {1, Value::nat(k)}});
}

// L(*; 1) as an operation (N -> Types) -> (N -> Types).
inline GraphPtr l_from_one(bool plus, unsigned level = 1) {
  return curry_transform(partial_apply(lbar_graph(plus, level), {{1, Value::nat(1)}}), 1);
}

// For R: (N; N) -> Types, P(n)(k) = OR_{i<=n} AND_{j<=k} R(i; j).
inline GraphPtr nested_quantifier_compose(const GraphPtr& r) {
  const TypeExpr N = TypeExpr::nat();
  if (r->input_types().size() != 2 || !r->input_types()[0].is(TypeTag::Nat) || !r->input_types()[1].is(TypeTag::Nat))
    throw TypeError("nested_quantifier_compose expects a relation (N; N) -> Types");
  unsigned level = detail::relation_level(r);
  const TypeExpr T = TypeExpr::types(level), C = family_type(level);

  // row(k; i) = Lx(R(i; *); 1)(k)
  GraphBuilder rb("row");
  auto k = rb.input(N);
  auto i = rb.input(N);
  auto ri = rb.add1(prim::apply(N, C), {rb.op(curry_transform(r, 1)), i});
  rb.output(rb.add1(prim::apply({C, N, N}, {T}), {rb.op(lbar_graph(false, level)), ri, rb.nat(1), k}));
  GraphPtr row = rb.build();

  // (n; k) -> L+(row(k; *); 1)(n)
  GraphBuilder pb("P");
  auto n = pb.input(N);
  auto k2 = pb.input(N);
  auto rowk = pb.add1(prim::apply({N, N}, {T}, 1), {pb.op(row), k2});
  pb.output(pb.add1(prim::apply({C, N, N}, {T}), {pb.op(lbar_graph(true, level)), rowk, pb.nat(1), n}));
  return curry_transform(pb.build(), 1);
}

// Pointwise (not R1 + R2) x (not R2 + R1) over the common input board.
inline GraphPtr equiv_build(const GraphPtr& r1, const GraphPtr& r2) {
  if (!board_equal(r1->input_types(), r2->input_types())) throw TypeError("equiv: relations differ in inputs");
  unsigned l1 = detail::relation_level(r1), l2 = detail::relation_level(r2);
  if (l1 != l2) throw TypeError("equiv: relations differ in level");
  const TypeExpr T = TypeExpr::types(l1);
  const Board& in = r1->input_types();
  GraphBuilder b("equiv(" + r1->name() + ", " + r2->name() + ")");
  auto xs = b.inputs(in);
  auto [a, c] = detail::copy_board(b, xs, in);
  auto t1 = b.add(prim::copy(T), {b.sub(r1, a)[0]});
  auto t2 = b.add(prim::copy(T), {b.sub(r2, c)[0]});
  auto n1 = b.add1(prim::negate(l1), {t1[0]});
  auto n2 = b.add1(prim::negate(l1), {t2[0]});
  auto s1 = b.add1(prim::type_sum(l1), {n1, t2[1]});
  auto s2 = b.add1(prim::type_sum(l1), {n2, t1[1]});
  b.output(b.add1(prim::type_product(l1), {s1, s2}));
  return b.build();
}

// Pointwise R + not R.
inline GraphPtr lem_build(const GraphPtr& r) {
  unsigned l = detail::relation_level(r);
  const TypeExpr T = TypeExpr::types(l);
  GraphBuilder b("lem(" + r->name() + ")");
  auto xs = b.inputs(r->input_types());
  auto t = b.add(prim::copy(T), {b.sub(r, xs)[0]});
  b.output(b.add1(prim::type_sum(l), {t[0], b.add1(prim::negate(l), {t[1]})}));
  return b.build();
}

// Evaluates a relation graph at naturals and decides the resulting type.
inline RelResult decide_at(const GraphPtr& r, const std::vector<std::int64_t>& args,
                           std::optional<std::int64_t> bound = std::nullopt) {
  std::vector<Value> in;
  for (auto a : args) in.push_back(Value::nat(a));
  EvalOptions opts;
  opts.bound = bound;
  auto out = evaluate(r, std::move(in), opts).values();
  if (out.size() != 1 || !out[0].is_type()) throw EvalError("relation did not produce a type");
  return eval_relational(out[0].as_type(), bound);
}

inline TypeExpr relation_at(const GraphPtr& r, const std::vector<std::int64_t>& args) {
  std::vector<Value> in;
  for (auto a : args) in.push_back(Value::nat(a));
  auto out = evaluate(r, std::move(in)).values();
  return out.at(0).as_type();
}

}  // namespace universe
