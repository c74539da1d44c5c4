#pragma once

// Worked constructions: the sequence step `op`, Rec and the Grzegorczyk
// iterator, the forall-exists theorem, extensional equality of functionals,
// the tree example (add/del) and bounded search with the while loop.

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "combinators.hpp"
#include "enumerate.hpp"
#include "evaluator.hpp"
#include "relational.hpp"
#include "transforms.hpp"

namespace universe {

// ---------------------------------------------------------------------------
// Sequences of operations A -> A

// A -> A
inline TypeExpr endo(const TypeExpr& A) { return TypeExpr::arrow(A, A); }
// C = N -> (A -> A)
inline TypeExpr sequence_type(const TypeExpr& A) { return TypeExpr::arrow(TypeExpr::nat(), endo(A)); }

// op: N x C -> N x C, op(n, c) = (n+1, c') with c'(n+1) = compose(c(n), c(n+1)).
inline GraphPtr build_op_node(const TypeExpr& A) {
  const TypeExpr N = TypeExpr::nat(), E = endo(A), C = sequence_type(A);
  GraphBuilder b("op");
  auto in = b.input(TypeExpr::product(N, C));
  auto nc = b.add(prim::proj(N, C), {in});
  auto ns = b.add(prim::copy(N), {nc[0]});
  auto c1 = b.add(prim::copy(C), {nc[1]});
  auto c2 = b.add(prim::copy(C), {c1[1]});
  auto s1 = b.add(prim::copy(N), {b.add1(prim::succ(), {ns[1]})});
  auto s2 = b.add(prim::copy(N), {s1[1]});
  auto f1 = b.add1(prim::apply(N, E), {c1[0], ns[0]});  // c(n)
  auto f2 = b.add1(prim::apply(N, E), {c2[0], s1[0]});  // c(n+1)
  auto f = b.add1(prim::compose(A, A, A), {f1, f2});
  auto c_new = b.add1(prim::change(E), {s2[0], f, c2[1]});
  b.output(b.add1(prim::join(N, C), {s2[1], c_new}));
  return b.build();
}

// Rec: (n; c) -> c(1) ; c(2) ; ... ; c(n)
inline GraphPtr build_rec(const TypeExpr& A) {
  const TypeExpr N = TypeExpr::nat(), E = endo(A), C = sequence_type(A), D = TypeExpr::product(N, C);
  GraphBuilder b("Rec");
  auto n = b.input(N);
  auto c = b.input(C);
  auto it = b.add1(prim::iter(D), {n, b.op(build_op_node(A))});
  auto d = b.add1(prim::join(N, C), {b.nat(1), c});
  auto d2 = b.add1(prim::apply(D, D), {it, d});
  auto nc = b.add(prim::proj(N, C), {d2});
  auto idx = b.add1(prim::pred(), {nc[0]});
  b.output(b.add1(prim::apply(N, E), {nc[1], idx}));
  return b.build();
}

// C -> C: the sequence of partial compositions of c.
inline GraphPtr grzegorczyk_iterator(const TypeExpr& A) { return curry_transform(swap_inputs(build_rec(A)), 1); }

// ---------------------------------------------------------------------------
// forall k exists n (n > k)

struct TheoremReport {
  Value sigma_op;                    // N -> Sigma(F)
  GraphPtr family;                   // F(k) = Greater(Succ(k); k)
  std::vector<std::int64_t> checked; // k values whose witnesses validated
  std::vector<std::int64_t> failed;
  bool ok() const { return failed.empty(); }
};

// F: N -> Types1, k |-> Greater(Succ(k); k)
inline GraphPtr greater_succ_family() {
  const TypeExpr N = TypeExpr::nat();
  GraphBuilder b("F");
  auto k = b.input(N);
  auto ks = b.add(prim::copy(N), {k});
  b.output(b.add1(prim::greater(), {b.add1(prim::succ(), {ks[0]}), ks[1]}));
  return b.build();
}

// f: Pi(F), the axiom witness for every k
inline GraphPtr greater_succ_axiom() {
  GraphBuilder b("greater_succ");
  auto k = b.input(TypeExpr::nat());
  b.output(b.add1(prim::axiom("greater_succ"), {k}));
  return b.build();
}

// Zero-input graph producing sigma_F(f).
inline GraphPtr forall_exists_graph() {
  GraphPtr F = greater_succ_family();
  GraphBuilder b("forall_exists");
  auto f = b.constant(Value::op(greater_succ_axiom()), TypeExpr::pi(F, TypeExpr::nat(), 1));
  b.output(b.add1(prim::sigma_f(F, TypeExpr::nat(), 1), {f}));
  return b.build();
}

inline TheoremReport theorem_forall_exists_greater(std::int64_t up_to = 20) {
  GraphPtr g = forall_exists_graph();
  TheoremReport rep{evaluate(g, {}).values().at(0), nullptr, {}, {}};
  rep.family = g->output_types()[0].outputs()[0].family();
  for (std::int64_t k = 1; k <= up_to; ++k) {
    bool ok = false;
    try {
      auto out = apply_op(rep.sigma_op, {Value::nat(k)});
      const Value& pr = out.at(0);
      const Witness& w = pr.second().as_proof();
      TypeExpr gt = TypeExpr::rel_atom(RelKind::Greater, k + 1, k);
      // exists n. n > k, witnessed at n = k + 1
      TypeExpr ex = instantiate(parse_relation("sigma(_1; gt(_1; _2))"), {{2, k}});
      ok = pr.first().as_nat() == k && check_witness(gt, w) && check_witness(ex, witness::exists(k + 1, w)) &&
           check_witness(family_at(*rep.family, k, std::nullopt), w);
    } catch (const Error&) {
      ok = false;
    }
    (ok ? rep.checked : rep.failed).push_back(k);
  }
  return rep;
}

// ---------------------------------------------------------------------------
// Extensional equality of functionals over N

// (f; g) -> Pi a. Equal(f(a); g(a)), a Types2 object
inline GraphPtr eq_functionals() {
  const TypeExpr N = TypeExpr::nat(), E = endo(N), T = TypeExpr::types(1);
  GraphBuilder hb("H");
  auto f = hb.input(E);
  auto g = hb.input(E);
  auto a = hb.input(N);
  auto as = hb.add(prim::copy(N), {a});
  auto fa = hb.add1(prim::apply(N, N), {f, as[0]});
  auto ga = hb.add1(prim::apply(N, N), {g, as[1]});
  hb.output(hb.add1(prim::equal(), {fa, ga}));
  GraphPtr hc = curry_transform(hb.build(), 2);  // (f; g) -> (N -> Types1)

  GraphBuilder b("Eq");
  auto f2 = b.input(E);
  auto g2 = b.input(E);
  auto fam = b.sub(hc, {f2, g2})[0];
  b.output(b.add1(prim::pi_type(N, 1), {fam}));
  return b.build();
}

// Decides Eq(f, g) over the points 1..bound.
inline RelResult eq_functionals_decide(const Value& f, const Value& g, std::int64_t bound) {
  EvalOptions opts;
  opts.bound = bound;
  auto t = evaluate(eq_functionals(), {f, g}, opts).values().at(0).as_type();
  return eval_relational(t, bound);
}

// ---------------------------------------------------------------------------
// Tree example. Board B = (n; o; node; father; leaf), tables are N -> N.

struct TreeState {
  std::int64_t n = 1;
  std::int64_t o = 1;
  Value node, father, leaf;
};

namespace tree {

inline TypeExpr table_type() { return endo(TypeExpr::nat()); }
inline Board board() {
  const TypeExpr N = TypeExpr::nat(), A = table_type();
  return {N, N, A, A, A};
}

struct Ports {
  SocketRef n, o, node, father, leaf;
};

inline Ports open(GraphBuilder& b) {
  auto in = b.inputs(board());
  return {in[0], in[1], in[2], in[3], in[4]};
}

inline void close(GraphBuilder& b, const Ports& p) { b.outputs({p.n, p.o, p.node, p.father, p.leaf}); }

inline SocketRef at(GraphBuilder& b, SocketRef table, SocketRef i) {
  return b.add1(prim::apply(TypeExpr::nat(), TypeExpr::nat()), {table, i});
}
inline std::pair<SocketRef, SocketRef> dup(GraphBuilder& b, SocketRef x, const TypeExpr& t) {
  auto c = b.add(prim::copy(t), {x});
  return {c[0], c[1]};
}
inline void drop(GraphBuilder& b, SocketRef x, const TypeExpr& t) { b.add(prim::drop(t), {x}); }
inline SocketRef change(GraphBuilder& b, SocketRef pos, SocketRef val, SocketRef table) {
  return b.add1(prim::change(TypeExpr::nat()), {pos, val, table});
}
inline SocketRef sum(GraphBuilder& b, SocketRef x, SocketRef y) { return b.add1(prim::type_sum(1), {x, y}); }

inline GraphPtr identity() {
  GraphBuilder b("id_B");
  auto in = b.inputs(board());
  b.outputs(b.add(prim::id(board()), in));
  return b.build();
}

// S11: Greater(o; n) + Equal(node(o); 2)
inline GraphPtr s11() {
  const TypeExpr N = TypeExpr::nat(), A = table_type();
  GraphBuilder b("S11");
  Ports p = open(b);
  drop(b, p.father, A);
  drop(b, p.leaf, A);
  auto [o1, o2] = dup(b, p.o, N);
  auto g = b.add1(prim::greater(), {o1, p.n});
  auto e = b.add1(prim::equal(), {at(b, p.node, o2), b.nat(2)});
  b.output(sum(b, g, e));
  return b.build();
}

// S12: Equal(leaf(o); 1)
inline GraphPtr s12() {
  const TypeExpr N = TypeExpr::nat(), A = table_type();
  GraphBuilder b("S12");
  Ports p = open(b);
  drop(b, p.n, N);
  drop(b, p.node, A);
  drop(b, p.father, A);
  b.output(b.add1(prim::equal(), {at(b, p.leaf, p.o), b.nat(1)}));
  return b.build();
}

// S21: Greater(o; n) + Equal(node(o); 2) + not Equal(leaf(o); 1) + Equal(o; 1)
inline GraphPtr s21() {
  const TypeExpr N = TypeExpr::nat(), A = table_type();
  GraphBuilder b("S21");
  Ports p = open(b);
  drop(b, p.father, A);
  auto [o1, r1] = dup(b, p.o, N);
  auto [o2, r2] = dup(b, r1, N);
  auto [o3, o4] = dup(b, r2, N);
  auto g = b.add1(prim::greater(), {o1, p.n});
  auto e1 = b.add1(prim::equal(), {at(b, p.node, o2), b.nat(2)});
  auto e2 = b.add1(prim::negate(1), {b.add1(prim::equal(), {at(b, p.leaf, o3), b.nat(1)})});
  auto e3 = b.add1(prim::equal(), {o4, b.nat(1)});
  b.output(sum(b, sum(b, sum(b, g, e1), e2), e3));
  return b.build();
}

// R22(father; o; i) = Equal(o; i) + not Equal(father(i); father(o))
inline GraphPtr r22() {
  const TypeExpr N = TypeExpr::nat(), A = table_type();
  GraphBuilder b("R22");
  auto father = b.input(A);
  auto o = b.input(N);
  auto i = b.input(N);
  auto [f1, f2] = dup(b, father, A);
  auto [o1, o2] = dup(b, o, N);
  auto [i1, i2] = dup(b, i, N);
  auto e = b.add1(prim::equal(), {o1, i1});
  auto ne = b.add1(prim::negate(1), {b.add1(prim::equal(), {at(b, f1, i2), at(b, f2, o2)})});
  b.output(sum(b, e, ne));
  return b.build();
}

// S22(father; o; n) = Lx(R22(father; o; *); 1)(n)
inline GraphPtr s22() {
  const TypeExpr N = TypeExpr::nat(), A = table_type(), T = TypeExpr::types(1), C = family_type(1);
  GraphBuilder b("S22");
  Ports p = open(b);
  drop(b, p.node, A);
  drop(b, p.leaf, A);
  auto row = b.add1(prim::apply({A, N, N}, {T}, 2), {b.op(r22()), p.father, p.o});
  b.output(b.add1(prim::apply({C, N, N}, {T}), {b.op(lbar_graph(false, 1)), row, b.nat(1), p.n}));
  return b.build();
}

// f11: new node Succ(n) with father o
inline GraphPtr f11() {
  const TypeExpr N = TypeExpr::nat();
  GraphBuilder b("f11");
  Ports p = open(b);
  auto s = b.add1(prim::succ(), {p.n});
  auto [s1, r1] = dup(b, s, N);
  auto [s2, r2] = dup(b, r1, N);
  auto [s3, s4] = dup(b, r2, N);
  auto [o1, o2] = dup(b, p.o, N);
  Ports q{s4, o1, change(b, s1, b.nat(1), p.node), change(b, s2, o2, p.father), change(b, s3, b.nat(1), p.leaf)};
  close(b, q);
  return b.build();
}

// t12: leaf(o) becomes 2
inline GraphPtr t12() {
  const TypeExpr N = TypeExpr::nat();
  GraphBuilder b("t12");
  Ports p = open(b);
  auto [o1, o2] = dup(b, p.o, N);
  close(b, {p.n, o1, p.node, p.father, change(b, o2, b.nat(2), p.leaf)});
  return b.build();
}

// f21: node(o) and leaf(o) become 2
inline GraphPtr f21() {
  const TypeExpr N = TypeExpr::nat();
  GraphBuilder b("f21");
  Ports p = open(b);
  auto [o1, r] = dup(b, p.o, N);
  auto [o2, o3] = dup(b, r, N);
  close(b, {p.n, o1, change(b, o2, b.nat(2), p.node), p.father, change(b, o3, b.nat(2), p.leaf)});
  return b.build();
}

// t22: leaf(father(o)) becomes 1
inline GraphPtr t22() {
  const TypeExpr N = TypeExpr::nat(), A = table_type();
  GraphBuilder b("t22");
  Ports p = open(b);
  auto [f1, f2] = dup(b, p.father, A);
  auto [o1, o2] = dup(b, p.o, N);
  close(b, {p.n, o1, p.node, f2, change(b, at(b, f1, o2), b.nat(1), p.leaf)});
  return b.build();
}

// if cond then t else f, merged back into B
inline std::vector<SocketRef> branch(GraphBuilder& b, const std::vector<SocketRef>& in, const GraphPtr& cond,
                                     const GraphPtr& t, const GraphPtr& f) {
  const Board B = board();
  auto op = b.add1(prim::if_then_else(B, B, B, 1), {b.op(cond), b.op(t), b.op(f)});
  std::vector<SocketRef> args{op};
  args.insert(args.end(), in.begin(), in.end());
  auto out = b.add(prim::apply(B, {TypeExpr::excl(B, B)}), args);
  return b.add(prim::merge(B), out);
}

}  // namespace tree

inline GraphPtr tree_add_graph() {
  GraphBuilder b("add");
  auto in = b.inputs(tree::board());
  auto x = tree::branch(b, in, tree::s11(), tree::identity(), tree::f11());
  b.outputs(tree::branch(b, x, tree::s12(), tree::t12(), tree::identity()));
  return b.build();
}

inline GraphPtr tree_del_graph() {
  GraphBuilder b("del");
  auto in = b.inputs(tree::board());
  auto x = tree::branch(b, in, tree::s21(), tree::identity(), tree::f21());
  b.outputs(tree::branch(b, x, tree::s22(), tree::t22(), tree::identity()));
  return b.build();
}

// node = Change(1; 1; const 3), father = const 1, leaf = Change(1; 1; const 3)
inline TreeState tree_initial() {
  const TypeExpr N = TypeExpr::nat();
  Value c3 = Value::op(const_graph(Value::nat(3), N, N));
  Value c1 = Value::op(const_graph(Value::nat(1), N, N));
  return {1, 1, Value::op(change_graph(N, 1, Value::nat(1), c3)), c1, Value::op(change_graph(N, 1, Value::nat(1), c3))};
}

inline TreeState tree_step(const GraphPtr& g, const TreeState& s, std::int64_t o) {
  auto out = evaluate(g, {Value::nat(s.n), Value::nat(o), s.node, s.father, s.leaf}).values();
  return {out[0].as_nat(), out[1].as_nat(), out[2], out[3], out[4]};
}

inline TreeState tree_add(const TreeState& s, std::int64_t o) {
  static const GraphPtr g = tree_add_graph();
  return tree_step(g, s, o);
}

inline TreeState tree_del(const TreeState& s, std::int64_t o) {
  static const GraphPtr g = tree_del_graph();
  return tree_step(g, s, o);
}

inline std::int64_t table_at(const Value& table, std::int64_t i) { return apply_nat(table, i); }

// ---------------------------------------------------------------------------
// Bounded search with the while loop

// k |-> type_code(ind1(k)): an injective enumeration of naturals
inline GraphPtr toy_enumeration() {
  GraphBuilder b("enum");
  auto k = b.input(TypeExpr::nat());
  b.output(b.add1(prim::type_code(), {b.add1(prim::ind1(), {k})}));
  return b.build();
}

inline GraphPtr nat_equality() {
  GraphBuilder b("eq");
  auto x = b.input(TypeExpr::nat());
  auto y = b.input(TypeExpr::nat());
  b.output(b.add1(prim::equal(), {x, y}));
  return b.build();
}

// g(target; n): least k <= n with eq(target; enum(k)), else 1.
// enum: N -> T, eq: (T; T) -> Types1 decidable.
inline GraphPtr bounded_search_g(const GraphPtr& enumeration, const GraphPtr& eq) {
  const TypeExpr N = TypeExpr::nat();
  const TypeExpr T = enumeration->output_types().at(0);
  const Board B{N, N, T};  // k, n, target
  using tree::dup;

  // Eq(target; enum(k)) on (k; target)
  auto match = [&](GraphBuilder& b, SocketRef k, SocketRef target) {
    return b.sub(eq, {target, b.sub(enumeration, {k})[0]})[0];
  };

  GraphBuilder cb("search_cond");  // Lesser(k; n) x not Eq(target; enum(k))
  {
    auto in = cb.inputs(B);
    auto [k1, k2] = dup(cb, in[0], N);
    auto lt = cb.add1(prim::lesser(), {k1, in[1]});
    auto ne = cb.add1(prim::negate(1), {match(cb, k2, in[2])});
    cb.output(cb.add1(prim::type_product(1), {lt, ne}));
  }
  GraphBuilder tb("search_step");
  {
    auto in = tb.inputs(B);
    tb.outputs({tb.add1(prim::succ(), {in[0]}), in[1], in[2]});
  }
  GraphBuilder fb("search_found");  // Eq(target; enum(k)) on the final board
  {
    auto in = fb.inputs(B);
    tree::drop(fb, in[1], N);
    fb.output(match(fb, in[0], in[2]));
  }
  GraphBuilder yb("search_k");
  {
    auto in = yb.inputs(B);
    tree::drop(yb, in[1], N);
    tree::drop(yb, in[2], T);
    yb.output(in[0]);
  }
  GraphBuilder nb("search_none");
  {
    auto in = nb.inputs(B);
    tree::drop(nb, in[0], N);
    tree::drop(nb, in[1], N);
    tree::drop(nb, in[2], T);
    nb.output(nb.nat(1));
  }

  GraphBuilder b("g");
  auto target = b.input(T);
  auto n = b.input(N);
  auto [n1, n2] = dup(b, n, N);
  auto loop = b.add1(prim::while_loop(B, 1), {n1, b.op(cb.build()), b.op(tb.build())});
  auto ex = b.add(prim::apply(B, {TypeExpr::excl(B, B)}), {loop, b.nat(1), n2, target});
  auto fin = b.add(prim::merge(B), ex);
  auto ite = b.add1(prim::if_then_else(B, {N}, {N}, 1), {b.op(fb.build()), b.op(yb.build()), b.op(nb.build())});
  auto res = b.add(prim::apply(B, {TypeExpr::excl({N}, {N})}), {ite, fin[0], fin[1], fin[2]});
  b.output(b.add1(prim::merge({N}), res));
  return b.build();
}

inline std::int64_t bounded_search(const GraphPtr& g, const Value& target, std::int64_t n) {
  return evaluate(g, {target, Value::nat(n)}).values().at(0).as_nat();
}

}  // namespace universe
