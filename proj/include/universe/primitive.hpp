#pragma once

// Primitive node kinds: parameters and socket signatures. Evaluation rules
// live in evaluator.hpp.

#include <algorithm>
#include <cstdint>
#include <memory>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "type.hpp"
#include "value.hpp"
#include "witness.hpp"

namespace universe {

using Board = std::vector<TypeExpr>;
using Pairing = std::vector<std::pair<std::size_t, std::size_t>>;

enum class PrimOp : std::uint8_t {
  Join,
  Proj,
  PlusLeft,
  PlusRight,
  Get,
  Const,
  ConstN,
  Id,
  Apply,
  Compose,
  Copy,
  Drop,
  Succ,
  Pred,
  Iter,
  Change,
  IfThenElse,
  While,
  SigmaF,
  Merge,
  Curry,
  Uncurry,
  Equal,
  Lesser,
  Greater,
  TypeProduct,
  TypeSum,
  TypeArrow,
  Negate,
  PiType,
  SigmaType,
  Des,
  Ind1,
  TypeCode,
  Axiom,
  Relation,
  // bodies of operation values produced at run time
  ChangeBody,
  IteBody,
  WhileBody,
  SigmaBody,
};

struct Primitive {
  PrimOp op = PrimOp::Id;
  Board a, b, c, d;
  std::size_t count = 0;  // bind count, split, level, arity, depending on op
  Pairing pairing;
  std::vector<Value> values;
  std::shared_ptr<const Graph> graph;  // quantifier family
  TypeExpr pattern;                    // relation template
  std::string name;
};

struct Signature {
  Board in, out;
};

inline std::string_view kind_name(PrimOp op) {
  switch (op) {
    case PrimOp::Join: return "join";
    case PrimOp::Proj: return "proj";
    case PrimOp::PlusLeft: return "plus_l";
    case PrimOp::PlusRight: return "plus_r";
    case PrimOp::Get: return "get";
    case PrimOp::Const: return "const";
    case PrimOp::ConstN: return "const_n";
    case PrimOp::Id: return "id";
    case PrimOp::Apply: return "apply";
    case PrimOp::Compose: return "compose";
    case PrimOp::Copy: return "copy";
    case PrimOp::Drop: return "drop";
    case PrimOp::Succ: return "succ";
    case PrimOp::Pred: return "pred";
    case PrimOp::Iter: return "iter";
    case PrimOp::Change: return "change";
    case PrimOp::IfThenElse: return "ite";
    case PrimOp::While: return "while";
    case PrimOp::SigmaF: return "sigma_f";
    case PrimOp::Merge: return "merge";
    case PrimOp::Curry: return "curry";
    case PrimOp::Uncurry: return "uncurry";
    case PrimOp::Equal: return "equal";
    case PrimOp::Lesser: return "lesser";
    case PrimOp::Greater: return "greater";
    case PrimOp::TypeProduct: return "type_product";
    case PrimOp::TypeSum: return "type_sum";
    case PrimOp::TypeArrow: return "type_arrow";
    case PrimOp::Negate: return "negate";
    case PrimOp::PiType: return "pi_type";
    case PrimOp::SigmaType: return "sigma_type";
    case PrimOp::Des: return "des";
    case PrimOp::Ind1: return "ind1";
    case PrimOp::TypeCode: return "type_code";
    case PrimOp::Axiom: return "axiom";
    case PrimOp::Relation: return "relation";
    case PrimOp::ChangeBody: return "change_body";
    case PrimOp::IteBody: return "ite_body";
    case PrimOp::WhileBody: return "while_body";
    case PrimOp::SigmaBody: return "sigma_body";
  }
  return "?";
}

inline const std::vector<PrimOp>& all_prim_ops() {
  static const std::vector<PrimOp> ops = [] {
    std::vector<PrimOp> v;
    for (int i = 0; i <= static_cast<int>(PrimOp::SigmaBody); ++i) v.push_back(static_cast<PrimOp>(i));
    return v;
  }();
  return ops;
}

inline PrimOp prim_op_from_name(std::string_view name) {
  for (PrimOp op : all_prim_ops())
    if (kind_name(op) == name) return op;
  throw ParseError("unknown node kind '" + std::string(name) + "'");
}

namespace detail {

inline TypeExpr arrow_of(Board in, Board out) { return TypeExpr::arrow(std::move(in), std::move(out)); }

inline const TypeExpr& one(const Board& b, const char* what) {
  if (b.size() != 1) throw TypeError(std::string("primitive parameter ") + what + " must be a single type");
  return b[0];
}

inline Board slice(const Board& b, std::size_t from, std::size_t to) {
  return Board(b.begin() + static_cast<std::ptrdiff_t>(from), b.begin() + static_cast<std::ptrdiff_t>(to));
}

// Signature of composing F: fi -> fo with G: gi -> go, pairing F-output
// sockets with G-input sockets. Result: (fi ++ unpaired gi) -> (go ++ unpaired fo).
inline Signature compose_signature(const Board& fi, const Board& fo, const Board& gi, const Board& go,
                                   const Pairing& pairing) {
  FlatBoard ffo = flatten_board(fo);
  FlatBoard fgi = flatten_board(gi);
  if (!fgi.groups.empty()) throw TypeError("compose: exclusive inputs are not supported");
  std::vector<bool> fo_used(ffo.sockets.size()), gi_used(fgi.sockets.size());
  for (auto [fo_i, gi_i] : pairing) {
    if (fo_i >= ffo.sockets.size() || gi_i >= fgi.sockets.size()) throw TypeError("compose: pairing index out of range");
    if (fo_used[fo_i] || gi_used[gi_i]) throw TypeError("compose: socket paired twice");
    if (!type_equal(ffo.sockets[fo_i], fgi.sockets[gi_i]))
      throw TypeError("compose: paired sockets differ: " + to_string(ffo.sockets[fo_i]) + " vs " +
                      to_string(fgi.sockets[gi_i]));
    fo_used[fo_i] = gi_used[gi_i] = true;
  }
  for (const auto& g : ffo.groups) {
    bool any = false;
    for (std::size_t i = g.begin; i < g.end; ++i) any = any || fo_used[i];
    if (any) throw TypeError("compose: exclusive outputs cannot be paired");
  }
  Signature s;
  s.in = fi;
  for (std::size_t i = 0; i < fgi.sockets.size(); ++i)
    if (!gi_used[i]) s.in.push_back(fgi.sockets[i]);
  s.out = go;
  // unpaired F outputs, keeping exclusive groups intact
  std::size_t i = 0;
  std::size_t gi_idx = 0;
  while (i < ffo.sockets.size()) {
    if (gi_idx < ffo.groups.size() && ffo.groups[gi_idx].begin == i) {
      const auto& g = ffo.groups[gi_idx++];
      s.out.push_back(TypeExpr::excl(slice(ffo.sockets, g.begin, g.mid), slice(ffo.sockets, g.mid, g.end)));
      i = g.end;
      continue;
    }
    if (!fo_used[i]) s.out.push_back(ffo.sockets[i]);
    ++i;
  }
  if (s.out.empty()) throw TypeError("compose: result has no outputs");
  return s;
}

}  // namespace detail

inline Signature signature(const Primitive& p) {
  using detail::arrow_of;
  using detail::one;
  const TypeExpr N = TypeExpr::nat();
  auto types = [](std::size_t k) { return TypeExpr::types(static_cast<unsigned>(k)); };
  switch (p.op) {
    case PrimOp::Join:
      return {{one(p.a, "A"), one(p.b, "B")}, {TypeExpr::product(one(p.a, "A"), one(p.b, "B"))}};
    case PrimOp::Proj:
      return {{TypeExpr::product(one(p.a, "A"), one(p.b, "B"))}, {one(p.a, "A"), one(p.b, "B")}};
    case PrimOp::PlusLeft:
      return {{one(p.a, "A")}, {TypeExpr::sum(one(p.a, "A"), one(p.b, "B"))}};
    case PrimOp::PlusRight:
      return {{one(p.b, "B")}, {TypeExpr::sum(one(p.a, "A"), one(p.b, "B"))}};
    case PrimOp::Get:
      return {{TypeExpr::sum(one(p.a, "A"), one(p.b, "B"))}, {TypeExpr::excl(one(p.a, "A"), one(p.b, "B"))}};
    case PrimOp::Const:
      return {{one(p.a, "A")}, {arrow_of({one(p.b, "B")}, {one(p.a, "A")})}};
    case PrimOp::ConstN:
      return {{one(p.a, "A")}, {arrow_of({N}, {one(p.a, "A")})}};
    case PrimOp::Id:
      if (p.a.empty()) throw TypeError("id needs a non-empty board");
      return {p.a, p.a};
    case PrimOp::Apply: {
      if (p.count > p.a.size()) throw TypeError("apply binds more inputs than the operation has");
      Board in{arrow_of(p.a, p.b)};
      for (std::size_t i = 0; i < p.count; ++i) in.push_back(p.a[i]);
      if (p.count == p.a.size()) return {in, p.b};
      return {in, {arrow_of(detail::slice(p.a, p.count, p.a.size()), p.b)}};
    }
    case PrimOp::Compose: {
      Signature s = detail::compose_signature(p.a, p.b, p.c, p.d, p.pairing);
      return {{arrow_of(p.a, p.b), arrow_of(p.c, p.d)}, {arrow_of(s.in, s.out)}};
    }
    case PrimOp::Copy:
      return {{one(p.a, "A")}, {one(p.a, "A"), one(p.a, "A")}};
    case PrimOp::Drop:
      return {{one(p.a, "A")}, {}};
    case PrimOp::Succ:
    case PrimOp::Pred:
      return {{N}, {N}};
    case PrimOp::Iter:
      if (p.a.empty()) throw TypeError("iter needs a non-empty board");
      return {{N, arrow_of(p.a, p.a)}, {arrow_of(p.a, p.a)}};
    case PrimOp::Change: {
      const TypeExpr& A = one(p.a, "A");
      return {{N, A, arrow_of({N}, {A})}, {arrow_of({N}, {A})}};
    }
    case PrimOp::IfThenElse:
      return {{arrow_of(p.a, {types(p.count)}), arrow_of(p.a, p.b), arrow_of(p.a, p.c)},
              {arrow_of(p.a, {TypeExpr::excl(p.b, p.c)})}};
    case PrimOp::While:
      return {{N, arrow_of(p.a, {types(p.count)}), arrow_of(p.a, p.a)}, {arrow_of(p.a, {TypeExpr::excl(p.a, p.a)})}};
    case PrimOp::SigmaF: {
      const TypeExpr& A = one(p.a, "domain");
      return {{TypeExpr::pi(p.graph, A, static_cast<unsigned>(p.count))},
              {arrow_of({A}, {TypeExpr::sigma(p.graph, A, static_cast<unsigned>(p.count))})}};
    }
    case PrimOp::Merge:
      return {{TypeExpr::excl(p.a, p.a)}, p.a};
    case PrimOp::Curry: {
      if (p.count < 1 || p.count >= p.a.size()) throw TypeError("curry split must lie strictly inside the inputs");
      return {{arrow_of(p.a, p.b)},
              {arrow_of(detail::slice(p.a, 0, p.count), {arrow_of(detail::slice(p.a, p.count, p.a.size()), p.b)})}};
    }
    case PrimOp::Uncurry: {
      Board all = p.a;
      all.insert(all.end(), p.b.begin(), p.b.end());
      return {{arrow_of(p.a, {arrow_of(p.b, p.c)})}, {arrow_of(all, p.c)}};
    }
    case PrimOp::Equal:
    case PrimOp::Lesser:
    case PrimOp::Greater:
      return {{N, N}, {types(1)}};
    case PrimOp::TypeProduct:
    case PrimOp::TypeSum:
    case PrimOp::TypeArrow:
      return {{types(p.count), types(p.count)}, {types(p.count)}};
    case PrimOp::Negate:
      return {{types(p.count)}, {types(p.count)}};
    case PrimOp::PiType:
    case PrimOp::SigmaType:
      return {{arrow_of({one(p.a, "domain")}, {types(p.count)})}, {types(p.count + 1)}};
    case PrimOp::Des:
      return {{types(0)}, {types(0), types(0)}};
    case PrimOp::Ind1:
      return {{N}, {types(0)}};
    case PrimOp::TypeCode:
      return {{types(0)}, {N}};
    case PrimOp::Axiom: {
      const AxiomSpec& spec = find_axiom(p.name);
      Board in(spec.arity, N);
      in.insert(in.end(), spec.premises, TypeExpr::proof());
      return {in, {TypeExpr::proof()}};
    }
    case PrimOp::Relation:
      return {Board(p.count, N), {types(std::max(1u, level_of(p.pattern)))}};
    case PrimOp::ChangeBody:
      return {{N}, {one(p.a, "A")}};
    case PrimOp::IteBody:
      return {p.a, {TypeExpr::excl(p.b, p.c)}};
    case PrimOp::WhileBody:
      return {p.a, {TypeExpr::excl(p.a, p.a)}};
    case PrimOp::SigmaBody: {
      const TypeExpr& A = one(p.a, "domain");
      return {{A}, {TypeExpr::sigma(p.graph, A, static_cast<unsigned>(p.count))}};
    }
  }
  throw TypeError("unknown primitive");
}

// Factories. Single-type parameters are passed as types, boards as vectors.
namespace prim {

inline Primitive make(PrimOp op, Board a = {}, Board b = {}, Board c = {}, Board d = {}, std::size_t count = 0) {
  Primitive p;
  p.op = op;
  p.a = std::move(a);
  p.b = std::move(b);
  p.c = std::move(c);
  p.d = std::move(d);
  p.count = count;
  return p;
}

inline Primitive join(TypeExpr A, TypeExpr B) { return make(PrimOp::Join, {A}, {B}); }
inline Primitive proj(TypeExpr A, TypeExpr B) { return make(PrimOp::Proj, {A}, {B}); }
inline Primitive plus_left(TypeExpr A, TypeExpr B) { return make(PrimOp::PlusLeft, {A}, {B}); }
inline Primitive plus_right(TypeExpr A, TypeExpr B) { return make(PrimOp::PlusRight, {A}, {B}); }
inline Primitive get(TypeExpr A, TypeExpr B) { return make(PrimOp::Get, {A}, {B}); }
inline Primitive constant_op(TypeExpr A, TypeExpr B) { return make(PrimOp::Const, {A}, {B}); }
inline Primitive const_n(TypeExpr A) { return make(PrimOp::ConstN, {A}); }
inline Primitive id(Board A) { return make(PrimOp::Id, std::move(A)); }
inline Primitive id(TypeExpr A) { return make(PrimOp::Id, {A}); }
// apply(f: inputs -> outputs, first `bind` inputs); bind defaults to all
inline Primitive apply(Board inputs, Board outputs, std::size_t bind) {
  return make(PrimOp::Apply, std::move(inputs), std::move(outputs), {}, {}, bind);
}
inline Primitive apply(Board inputs, Board outputs) {
  std::size_t n = inputs.size();
  return apply(std::move(inputs), std::move(outputs), n);
}
inline Primitive apply(TypeExpr A, TypeExpr B) { return apply(Board{A}, Board{B}); }
inline Primitive compose(Board fi, Board fo, Board gi, Board go, Pairing pairing) {
  Primitive p = make(PrimOp::Compose, std::move(fi), std::move(fo), std::move(gi), std::move(go));
  p.pairing = std::move(pairing);
  return p;
}
inline Primitive compose(TypeExpr A, TypeExpr B, TypeExpr C) { return compose({A}, {B}, {B}, {C}, {{0, 0}}); }
inline Primitive copy(TypeExpr A) { return make(PrimOp::Copy, {A}); }
inline Primitive drop(TypeExpr A) { return make(PrimOp::Drop, {A}); }
inline Primitive succ() { return make(PrimOp::Succ); }
inline Primitive pred() { return make(PrimOp::Pred); }
inline Primitive iter(Board A) { return make(PrimOp::Iter, std::move(A)); }
inline Primitive iter(TypeExpr A) { return make(PrimOp::Iter, {A}); }
inline Primitive change(TypeExpr A) { return make(PrimOp::Change, {A}); }
inline Primitive if_then_else(Board B, Board C, Board D, unsigned level = 1) {
  return make(PrimOp::IfThenElse, std::move(B), std::move(C), std::move(D), {}, level);
}
inline Primitive while_loop(Board B, unsigned level = 1) { return make(PrimOp::While, std::move(B), {}, {}, {}, level); }
inline Primitive sigma_f(std::shared_ptr<const Graph> family, TypeExpr domain, unsigned level = 1) {
  Primitive p = make(PrimOp::SigmaF, {domain}, {}, {}, {}, level);
  p.graph = std::move(family);
  return p;
}
inline Primitive merge(Board B) { return make(PrimOp::Merge, std::move(B)); }
inline Primitive curry(Board inputs, Board outputs, std::size_t split) {
  return make(PrimOp::Curry, std::move(inputs), std::move(outputs), {}, {}, split);
}
inline Primitive uncurry(Board A, Board B, Board outputs) {
  return make(PrimOp::Uncurry, std::move(A), std::move(B), std::move(outputs));
}
inline Primitive equal() { return make(PrimOp::Equal); }
inline Primitive lesser() { return make(PrimOp::Lesser); }
inline Primitive greater() { return make(PrimOp::Greater); }
inline Primitive relation_atom(RelKind k) {
  return make(k == RelKind::Equal ? PrimOp::Equal : k == RelKind::Lesser ? PrimOp::Lesser : PrimOp::Greater);
}
inline Primitive type_product(unsigned level) { return make(PrimOp::TypeProduct, {}, {}, {}, {}, level); }
inline Primitive type_sum(unsigned level) { return make(PrimOp::TypeSum, {}, {}, {}, {}, level); }
inline Primitive type_arrow(unsigned level) { return make(PrimOp::TypeArrow, {}, {}, {}, {}, level); }
inline Primitive negate(unsigned level) { return make(PrimOp::Negate, {}, {}, {}, {}, level); }
inline Primitive pi_type(TypeExpr domain, unsigned level) { return make(PrimOp::PiType, {domain}, {}, {}, {}, level); }
inline Primitive sigma_type(TypeExpr domain, unsigned level) {
  return make(PrimOp::SigmaType, {domain}, {}, {}, {}, level);
}
inline Primitive des() { return make(PrimOp::Des); }
inline Primitive ind1() { return make(PrimOp::Ind1); }
inline Primitive type_code() { return make(PrimOp::TypeCode); }
// Inputs: the axiom's natural arguments, then one witness per premise.
inline Primitive axiom(std::string name) {
  Primitive p = make(PrimOp::Axiom);
  p.name = std::move(name);
  return p;
}
// Relation template over `arity` naturals; by default hole _i takes input i.
// A non-empty `holes` maps (input index, hole index).
inline Primitive relation(TypeExpr pattern, std::size_t arity, Pairing holes = {}) {
  Primitive p = make(PrimOp::Relation, {}, {}, {}, {}, arity);
  p.pattern = std::move(pattern);
  p.pairing = std::move(holes);
  return p;
}

}  // namespace prim

}  // namespace universe
