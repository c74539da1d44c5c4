#pragma once

// Graph-level constructions: composition, partial application, currying,
// input permutation, n-fold iteration and the wrapper graphs behind the
// operation values produced by const, change, ite, while and sigma_f.

#include <algorithm>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "graph.hpp"

namespace universe {

namespace detail {

// Emits `outs` as graph outputs, folding exclusive groups (indices into outs).
inline void emit_outputs(GraphBuilder& b, const std::vector<SocketRef>& outs, const std::vector<ExclGroup>& groups) {
  std::size_t i = 0, gi = 0;
  auto sorted = groups;
  std::sort(sorted.begin(), sorted.end(), [](const ExclGroup& x, const ExclGroup& y) { return x.begin < y.begin; });
  while (i < outs.size()) {
    if (gi < sorted.size() && sorted[gi].begin == i) {
      const auto& g = sorted[gi++];
      b.output_exclusive(std::vector<SocketRef>(outs.begin() + static_cast<std::ptrdiff_t>(g.begin),
                                                outs.begin() + static_cast<std::ptrdiff_t>(g.mid)),
                         std::vector<SocketRef>(outs.begin() + static_cast<std::ptrdiff_t>(g.mid),
                                                outs.begin() + static_cast<std::ptrdiff_t>(g.end)));
      i = g.end;
    } else {
      b.output(outs[i++]);
    }
  }
}

inline void require_plain_board(const Board& b, const char* what) {
  for (const auto& t : b)
    if (t.is(TypeTag::Excl)) throw TypeError(std::string(what) + ": exclusive boards are not allowed here");
}

}  // namespace detail

// Result inputs: f's inputs, then unpaired g inputs. Outputs: g's outputs,
// then unpaired f outputs. Pairs are (f output socket, g input socket).
inline GraphPtr compose_graphs(const GraphPtr& f, const GraphPtr& g, const Pairing& pairing) {
  detail::compose_signature(f->input_types(), f->output_board(), g->input_types(), g->output_board(), pairing);
  GraphBuilder b(f->name() + ";" + g->name());
  std::vector<SocketRef> fin;
  for (const auto& t : f->input_types()) fin.push_back(b.input(t));
  std::vector<std::optional<std::size_t>> paired_from(g->input_types().size());
  std::vector<bool> f_used(f->output_types().size());
  for (auto [fo, gi] : pairing) {
    paired_from[gi] = fo;
    f_used[fo] = true;
  }
  std::vector<SocketRef> gin_extra(g->input_types().size());
  for (std::size_t j = 0; j < g->input_types().size(); ++j)
    if (!paired_from[j]) gin_extra[j] = b.input(g->input_types()[j]);
  auto fout = b.sub(f, fin);
  std::vector<SocketRef> gargs;
  for (std::size_t j = 0; j < g->input_types().size(); ++j) gargs.push_back(paired_from[j] ? fout[*paired_from[j]] : gin_extra[j]);
  auto gout = b.sub(g, gargs);

  std::vector<SocketRef> outs = gout;
  std::vector<ExclGroup> groups = g->output_groups();
  // unpaired f outputs keep their groups (compose_signature rejects partly paired groups)
  std::vector<std::size_t> remap(f->output_types().size(), static_cast<std::size_t>(-1));
  for (std::size_t i = 0; i < fout.size(); ++i)
    if (!f_used[i]) {
      remap[i] = outs.size();
      outs.push_back(fout[i]);
    }
  for (const auto& eg : f->output_groups()) groups.push_back({remap[eg.begin], remap[eg.mid], remap[eg.end - 1] + 1});
  detail::emit_outputs(b, outs, groups);
  return b.build();
}

// compose(f; g) for single-channel f: A -> B and g: B -> C.
inline GraphPtr compose_graphs(const GraphPtr& f, const GraphPtr& g) { return compose_graphs(f, g, {{0, 0}}); }

// Binds some inputs to constants; the remaining inputs keep their order.
inline GraphPtr partial_apply(const GraphPtr& g, const std::vector<std::pair<std::size_t, Value>>& bindings) {
  if (bindings.empty()) return g;
  GraphData d = g->data();
  std::set<std::size_t> bound_ports;
  for (const auto& [idx, v] : bindings) {
    if (idx >= d.inputs.size()) throw TypeError("partial_apply: input index out of range");
    std::size_t node = d.inputs[idx];
    if (!bound_ports.insert(node).second) throw TypeError("partial_apply: input bound twice");
    TypeExpr t = std::get<InputPort>(d.nodes[node].kind).type;
    if (!conforms(v, t)) throw TypeError("partial_apply: " + to_string(v) + " is not an object of " + to_string(t));
    d.nodes[node].kind = ConstantNode{v, t};
  }
  std::vector<std::size_t> rest;
  for (std::size_t n : d.inputs)
    if (!bound_ports.count(n)) rest.push_back(n);
  d.inputs = std::move(rest);
  return Graph::make(std::move(d));
}

// (A1..Ak) -> Out  becomes  (A1..As) -> ((As+1..Ak) -> Out)
inline GraphPtr curry_transform(const GraphPtr& g, std::size_t split) {
  const auto& in = g->input_types();
  if (split < 1 || split >= in.size()) throw TypeError("curry_transform: split must lie strictly inside the inputs");
  GraphBuilder b(g->name() + "^c");
  std::vector<SocketRef> args{b.op(g)};
  for (std::size_t i = 0; i < split; ++i) args.push_back(b.input(in[i]));
  b.output(b.add1(prim::apply(in, g->output_board(), split), args));
  return b.build();
}

// A -> (B -> C)  becomes  (A; B) -> C
inline GraphPtr uncurry_transform(const GraphPtr& h) {
  const auto& out = h->output_board();
  if (out.size() != 1 || !out[0].is(TypeTag::Arrow)) throw TypeError("uncurry_transform: output is not an operation");
  const Board& B = out[0].inputs();
  const Board& C = out[0].outputs();
  GraphBuilder b(h->name() + "^u");
  std::vector<SocketRef> a_in;
  for (const auto& t : h->input_types()) a_in.push_back(b.input(t));
  std::vector<SocketRef> args;
  for (const auto& t : B) args.push_back(b.input(t));
  auto inner = b.sub(h, a_in);
  args.insert(args.begin(), inner[0]);
  auto outs = b.add(prim::apply(B, C), args);
  detail::emit_outputs(b, outs, flatten_board(C).groups);
  return b.build();
}

// Result input j is g's input perm[j].
inline GraphPtr permute_inputs(const GraphPtr& g, const std::vector<std::size_t>& perm) {
  const auto& in = g->input_types();
  if (perm.size() != in.size()) throw TypeError("permute_inputs: permutation size mismatch");
  std::vector<bool> seen(in.size());
  for (auto p : perm) {
    if (p >= in.size() || seen[p]) throw TypeError("permute_inputs: not a permutation");
    seen[p] = true;
  }
  GraphBuilder b(g->name() + "^p");
  std::vector<SocketRef> args(in.size());
  for (auto p : perm) args[p] = b.input(in[p]);
  auto outs = b.sub(g, args);
  detail::emit_outputs(b, outs, g->output_groups());
  return b.build();
}

inline GraphPtr swap_inputs(const GraphPtr& g) { return permute_inputs(g, {1, 0}); }

// n linked copies of f: A -> A.
inline GraphPtr iter_graph(const GraphPtr& f, std::int64_t n) {
  if (n < 1) throw TypeError("iter needs n >= 1");
  if (!board_equal(f->input_types(), f->output_board())) throw TypeError("iter needs an operation A -> A");
  GraphBuilder b("iter" + std::to_string(n) + "(" + f->name() + ")");
  std::vector<SocketRef> cur;
  for (const auto& t : f->input_types()) cur.push_back(b.input(t));
  for (std::int64_t i = 0; i < n; ++i) cur = b.sub(f, cur);
  b.outputs(cur);
  return b.build();
}

// B -> A returning `a` and dropping its input.
inline GraphPtr const_graph(const Value& a, const TypeExpr& A, const TypeExpr& B) {
  GraphBuilder b("const(" + to_string(a) + ")");
  auto x = b.input(B);
  b.add(prim::drop(B), {x});
  b.output(b.constant(a, A));
  return b.build();
}

inline GraphPtr change_graph(const TypeExpr& A, std::int64_t n, const Value& a, const Value& q) {
  Primitive p = prim::make(PrimOp::ChangeBody, {A});
  p.values = {Value::nat(n), a, q};
  GraphBuilder b("change(" + std::to_string(n) + ")");
  auto x = b.input(TypeExpr::nat());
  b.output(b.add1(std::move(p), {x}));
  return b.build();
}

inline GraphPtr ite_graph(const Board& B, const Board& C, const Board& D, unsigned level, const Value& cond,
                          const Value& t, const Value& f) {
  detail::require_plain_board(B, "ite");
  detail::require_plain_board(C, "ite");
  detail::require_plain_board(D, "ite");
  Primitive p = prim::make(PrimOp::IteBody, B, C, D, {}, level);
  p.values = {cond, t, f};
  GraphBuilder b("ite");
  std::vector<SocketRef> in;
  for (const auto& x : B) in.push_back(b.input(x));
  auto outs = b.add(std::move(p), in);
  detail::emit_outputs(b, outs, {{0, C.size(), C.size() + D.size()}});
  return b.build();
}

inline GraphPtr while_graph(const Board& B, unsigned level, std::int64_t n, const Value& con, const Value& t) {
  detail::require_plain_board(B, "while");
  if (n < 1) throw TypeError("while needs n >= 1");
  Primitive p = prim::make(PrimOp::WhileBody, B, {}, {}, {}, level);
  p.values = {Value::nat(n), con, t};
  GraphBuilder b("while" + std::to_string(n));
  std::vector<SocketRef> in;
  for (const auto& x : B) in.push_back(b.input(x));
  auto outs = b.add(std::move(p), in);
  detail::emit_outputs(b, outs, {{0, B.size(), 2 * B.size()}});
  return b.build();
}

inline GraphPtr sigma_graph(const GraphPtr& family, const TypeExpr& domain, unsigned level, const Value& f) {
  Primitive p = prim::make(PrimOp::SigmaBody, {domain}, {}, {}, {}, level);
  p.graph = family;
  p.values = {f};
  GraphBuilder b("sigma_f(" + family->name() + ")");
  auto x = b.input(domain);
  b.output(b.add1(std::move(p), {x}));
  return b.build();
}

}  // namespace universe
