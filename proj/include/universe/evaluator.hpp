#pragma once

// Data-flow evaluation. Every node fires once, in topological order. A node
// whose plain inputs are all active (and whose exclusive input groups each
// have exactly one fully active side) fires; otherwise all its outputs are
// inactive. Values are moved along wires, so each object is consumed once.

#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "enumerate.hpp"
#include "graph.hpp"
#include "relational.hpp"
#include "transforms.hpp"

namespace universe {

struct EvalOptions {
  std::optional<std::int64_t> bound;  // range for quantifiers over N
  bool check_types = true;            // check top-level inputs against the graph
  std::size_t max_depth = 4096;       // nested operation applications
};

using Slots = std::vector<std::optional<Value>>;

struct EvalResult {
  Slots outputs;
  std::size_t produced = 0;  // active values emitted by nodes
  std::size_t consumed = 0;  // active values taken by nodes
  std::size_t fired = 0;

  bool all_active() const {
    for (const auto& o : outputs)
      if (!o) return false;
    return true;
  }
  // Active outputs in order; throws if any output is inactive.
  std::vector<Value> values() const {
    std::vector<Value> v;
    for (std::size_t i = 0; i < outputs.size(); ++i) {
      if (!outputs[i]) throw EvalError("output " + std::to_string(i) + " is inactive");
      v.push_back(*outputs[i]);
    }
    return v;
  }
};

class Evaluator {
 public:
  explicit Evaluator(EvalOptions opts = {}) : opts_(opts) {}

  EvalResult evaluate(const Graph& g, std::vector<Value> inputs) {
    if (inputs.size() != g.input_types().size())
      throw EvalError("graph '" + g.name() + "' takes " + std::to_string(g.input_types().size()) + " inputs, got " +
                      std::to_string(inputs.size()));
    if (opts_.check_types)
      for (std::size_t i = 0; i < inputs.size(); ++i)
        if (!conforms(inputs[i], g.input_types()[i]))
          throw TypeError("input " + std::to_string(i) + " of '" + g.name() + "': " + to_string(inputs[i]) +
                          " is not an object of " + to_string(g.input_types()[i]));
    stats_ = {};
    Slots in;
    for (auto& v : inputs) in.emplace_back(std::move(v));
    EvalResult r;
    r.outputs = run(g, std::move(in), 0);
    r.produced = stats_.produced;
    r.consumed = stats_.consumed;
    r.fired = stats_.fired;
    return r;
  }

  // Runs an operation value on active arguments.
  Slots call(const Value& op, std::vector<Value> args, std::size_t depth = 0) {
    const Graph& g = *op.as_op();
    if (args.size() != g.input_types().size()) throw EvalError("operation '" + g.name() + "' called with wrong arity");
    Slots in;
    for (auto& v : args) in.emplace_back(std::move(v));
    return run(g, std::move(in), depth + 1);
  }

  const EvalOptions& options() const { return opts_; }

 private:
  struct Stats {
    std::size_t produced = 0, consumed = 0, fired = 0;
  };

  Slots run(const Graph& g, Slots inputs, std::size_t depth) {
    if (depth > opts_.max_depth) throw EvalError("evaluation depth limit exceeded in '" + g.name() + "'");
    const auto& d = g.data();
    const std::size_t n = d.nodes.size();
    std::vector<std::size_t> offset(n + 1);
    for (std::size_t i = 0; i < n; ++i) offset[i + 1] = offset[i] + g.info(i).out.size();
    Slots slot(offset[n]);
    std::vector<std::size_t> input_pos(n, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < d.inputs.size(); ++i) input_pos[d.inputs[i]] = i;
    Slots outputs(d.outputs.size());
    std::vector<std::size_t> output_pos(n, static_cast<std::size_t>(-1));
    for (std::size_t i = 0; i < d.outputs.size(); ++i) output_pos[d.outputs[i]] = i;

    for (std::size_t idx : g.topo_order()) {
      const Node& node = d.nodes[idx];
      const NodeInfo& ni = g.info(idx);
      Slots args;
      args.reserve(ni.in.size());
      for (const auto& src : g.feeds(idx)) {
        auto& s = slot[offset[src.node] + src.socket];
        if (s) ++stats_.consumed;
        args.push_back(std::move(s));
        s.reset();
      }
      Slots out;
      if (const auto* ip = std::get_if<InputPort>(&node.kind)) {
        (void)ip;
        out.push_back(std::move(inputs.at(input_pos[idx])));
      } else if (const auto* c = std::get_if<ConstantNode>(&node.kind)) {
        out.push_back(c->value);
      } else if (std::holds_alternative<OutputPort>(node.kind)) {
        outputs[output_pos[idx]] = std::move(args[0]);
        continue;
      } else if (!ready(ni, args)) {
        out.resize(ni.out.size());
      } else {
        ++stats_.fired;
        if (const auto* sg = std::get_if<SubGraphNode>(&node.kind)) {
          out = run(*sg->graph, std::move(args), depth + 1);
        } else {
          out = fire(std::get<Primitive>(node.kind), ni, std::move(args), depth);
        }
      }
      if (out.size() != ni.out.size())
        throw EvalError("node '" + node.id + "' produced " + std::to_string(out.size()) + " values, expected " +
                        std::to_string(ni.out.size()));
      for (std::size_t s = 0; s < out.size(); ++s) {
        if (out[s]) ++stats_.produced;
        slot[offset[idx] + s] = std::move(out[s]);
      }
    }
    return outputs;
  }

  static bool ready(const NodeInfo& ni, const Slots& args) {
    std::vector<bool> grouped(args.size());
    for (const auto& eg : ni.in_groups) {
      bool left = true, right = true, any_left = false, any_right = false;
      for (std::size_t i = eg.begin; i < eg.mid; ++i) {
        grouped[i] = true;
        left = left && args[i].has_value();
        any_left = any_left || args[i].has_value();
      }
      for (std::size_t i = eg.mid; i < eg.end; ++i) {
        grouped[i] = true;
        right = right && args[i].has_value();
        any_right = any_right || args[i].has_value();
      }
      if (!((left && !any_right) || (right && !any_left))) return false;
    }
    for (std::size_t i = 0; i < args.size(); ++i)
      if (!grouped[i] && !args[i]) return false;
    return true;
  }

  static Slots one(Value v) {
    Slots s;
    s.emplace_back(std::move(v));
    return s;
  }

  // Outputs of an exclusive pair: the taken side is filled, the other inactive.
  static Slots choose(Side side, Slots taken, std::size_t left_n, std::size_t right_n) {
    Slots s(left_n + right_n);
    std::size_t base = side == Side::Left ? 0 : left_n;
    for (std::size_t i = 0; i < taken.size(); ++i) s[base + i] = std::move(taken[i]);
    return s;
  }

  // Decides a condition operation on copies of the board.
  bool decide(const Value& cond, const Slots& board, std::size_t depth, const char* what) {
    std::vector<Value> copies;
    for (const auto& v : board) copies.push_back(deep_copy(*v));
    Slots r = call(cond, std::move(copies), depth);
    if (r.size() != 1 || !r[0] || !r[0]->is_type()) throw EvalError(std::string(what) + ": condition gave no type");
    const TypeExpr& t = r[0]->as_type();
    if (!is_relational(t)) throw EvalError(std::string(what) + ": condition " + to_string(t) + " is not relational");
    RelResult res = eval_relational(t, opts_.bound);
    if (res.decision == Decision::Undecidable)
      throw EvalError(std::string(what) + ": condition " + to_string(t) + " is undecidable here");
    return res.inhabited();
  }

  static std::vector<Value> unwrap(Slots s) {
    std::vector<Value> v;
    for (auto& x : s) v.push_back(std::move(*x));
    return v;
  }

  Slots fire(const Primitive& p, const NodeInfo& ni, Slots a, std::size_t depth) {
    auto nat = [&](std::size_t i) { return a[i]->as_nat(); };
    switch (p.op) {
      case PrimOp::Join:
        return one(Value::pair(std::move(*a[0]), std::move(*a[1])));
      case PrimOp::Proj: {
        Slots s;
        s.emplace_back(a[0]->first());
        s.emplace_back(a[0]->second());
        return s;
      }
      case PrimOp::PlusLeft:
        return one(Value::tagged(Side::Left, std::move(*a[0]), TypeExpr::sum(p.a[0], p.b[0])));
      case PrimOp::PlusRight:
        return one(Value::tagged(Side::Right, std::move(*a[0]), TypeExpr::sum(p.a[0], p.b[0])));
      case PrimOp::Get: {
        const auto& tg = a[0]->as_tagged();
        return choose(tg.side, one(*tg.payload), 1, 1);
      }
      case PrimOp::Const:
        return one(Value::op(const_graph(*a[0], p.a[0], p.b[0])));
      case PrimOp::ConstN:
        return one(Value::op(const_graph(*a[0], p.a[0], TypeExpr::nat())));
      case PrimOp::Id:
        return a;
      case PrimOp::Apply: {
        Value f = std::move(*a[0]);
        if (p.count == p.a.size()) {
          std::vector<Value> args;
          for (std::size_t i = 1; i < a.size(); ++i) args.push_back(std::move(*a[i]));
          return call(f, std::move(args), depth);
        }
        std::vector<std::pair<std::size_t, Value>> bind;
        for (std::size_t i = 1; i < a.size(); ++i) bind.emplace_back(i - 1, std::move(*a[i]));
        return one(Value::op(partial_apply(f.as_op(), bind)));
      }
      case PrimOp::Compose:
        return one(Value::op(compose_graphs(a[0]->as_op(), a[1]->as_op(), p.pairing)));
      case PrimOp::Copy: {
        Value c = deep_copy(*a[0]);
        Slots s;
        s.emplace_back(std::move(*a[0]));
        s.emplace_back(std::move(c));
        return s;
      }
      case PrimOp::Drop:
        return {};
      case PrimOp::Succ:
        return one(Value::nat(nat(0) + 1));
      case PrimOp::Pred:
        return one(Value::nat(nat(0) > 1 ? nat(0) - 1 : 1));
      case PrimOp::Iter:
        return one(Value::op(iter_graph(a[1]->as_op(), nat(0))));
      case PrimOp::Change:
        return one(Value::op(change_graph(p.a[0], nat(0), std::move(*a[1]), std::move(*a[2]))));
      case PrimOp::IfThenElse:
        return one(Value::op(ite_graph(p.a, p.b, p.c, static_cast<unsigned>(p.count), std::move(*a[0]),
                                       std::move(*a[1]), std::move(*a[2]))));
      case PrimOp::While:
        return one(Value::op(while_graph(p.a, static_cast<unsigned>(p.count), nat(0), std::move(*a[1]),
                                         std::move(*a[2]))));
      case PrimOp::SigmaF:
        return one(Value::op(sigma_graph(p.graph, p.a[0], static_cast<unsigned>(p.count), std::move(*a[0]))));
      case PrimOp::Merge: {
        const std::size_t k = p.a.size();
        Side side = a[0] ? Side::Left : Side::Right;
        Slots s;
        for (std::size_t i = 0; i < k; ++i) s.push_back(std::move(a[(side == Side::Left ? 0 : k) + i]));
        return s;
      }
      case PrimOp::Curry:
        return one(Value::op(curry_transform(a[0]->as_op(), p.count)));
      case PrimOp::Uncurry:
        return one(Value::op(uncurry_transform(a[0]->as_op())));
      case PrimOp::Equal:
        return one(Value::type(TypeExpr::rel_atom(RelKind::Equal, nat(0), nat(1))));
      case PrimOp::Lesser:
        return one(Value::type(TypeExpr::rel_atom(RelKind::Lesser, nat(0), nat(1))));
      case PrimOp::Greater:
        return one(Value::type(TypeExpr::rel_atom(RelKind::Greater, nat(0), nat(1))));
      case PrimOp::TypeProduct:
      case PrimOp::TypeSum:
      case PrimOp::TypeArrow: {
        TypeCtor k = p.op == PrimOp::TypeProduct ? TypeCtor::Product
                     : p.op == PrimOp::TypeSum   ? TypeCtor::Sum
                                                 : TypeCtor::Arrow;
        const TypeExpr& x = a[0]->as_type();
        const TypeExpr& y = a[1]->as_type();
        return one(Value::type(p.count == 0 ? level1_constructor(k, x, y) : construct_type(k, x, y)));
      }
      case PrimOp::Negate:
        return one(Value::type(TypeExpr::neg(a[0]->as_type())));
      case PrimOp::PiType:
        return one(Value::type(TypeExpr::pi(a[0]->as_op(), p.a[0], static_cast<unsigned>(p.count))));
      case PrimOp::SigmaType:
        return one(Value::type(TypeExpr::sigma(a[0]->as_op(), p.a[0], static_cast<unsigned>(p.count))));
      case PrimOp::Des: {
        auto [l, r] = des(a[0]->as_type());
        Slots s;
        s.emplace_back(Value::type(l));
        s.emplace_back(Value::type(r));
        return s;
      }
      case PrimOp::Ind1:
        return one(Value::type(ind1(static_cast<std::uint64_t>(nat(0)))));
      case PrimOp::TypeCode:
        return one(Value::nat(static_cast<std::int64_t>(type_code(a[0]->as_type()))));
      case PrimOp::Axiom: {
        const AxiomSpec& spec = find_axiom(p.name);
        std::vector<std::int64_t> args;
        for (std::size_t i = 0; i < spec.arity; ++i) args.push_back(nat(i));
        AxiomInstance inst = instantiate_axiom(p.name, args);
        auto w = std::make_shared<WitnessNode>();
        w->kind = WitnessKind::Axiom;
        w->name = p.name;
        w->args = args;
        for (std::size_t j = 0; j < spec.premises; ++j) {
          const Witness& pw = a[spec.arity + j]->as_proof();
          if (!check_witness(inst.premises[j], pw, opts_.bound))
            throw EvalError("axiom '" + p.name + "': premise " + to_string(inst.premises[j]) + " not witnessed");
          w->parts.push_back(pw);
        }
        return one(Value::proof(std::move(w)));
      }
      case PrimOp::Relation: {
        HoleBindings bind;
        if (p.pairing.empty()) {
          for (std::size_t i = 0; i < a.size(); ++i) bind[static_cast<unsigned>(i + 1)] = nat(i);
        } else {
          for (auto [in, hole] : p.pairing) bind[static_cast<unsigned>(hole)] = nat(in);
        }
        return one(Value::type(instantiate(p.pattern, bind)));
      }
      case PrimOp::ChangeBody: {
        if (nat(0) == p.values[0].as_nat()) return one(deep_copy(p.values[1]));
        return call(p.values[2], {std::move(*a[0])}, depth);
      }
      case PrimOp::IteBody: {
        bool yes = decide(p.values[0], a, depth, "ite");
        const std::size_t cn = p.b.size(), dn = p.c.size();
        Slots r = call(p.values[yes ? 1 : 2], unwrap(std::move(a)), depth);
        return choose(yes ? Side::Left : Side::Right, std::move(r), cn, dn);
      }
      case PrimOp::WhileBody: {
        const std::int64_t n = p.values[0].as_nat();
        const std::size_t k = p.a.size();
        for (std::int64_t i = 0; i < n; ++i) {
          if (!decide(p.values[1], a, depth, "while")) return choose(Side::Right, std::move(a), k, k);
          a = call(p.values[2], unwrap(std::move(a)), depth);
        }
        return choose(Side::Left, std::move(a), k, k);
      }
      case PrimOp::SigmaBody: {
        Value point = deep_copy(*a[0]);
        Slots r = call(p.values[0], {std::move(*a[0])}, depth);
        if (r.size() != 1 || !r[0] || !r[0]->is_proof()) throw EvalError("sigma_f: family member gave no witness");
        if (point.is_nat()) {
          TypeExpr body = family_at(*p.graph, point.as_nat(), opts_.bound);
          if (!check_witness(body, r[0]->as_proof(), opts_.bound))
            throw EvalError("sigma_f: witness does not prove " + to_string(body));
        }
        return one(Value::pair(std::move(point), std::move(*r[0])));
      }
    }
    (void)ni;
    throw EvalError("unknown primitive");
  }

  EvalOptions opts_;
  Stats stats_;
};

inline EvalResult evaluate(const Graph& g, std::vector<Value> inputs, const EvalOptions& opts = {}) {
  return Evaluator(opts).evaluate(g, std::move(inputs));
}

inline EvalResult evaluate(const GraphPtr& g, std::vector<Value> inputs, const EvalOptions& opts = {}) {
  return evaluate(*g, std::move(inputs), opts);
}

// Applies an operation value; all outputs must be active.
inline std::vector<Value> apply_op(const Value& op, std::vector<Value> args, const EvalOptions& opts = {}) {
  return evaluate(*op.as_op(), std::move(args), opts).values();
}

inline std::vector<Value> evaluate_op_value(const Value& f, std::vector<Value> args, const EvalOptions& opts = {}) {
  return apply_op(f, std::move(args), opts);
}

// Single natural in, single natural out.
inline std::int64_t apply_nat(const Value& op, std::int64_t x, const EvalOptions& opts = {}) {
  auto r = apply_op(op, {Value::nat(x)}, opts);
  if (r.size() != 1) throw EvalError("expected a single output");
  return r[0].as_nat();
}

inline TypeExpr family_at(const Graph& family, std::int64_t point, std::optional<std::int64_t> bound) {
  EvalOptions opts;
  opts.bound = bound;
  auto r = evaluate(family, {Value::nat(point)}, opts).values();
  if (r.size() != 1 || !r[0].is_type()) throw EvalError("family '" + family.name() + "' did not produce a type");
  return r[0].as_type();
}

}  // namespace universe
