#pragma once

// Construction graphs: nodes with typed socket boards, single-use wires.

#include <algorithm>
#include <memory>
#include <queue>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"
#include "primitive.hpp"
#include "type.hpp"
#include "value.hpp"

namespace universe {

struct SocketRef {
  std::size_t node = 0;
  std::size_t socket = 0;
  friend bool operator==(const SocketRef&, const SocketRef&) = default;
};

struct Wire {
  SocketRef from;  // output socket
  SocketRef to;    // input socket
  friend bool operator==(const Wire&, const Wire&) = default;
};

struct ConstantNode {
  Value value;
  TypeExpr type;
};
struct InputPort {
  TypeExpr type;
};
struct OutputPort {
  TypeExpr type;
};
struct SubGraphNode {
  std::shared_ptr<const Graph> graph;
};

using NodeKind = std::variant<Primitive, ConstantNode, InputPort, OutputPort, SubGraphNode>;

struct Node {
  std::string id;
  NodeKind kind;
};

struct GraphData {
  std::string name;
  std::vector<Node> nodes;
  std::vector<Wire> wires;
  std::vector<std::size_t> inputs;   // InputPort node indices, in order
  std::vector<std::size_t> outputs;  // OutputPort node indices, in order
  std::vector<ExclGroup> exclusive;  // over positions in `outputs`
};

enum class ViolationKind : std::uint8_t {
  DanglingInput,
  DanglingOutput,
  DoubleConsumption,
  DoubleFeed,
  TypeMismatch,
  Cycle,
  BadEndpoint,
  BadPort,
  BadNode,
};

inline std::string_view violation_name(ViolationKind k) {
  switch (k) {
    case ViolationKind::DanglingInput: return "dangling input";
    case ViolationKind::DanglingOutput: return "dangling output";
    case ViolationKind::DoubleConsumption: return "double consumption";
    case ViolationKind::DoubleFeed: return "double feed";
    case ViolationKind::TypeMismatch: return "type mismatch";
    case ViolationKind::Cycle: return "cycle";
    case ViolationKind::BadEndpoint: return "bad endpoint";
    case ViolationKind::BadPort: return "bad port";
    case ViolationKind::BadNode: return "bad node";
  }
  return "?";
}

struct Violation {
  ViolationKind kind;
  std::string message;
};

struct CheckError : Error {
  std::vector<Violation> violations;
  CheckError(const std::string& graph, std::vector<Violation> v)
      : Error(summary(graph, v)), violations(std::move(v)) {}

 private:
  static std::string summary(const std::string& graph, const std::vector<Violation>& v) {
    std::string s = "graph '" + graph + "' failed check:";
    for (const auto& x : v) s += "\n  " + std::string(violation_name(x.kind)) + ": " + x.message;
    return s;
  }
};

// Flattened socket view of one node.
struct NodeInfo {
  std::vector<TypeExpr> in;
  std::vector<ExclGroup> in_groups;
  std::vector<TypeExpr> out;
  std::vector<ExclGroup> out_groups;
};

class Graph;
inline NodeInfo node_info(const Node& n);

class Graph {
 public:
  // Checks the data; throws CheckError listing every violation.
  static std::shared_ptr<const Graph> make(GraphData data);

  const GraphData& data() const { return impl_->data; }
  const std::string& name() const { return impl_->data.name; }
  const NodeInfo& info(std::size_t node) const { return impl_->info[node]; }
  // Source socket of every input socket of `node`.
  const std::vector<SocketRef>& feeds(std::size_t node) const { return impl_->feed[node]; }
  const std::vector<std::size_t>& topo_order() const { return impl_->topo; }
  const std::vector<TypeExpr>& input_types() const { return impl_->input_types; }
  const std::vector<TypeExpr>& output_types() const { return impl_->output_types; }
  const std::vector<ExclGroup>& output_groups() const { return impl_->data.exclusive; }
  // Output board with exclusive groups folded back into Excl entries.
  const std::vector<TypeExpr>& output_board() const { return impl_->output_board; }
  const TypeExpr& signature() const { return impl_->signature; }

  // A new handle on the same immutable construction.
  std::shared_ptr<const Graph> clone() const { return std::shared_ptr<const Graph>(new Graph(impl_)); }
  bool same_construction(const Graph& other) const { return impl_ == other.impl_; }

 private:
  struct Impl {
    GraphData data;
    std::vector<NodeInfo> info;
    std::vector<std::vector<SocketRef>> feed;
    std::vector<std::size_t> topo;
    std::vector<TypeExpr> input_types;
    std::vector<TypeExpr> output_types;
    std::vector<TypeExpr> output_board;
    TypeExpr signature;
  };
  explicit Graph(std::shared_ptr<const Impl> impl) : impl_(std::move(impl)) {}
  friend std::vector<Violation> check(const GraphData& g);

  std::shared_ptr<const Impl> impl_;
};

inline NodeInfo node_info(const Node& n) {
  NodeInfo ni;
  std::visit(
      [&](const auto& k) {
        using K = std::decay_t<decltype(k)>;
        if constexpr (std::is_same_v<K, Primitive>) {
          Signature s = signature(k);
          FlatBoard in = flatten_board(s.in), out = flatten_board(s.out);
          ni.in = std::move(in.sockets);
          ni.in_groups = std::move(in.groups);
          ni.out = std::move(out.sockets);
          ni.out_groups = std::move(out.groups);
        } else if constexpr (std::is_same_v<K, ConstantNode>) {
          ni.out = {k.type};
        } else if constexpr (std::is_same_v<K, InputPort>) {
          ni.out = {k.type};
        } else if constexpr (std::is_same_v<K, OutputPort>) {
          ni.in = {k.type};
        } else {
          if (!k.graph) throw TypeError("sub-graph node without a graph");
          ni.in = k.graph->input_types();
          ni.out = k.graph->output_types();
          ni.out_groups = k.graph->output_groups();
        }
      },
      n.kind);
  return ni;
}

// Reports every linearity, typing and structural violation.
inline std::vector<Violation> check(const GraphData& g) {
  std::vector<Violation> v;
  auto add = [&](ViolationKind k, std::string msg) { v.push_back({k, std::move(msg)}); };
  auto label = [&](std::size_t node) { return node < g.nodes.size() ? "'" + g.nodes[node].id + "'" : "#" + std::to_string(node); };

  std::vector<NodeInfo> info(g.nodes.size());
  std::vector<bool> node_ok(g.nodes.size(), true);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    try {
      info[i] = node_info(g.nodes[i]);
    } catch (const Error& e) {
      node_ok[i] = false;
      add(ViolationKind::BadNode, "node " + label(i) + ": " + e.what());
      continue;
    }
    if (const auto* c = std::get_if<ConstantNode>(&g.nodes[i].kind); c && !conforms(c->value, c->type))
      add(ViolationKind::TypeMismatch, "constant " + label(i) + " is not an object of " + to_string(c->type));
    if (const auto* p = std::get_if<InputPort>(&g.nodes[i].kind); p && p->type.is(TypeTag::Excl))
      add(ViolationKind::BadPort, "input port " + label(i) + " cannot carry an exclusive board");
    if (const auto* p = std::get_if<OutputPort>(&g.nodes[i].kind); p && p->type.is(TypeTag::Excl))
      add(ViolationKind::BadPort, "output port " + label(i) + " must use exclusive groups instead of an exclusive type");
  }

  // ports
  std::vector<int> in_seen(g.nodes.size()), out_seen(g.nodes.size());
  for (std::size_t idx : g.inputs) {
    if (idx >= g.nodes.size() || !std::holds_alternative<InputPort>(g.nodes[idx].kind))
      add(ViolationKind::BadPort, "graph input " + label(idx) + " is not an input port");
    else if (in_seen[idx]++)
      add(ViolationKind::BadPort, "input port " + label(idx) + " listed twice");
  }
  for (std::size_t idx : g.outputs) {
    if (idx >= g.nodes.size() || !std::holds_alternative<OutputPort>(g.nodes[idx].kind))
      add(ViolationKind::BadPort, "graph output " + label(idx) + " is not an output port");
    else if (out_seen[idx]++)
      add(ViolationKind::BadPort, "output port " + label(idx) + " listed twice");
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (std::holds_alternative<InputPort>(g.nodes[i].kind) && !in_seen[i])
      add(ViolationKind::BadPort, "input port " + label(i) + " missing from the input list");
    if (std::holds_alternative<OutputPort>(g.nodes[i].kind) && !out_seen[i])
      add(ViolationKind::BadPort, "output port " + label(i) + " missing from the output list");
  }
  if (g.outputs.empty()) add(ViolationKind::BadPort, "graph has no outputs");
  {
    std::vector<bool> grouped(g.outputs.size());
    for (const auto& eg : g.exclusive) {
      if (!(eg.begin < eg.mid && eg.mid < eg.end && eg.end <= g.outputs.size())) {
        add(ViolationKind::BadPort, "malformed exclusive output group");
        continue;
      }
      for (std::size_t i = eg.begin; i < eg.end; ++i) {
        if (grouped[i]) add(ViolationKind::BadPort, "output " + std::to_string(i) + " in two exclusive groups");
        grouped[i] = true;
      }
    }
  }

  // wires
  std::vector<std::vector<int>> produced(g.nodes.size()), consumed(g.nodes.size());
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    produced[i].assign(info[i].out.size(), 0);
    consumed[i].assign(info[i].in.size(), 0);
  }
  for (const auto& w : g.wires) {
    bool ok = true;
    if (w.from.node >= g.nodes.size() || !node_ok[w.from.node] || w.from.socket >= info[w.from.node].out.size()) {
      add(ViolationKind::BadEndpoint, "wire source " + label(w.from.node) + ":" + std::to_string(w.from.socket) +
                                          " does not exist");
      ok = false;
    }
    if (w.to.node >= g.nodes.size() || !node_ok[w.to.node] || w.to.socket >= info[w.to.node].in.size()) {
      add(ViolationKind::BadEndpoint, "wire target " + label(w.to.node) + ":" + std::to_string(w.to.socket) +
                                          " does not exist");
      ok = false;
    }
    if (!ok) continue;
    if (++produced[w.from.node][w.from.socket] == 2)
      add(ViolationKind::DoubleConsumption, "output " + label(w.from.node) + ":" + std::to_string(w.from.socket) +
                                                " is consumed more than once");
    if (++consumed[w.to.node][w.to.socket] == 2)
      add(ViolationKind::DoubleFeed, "input " + label(w.to.node) + ":" + std::to_string(w.to.socket) +
                                         " receives more than one wire");
    const TypeExpr& a = info[w.from.node].out[w.from.socket];
    const TypeExpr& b = info[w.to.node].in[w.to.socket];
    if (!type_equal(a, b))
      add(ViolationKind::TypeMismatch, "wire " + label(w.from.node) + ":" + std::to_string(w.from.socket) + " -> " +
                                           label(w.to.node) + ":" + std::to_string(w.to.socket) + " carries " +
                                           to_string(a) + " into " + to_string(b));
  }
  for (std::size_t i = 0; i < g.nodes.size(); ++i) {
    if (!node_ok[i]) continue;
    for (std::size_t s = 0; s < produced[i].size(); ++s)
      if (produced[i][s] == 0)
        add(ViolationKind::DanglingOutput, "output " + label(i) + ":" + std::to_string(s) + " is never consumed");
    for (std::size_t s = 0; s < consumed[i].size(); ++s)
      if (consumed[i][s] == 0)
        add(ViolationKind::DanglingInput, "input " + label(i) + ":" + std::to_string(s) + " is never fed");
  }

  // cycles (Kahn over valid wires)
  {
    std::vector<std::vector<std::size_t>> succ(g.nodes.size());
    std::vector<std::size_t> indeg(g.nodes.size());
    for (const auto& w : g.wires) {
      if (w.from.node >= g.nodes.size() || w.to.node >= g.nodes.size()) continue;
      succ[w.from.node].push_back(w.to.node);
      ++indeg[w.to.node];
    }
    std::queue<std::size_t> q;
    for (std::size_t i = 0; i < g.nodes.size(); ++i)
      if (!indeg[i]) q.push(i);
    std::size_t seen = 0;
    while (!q.empty()) {
      std::size_t n = q.front();
      q.pop();
      ++seen;
      for (std::size_t m : succ[n])
        if (--indeg[m] == 0) q.push(m);
    }
    if (seen != g.nodes.size()) {
      std::string members;
      for (std::size_t i = 0; i < g.nodes.size(); ++i)
        if (indeg[i]) members += (members.empty() ? "" : ", ") + label(i);
      add(ViolationKind::Cycle, "nodes on or behind a cycle: " + members);
    }
  }
  return v;
}

inline std::shared_ptr<const Graph> Graph::make(GraphData data) {
  auto violations = check(data);
  if (!violations.empty()) throw CheckError(data.name, std::move(violations));
  auto impl = std::make_shared<Impl>();
  const std::size_t n = data.nodes.size();
  impl->info.resize(n);
  impl->feed.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    impl->info[i] = node_info(data.nodes[i]);
    impl->feed[i].resize(impl->info[i].in.size());
  }
  std::vector<std::vector<std::size_t>> succ(n);
  std::vector<std::size_t> indeg(n);
  for (const auto& w : data.wires) {
    impl->feed[w.to.node][w.to.socket] = w.from;
    succ[w.from.node].push_back(w.to.node);
    ++indeg[w.to.node];
  }
  // smallest ready index first: deterministic firing order
  std::priority_queue<std::size_t, std::vector<std::size_t>, std::greater<>> ready;
  for (std::size_t i = 0; i < n; ++i)
    if (!indeg[i]) ready.push(i);
  while (!ready.empty()) {
    std::size_t i = ready.top();
    ready.pop();
    impl->topo.push_back(i);
    for (std::size_t m : succ[i])
      if (--indeg[m] == 0) ready.push(m);
  }
  for (std::size_t idx : data.inputs) impl->input_types.push_back(std::get<InputPort>(data.nodes[idx].kind).type);
  for (std::size_t idx : data.outputs) impl->output_types.push_back(std::get<OutputPort>(data.nodes[idx].kind).type);
  impl->output_board = fold_sockets(impl->output_types, data.exclusive);
  impl->signature = TypeExpr::arrow(impl->input_types, impl->output_board);
  impl->data = std::move(data);
  return std::shared_ptr<const Graph>(new Graph(std::move(impl)));
}

using GraphPtr = std::shared_ptr<const Graph>;

// Single-owner mutable builder. Errors in argument counts throw at once;
// linearity and typing are checked by build().
class GraphBuilder {
 public:
  explicit GraphBuilder(std::string name = "graph") { data_.name = std::move(name); }

  SocketRef input(TypeExpr t, std::string id = "") {
    std::size_t idx = push(Node{pick_id(id, "in"), InputPort{std::move(t)}});
    data_.inputs.push_back(idx);
    return {idx, 0};
  }

  std::vector<SocketRef> inputs(const std::vector<TypeExpr>& types) {
    std::vector<SocketRef> out;
    for (const auto& t : types) out.push_back(input(t));
    return out;
  }

  std::vector<SocketRef> add(Primitive p, const std::vector<SocketRef>& args, std::string id = "") {
    std::string base(kind_name(p.op));
    return add_node(Node{pick_id(id, base), std::move(p)}, args);
  }

  // Convenience for single-output primitives.
  SocketRef add1(Primitive p, const std::vector<SocketRef>& args, std::string id = "") {
    auto outs = add(std::move(p), args, std::move(id));
    if (outs.size() != 1) throw TypeError("add1 on a primitive with " + std::to_string(outs.size()) + " outputs");
    return outs[0];
  }

  std::vector<SocketRef> sub(GraphPtr g, const std::vector<SocketRef>& args, std::string id = "") {
    std::string base = g ? g->name() : "sub";
    return add_node(Node{pick_id(id, base), SubGraphNode{std::move(g)}}, args);
  }

  SocketRef constant(Value v, TypeExpr t, std::string id = "") {
    std::size_t idx = push(Node{pick_id(id, "const"), ConstantNode{std::move(v), std::move(t)}});
    return {idx, 0};
  }
  SocketRef constant(Value v, std::string id = "") {
    TypeExpr t = type_of(v);
    return constant(std::move(v), std::move(t), std::move(id));
  }
  SocketRef nat(std::int64_t n) { return constant(Value::nat(n), TypeExpr::nat()); }
  SocketRef op(GraphPtr g) {
    TypeExpr t = g->signature();
    return constant(Value::op(std::move(g)), std::move(t));
  }

  std::size_t output(SocketRef src, std::string id = "") {
    std::size_t idx = push(Node{pick_id(id, "out"), OutputPort{socket_type(src)}});
    wire(src, {idx, 0});
    data_.outputs.push_back(idx);
    return data_.outputs.size() - 1;
  }

  void outputs(const std::vector<SocketRef>& srcs) {
    for (const auto& s : srcs) output(s);
  }

  // Consecutive outputs forming one exclusive group.
  void output_exclusive(const std::vector<SocketRef>& left, const std::vector<SocketRef>& right) {
    ExclGroup g;
    g.begin = data_.outputs.size();
    for (const auto& s : left) output(s);
    g.mid = data_.outputs.size();
    for (const auto& s : right) output(s);
    g.end = data_.outputs.size();
    data_.exclusive.push_back(g);
  }

  // Low-level access, mainly for hand-crafting graphs (including invalid ones).
  std::size_t add_raw(Node n) { return push(std::move(n)); }
  void wire(SocketRef from, SocketRef to) { data_.wires.push_back({from, to}); }
  void mark_input(std::size_t node) { data_.inputs.push_back(node); }
  void mark_output(std::size_t node) { data_.outputs.push_back(node); }

  const TypeExpr& socket_type(SocketRef s) const {
    const auto& ni = infos_.at(s.node);
    if (s.socket >= ni.out.size()) throw TypeError("socket index out of range on node '" + data_.nodes[s.node].id + "'");
    return ni.out[s.socket];
  }

  const GraphData& data() const { return data_; }
  GraphPtr build() const { return Graph::make(data_); }

 private:
  std::size_t push(Node n) {
    NodeInfo ni;
    try {
      ni = node_info(n);
    } catch (const Error&) {
      // left for check() to report
    }
    data_.nodes.push_back(std::move(n));
    infos_.push_back(std::move(ni));
    return data_.nodes.size() - 1;
  }

  std::vector<SocketRef> add_node(Node n, const std::vector<SocketRef>& args) {
    std::size_t idx = push(std::move(n));
    const auto& ni = infos_[idx];
    if (args.size() != ni.in.size())
      throw TypeError("node '" + data_.nodes[idx].id + "' takes " + std::to_string(ni.in.size()) + " inputs, got " +
                      std::to_string(args.size()));
    for (std::size_t i = 0; i < args.size(); ++i) wire(args[i], {idx, i});
    std::vector<SocketRef> outs;
    for (std::size_t i = 0; i < ni.out.size(); ++i) outs.push_back({idx, i});
    return outs;
  }

  std::string pick_id(const std::string& id, const std::string& base) {
    if (!id.empty()) return id;
    return base + "#" + std::to_string(data_.nodes.size());
  }

  GraphData data_;
  std::vector<NodeInfo> infos_;
};

// ---------------------------------------------------------------------------
// Value operations that need the graph layer

inline bool graph_equal(const Graph& a, const Graph& b);

namespace detail {

inline std::string family_label(const Graph& g) {
  const auto& d = g.data();
  if (d.nodes.size() == 3)
    for (const auto& n : d.nodes)
      if (const auto* p = std::get_if<Primitive>(&n.kind); p && p->op == PrimOp::Relation && p->pairing.size() == 1)
        return "_" + std::to_string(p->pairing[0].second) + ". " + to_string(p->pattern);
  return g.name().empty() ? "family" : g.name();
}

inline bool primitive_equal(const Primitive& a, const Primitive& b) {
  if (a.op != b.op || a.count != b.count || a.pairing != b.pairing || a.name != b.name) return false;
  if (!board_equal(a.a, b.a) || !board_equal(a.b, b.b) || !board_equal(a.c, b.c) || !board_equal(a.d, b.d))
    return false;
  if (!type_equal(a.pattern, b.pattern)) return false;
  if ((a.graph == nullptr) != (b.graph == nullptr)) return false;
  if (a.graph && !graph_equal(*a.graph, *b.graph)) return false;
  if (a.values.size() != b.values.size()) return false;
  for (std::size_t i = 0; i < a.values.size(); ++i)
    if (!value_equal(a.values[i], b.values[i])) return false;
  return true;
}

inline bool node_equal(const Node& a, const Node& b) {
  if (a.kind.index() != b.kind.index()) return false;
  return std::visit(
      [&](const auto& ka) -> bool {
        using K = std::decay_t<decltype(ka)>;
        const auto& kb = std::get<K>(b.kind);
        if constexpr (std::is_same_v<K, Primitive>) {
          return primitive_equal(ka, kb);
        } else if constexpr (std::is_same_v<K, ConstantNode>) {
          return type_equal(ka.type, kb.type) && value_equal(ka.value, kb.value);
        } else if constexpr (std::is_same_v<K, InputPort> || std::is_same_v<K, OutputPort>) {
          return type_equal(ka.type, kb.type);
        } else {
          return graph_equal(*ka.graph, *kb.graph);
        }
      },
      a.kind);
}

}  // namespace detail

// Structural equality of constructions (node ids are presentation only).
inline bool graph_equal(const Graph& a, const Graph& b) {
  if (a.same_construction(b)) return true;
  const auto& da = a.data();
  const auto& db = b.data();
  if (da.nodes.size() != db.nodes.size() || da.wires.size() != db.wires.size() || da.inputs != db.inputs ||
      da.outputs != db.outputs || da.exclusive != db.exclusive)
    return false;
  for (std::size_t i = 0; i < da.nodes.size(); ++i)
    if (!detail::node_equal(da.nodes[i], db.nodes[i])) return false;
  for (std::size_t i = 0; i < da.nodes.size(); ++i)
    if (a.feeds(i) != b.feeds(i)) return false;
  return true;
}

inline TypeExpr type_of(const Value& v) {
  return std::visit(
      [](const auto& x) -> TypeExpr {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Value::Nat>) return TypeExpr::nat();
        else if constexpr (std::is_same_v<X, Value::Pair>) return TypeExpr::product(type_of(*x.first), type_of(*x.second));
        else if constexpr (std::is_same_v<X, Value::Tagged>) return x.type;
        else if constexpr (std::is_same_v<X, Value::Op>) return x.graph->signature();
        else if constexpr (std::is_same_v<X, Value::Type>) return TypeExpr::types(level_of(x.type));
        else if constexpr (std::is_same_v<X, Value::Proof>) return TypeExpr::proof();
        else return TypeExpr::continuum();
      },
      v.data);
}

inline bool conforms(const Value& v, const TypeExpr& t) {
  switch (t.tag()) {
    case TypeTag::Nat:
      return v.is_nat();
    case TypeTag::Continuum:
      return v.is_continuum();
    case TypeTag::Product:
      return v.is_pair() && conforms(v.first(), t.left()) && conforms(v.second(), t.right());
    case TypeTag::Sum: {
      if (!v.is_tagged()) return false;
      const auto& tg = v.as_tagged();
      return conforms(*tg.payload, tg.side == Side::Left ? t.left() : t.right());
    }
    case TypeTag::Arrow:
      return v.is_op() && type_equal(v.as_op()->signature(), t);
    case TypeTag::Types:
      return v.is_type() && level_of(v.as_type()) <= t.level();
    case TypeTag::Pi: {
      if (!v.is_op()) return false;
      const auto& g = *v.as_op();
      return g.input_types().size() == 1 && type_equal(g.input_types()[0], t.domain()) &&
             g.output_board().size() == 1 && g.output_board()[0].is(TypeTag::Proof);
    }
    case TypeTag::Sigma:
      return v.is_pair() && conforms(v.first(), t.domain()) && v.second().is_proof();
    case TypeTag::Proof:
    case TypeTag::RelAtom:
    case TypeTag::Neg:
      return v.is_proof();
    case TypeTag::Excl:
      return false;
  }
  return false;
}

inline bool value_equal(const Value& a, const Value& b) {
  if (a.data.index() != b.data.index()) return false;
  return std::visit(
      [&](const auto& x) -> bool {
        using X = std::decay_t<decltype(x)>;
        const auto& y = std::get<X>(b.data);
        if constexpr (std::is_same_v<X, Value::Nat>) return x.n == y.n;
        else if constexpr (std::is_same_v<X, Value::Pair>)
          return value_equal(*x.first, *y.first) && value_equal(*x.second, *y.second);
        else if constexpr (std::is_same_v<X, Value::Tagged>)
          return x.side == y.side && type_equal(x.type, y.type) && value_equal(*x.payload, *y.payload);
        else if constexpr (std::is_same_v<X, Value::Op>) return graph_equal(*x.graph, *y.graph);
        else if constexpr (std::is_same_v<X, Value::Type>) return type_equal(x.type, y.type);
        else if constexpr (std::is_same_v<X, Value::Proof>) return witness_equal(x.w, y.w);
        else return *x.c == *y.c;
      },
      a.data);
}

// Copies get fresh handles; immutable inner constructions are shared.
inline Value deep_copy(const Value& v) {
  return std::visit(
      [&](const auto& x) -> Value {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Value::Pair>) return Value::pair(deep_copy(*x.first), deep_copy(*x.second));
        else if constexpr (std::is_same_v<X, Value::Tagged>) return Value::tagged(x.side, deep_copy(*x.payload), x.type);
        else if constexpr (std::is_same_v<X, Value::Op>) return Value::op(x.graph->clone());
        else if constexpr (std::is_same_v<X, Value::Continuum>) return Value::continuum(*x.c);
        else return v;
      },
      v.data);
}

inline std::string to_string(const Value& v) {
  return std::visit(
      [](const auto& x) -> std::string {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Value::Nat>) return std::to_string(x.n);
        else if constexpr (std::is_same_v<X, Value::Pair>) return "[" + to_string(*x.first) + ", " + to_string(*x.second) + "]";
        else if constexpr (std::is_same_v<X, Value::Tagged>)
          return std::string(x.side == Side::Left ? "left(" : "right(") + to_string(*x.payload) + ")";
        else if constexpr (std::is_same_v<X, Value::Op>)
          return "<op " + x.graph->name() + " : " + to_string(x.graph->signature()) + ">";
        else if constexpr (std::is_same_v<X, Value::Type>) return "type " + to_string(x.type);
        else if constexpr (std::is_same_v<X, Value::Proof>) return "proof " + to_string(x.w);
        else
          return "continuum(dim=" + std::to_string(x.c->dim()) + ", resolution=" + std::to_string(x.c->resolution()) +
                 ", active=" + std::to_string(x.c->active_count()) + ")";
      },
      v.data);
}

}  // namespace universe
