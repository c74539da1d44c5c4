#pragma once

// JSON documents for graphs, types, values and witnesses; the text grid
// format for 2D complexes and the general {dim, resolution, active} form.

#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <vector>

#include <json.hpp>

#include "continuum.hpp"
#include "graph.hpp"
#include "relational.hpp"

namespace universe {

using json = nlohmann::json;

namespace detail {

[[noreturn]] inline void io_fail(const std::string& where, const std::string& msg) {
  throw ParseError(where + ": " + msg);
}

inline bool has_quantifier(const TypeExpr& t) {
  switch (t.tag()) {
    case TypeTag::Pi:
    case TypeTag::Sigma:
      return true;
    case TypeTag::Product:
    case TypeTag::Sum:
      return has_quantifier(t.left()) || has_quantifier(t.right());
    case TypeTag::Neg:
      return has_quantifier(t.left());
    case TypeTag::Arrow:
    case TypeTag::Excl:
      for (const auto& x : t.inputs())
        if (has_quantifier(x)) return true;
      for (const auto& x : t.outputs())
        if (has_quantifier(x)) return true;
      return false;
    default:
      return false;
  }
}

}  // namespace detail

json graph_to_json(const Graph& g);
GraphData graph_data_from_json(const json& j, const std::string& where = "graph");

// ---------------------------------------------------------------------------
// Types: plain text where possible, structured objects around quantifiers.

inline json board_to_json(const Board& b);

inline json type_to_json(const TypeExpr& t) {
  if (!detail::has_quantifier(t)) return to_string(t);
  switch (t.tag()) {
    case TypeTag::Pi:
    case TypeTag::Sigma:
      return {{t.is(TypeTag::Pi) ? "pi" : "sigma",
               {{"family", graph_to_json(*t.family())},
                {"domain", type_to_json(t.domain())},
                {"level", t.level()},
                {"negated", t.negated_body()}}}};
    case TypeTag::Product:
      return {{"product", {type_to_json(t.left()), type_to_json(t.right())}}};
    case TypeTag::Sum:
      return {{"sum", {type_to_json(t.left()), type_to_json(t.right())}}};
    case TypeTag::Neg:
      return {{"neg", type_to_json(t.left())}};
    case TypeTag::Arrow:
      return {{"arrow", {board_to_json(t.inputs()), board_to_json(t.outputs())}}};
    case TypeTag::Excl:
      return {{"excl", {board_to_json(t.inputs()), board_to_json(t.outputs())}}};
    default:
      return to_string(t);
  }
}

inline json board_to_json(const Board& b) {
  json a = json::array();
  for (const auto& t : b) a.push_back(type_to_json(t));
  return a;
}

inline TypeExpr type_from_json(const json& j, const std::string& where);

inline Board board_from_json(const json& j, const std::string& where) {
  if (!j.is_array()) return {type_from_json(j, where)};
  Board b;
  for (std::size_t i = 0; i < j.size(); ++i) b.push_back(type_from_json(j[i], where + "[" + std::to_string(i) + "]"));
  return b;
}

inline TypeExpr type_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_string()) {
      const std::string s = j.get<std::string>();
      try {
        if (s.find("pi(") != std::string::npos || s.find("sigma(") != std::string::npos) return parse_relation(s);
        return parse_type(s);
      } catch (const Error& e) {
        detail::io_fail(where, e.what());
      }
    }
    if (!j.is_object() || j.size() != 1) detail::io_fail(where, "expected a type string or a one-key type object");
    const auto& [key, v] = *j.items().begin();
    const std::string w = where + "." + key;
    if (key == "pi" || key == "sigma") {
      GraphPtr fam = Graph::make(graph_data_from_json(v.at("family"), w + ".family"));
      TypeExpr dom = type_from_json(v.at("domain"), w + ".domain");
      unsigned level = v.value("level", 1u);
      bool neg = v.value("negated", false);
      return key == "pi" ? TypeExpr::pi(fam, dom, level, neg) : TypeExpr::sigma(fam, dom, level, neg);
    }
    if (key == "product" || key == "sum") {
      if (!v.is_array() || v.size() != 2) detail::io_fail(w, "expected two components");
      TypeExpr a = type_from_json(v[0], w + "[0]"), b = type_from_json(v[1], w + "[1]");
      return key == "product" ? TypeExpr::product(a, b) : TypeExpr::sum(a, b);
    }
    if (key == "neg") return TypeExpr::neg(type_from_json(v, w));
    if (key == "arrow" || key == "excl") {
      if (!v.is_array() || v.size() != 2) detail::io_fail(w, "expected [inputs, outputs]");
      Board a = board_from_json(v[0], w + "[0]"), b = board_from_json(v[1], w + "[1]");
      return key == "arrow" ? TypeExpr::arrow(a, b) : TypeExpr::excl(a, b);
    }
    detail::io_fail(where, "unknown type object '" + key + "'");
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    detail::io_fail(where, e.what());
  } catch (const json::exception& e) {
    detail::io_fail(where, e.what());
  }
}

// ---------------------------------------------------------------------------
// Witnesses

inline std::string_view witness_kind_name(WitnessKind k) {
  switch (k) {
    case WitnessKind::Axiom: return "axiom";
    case WitnessKind::Trichotomy: return "trichotomy";
    case WitnessKind::Both: return "both";
    case WitnessKind::Left: return "left";
    case WitnessKind::Right: return "right";
    case WitnessKind::Bounded: return "bounded";
    case WitnessKind::Exists: return "exists";
  }
  return "?";
}

inline json witness_to_json(const Witness& w) {
  json j{{"kind", witness_kind_name(w->kind)}};
  if (w->kind == WitnessKind::Axiom) j["name"] = w->name;
  if (!w->args.empty()) j["args"] = w->args;
  if (w->kind == WitnessKind::Trichotomy) {
    j["outcome"] = rel_name(w->outcome);
    j["rounds"] = w->rounds;
  }
  if (w->kind == WitnessKind::Exists) j["point"] = w->point;
  if (!w->parts.empty()) {
    j["parts"] = json::array();
    for (const auto& p : w->parts) j["parts"].push_back(witness_to_json(p));
  }
  return j;
}

inline Witness witness_from_json(const json& j, const std::string& where) {
  try {
    auto w = std::make_shared<WitnessNode>();
    const std::string kind = j.at("kind").get<std::string>();
    bool found = false;
    for (auto k : {WitnessKind::Axiom, WitnessKind::Trichotomy, WitnessKind::Both, WitnessKind::Left,
                   WitnessKind::Right, WitnessKind::Bounded, WitnessKind::Exists})
      if (witness_kind_name(k) == kind) {
        w->kind = k;
        found = true;
      }
    if (!found) detail::io_fail(where, "unknown witness kind '" + kind + "'");
    w->name = j.value("name", std::string());
    if (j.contains("args")) w->args = j["args"].get<std::vector<std::int64_t>>();
    if (j.contains("outcome")) {
      const std::string o = j["outcome"].get<std::string>();
      w->outcome = o == "eq" ? RelKind::Equal : o == "lt" ? RelKind::Lesser : RelKind::Greater;
    }
    w->rounds = j.value("rounds", std::int64_t{0});
    w->point = j.value("point", std::int64_t{0});
    if (j.contains("parts"))
      for (std::size_t i = 0; i < j["parts"].size(); ++i)
        w->parts.push_back(witness_from_json(j["parts"][i], where + ".parts[" + std::to_string(i) + "]"));
    std::size_t need = w->kind == WitnessKind::Both ? 2
                       : (w->kind == WitnessKind::Left || w->kind == WitnessKind::Right || w->kind == WitnessKind::Exists)
                           ? 1
                           : w->parts.size();
    if (w->parts.size() != need) detail::io_fail(where, "wrong number of parts for a '" + kind + "' witness");
    return w;
  } catch (const json::exception& e) {
    detail::io_fail(where, e.what());
  }
}

// ---------------------------------------------------------------------------
// Continuum documents

inline CubicalComplex parse_grid(const std::string& text) {
  std::vector<std::string> rows;
  std::istringstream in(text);
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    while (!line.empty() && (line.back() == '\r' || line.back() == ' ')) line.pop_back();
    if (line.empty()) continue;
    for (char c : line)
      if (c != '#' && c != '.')
        throw ParseError("grid line " + std::to_string(lineno) + ": unexpected character '" + std::string(1, c) + "'");
    rows.push_back(line);
  }
  if (rows.empty()) throw ParseError("grid: no rows");
  const std::size_t side = rows.size();
  for (std::size_t r = 0; r < rows.size(); ++r)
    if (rows[r].size() != side)
      throw ParseError("grid row " + std::to_string(r + 1) + ": expected " + std::to_string(side) + " cells, got " +
                       std::to_string(rows[r].size()));
  unsigned res = 0;
  while ((std::size_t{1} << res) < side) ++res;
  if ((std::size_t{1} << res) != side) throw ParseError("grid side " + std::to_string(side) + " is not a power of two");
  CubicalComplex c(2, res, true);
  std::vector<CubicalComplex::Index> off;
  for (std::size_t r = 0; r < side; ++r)
    for (std::size_t col = 0; col < side; ++col)
      if (rows[r][col] == '.') off.push_back({static_cast<std::int64_t>(r + 1), static_cast<std::int64_t>(col + 1)});
  return deactivate(c, off);
}

inline std::string grid_to_text(const CubicalComplex& c) {
  if (c.dim() != 2) throw Error("text grids are two-dimensional");
  std::string s;
  for (std::int64_t r = 1; r <= c.side(); ++r) {
    for (std::int64_t col = 1; col <= c.side(); ++col) s += c.active({r, col}) ? '#' : '.';
    s += '\n';
  }
  return s;
}

inline json continuum_to_json(const CubicalComplex& c) {
  json cells = json::array();
  for (const auto& idx : c.active_cells()) cells.push_back(idx);
  return {{"dim", c.dim()}, {"resolution", c.resolution()}, {"active", cells}};
}

inline CubicalComplex continuum_from_json(const json& j, const std::string& where = "continuum") {
  try {
    if (j.contains("grid")) {
      std::string text;
      for (const auto& row : j["grid"]) text += row.get<std::string>() + "\n";
      return parse_grid(text);
    }
    CubicalComplex c(j.at("dim").get<unsigned>(), j.at("resolution").get<unsigned>(), false);
    CubicalComplex all(c.dim(), c.resolution(), true);
    std::vector<std::uint8_t> on(c.cell_count(), 0);
    const auto& act = j.at("active");
    for (std::size_t i = 0; i < act.size(); ++i) {
      auto idx = act[i].get<CubicalComplex::Index>();
      if (!c.in_grid(idx)) detail::io_fail(where + ".active[" + std::to_string(i) + "]", "cell outside the grid");
      on[c.flat(idx)] = 1;
    }
    std::vector<CubicalComplex::Index> off;
    for (std::size_t f = 0; f < on.size(); ++f)
      if (!on[f]) off.push_back(c.unflat(f));
    return deactivate(all, off);
  } catch (const json::exception& e) {
    detail::io_fail(where, e.what());
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    detail::io_fail(where, e.what());
  }
}

// A .json document or a text grid, chosen by content.
inline CubicalComplex load_continuum_text(const std::string& text) {
  std::size_t p = text.find_first_not_of(" \t\r\n");
  if (p != std::string::npos && text[p] == '{') {
    json j;
    try {
      j = json::parse(text);
    } catch (const json::parse_error& e) {
      throw ParseError(std::string("continuum document: ") + e.what());
    }
    return continuum_from_json(j);
  }
  return parse_grid(text);
}

// ---------------------------------------------------------------------------
// Values. Literals: 5, [a, b], {"left": v, "type": T}, {"right": v, "type": T},
// {"graph": {...}}, {"type_value": T}, {"proof": {...}}, {"continuum": {...}}

inline json value_to_json(const Value& v) {
  return std::visit(
      [&](const auto& x) -> json {
        using X = std::decay_t<decltype(x)>;
        if constexpr (std::is_same_v<X, Value::Nat>) return x.n;
        else if constexpr (std::is_same_v<X, Value::Pair>) return json::array({value_to_json(*x.first), value_to_json(*x.second)});
        else if constexpr (std::is_same_v<X, Value::Tagged>)
          return {{x.side == Side::Left ? "left" : "right", value_to_json(*x.payload)}, {"type", type_to_json(x.type)}};
        else if constexpr (std::is_same_v<X, Value::Op>) return {{"graph", graph_to_json(*x.graph)}};
        else if constexpr (std::is_same_v<X, Value::Type>) return {{"type_value", type_to_json(x.type)}};
        else if constexpr (std::is_same_v<X, Value::Proof>) return {{"proof", witness_to_json(x.w)}};
        else return {{"continuum", continuum_to_json(*x.c)}};
      },
      v.data);
}

inline Value value_from_json(const json& j, const std::string& where) {
  try {
    if (j.is_number_integer()) {
      auto n = j.get<std::int64_t>();
      if (n < 1) detail::io_fail(where, "naturals start at 1");
      return Value::nat(n);
    }
    if (j.is_array()) {
      if (j.size() != 2) detail::io_fail(where, "a pair literal has two entries");
      return Value::pair(value_from_json(j[0], where + "[0]"), value_from_json(j[1], where + "[1]"));
    }
    if (!j.is_object()) detail::io_fail(where, "unrecognized value literal");
    if (j.contains("left") || j.contains("right")) {
      bool left = j.contains("left");
      if (!j.contains("type")) detail::io_fail(where, "tagged literal needs its sum \"type\"");
      TypeExpr t = type_from_json(j["type"], where + ".type");
      if (!t.is(TypeTag::Sum)) detail::io_fail(where + ".type", "not a sum type");
      Value p = value_from_json(j[left ? "left" : "right"], where + (left ? ".left" : ".right"));
      if (!conforms(p, left ? t.left() : t.right())) detail::io_fail(where, "payload does not match the sum type");
      return Value::tagged(left ? Side::Left : Side::Right, std::move(p), t);
    }
    if (j.contains("graph")) return Value::op(Graph::make(graph_data_from_json(j["graph"], where + ".graph")));
    if (j.contains("type_value")) return Value::type(type_from_json(j["type_value"], where + ".type_value"));
    if (j.contains("proof")) return Value::proof(witness_from_json(j["proof"], where + ".proof"));
    if (j.contains("continuum")) return Value::continuum(continuum_from_json(j["continuum"], where + ".continuum"));
    detail::io_fail(where, "unrecognized value literal");
  } catch (const ParseError&) {
    throw;
  } catch (const Error& e) {
    detail::io_fail(where, e.what());
  } catch (const json::exception& e) {
    detail::io_fail(where, e.what());
  }
}

// ---------------------------------------------------------------------------
// Graphs

namespace detail {

// Parameter names per primitive: the four boards, the count and extras.
struct ParamNames {
  const char* a = nullptr;
  const char* b = nullptr;
  const char* c = nullptr;
  const char* d = nullptr;
  const char* count = nullptr;
  bool single = false;  // boards a..d are single types
};

inline ParamNames param_names(PrimOp op) {
  switch (op) {
    case PrimOp::Join:
    case PrimOp::Proj:
    case PrimOp::PlusLeft:
    case PrimOp::PlusRight:
    case PrimOp::Get:
    case PrimOp::Const:
      return {"A", "B", nullptr, nullptr, nullptr, true};
    case PrimOp::ConstN:
    case PrimOp::Copy:
    case PrimOp::Drop:
    case PrimOp::Change:
    case PrimOp::ChangeBody:
      return {"A", nullptr, nullptr, nullptr, nullptr, true};
    case PrimOp::Id:
    case PrimOp::Iter:
      return {"A", nullptr, nullptr, nullptr, nullptr, false};
    case PrimOp::Apply:
      return {"inputs", "outputs", nullptr, nullptr, "bind", false};
    case PrimOp::Compose:
      return {"f_in", "f_out", "g_in", "g_out", nullptr, false};
    case PrimOp::IfThenElse:
    case PrimOp::IteBody:
      return {"B", "C", "D", nullptr, "level", false};
    case PrimOp::While:
    case PrimOp::WhileBody:
      return {"B", nullptr, nullptr, nullptr, "level", false};
    case PrimOp::Merge:
      return {"B", nullptr, nullptr, nullptr, nullptr, false};
    case PrimOp::SigmaF:
    case PrimOp::SigmaBody:
    case PrimOp::PiType:
    case PrimOp::SigmaType:
      return {"domain", nullptr, nullptr, nullptr, "level", true};
    case PrimOp::Curry:
      return {"inputs", "outputs", nullptr, nullptr, "split", false};
    case PrimOp::Uncurry:
      return {"A", "B", "outputs", nullptr, nullptr, false};
    case PrimOp::TypeProduct:
    case PrimOp::TypeSum:
    case PrimOp::TypeArrow:
    case PrimOp::Negate:
      return {nullptr, nullptr, nullptr, nullptr, "level", false};
    case PrimOp::Relation:
      return {nullptr, nullptr, nullptr, nullptr, "arity", false};
    default:
      return {};
  }
}

inline json primitive_params(const Primitive& p) {
  json j = json::object();
  ParamNames n = param_names(p.op);
  auto put = [&](const char* key, const Board& b) {
    if (!key) return;
    j[key] = n.single && b.size() == 1 ? type_to_json(b[0]) : board_to_json(b);
  };
  put(n.a, p.a);
  put(n.b, p.b);
  put(n.c, p.c);
  put(n.d, p.d);
  if (n.count) j[n.count] = p.count;
  if (p.op == PrimOp::Compose) j["pairing"] = p.pairing;
  if (p.op == PrimOp::Relation) {
    j["pattern"] = type_to_json(p.pattern);
    if (!p.pairing.empty()) j["holes"] = p.pairing;
  }
  if (p.op == PrimOp::Axiom) j["name"] = p.name;
  if (p.graph) j["family"] = graph_to_json(*p.graph);
  if (!p.values.empty()) {
    j["values"] = json::array();
    for (const auto& v : p.values) j["values"].push_back(value_to_json(v));
  }
  return j;
}

inline Primitive primitive_from_params(PrimOp op, const json& params, const std::string& where) {
  Primitive p;
  p.op = op;
  ParamNames n = param_names(op);
  auto get_board = [&](const char* key, Board& out) {
    if (!key) return;
    if (!params.contains(key)) io_fail(where, "missing parameter \"" + std::string(key) + "\"");
    out = board_from_json(params[key], where + "." + key);
  };
  // short forms: compose and apply over single types A, B(, C)
  if (op == PrimOp::Compose && !params.contains("f_in")) {
    TypeExpr A = type_from_json(params.at("A"), where + ".A"), B = type_from_json(params.at("B"), where + ".B"),
             C = type_from_json(params.at("C"), where + ".C");
    return prim::compose(A, B, C);
  }
  if (op == PrimOp::Apply && !params.contains("inputs")) {
    Primitive a = prim::apply(type_from_json(params.at("A"), where + ".A"), type_from_json(params.at("B"), where + ".B"));
    return a;
  }
  get_board(n.a, p.a);
  get_board(n.b, p.b);
  get_board(n.c, p.c);
  get_board(n.d, p.d);
  if (n.count) {
    if (params.contains(n.count)) p.count = params[n.count].get<std::size_t>();
    else if (op == PrimOp::Apply) p.count = p.a.size();
    else if (op == PrimOp::Relation) p.count = 0;
    else if (op == PrimOp::Curry) io_fail(where, "missing parameter \"split\"");
    else p.count = 1;
  }
  if (params.contains("pairing")) p.pairing = params["pairing"].get<Pairing>();
  else if (op == PrimOp::Compose) p.pairing = {{0, 0}};
  if (op == PrimOp::Relation) {
    if (!params.contains("pattern")) io_fail(where, "missing parameter \"pattern\"");
    p.pattern = type_from_json(params["pattern"], where + ".pattern");
    if (params.contains("holes")) p.pairing = params["holes"].get<Pairing>();
    if (!params.contains("arity")) p.count = template_arity(p.pattern);
  }
  if (op == PrimOp::Axiom) {
    if (!params.contains("name")) io_fail(where, "missing parameter \"name\"");
    p.name = params["name"].get<std::string>();
  }
  if (params.contains("family"))
    p.graph = Graph::make(graph_data_from_json(params["family"], where + ".family"));
  if (params.contains("values"))
    for (std::size_t i = 0; i < params["values"].size(); ++i)
      p.values.push_back(value_from_json(params["values"][i], where + ".values[" + std::to_string(i) + "]"));
  return p;
}

}  // namespace detail

inline json graph_to_json(const Graph& g) {
  const GraphData& d = g.data();
  json nodes = json::array();
  for (const auto& n : d.nodes) {
    json jn{{"id", n.id}};
    std::visit(
        [&](const auto& k) {
          using K = std::decay_t<decltype(k)>;
          if constexpr (std::is_same_v<K, Primitive>) {
            jn["kind"] = std::string(kind_name(k.op));
            jn["params"] = detail::primitive_params(k);
          } else if constexpr (std::is_same_v<K, ConstantNode>) {
            jn["kind"] = "constant";
            jn["params"] = {{"type", type_to_json(k.type)}, {"value", value_to_json(k.value)}};
          } else if constexpr (std::is_same_v<K, InputPort>) {
            jn["kind"] = "input";
            jn["params"] = {{"type", type_to_json(k.type)}};
          } else if constexpr (std::is_same_v<K, OutputPort>) {
            jn["kind"] = "output";
            jn["params"] = {{"type", type_to_json(k.type)}};
          } else {
            jn["kind"] = "graph";
            jn["params"] = {{"graph", graph_to_json(*k.graph)}};
          }
        },
        n.kind);
    nodes.push_back(std::move(jn));
  }
  json wires = json::array();
  for (const auto& w : d.wires)
    wires.push_back({{"from", {d.nodes[w.from.node].id, w.from.socket}}, {"to", {d.nodes[w.to.node].id, w.to.socket}}});
  json ins = json::array(), outs = json::array();
  for (auto i : d.inputs) ins.push_back(d.nodes[i].id);
  for (auto i : d.outputs) outs.push_back(d.nodes[i].id);
  json j{{"name", d.name}, {"nodes", nodes}, {"wires", wires}, {"inputs", ins}, {"outputs", outs}};
  if (!d.exclusive.empty()) {
    j["exclusive"] = json::array();
    for (const auto& e : d.exclusive) j["exclusive"].push_back({e.begin, e.mid, e.end});
  }
  return j;
}

// Structural parse; linearity and typing are left to check().
inline GraphData graph_data_from_json(const json& j, const std::string& where) {
  try {
    if (!j.is_object()) detail::io_fail(where, "a graph document is an object");
    GraphData d;
    d.name = j.value("name", std::string("graph"));
    std::map<std::string, std::size_t> index;
    const json& nodes = j.at("nodes");
    for (std::size_t i = 0; i < nodes.size(); ++i) {
      const json& jn = nodes[i];
      const std::string w = where + ".nodes[" + std::to_string(i) + "]";
      if (!jn.contains("id")) detail::io_fail(w, "missing \"id\"");
      if (!jn.contains("kind")) detail::io_fail(w, "missing \"kind\"");
      std::string id = jn["id"].is_string() ? jn["id"].get<std::string>() : jn["id"].dump();
      if (index.count(id)) detail::io_fail(w, "duplicate node id '" + id + "'");
      const std::string kind = jn["kind"].get<std::string>();
      const json params = jn.value("params", json::object());
      const std::string wp = w + ".params";
      Node node{id, InputPort{TypeExpr::nat()}};
      if (kind == "input") {
        node.kind = InputPort{type_from_json(params.at("type"), wp + ".type")};
      } else if (kind == "output") {
        node.kind = OutputPort{type_from_json(params.at("type"), wp + ".type")};
      } else if (kind == "constant") {
        if (!params.contains("value")) detail::io_fail(wp, "missing \"value\"");
        Value v = value_from_json(params["value"], wp + ".value");
        TypeExpr t = params.contains("type") ? type_from_json(params["type"], wp + ".type") : type_of(v);
        node.kind = ConstantNode{std::move(v), std::move(t)};
      } else if (kind == "graph") {
        if (!params.contains("graph")) detail::io_fail(wp, "missing \"graph\"");
        node.kind = SubGraphNode{Graph::make(graph_data_from_json(params["graph"], wp + ".graph"))};
      } else {
        PrimOp op;
        try {
          op = prim_op_from_name(kind);
        } catch (const ParseError& e) {
          detail::io_fail(w + ".kind", e.what());
        }
        node.kind = detail::primitive_from_params(op, params, wp);
      }
      index[id] = d.nodes.size();
      d.nodes.push_back(std::move(node));
    }
    auto lookup = [&](const json& ref, const std::string& w) -> SocketRef {
      if (!ref.is_array() || ref.size() != 2) detail::io_fail(w, "expected [node id, port]");
      std::string id = ref[0].is_string() ? ref[0].get<std::string>() : ref[0].dump();
      auto it = index.find(id);
      if (it == index.end()) detail::io_fail(w, "unknown node '" + id + "'");
      return {it->second, ref[1].get<std::size_t>()};
    };
    const json wires = j.value("wires", json::array());
    for (std::size_t i = 0; i < wires.size(); ++i) {
      const std::string w = where + ".wires[" + std::to_string(i) + "]";
      d.wires.push_back({lookup(wires[i].at("from"), w + ".from"), lookup(wires[i].at("to"), w + ".to")});
    }
    auto ports = [&](const char* key, std::vector<std::size_t>& out) {
      const json list = j.value(key, json::array());
      for (std::size_t i = 0; i < list.size(); ++i) {
        std::string id = list[i].is_string() ? list[i].get<std::string>() : list[i].dump();
        auto it = index.find(id);
        if (it == index.end())
          detail::io_fail(where + "." + key + "[" + std::to_string(i) + "]", "unknown node '" + id + "'");
        out.push_back(it->second);
      }
    };
    ports("inputs", d.inputs);
    ports("outputs", d.outputs);
    if (j.contains("exclusive"))
      for (const auto& e : j["exclusive"]) {
        auto v = e.get<std::vector<std::size_t>>();
        if (v.size() != 3) detail::io_fail(where + ".exclusive", "groups are [begin, mid, end]");
        d.exclusive.push_back({v[0], v[1], v[2]});
      }
    return d;
  } catch (const ParseError&) {
    throw;
  } catch (const CheckError& e) {
    detail::io_fail(where, e.what());
  } catch (const Error& e) {
    detail::io_fail(where, e.what());
  } catch (const json::exception& e) {
    detail::io_fail(where, e.what());
  }
}

inline GraphPtr graph_from_json(const json& j) { return Graph::make(graph_data_from_json(j)); }

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline json parse_json_text(const std::string& text, const std::string& what) {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(what + ": " + e.what());
  }
}

inline json load_json(const std::string& path) { return parse_json_text(read_file(path), path); }

}  // namespace universe
