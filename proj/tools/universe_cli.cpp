#include <iostream>
#include <random>
#include <string>
#include <utility>
#include <vector>

#include <CLI11.hpp>
#include <universe/universe.hpp>

#include "fixtures.hpp"
#include "reference.hpp"

using namespace universe;

namespace {

struct Options {
  bool json = false;
  std::uint64_t seed = 1;
  std::optional<std::int64_t> bound;
};

// Ordered KEY: value lines, optionally mirrored as one JSON object.
struct Report {
  std::vector<std::pair<std::string, std::string>> lines;
  void add(std::string key, std::string value) { lines.emplace_back(std::move(key), std::move(value)); }
  void add(std::string key, std::int64_t value) { add(std::move(key), std::to_string(value)); }
  void print(bool as_json) const {
    if (as_json) {
      nlohmann::ordered_json j = nlohmann::ordered_json::object();
      for (const auto& [k, v] : lines) j[k] = v;
      std::cout << j.dump(2) << "\n";
      return;
    }
    for (const auto& [k, v] : lines) std::cout << k << ": " << v << "\n";
  }
};

const char* verdict(bool ok) { return ok ? "pass" : "fail"; }

int cmd_check(const std::string& path, Report& r) {
  GraphData d = graph_data_from_json(load_json(path));
  auto v = check(d);
  r.add("GRAPH", d.name);
  r.add("NODES", static_cast<std::int64_t>(d.nodes.size()));
  r.add("WIRES", static_cast<std::int64_t>(d.wires.size()));
  r.add("VIOLATIONS", static_cast<std::int64_t>(v.size()));
  for (std::size_t i = 0; i < v.size(); ++i)
    r.add("VIOLATION_" + std::to_string(i + 1), std::string(violation_name(v[i].kind)) + ": " + v[i].message);
  if (v.empty()) r.add("SIGNATURE", to_string(Graph::make(std::move(d))->signature()));
  r.add("STATUS", v.empty() ? "ok" : "violations");
  return v.empty() ? 0 : 1;
}

int cmd_eval(const std::string& graph_path, const std::string& inputs_path, const Options& o, Report& r) {
  GraphPtr g = graph_from_json(load_json(graph_path));
  json in = load_json(inputs_path);
  if (!in.is_array()) throw ParseError(inputs_path + ": the inputs document is a list of value literals");
  std::vector<Value> args;
  for (std::size_t i = 0; i < in.size(); ++i) args.push_back(value_from_json(in[i], "inputs[" + std::to_string(i) + "]"));
  EvalOptions opts;
  opts.bound = o.bound;
  EvalResult res;
  try {
    res = evaluate(*g, std::move(args), opts);
  } catch (const EvalError& e) {
    r.add("GRAPH", g->name());
    r.add("ERROR", e.what());
    r.add("STATUS", "failed");
    return 1;
  }
  r.add("GRAPH", g->name());
  r.add("OUTPUTS", static_cast<std::int64_t>(res.outputs.size()));
  for (std::size_t i = 0; i < res.outputs.size(); ++i)
    r.add("OUTPUT_" + std::to_string(i + 1), res.outputs[i] ? value_to_json(*res.outputs[i]).dump() : "inactive");
  r.add("STATUS", "ok");
  return 0;
}

// --- reproductions -----------------------------------------------------------

bool repro_iter(Report& r) {
  bool all = true;
  for (const auto& f : fixtures::nat_ops()) {
    int ok = 0, total = 0;
    for (std::int64_t n = 1; n <= 12; ++n) {
      Value it = Value::op(iter_graph(f.op.as_op(), n));
      for (std::int64_t a = 1; a <= 30; ++a, ++total)
        if (apply_nat(it, a) == reference::iterate(f.fn, n, a)) ++ok;
    }
    r.add("ITER_" + f.name, std::to_string(ok) + "/" + std::to_string(total));
    all = all && ok == total;
  }
  return all;
}

bool repro_grzegorczyk(Report& r) {
  bool all = true;
  const TypeExpr N = TypeExpr::nat();
  GraphPtr rec = build_rec(N);
  GraphPtr grz = grzegorczyk_iterator(N);
  for (const auto& s : fixtures::sequences()) {
    int ok = 0, total = 0;
    Value partial = evaluate(grz, {s.seq}).values().at(0);
    for (std::int64_t k = 1; k <= 8; ++k) {
      Value f = evaluate(rec, {Value::nat(k), s.seq}).values().at(0);
      Value h = apply_op(partial, {Value::nat(k)}).at(0);
      for (std::int64_t a = 1; a <= 15; ++a, ++total) {
        std::int64_t want = reference::grzegorczyk(a, s.fn, k + 1);
        if (apply_nat(f, a) == want && apply_nat(h, a) == want) ++ok;
      }
    }
    r.add("REC_" + s.name, std::to_string(ok) + "/" + std::to_string(total));
    all = all && ok == total;
  }
  return all;
}

bool repro_forall_exists(const Options& o, Report& r) {
  std::int64_t up_to = o.bound.value_or(20);
  auto rep = theorem_forall_exists_greater(up_to);
  r.add("FAMILY", to_string(rep.family->signature()));
  r.add("CHECKED", std::to_string(rep.checked.size()) + "/" + std::to_string(up_to));
  std::string failed;
  for (auto k : rep.failed) failed += (failed.empty() ? "" : ",") + std::to_string(k);
  r.add("FAILED", failed.empty() ? "none" : failed);
  return rep.ok();
}

bool repro_tree(const Options& o, Report& r) {
  std::mt19937_64 rng(o.seed);
  auto pick = [&](std::int64_t lo, std::int64_t hi) {
    return lo + static_cast<std::int64_t>(rng() % static_cast<std::uint64_t>(hi - lo + 1));
  };
  auto agrees = [](const TreeState& s, const reference::MutableTree& m) {
    if (s.n != m.n) return false;
    for (std::int64_t i = 1; i <= s.n; ++i)
      if (table_at(s.node, i) != m.node_at(i) || table_at(s.father, i) != m.father_at(i) ||
          table_at(s.leaf, i) != m.leaf_at(i))
        return false;
    return true;
  };
  TreeState init = tree_initial();
  bool init_ok = agrees(init, reference::MutableTree{}) && table_at(init.node, 2) == 3 && table_at(init.leaf, 7) == 3;
  r.add("INITIAL", verdict(init_ok));
  TreeState root = tree_del(tree_add(init, 1), 1);
  reference::MutableTree mroot;
  mroot.add(1);
  bool root_ok = agrees(root, mroot) && table_at(root.node, 1) == 1;
  r.add("DEL_ROOT_NOOP", verdict(root_ok));

  int scripts = 100, steps = 0, mismatches = 0;
  for (int s = 0; s < scripts; ++s) {
    TreeState st = tree_initial();
    reference::MutableTree m;
    std::int64_t len = pick(1, 30);
    for (std::int64_t i = 0; i < len; ++i, ++steps) {
      bool add = pick(0, 2) != 0;
      std::int64_t pos = pick(1, m.n + 2);
      if (add) {
        st = tree_add(st, pos);
        m.add(pos);
      } else {
        st = tree_del(st, pos);
        m.del(pos);
      }
      if (!agrees(st, m)) ++mismatches;
    }
  }
  r.add("SEED", static_cast<std::int64_t>(o.seed));
  r.add("SCRIPTS", scripts);
  r.add("STEPS", steps);
  r.add("MISMATCHES", mismatches);
  return init_ok && root_ok && mismatches == 0;
}

bool repro_bounded_search(Report& r) {
  GraphPtr en = toy_enumeration();
  GraphPtr g = bounded_search_g(en, nat_equality());
  std::vector<std::int64_t> codes;
  for (std::int64_t k = 1; k <= 50; ++k) codes.push_back(evaluate(en, {Value::nat(k)}).values().at(0).as_nat());
  int ok = 0, total = 0;
  std::vector<std::int64_t> targets;
  for (std::int64_t k : {1, 2, 7, 19, 33, 50}) targets.push_back(codes[static_cast<std::size_t>(k - 1)]);
  targets.push_back(4);  // not a code of the first 50 types
  for (std::int64_t t : targets)
    for (std::int64_t n = 1; n <= 50; ++n, ++total)
      if (bounded_search(g, Value::nat(t), n) == reference::linear_scan(codes, t, n)) ++ok;
  r.add("TARGETS", static_cast<std::int64_t>(targets.size()));
  r.add("MATCHES", std::to_string(ok) + "/" + std::to_string(total));
  return ok == total;
}

bool repro_eq_functionals(const Options& o, Report& r) {
  std::int64_t bound = o.bound.value_or(12);
  auto ops = fixtures::nat_ops();
  Value succ_succ = Value::op(compose_graphs(fixtures::succ_graph(), fixtures::succ_graph()));
  ops.push_back({"succ;succ", succ_succ, [](std::int64_t x) { return x + 2; }});
  bool all = true;
  for (const auto& f : ops)
    for (const auto& g : ops) {
      bool same = true;
      for (std::int64_t a = 1; a <= bound; ++a) same = same && f.fn(a) == g.fn(a);
      auto res = eq_functionals_decide(f.op, g.op, bound);
      bool ok = (res.decision == Decision::Inhabited) == same;
      r.add("EQ_" + f.name + "_" + g.name, std::string(decision_name(res.decision)) + " " + verdict(ok));
      all = all && ok;
    }
  return all;
}

int cmd_repro(const std::string& name, const Options& o, Report& r) {
  bool ok;
  r.add("REPRO", name);
  if (name == "iter") ok = repro_iter(r);
  else if (name == "grzegorczyk") ok = repro_grzegorczyk(r);
  else if (name == "forall-exists") ok = repro_forall_exists(o, r);
  else if (name == "tree") ok = repro_tree(o, r);
  else if (name == "bounded-search") ok = repro_bounded_search(r);
  else if (name == "eq-functionals") ok = repro_eq_functionals(o, r);
  else throw CLI::ValidationError("repro", "unknown reproduction '" + name + "'");
  r.add("RESULT", verdict(ok));
  return ok ? 0 : 1;
}

// --- continuum ---------------------------------------------------------------

void describe(const CubicalComplex& c, const std::string& prefix, Report& r) {
  auto l = unite(c);
  auto rel = aggregate_adjacency(l);
  r.add(prefix + "DIM", c.dim());
  r.add(prefix + "RESOLUTION", c.resolution());
  r.add(prefix + "ACTIVE", static_cast<std::int64_t>(c.active_count()));
  r.add(prefix + "WHITE_COMPONENTS", static_cast<std::int64_t>(l.white_count()));
  r.add(prefix + "BLACK_COMPONENTS", static_cast<std::int64_t>(l.black_count()));
  std::string edges;
  for (auto [w, b] : rel.edges) edges += (edges.empty() ? "" : " ") + std::to_string(w) + "-" + std::to_string(b);
  r.add(prefix + "EDGES", static_cast<std::int64_t>(rel.edges.size()));
  r.add(prefix + "EDGE_LIST", edges.empty() ? "none" : edges);
  bool tree = is_tree(rel);
  r.add(prefix + "TREE", tree ? "yes" : "no");
  if (tree) r.add(prefix + "CANONICAL", component_tree(rel).canonical());
}

int cmd_analyze(const std::string& path, Report& r) {
  CubicalComplex c = load_continuum_text(read_file(path));
  describe(c, "", r);
  return 0;
}

int cmd_similar(const std::string& p1, const std::string& p2, Report& r) {
  CubicalComplex a = load_continuum_text(read_file(p1));
  CubicalComplex b = load_continuum_text(read_file(p2));
  describe(a, "FIRST_", r);
  describe(b, "SECOND_", r);
  r.add("SIMILAR", similar(a, b) ? "yes" : "no");
  return 0;
}

int cmd_enum_types(std::int64_t count, Report& r) {
  for (std::int64_t i = 1; i <= count; ++i) r.add("TYPE_" + std::to_string(i), to_string(ind1(static_cast<std::uint64_t>(i))));
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Construction-graph toolkit: check, evaluate and reproduce"};
  app.require_subcommand(1);
  Options o;
  std::int64_t bound = 0;
  app.add_flag("--json", o.json, "print the report as JSON");
  app.add_option("--seed", o.seed, "seed for randomized scripts");
  auto* bound_opt = app.add_option("--bound", bound, "quantifier bound")->check(CLI::PositiveNumber);

  std::string path, path2, name;
  std::int64_t count = 0;
  auto* check_cmd = app.add_subcommand("check", "check linearity and typing of a graph file");
  check_cmd->add_option("graph", path)->required();
  auto* eval_cmd = app.add_subcommand("eval", "evaluate a graph on an inputs document");
  eval_cmd->add_option("graph", path)->required();
  eval_cmd->add_option("inputs", path2)->required();
  auto* repro_cmd = app.add_subcommand("repro", "run a reproduction against its oracle");
  repro_cmd->add_option("name", name)
      ->required()
      ->check(CLI::IsMember({"iter", "grzegorczyk", "forall-exists", "tree", "bounded-search", "eq-functionals"}));
  auto* cont_cmd = app.add_subcommand("continuum", "cubical complexes");
  cont_cmd->require_subcommand(1);
  auto* analyze_cmd = cont_cmd->add_subcommand("analyze", "components, adjacency and tree");
  analyze_cmd->add_option("file", path)->required();
  auto* similar_cmd = cont_cmd->add_subcommand("similar", "compare two complexes");
  similar_cmd->add_option("first", path)->required();
  similar_cmd->add_option("second", path2)->required();
  auto* enum_cmd = app.add_subcommand("enum-types", "list level-0 types in enumeration order");
  enum_cmd->add_option("count", count)->required()->check(CLI::Range(std::int64_t{1}, std::int64_t{100000}));

  // options given after the subcommand are accepted too
  for (auto* sub : {check_cmd, eval_cmd, repro_cmd, analyze_cmd, similar_cmd, enum_cmd}) sub->fallthrough();
  cont_cmd->fallthrough();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }
  if (bound_opt->count() > 0) o.bound = bound;

  Report r;
  int code = 0;
  try {
    if (*check_cmd) code = cmd_check(path, r);
    else if (*eval_cmd) code = cmd_eval(path, path2, o, r);
    else if (*repro_cmd) code = cmd_repro(name, o, r);
    else if (*analyze_cmd) code = cmd_analyze(path, r);
    else if (*similar_cmd) code = cmd_similar(path, path2, r);
    else if (*enum_cmd) code = cmd_enum_types(count, r);
  } catch (const IoError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const CheckError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  r.print(o.json);
  return code;
}
