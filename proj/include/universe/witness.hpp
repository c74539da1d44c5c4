#pragma once

// Derivation records for objects of relational types.

#include <cstdint>
#include <memory>
#include <string>
#include <vector>

#include "type.hpp"

namespace universe {

enum class WitnessKind : std::uint8_t {
  Axiom,       // primitive object: name + instantiation
  Trichotomy,  // outcome of Procedure N on (lhs, rhs)
  Both,        // conjunction: parts[0], parts[1]
  Left,        // disjunction, left component: parts[0]
  Right,       // disjunction, right component: parts[0]
  Bounded,     // universal over 1..parts.size(): parts[i-1] witnesses point i
  Exists,      // existential: point + parts[0]
};

struct WitnessNode;
using Witness = std::shared_ptr<const WitnessNode>;

struct WitnessNode {
  WitnessKind kind = WitnessKind::Axiom;
  std::string name;
  std::vector<std::int64_t> args;
  RelKind outcome = RelKind::Equal;
  std::int64_t rounds = 0;
  std::int64_t point = 0;
  std::vector<Witness> parts;
};

namespace witness {

inline Witness axiom(std::string name, std::vector<std::int64_t> args) {
  auto w = std::make_shared<WitnessNode>();
  w->kind = WitnessKind::Axiom;
  w->name = std::move(name);
  w->args = std::move(args);
  return w;
}

inline Witness trichotomy(RelKind outcome, std::int64_t lhs, std::int64_t rhs, std::int64_t rounds) {
  auto w = std::make_shared<WitnessNode>();
  w->kind = WitnessKind::Trichotomy;
  w->outcome = outcome;
  w->args = {lhs, rhs};
  w->rounds = rounds;
  return w;
}

inline Witness both(Witness a, Witness b) {
  auto w = std::make_shared<WitnessNode>();
  w->kind = WitnessKind::Both;
  w->parts = {std::move(a), std::move(b)};
  return w;
}

inline Witness left(Witness a) {
  auto w = std::make_shared<WitnessNode>();
  w->kind = WitnessKind::Left;
  w->parts = {std::move(a)};
  return w;
}

inline Witness right(Witness a) {
  auto w = std::make_shared<WitnessNode>();
  w->kind = WitnessKind::Right;
  w->parts = {std::move(a)};
  return w;
}

inline Witness bounded(std::vector<Witness> parts) {
  auto w = std::make_shared<WitnessNode>();
  w->kind = WitnessKind::Bounded;
  w->parts = std::move(parts);
  return w;
}

inline Witness exists(std::int64_t point, Witness a) {
  auto w = std::make_shared<WitnessNode>();
  w->kind = WitnessKind::Exists;
  w->point = point;
  w->parts = {std::move(a)};
  return w;
}

}  // namespace witness

inline bool witness_equal(const Witness& a, const Witness& b) {
  if (a == b) return true;
  if (!a || !b) return false;
  if (a->kind != b->kind || a->name != b->name || a->args != b->args || a->outcome != b->outcome ||
      a->rounds != b->rounds || a->point != b->point || a->parts.size() != b->parts.size())
    return false;
  for (std::size_t i = 0; i < a->parts.size(); ++i)
    if (!witness_equal(a->parts[i], b->parts[i])) return false;
  return true;
}

inline std::string to_string(const Witness& w) {
  if (!w) return "<null>";
  auto join_args = [](const std::vector<std::int64_t>& v) {
    std::string s;
    for (std::size_t i = 0; i < v.size(); ++i) s += (i ? ";" : "") + std::to_string(v[i]);
    return s;
  };
  switch (w->kind) {
    case WitnessKind::Axiom:
      return w->name + "(" + join_args(w->args) + ")";
    case WitnessKind::Trichotomy:
      return std::string("N:") + std::string(rel_name(w->outcome)) + "(" + join_args(w->args) + ")/" +
             std::to_string(w->rounds);
    case WitnessKind::Both:
      return "both(" + to_string(w->parts[0]) + ", " + to_string(w->parts[1]) + ")";
    case WitnessKind::Left:
      return "inl(" + to_string(w->parts[0]) + ")";
    case WitnessKind::Right:
      return "inr(" + to_string(w->parts[0]) + ")";
    case WitnessKind::Bounded: {
      std::string s = "forall[1.." + std::to_string(w->parts.size()) + "](";
      for (std::size_t i = 0; i < w->parts.size(); ++i) s += (i ? ", " : "") + to_string(w->parts[i]);
      return s + ")";
    }
    case WitnessKind::Exists:
      return "exists(" + std::to_string(w->point) + "; " + to_string(w->parts[0]) + ")";
  }
  return "?";
}

// Primitive objects of relational types. Each axiom, instantiated at its
// natural arguments, concludes one relational type from witnesses of its
// premises (possibly none).
struct AxiomInstance {
  TypeExpr conclusion;
  std::vector<TypeExpr> premises;
};

struct AxiomSpec {
  std::string name;
  std::size_t arity = 0;
  std::size_t premises = 0;
  AxiomInstance (*instance)(const std::vector<std::int64_t>&) = nullptr;
};

namespace detail {
inline TypeExpr atom(RelKind k, std::int64_t a, std::int64_t b) { return TypeExpr::rel_atom(k, a, b); }
inline TypeExpr eq(std::int64_t a, std::int64_t b) { return atom(RelKind::Equal, a, b); }
inline TypeExpr gt(std::int64_t a, std::int64_t b) { return atom(RelKind::Greater, a, b); }
inline TypeExpr lt(std::int64_t a, std::int64_t b) { return atom(RelKind::Lesser, a, b); }
inline std::int64_t pred_of(std::int64_t n) { return n > 1 ? n - 1 : 1; }
inline RelKind kind_arg(std::int64_t k) {
  if (k < 1 || k > 3) throw TypeError("relation selector must be 1 (eq), 2 (lt) or 3 (gt)");
  return k == 1 ? RelKind::Equal : k == 2 ? RelKind::Lesser : RelKind::Greater;
}
}  // namespace detail

inline const std::vector<AxiomSpec>& axiom_catalog() {
  using namespace detail;
  using Args = const std::vector<std::int64_t>&;
  static const std::vector<AxiomSpec> catalog = {
      // the three relations together are complete
      {"completeness", 2, 0,
       [](Args a) { return AxiomInstance{TypeExpr::sum(TypeExpr::sum(eq(a[0], a[1]), gt(a[0], a[1])), lt(a[0], a[1])), {}}; }},
      // pairwise disjoint
      {"disjoint_eq_gt", 2, 0,
       [](Args a) { return AxiomInstance{TypeExpr::neg(TypeExpr::product(eq(a[0], a[1]), gt(a[0], a[1]))), {}}; }},
      {"disjoint_eq_lt", 2, 0,
       [](Args a) { return AxiomInstance{TypeExpr::neg(TypeExpr::product(eq(a[0], a[1]), lt(a[0], a[1]))), {}}; }},
      {"disjoint_lt_gt", 2, 0,
       [](Args a) { return AxiomInstance{TypeExpr::neg(TypeExpr::product(lt(a[0], a[1]), gt(a[0], a[1]))), {}}; }},
      {"reflexivity", 1, 0, [](Args a) { return AxiomInstance{eq(a[0], a[0]), {}}; }},
      {"gt_to_lt", 2, 1, [](Args a) { return AxiomInstance{lt(a[1], a[0]), {gt(a[0], a[1])}}; }},
      {"lt_to_gt", 2, 1, [](Args a) { return AxiomInstance{gt(a[1], a[0]), {lt(a[0], a[1])}}; }},
      {"pred_succ", 1, 0, [](Args a) { return AxiomInstance{eq(a[0], pred_of(a[0] + 1)), {}}; }},
      {"eq_succ", 2, 1, [](Args a) { return AxiomInstance{eq(a[0] + 1, a[1] + 1), {eq(a[0], a[1])}}; }},
      {"gt_succ", 2, 1, [](Args a) { return AxiomInstance{gt(a[0] + 1, a[1] + 1), {gt(a[0], a[1])}}; }},
      {"gt_succ_pred", 1, 0, [](Args a) { return AxiomInstance{gt(a[0] + 1, pred_of(a[0] + 1)), {}}; }},
      {"greater_succ", 1, 0, [](Args a) { return AxiomInstance{gt(a[0] + 1, a[0]), {}}; }},
      // substitution: eq(n;k) and R(n;m) give R(k;m); the third argument selects R
      {"substitution", 4, 2,
       [](Args a) {
         RelKind k = kind_arg(a[2]);
         return AxiomInstance{atom(k, a[1], a[3]), {eq(a[0], a[1]), atom(k, a[0], a[3])}};
       }},
      {"eq_symmetry", 2, 1, [](Args a) { return AxiomInstance{eq(a[1], a[0]), {eq(a[0], a[1])}}; }},
      {"eq_transitivity", 3, 2, [](Args a) { return AxiomInstance{eq(a[0], a[2]), {eq(a[0], a[1]), eq(a[1], a[2])}}; }},
      {"gt_transitivity", 3, 2, [](Args a) { return AxiomInstance{gt(a[0], a[2]), {gt(a[0], a[1]), gt(a[1], a[2])}}; }},
      {"lt_transitivity", 3, 2, [](Args a) { return AxiomInstance{lt(a[0], a[2]), {lt(a[0], a[1]), lt(a[1], a[2])}}; }},
  };
  return catalog;
}

inline const AxiomSpec& find_axiom(const std::string& name) {
  for (const auto& a : axiom_catalog())
    if (a.name == name) return a;
  throw TypeError("unknown axiom '" + name + "'");
}

inline AxiomInstance instantiate_axiom(const std::string& name, const std::vector<std::int64_t>& args) {
  const AxiomSpec& spec = find_axiom(name);
  if (args.size() != spec.arity) throw TypeError("axiom '" + name + "' takes " + std::to_string(spec.arity) + " arguments");
  for (auto x : args)
    if (x < 1) throw TypeError("axiom arguments are naturals >= 1");
  return spec.instance(args);
}

}  // namespace universe
