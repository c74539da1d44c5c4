#pragma once

// Relational types over naturals: Procedure N, complement-based negation,
// decidable-fragment evaluation, witness checking and relation templates.

#include <cctype>
#include <cstdint>
#include <optional>
#include <set>
#include <string>
#include <string_view>

#include "graph.hpp"
#include "type.hpp"
#include "witness.hpp"

namespace universe {

struct Trichotomy {
  RelKind outcome;
  Witness witness;
};

// Two channels holding n and k unit signals; remove one signal from each
// until a channel runs empty. The round count goes into the witness.
inline Trichotomy procedure_n(std::int64_t n, std::int64_t k) {
  if (n < 1 || k < 1) throw TypeError("Procedure N works on naturals >= 1");
  std::int64_t a = n, b = k, rounds = 0;
  for (;;) {
    bool ea = a == 0, eb = b == 0;
    if (ea && eb) return {RelKind::Equal, witness::trichotomy(RelKind::Equal, n, k, rounds)};
    if (ea) return {RelKind::Lesser, witness::trichotomy(RelKind::Lesser, n, k, rounds)};
    if (eb) return {RelKind::Greater, witness::trichotomy(RelKind::Greater, n, k, rounds)};
    --a;
    --b;
    ++rounds;
  }
}

// Defined in evaluator.hpp: evaluates a family N -> Types at one point.
inline TypeExpr family_at(const Graph& family, std::int64_t point, std::optional<std::int64_t> bound);

// Structural complement.
inline TypeExpr negate(const TypeExpr& t) {
  switch (t.tag()) {
    case TypeTag::RelAtom: {
      auto other = [&](RelKind k) { return TypeExpr::rel_atom(k, t.lhs(), t.rhs()); };
      switch (t.rel_kind()) {
        case RelKind::Equal:
          return TypeExpr::sum(other(RelKind::Greater), other(RelKind::Lesser));
        case RelKind::Greater:
          return TypeExpr::sum(other(RelKind::Equal), other(RelKind::Lesser));
        case RelKind::Lesser:
          return TypeExpr::sum(other(RelKind::Equal), other(RelKind::Greater));
      }
      break;
    }
    case TypeTag::Product:
      return TypeExpr::sum(negate(t.left()), negate(t.right()));
    case TypeTag::Sum:
      return TypeExpr::product(negate(t.left()), negate(t.right()));
    case TypeTag::Neg:
      if (!is_relational(t.left())) break;
      return t.left();
    case TypeTag::Pi:
      return TypeExpr::sigma(t.family(), t.domain(), t.level(), !t.negated_body());
    case TypeTag::Sigma:
      return TypeExpr::pi(t.family(), t.domain(), t.level(), !t.negated_body());
    default:
      break;
  }
  throw TypeError("negation applies to relational types only, got " + to_string(t));
}

enum class Decision : std::uint8_t { Inhabited, Empty, Undecidable };

inline std::string_view decision_name(Decision d) {
  switch (d) {
    case Decision::Inhabited: return "inhabited";
    case Decision::Empty: return "empty";
    case Decision::Undecidable: return "undecidable";
  }
  return "?";
}

struct RelResult {
  Decision decision = Decision::Undecidable;
  Witness witness;  // set when inhabited

  bool inhabited() const { return decision == Decision::Inhabited; }
  bool empty() const { return decision == Decision::Empty; }
};

namespace detail {
inline TypeExpr quantifier_body(const TypeExpr& q, std::int64_t point, std::optional<std::int64_t> bound) {
  TypeExpr body = family_at(*q.family(), point, bound);
  return q.negated_body() ? TypeExpr::neg(body) : body;
}
}  // namespace detail

// Quantifiers over N are decided over 1..bound and only when a bound is given.
inline RelResult eval_relational(const TypeExpr& t, std::optional<std::int64_t> bound = std::nullopt) {
  switch (t.tag()) {
    case TypeTag::RelAtom: {
      const auto* a = std::get_if<std::int64_t>(&t.lhs());
      const auto* b = std::get_if<std::int64_t>(&t.rhs());
      if (!a || !b) return {Decision::Undecidable, nullptr};
      Trichotomy tr = procedure_n(*a, *b);
      if (tr.outcome == t.rel_kind()) return {Decision::Inhabited, tr.witness};
      return {Decision::Empty, nullptr};
    }
    case TypeTag::Product: {
      RelResult l = eval_relational(t.left(), bound);
      if (l.empty()) return l;
      RelResult r = eval_relational(t.right(), bound);
      if (r.empty()) return r;
      if (l.inhabited() && r.inhabited()) return {Decision::Inhabited, witness::both(l.witness, r.witness)};
      return {Decision::Undecidable, nullptr};
    }
    case TypeTag::Sum: {
      RelResult l = eval_relational(t.left(), bound);
      if (l.inhabited()) return {Decision::Inhabited, witness::left(l.witness)};
      RelResult r = eval_relational(t.right(), bound);
      if (r.inhabited()) return {Decision::Inhabited, witness::right(r.witness)};
      if (l.empty() && r.empty()) return {Decision::Empty, nullptr};
      return {Decision::Undecidable, nullptr};
    }
    case TypeTag::Neg:
      return eval_relational(negate(t.left()), bound);
    case TypeTag::Pi: {
      if (!bound || !t.domain().is(TypeTag::Nat)) return {Decision::Undecidable, nullptr};
      std::vector<Witness> parts;
      bool undecided = false;
      for (std::int64_t a = 1; a <= *bound; ++a) {
        RelResult r = eval_relational(detail::quantifier_body(t, a, bound), bound);
        if (r.empty()) return r;
        if (!r.inhabited()) undecided = true;
        parts.push_back(r.witness);
      }
      if (undecided) return {Decision::Undecidable, nullptr};
      return {Decision::Inhabited, witness::bounded(std::move(parts))};
    }
    case TypeTag::Sigma: {
      if (!bound || !t.domain().is(TypeTag::Nat)) return {Decision::Undecidable, nullptr};
      bool undecided = false;
      for (std::int64_t a = 1; a <= *bound; ++a) {
        RelResult r = eval_relational(detail::quantifier_body(t, a, bound), bound);
        if (r.inhabited()) return {Decision::Inhabited, witness::exists(a, r.witness)};
        if (!r.empty()) undecided = true;
      }
      return {undecided ? Decision::Undecidable : Decision::Empty, nullptr};
    }
    default:
      throw TypeError("not a relational type: " + to_string(t));
  }
}

// Validates a derivation against a relational type.
inline bool check_witness(const TypeExpr& t, const Witness& w, std::optional<std::int64_t> bound = std::nullopt) {
  if (!w) return false;
  if (w->kind == WitnessKind::Axiom) {
    try {
      AxiomInstance inst = instantiate_axiom(w->name, w->args);
      if (!type_equal(inst.conclusion, t) || w->parts.size() != inst.premises.size()) return false;
      for (std::size_t i = 0; i < inst.premises.size(); ++i)
        if (!check_witness(inst.premises[i], w->parts[i], bound)) return false;
      return true;
    } catch (const TypeError&) {
      return false;
    }
  }
  switch (t.tag()) {
    case TypeTag::RelAtom: {
      if (w->kind != WitnessKind::Trichotomy) return false;
      const auto* a = std::get_if<std::int64_t>(&t.lhs());
      const auto* b = std::get_if<std::int64_t>(&t.rhs());
      if (!a || !b || w->args.size() != 2 || w->args[0] != *a || w->args[1] != *b) return false;
      if (w->outcome != t.rel_kind()) return false;
      Trichotomy tr = procedure_n(*a, *b);
      return tr.outcome == w->outcome && tr.witness->rounds == w->rounds;
    }
    case TypeTag::Product:
      return w->kind == WitnessKind::Both && check_witness(t.left(), w->parts[0], bound) &&
             check_witness(t.right(), w->parts[1], bound);
    case TypeTag::Sum:
      if (w->kind == WitnessKind::Left) return check_witness(t.left(), w->parts[0], bound);
      if (w->kind == WitnessKind::Right) return check_witness(t.right(), w->parts[0], bound);
      return false;
    case TypeTag::Neg:
      return is_relational(t.left()) && check_witness(negate(t.left()), w, bound);
    case TypeTag::Pi: {
      if (w->kind != WitnessKind::Bounded || w->parts.empty() || !t.domain().is(TypeTag::Nat)) return false;
      for (std::size_t i = 0; i < w->parts.size(); ++i)
        if (!check_witness(detail::quantifier_body(t, static_cast<std::int64_t>(i + 1), bound), w->parts[i], bound))
          return false;
      return true;
    }
    case TypeTag::Sigma:
      if (w->kind != WitnessKind::Exists || w->point < 1 || !t.domain().is(TypeTag::Nat)) return false;
      return check_witness(detail::quantifier_body(t, w->point, bound), w->parts[0], bound);
    default:
      return false;
  }
}

// equiv(A, B) = (not A + B) x (not B + A)
inline TypeExpr equiv(const TypeExpr& a, const TypeExpr& b) {
  return TypeExpr::product(TypeExpr::sum(TypeExpr::neg(a), b), TypeExpr::sum(TypeExpr::neg(b), a));
}

// R + not R
inline TypeExpr lem(const TypeExpr& r) { return TypeExpr::sum(r, TypeExpr::neg(r)); }

// ---------------------------------------------------------------------------
// Relation templates

// Family N -> Types whose input fills hole `var` of `body`.
inline GraphPtr template_family(const TypeExpr& body, unsigned var) {
  GraphBuilder b("template");
  auto x = b.input(TypeExpr::nat());
  auto t = b.add1(prim::relation(body, 1, {{0, var}}), {x});
  b.output(t);
  return b.build();
}

namespace detail {
inline const Primitive* template_relation(const Graph& g) {
  const auto& d = g.data();
  if (d.nodes.size() != 3 || d.inputs.size() != 1 || d.outputs.size() != 1) return nullptr;
  for (const auto& n : d.nodes)
    if (const auto* p = std::get_if<Primitive>(&n.kind); p && p->op == PrimOp::Relation && p->count == 1 &&
                                                          p->pairing.size() == 1)
      return p;
  return nullptr;
}
}  // namespace detail

// Hole substitution that also reaches into template quantifier bodies.
inline TypeExpr instantiate(const TypeExpr& t, const HoleBindings& bind) {
  switch (t.tag()) {
    case TypeTag::RelAtom:
      return substitute(t, bind);
    case TypeTag::Product:
      return TypeExpr::product(instantiate(t.left(), bind), instantiate(t.right(), bind));
    case TypeTag::Sum:
      return TypeExpr::sum(instantiate(t.left(), bind), instantiate(t.right(), bind));
    case TypeTag::Neg:
      return TypeExpr::neg(instantiate(t.left(), bind));
    case TypeTag::Pi:
    case TypeTag::Sigma: {
      const Primitive* rel = detail::template_relation(*t.family());
      if (!rel) return t;
      auto var = static_cast<unsigned>(rel->pairing[0].second);
      HoleBindings inner = bind;
      inner.erase(var);  // the bound variable shadows
      TypeExpr body = instantiate(rel->pattern, inner);
      GraphPtr fam = template_family(body, var);
      return t.is(TypeTag::Pi) ? TypeExpr::pi(fam, t.domain(), t.level(), t.negated_body())
                               : TypeExpr::sigma(fam, t.domain(), t.level(), t.negated_body());
    }
    default:
      return t;
  }
}

// Parser for condition text: eq/lt/gt(s;s), and(R;R), or(R;R), not(R),
// pi(_k; R), sigma(_k; R). Slots are naturals or hole markers _k.
class RelationParser {
 public:
  explicit RelationParser(std::string_view text) : text_(text) {}

  TypeExpr parse_all() {
    TypeExpr t = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

 private:
  TypeExpr parse() {
    std::string w = word();
    if (w == "eq" || w == "lt" || w == "gt") {
      expect('(');
      Slot a = slot();
      expect(';');
      Slot b = slot();
      expect(')');
      return TypeExpr::rel_atom(w == "eq" ? RelKind::Equal : w == "lt" ? RelKind::Lesser : RelKind::Greater, a, b);
    }
    if (w == "and" || w == "or") {
      expect('(');
      TypeExpr a = parse();
      expect(';');
      TypeExpr b = parse();
      expect(')');
      return w == "and" ? TypeExpr::product(a, b) : TypeExpr::sum(a, b);
    }
    if (w == "not") {
      expect('(');
      TypeExpr a = parse();
      expect(')');
      return TypeExpr::neg(a);
    }
    if (w == "pi" || w == "sigma") {
      expect('(');
      Slot v = slot();
      const auto* h = std::get_if<Hole>(&v);
      if (!h) fail("quantifier variable must be a hole marker");
      expect(';');
      TypeExpr body = parse();
      expect(')');
      unsigned level = std::max(1u, level_of(body));
      GraphPtr fam = template_family(body, h->index);
      return w == "pi" ? TypeExpr::pi(fam, TypeExpr::nat(), level) : TypeExpr::sigma(fam, TypeExpr::nat(), level);
    }
    fail(w.empty() ? "expected a relation" : "unknown relation '" + w + "'");
  }

  Slot slot() {
    skip_ws();
    if (peek() == '_') {
      ++pos_;
      std::string d = digits();
      if (d.empty() || std::stoul(d) == 0) fail("hole marker needs an index >= 1");
      return Hole{static_cast<unsigned>(std::stoul(d))};
    }
    std::string d = digits();
    if (d.empty()) fail("expected a natural or a hole marker");
    return static_cast<std::int64_t>(std::stoll(d));
  }

  std::string word() {
    skip_ws();
    std::size_t s = pos_;
    while (pos_ < text_.size() && std::isalpha(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(s, pos_ - s));
  }
  std::string digits() {
    std::size_t s = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(s, pos_ - s));
  }
  void expect(char c) {
    skip_ws();
    if (peek() != c) fail(std::string("expected '") + c + "'");
    ++pos_;
  }
  char peek() const { return pos_ < text_.size() ? text_[pos_] : '\0'; }
  void skip_ws() {
    while (pos_ < text_.size() && std::isspace(static_cast<unsigned char>(text_[pos_]))) ++pos_;
  }
  [[noreturn]] void fail(const std::string& msg) const {
    throw ParseError("relation syntax, column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" +
                     std::string(text_) + "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline TypeExpr parse_relation(std::string_view text) { return RelationParser(text).parse_all(); }

// Holes not bound by a template quantifier.
inline std::set<unsigned> free_holes(const TypeExpr& t) {
  std::set<unsigned> out;
  switch (t.tag()) {
    case TypeTag::RelAtom:
      for (const Slot* s : {&t.lhs(), &t.rhs()})
        if (const auto* h = std::get_if<Hole>(s)) out.insert(h->index);
      break;
    case TypeTag::Product:
    case TypeTag::Sum: {
      out = free_holes(t.left());
      auto r = free_holes(t.right());
      out.insert(r.begin(), r.end());
      break;
    }
    case TypeTag::Neg:
      out = free_holes(t.left());
      break;
    case TypeTag::Pi:
    case TypeTag::Sigma:
      if (const Primitive* rel = detail::template_relation(*t.family())) {
        out = free_holes(rel->pattern);
        out.erase(static_cast<unsigned>(rel->pairing[0].second));
      }
      break;
    default:
      break;
  }
  return out;
}

inline unsigned template_arity(const TypeExpr& t) {
  auto h = free_holes(t);
  return h.empty() ? 0 : *h.rbegin();
}

// A graph N^arity -> Types over a relation template.
inline GraphPtr relation_graph(const TypeExpr& pattern, std::size_t arity, std::string name = "relation") {
  GraphBuilder b(std::move(name));
  std::vector<SocketRef> xs;
  for (std::size_t i = 0; i < arity; ++i) xs.push_back(b.input(TypeExpr::nat()));
  b.output(b.add1(prim::relation(pattern, arity), xs));
  return b.build();
}

}  // namespace universe
