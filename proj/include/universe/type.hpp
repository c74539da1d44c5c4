#pragma once

// Type expressions: primitive types, the three level-0 constructors, the
// level hierarchy of type-of-types, relational atoms over naturals and the
// dependent constructors Pi / Sigma, plus the exclusive-output constructor.

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <variant>
#include <vector>

#include "error.hpp"

namespace universe {

class Graph;

enum class RelKind : std::uint8_t { Equal, Lesser, Greater };

// Numbered parameter marker inside a parameterized relational type.
struct Hole {
  unsigned index = 0;
  friend bool operator==(Hole, Hole) = default;
};

using Slot = std::variant<std::int64_t, Hole>;

enum class TypeTag : std::uint8_t {
  Nat,
  Continuum,
  Product,
  Sum,
  Arrow,
  Types,
  RelAtom,
  Pi,
  Sigma,
  Excl,
  Neg,
  Proof,
};

class TypeExpr {
 public:
  TypeExpr() : TypeExpr(nat()) {}

  static TypeExpr nat() {
    static const TypeExpr n{make(TypeTag::Nat)};
    return n;
  }
  static TypeExpr continuum() {
    static const TypeExpr c{make(TypeTag::Continuum)};
    return c;
  }
  // Static socket type of witness objects (objects of relational types).
  static TypeExpr proof() {
    static const TypeExpr p{make(TypeTag::Proof)};
    return p;
  }
  static TypeExpr product(TypeExpr a, TypeExpr b) { return binary(TypeTag::Product, std::move(a), std::move(b)); }
  static TypeExpr sum(TypeExpr a, TypeExpr b) { return binary(TypeTag::Sum, std::move(a), std::move(b)); }

  static TypeExpr arrow(std::vector<TypeExpr> inputs, std::vector<TypeExpr> outputs) {
    if (outputs.empty()) throw TypeError("arrow type needs at least one output");
    auto r = std::make_shared<Rep>();
    r->tag = TypeTag::Arrow;
    r->first = std::move(inputs);
    r->second = std::move(outputs);
    return TypeExpr(std::move(r));
  }
  static TypeExpr arrow(TypeExpr in, TypeExpr out) {
    return arrow(std::vector<TypeExpr>{std::move(in)}, std::vector<TypeExpr>{std::move(out)});
  }

  static TypeExpr types(unsigned level) {
    auto r = std::make_shared<Rep>();
    r->tag = TypeTag::Types;
    r->level = level;
    return TypeExpr(std::move(r));
  }

  static TypeExpr rel_atom(RelKind kind, Slot lhs, Slot rhs) {
    if (std::holds_alternative<std::int64_t>(lhs) && std::get<std::int64_t>(lhs) < 1)
      throw TypeError("relational atom argument must be a natural >= 1");
    if (std::holds_alternative<std::int64_t>(rhs) && std::get<std::int64_t>(rhs) < 1)
      throw TypeError("relational atom argument must be a natural >= 1");
    auto r = std::make_shared<Rep>();
    r->tag = TypeTag::RelAtom;
    r->rel = kind;
    r->lhs = lhs;
    r->rhs = rhs;
    return TypeExpr(std::move(r));
  }

  // `family` is an operation domain -> Types(codomain_level). When
  // `negated_body` is set the quantified body is read as the negation of the
  // family's output; this keeps quantifier duals structural.
  static TypeExpr pi(std::shared_ptr<const Graph> family, TypeExpr domain, unsigned codomain_level,
                     bool negated_body = false) {
    return quantifier(TypeTag::Pi, std::move(family), std::move(domain), codomain_level, negated_body);
  }
  static TypeExpr sigma(std::shared_ptr<const Graph> family, TypeExpr domain, unsigned codomain_level,
                        bool negated_body = false) {
    return quantifier(TypeTag::Sigma, std::move(family), std::move(domain), codomain_level, negated_body);
  }

  // Mutually exclusive boards: exactly one side carries objects.
  static TypeExpr excl(std::vector<TypeExpr> left, std::vector<TypeExpr> right) {
    if (left.empty() || right.empty()) throw TypeError("exclusive type needs non-empty sides");
    for (const auto* side : {&left, &right})
      for (const auto& t : *side)
        if (t.tag() == TypeTag::Excl) throw TypeError("nested exclusive boards are not supported");
    auto r = std::make_shared<Rep>();
    r->tag = TypeTag::Excl;
    r->first = std::move(left);
    r->second = std::move(right);
    return TypeExpr(std::move(r));
  }
  static TypeExpr excl(TypeExpr a, TypeExpr b) {
    return excl(std::vector<TypeExpr>{std::move(a)}, std::vector<TypeExpr>{std::move(b)});
  }

  static TypeExpr neg(TypeExpr t) {
    auto r = std::make_shared<Rep>();
    r->tag = TypeTag::Neg;
    r->first = {std::move(t)};
    return TypeExpr(std::move(r));
  }

  TypeTag tag() const { return rep_->tag; }
  bool is(TypeTag t) const { return rep_->tag == t; }

  // Product / Sum components; Neg operand is left().
  const TypeExpr& left() const { return rep_->first.at(0); }
  const TypeExpr& right() const { return rep_->second.at(0); }
  // Arrow boards; for Excl, the two exclusive boards.
  const std::vector<TypeExpr>& inputs() const { return rep_->first; }
  const std::vector<TypeExpr>& outputs() const { return rep_->second; }
  // Types(n): n. Pi/Sigma: the level of the family's codomain.
  unsigned level() const { return rep_->level; }

  RelKind rel_kind() const { return rep_->rel; }
  const Slot& lhs() const { return rep_->lhs; }
  const Slot& rhs() const { return rep_->rhs; }

  const std::shared_ptr<const Graph>& family() const { return rep_->family; }
  const TypeExpr& domain() const { return rep_->first.at(0); }
  bool negated_body() const { return rep_->negated; }

  const void* identity() const { return rep_.get(); }

 private:
  struct Rep {
    TypeTag tag = TypeTag::Nat;
    std::vector<TypeExpr> first;
    std::vector<TypeExpr> second;
    unsigned level = 0;
    RelKind rel = RelKind::Equal;
    Slot lhs = std::int64_t{1};
    Slot rhs = std::int64_t{1};
    std::shared_ptr<const Graph> family;
    bool negated = false;
  };

  explicit TypeExpr(std::shared_ptr<const Rep> rep) : rep_(std::move(rep)) {}

  static std::shared_ptr<const Rep> make(TypeTag tag) {
    auto r = std::make_shared<Rep>();
    r->tag = tag;
    return r;
  }
  static TypeExpr binary(TypeTag tag, TypeExpr a, TypeExpr b) {
    auto r = std::make_shared<Rep>();
    r->tag = tag;
    r->first = {std::move(a)};
    r->second = {std::move(b)};
    return TypeExpr(std::move(r));
  }
  static TypeExpr quantifier(TypeTag tag, std::shared_ptr<const Graph> family, TypeExpr domain, unsigned level,
                             bool negated) {
    if (!family) throw TypeError("quantifier needs a family operation");
    auto r = std::make_shared<Rep>();
    r->tag = tag;
    r->family = std::move(family);
    r->first = {std::move(domain)};
    r->level = level;
    r->negated = negated;
    return TypeExpr(std::move(r));
  }

  std::shared_ptr<const Rep> rep_;
};

inline bool type_equal(const TypeExpr& a, const TypeExpr& b);

inline bool board_equal(const std::vector<TypeExpr>& a, const std::vector<TypeExpr>& b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (!type_equal(a[i], b[i])) return false;
  return true;
}

// Defined in graph.hpp.
inline bool graph_equal(const Graph& a, const Graph& b);

// Structural equality; quantifier families compare as constructions.
inline bool type_equal(const TypeExpr& a, const TypeExpr& b) {
  if (a.identity() == b.identity()) return true;
  if (a.tag() != b.tag()) return false;
  switch (a.tag()) {
    case TypeTag::Nat:
    case TypeTag::Continuum:
    case TypeTag::Proof:
      return true;
    case TypeTag::Product:
    case TypeTag::Sum:
      return type_equal(a.left(), b.left()) && type_equal(a.right(), b.right());
    case TypeTag::Arrow:
    case TypeTag::Excl:
      return board_equal(a.inputs(), b.inputs()) && board_equal(a.outputs(), b.outputs());
    case TypeTag::Types:
      return a.level() == b.level();
    case TypeTag::RelAtom:
      return a.rel_kind() == b.rel_kind() && a.lhs() == b.lhs() && a.rhs() == b.rhs();
    case TypeTag::Neg:
      return type_equal(a.left(), b.left());
    case TypeTag::Pi:
    case TypeTag::Sigma:
      return (a.family() == b.family() || graph_equal(*a.family(), *b.family())) && a.level() == b.level() && a.negated_body() == b.negated_body() &&
             type_equal(a.domain(), b.domain());
  }
  return false;
}

inline bool operator==(const TypeExpr& a, const TypeExpr& b) { return type_equal(a, b); }

// Least level at which `t` is a type.
inline unsigned level_of(const TypeExpr& t) {
  auto board_level = [](const std::vector<TypeExpr>& b) {
    unsigned l = 0;
    for (const auto& x : b) l = std::max(l, level_of(x));
    return l;
  };
  switch (t.tag()) {
    case TypeTag::Nat:
    case TypeTag::Continuum:
      return 0;
    case TypeTag::Proof:
    case TypeTag::RelAtom:
      return 1;
    case TypeTag::Product:
    case TypeTag::Sum:
      return std::max(level_of(t.left()), level_of(t.right()));
    case TypeTag::Arrow:
    case TypeTag::Excl:
      return std::max(board_level(t.inputs()), board_level(t.outputs()));
    case TypeTag::Types:
      return t.level() + 1;
    case TypeTag::Neg:
      return std::max(1u, level_of(t.left()));
    case TypeTag::Pi:
    case TypeTag::Sigma:
      return t.level() + 1;
  }
  return 0;
}

// Relation grammar: atoms closed under product (conjunction), sum
// (disjunction), negation and the two quantifiers.
inline bool is_relational(const TypeExpr& t) {
  switch (t.tag()) {
    case TypeTag::RelAtom:
    case TypeTag::Pi:
    case TypeTag::Sigma:
      return true;
    case TypeTag::Product:
    case TypeTag::Sum:
      return is_relational(t.left()) && is_relational(t.right());
    case TypeTag::Neg:
      return is_relational(t.left());
    default:
      return false;
  }
}

inline bool has_holes(const TypeExpr& t) {
  switch (t.tag()) {
    case TypeTag::RelAtom:
      return std::holds_alternative<Hole>(t.lhs()) || std::holds_alternative<Hole>(t.rhs());
    case TypeTag::Product:
    case TypeTag::Sum:
      return has_holes(t.left()) || has_holes(t.right());
    case TypeTag::Neg:
      return has_holes(t.left());
    default:
      return false;
  }
}

using HoleBindings = std::map<unsigned, std::int64_t>;

// Fills bound holes; others stay open. Quantifier families are left alone
// here (see instantiate in relational.hpp).
inline TypeExpr substitute(const TypeExpr& t, const HoleBindings& bind) {
  auto fill = [&](const Slot& s) -> Slot {
    if (const auto* h = std::get_if<Hole>(&s)) {
      auto it = bind.find(h->index);
      if (it != bind.end()) return it->second;
    }
    return s;
  };
  switch (t.tag()) {
    case TypeTag::RelAtom:
      return TypeExpr::rel_atom(t.rel_kind(), fill(t.lhs()), fill(t.rhs()));
    case TypeTag::Product:
      return TypeExpr::product(substitute(t.left(), bind), substitute(t.right(), bind));
    case TypeTag::Sum:
      return TypeExpr::sum(substitute(t.left(), bind), substitute(t.right(), bind));
    case TypeTag::Neg:
      return TypeExpr::neg(substitute(t.left(), bind));
    default:
      return t;
  }
}

// Hole `_i` takes args[i-1].
inline TypeExpr substitute(const TypeExpr& t, const std::vector<std::int64_t>& args) {
  HoleBindings bind;
  for (std::size_t i = 0; i < args.size(); ++i) bind[static_cast<unsigned>(i + 1)] = args[i];
  return substitute(t, bind);
}

inline unsigned max_hole(const TypeExpr& t) {
  auto slot = [](const Slot& s) -> unsigned {
    if (const auto* h = std::get_if<Hole>(&s)) return h->index;
    return 0;
  };
  switch (t.tag()) {
    case TypeTag::RelAtom:
      return std::max(slot(t.lhs()), slot(t.rhs()));
    case TypeTag::Product:
    case TypeTag::Sum:
      return std::max(max_hole(t.left()), max_hole(t.right()));
    case TypeTag::Neg:
      return max_hole(t.left());
    default:
      return 0;
  }
}

enum class TypeCtor : std::uint8_t { Product, Sum, Arrow };

inline TypeExpr construct_type(TypeCtor kind, TypeExpr a, TypeExpr b) {
  switch (kind) {
    case TypeCtor::Product:
      return TypeExpr::product(std::move(a), std::move(b));
    case TypeCtor::Sum:
      return TypeExpr::sum(std::move(a), std::move(b));
    case TypeCtor::Arrow:
      return TypeExpr::arrow(std::move(a), std::move(b));
  }
  throw TypeError("unknown type constructor");
}

// x^1, +^1, ->^1: the level-0 constructors as operations on Types0 objects.
inline TypeExpr level1_constructor(TypeCtor kind, TypeExpr a, TypeExpr b) {
  if (level_of(a) != 0 || level_of(b) != 0) throw TypeError("level-1 constructor expects level-0 operands");
  return construct_type(kind, std::move(a), std::move(b));
}

// Right-nested product of a board; a single-element board is its element.
inline TypeExpr fold_board(const std::vector<TypeExpr>& board) {
  if (board.empty()) throw TypeError("cannot fold an empty board");
  TypeExpr acc = board.back();
  for (std::size_t i = board.size() - 1; i-- > 0;) acc = TypeExpr::product(board[i], acc);
  return acc;
}

// Common destructor of the level-0 constructors.
inline std::pair<TypeExpr, TypeExpr> des(const TypeExpr& t) {
  if (level_of(t) != 0) throw TypeError("des expects a level-0 type");
  switch (t.tag()) {
    case TypeTag::Nat:
    case TypeTag::Continuum:
      return {t, t};
    case TypeTag::Product:
    case TypeTag::Sum:
      return {t.left(), t.right()};
    case TypeTag::Arrow:
      if (t.inputs().empty()) throw TypeError("des: arrow without inputs");
      return {fold_board(t.inputs()), fold_board(t.outputs())};
    default:
      throw TypeError("des: not a level-0 constructor form");
  }
}

// Socket view of a board: each Excl entry expands to its left sockets
// followed by its right sockets, recorded as an exclusive group.
struct ExclGroup {
  std::size_t begin = 0;  // left side [begin, mid)
  std::size_t mid = 0;    // right side [mid, end)
  std::size_t end = 0;
  friend bool operator==(const ExclGroup&, const ExclGroup&) = default;
};

struct FlatBoard {
  std::vector<TypeExpr> sockets;
  std::vector<ExclGroup> groups;
};

inline FlatBoard flatten_board(const std::vector<TypeExpr>& board) {
  FlatBoard fb;
  for (const auto& t : board) {
    if (t.tag() == TypeTag::Excl) {
      ExclGroup g;
      g.begin = fb.sockets.size();
      fb.sockets.insert(fb.sockets.end(), t.inputs().begin(), t.inputs().end());
      g.mid = fb.sockets.size();
      fb.sockets.insert(fb.sockets.end(), t.outputs().begin(), t.outputs().end());
      g.end = fb.sockets.size();
      fb.groups.push_back(g);
    } else {
      fb.sockets.push_back(t);
    }
  }
  return fb;
}

// Inverse of flatten_board for well-formed group lists.
inline std::vector<TypeExpr> fold_sockets(const std::vector<TypeExpr>& sockets, const std::vector<ExclGroup>& groups) {
  std::vector<TypeExpr> board;
  std::size_t i = 0;
  auto sorted = groups;
  std::sort(sorted.begin(), sorted.end(), [](const ExclGroup& a, const ExclGroup& b) { return a.begin < b.begin; });
  std::size_t gi = 0;
  while (i < sockets.size()) {
    if (gi < sorted.size() && sorted[gi].begin == i) {
      const auto& g = sorted[gi++];
      board.push_back(TypeExpr::excl(std::vector<TypeExpr>(sockets.begin() + g.begin, sockets.begin() + g.mid),
                                     std::vector<TypeExpr>(sockets.begin() + g.mid, sockets.begin() + g.end)));
      i = g.end;
    } else {
      board.push_back(sockets[i++]);
    }
  }
  return board;
}

// ---------------------------------------------------------------------------
// Text form

inline std::string slot_to_string(const Slot& s) {
  if (const auto* h = std::get_if<Hole>(&s)) return "_" + std::to_string(h->index);
  return std::to_string(std::get<std::int64_t>(s));
}

inline std::string_view rel_name(RelKind k) {
  switch (k) {
    case RelKind::Equal:
      return "eq";
    case RelKind::Lesser:
      return "lt";
    case RelKind::Greater:
      return "gt";
  }
  return "?";
}

inline std::string to_string(const TypeExpr& t);

namespace detail {
inline std::string board_to_string(const std::vector<TypeExpr>& b) {
  std::string s;
  for (std::size_t i = 0; i < b.size(); ++i) {
    if (i) s += "; ";
    s += to_string(b[i]);
  }
  return s;
}
inline std::string family_label(const Graph& g);
}  // namespace detail

inline std::string to_string(const TypeExpr& t) {
  switch (t.tag()) {
    case TypeTag::Nat:
      return "N";
    case TypeTag::Continuum:
      return "C";
    case TypeTag::Proof:
      return "Proof";
    case TypeTag::Product:
      if (is_relational(t)) return "and(" + to_string(t.left()) + "; " + to_string(t.right()) + ")";
      return "(" + to_string(t.left()) + " x " + to_string(t.right()) + ")";
    case TypeTag::Sum:
      if (is_relational(t)) return "or(" + to_string(t.left()) + "; " + to_string(t.right()) + ")";
      return "(" + to_string(t.left()) + " + " + to_string(t.right()) + ")";
    case TypeTag::Arrow:
      return "(" + detail::board_to_string(t.inputs()) + " -> " + detail::board_to_string(t.outputs()) + ")";
    case TypeTag::Excl:
      return "(" + detail::board_to_string(t.inputs()) + " || " + detail::board_to_string(t.outputs()) + ")";
    case TypeTag::Types:
      return "Types" + std::to_string(t.level());
    case TypeTag::RelAtom:
      return std::string(rel_name(t.rel_kind())) + "(" + slot_to_string(t.lhs()) + ";" + slot_to_string(t.rhs()) + ")";
    case TypeTag::Neg:
      return "not(" + to_string(t.left()) + ")";
    case TypeTag::Pi:
    case TypeTag::Sigma: {
      std::string s = t.is(TypeTag::Pi) ? "Pi[" : "Sigma[";
      s += to_string(t.domain()) + "](";
      if (t.negated_body()) s += "not ";
      s += detail::family_label(*t.family()) + ")";
      return s;
    }
  }
  return "?";
}

// Parser for the textual type syntax:
//   N | C | Proof | TypesK | (T x T) | (T + T) | (T1; T2 -> T3) | (T || T)
//   eq(s;s) | lt(s;s) | gt(s;s) | and(T;T) | or(T;T) | not(T)
// where s is a natural or a hole marker _k. Quantifiers need a relation
// context and are handled by the relation-template parser.
class TypeParser {
 public:
  explicit TypeParser(std::string_view text) : text_(text) {}

  TypeExpr parse_all() {
    TypeExpr t = parse();
    skip_ws();
    if (pos_ != text_.size()) fail("trailing input");
    return t;
  }

  TypeExpr parse() {
    skip_ws();
    if (peek() == '(') return parse_paren();
    std::string word = read_word();
    if (word == "N") return TypeExpr::nat();
    if (word == "C") return TypeExpr::continuum();
    if (word == "Proof") return TypeExpr::proof();
    if (word.rfind("Types", 0) == 0 && word.size() > 5 &&
        std::all_of(word.begin() + 5, word.end(), [](unsigned char c) { return std::isdigit(c); }))
      return TypeExpr::types(static_cast<unsigned>(std::stoul(word.substr(5))));
    if (word == "eq" || word == "lt" || word == "gt") {
      expect('(');
      Slot a = parse_slot();
      expect(';');
      Slot b = parse_slot();
      expect(')');
      RelKind k = word == "eq" ? RelKind::Equal : word == "lt" ? RelKind::Lesser : RelKind::Greater;
      return TypeExpr::rel_atom(k, a, b);
    }
    if (word == "and" || word == "or") {
      expect('(');
      TypeExpr a = parse();
      expect(';');
      TypeExpr b = parse();
      expect(')');
      return word == "and" ? TypeExpr::product(a, b) : TypeExpr::sum(a, b);
    }
    if (word == "not") {
      expect('(');
      TypeExpr a = parse();
      expect(')');
      return TypeExpr::neg(a);
    }
    if (word == "pi" || word == "sigma") fail("quantifiers are only allowed in relation conditions");
    fail(word.empty() ? "expected a type" : "unknown type '" + word + "'");
  }

  std::size_t position() const { return pos_; }

 private:
  TypeExpr parse_paren() {
    expect('(');
    std::vector<TypeExpr> first = parse_board();
    skip_ws();
    if (match("->")) {
      std::vector<TypeExpr> second = parse_board();
      expect(')');
      return TypeExpr::arrow(std::move(first), std::move(second));
    }
    if (match("||")) {
      std::vector<TypeExpr> second = parse_board();
      expect(')');
      return TypeExpr::excl(std::move(first), std::move(second));
    }
    if (first.size() != 1) fail("board must be followed by '->' or '||'");
    if (match("x") || match("*")) {
      TypeExpr b = parse();
      expect(')');
      return TypeExpr::product(first[0], b);
    }
    if (match("+")) {
      TypeExpr b = parse();
      expect(')');
      return TypeExpr::sum(first[0], b);
    }
    expect(')');
    return first[0];
  }

  std::vector<TypeExpr> parse_board() {
    std::vector<TypeExpr> board;
    skip_ws();
    if (peek() == '-') return board;  // "( -> T)" constant operation
    board.push_back(parse());
    while (true) {
      skip_ws();
      if (peek() != ';') break;
      ++pos_;
      board.push_back(parse());
    }
    return board;
  }

  Slot parse_slot() {
    skip_ws();
    if (peek() == '_') {
      ++pos_;
      std::string d = read_digits();
      if (d.empty()) fail("hole marker needs an index");
      return Hole{static_cast<unsigned>(std::stoul(d))};
    }
    std::string d = read_digits();
    if (d.empty()) fail("expected a natural or a hole marker");
    return static_cast<std::int64_t>(std::stoll(d));
  }

  std::string read_word() {
    skip_ws();
    std::size_t start = pos_;
    while (pos_ < text_.size() && (std::isalnum(static_cast<unsigned char>(text_[pos_])) || text_[pos_] == '_')) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  std::string read_digits() {
    std::size_t start = pos_;
    while (pos_ < text_.size() && std::isdigit(static_cast<unsigned char>(text_[pos_]))) ++pos_;
    return std::string(text_.substr(start, pos_ - start));
  }
  bool match(std::string_view tok) {
    skip_ws();
    if (text_.substr(pos_, tok.size()) == tok) {
      // "x" is a keyword only when it stands alone
      if (tok == "x" && pos_ + 1 < text_.size() && std::isalnum(static_cast<unsigned char>(text_[pos_ + 1])))
        return false;
      pos_ += tok.size();
      return true;
    }
    return false;
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
    throw ParseError("type syntax, column " + std::to_string(pos_ + 1) + ": " + msg + " in \"" + std::string(text_) +
                     "\"");
  }

  std::string_view text_;
  std::size_t pos_ = 0;
};

inline TypeExpr parse_type(std::string_view text) { return TypeParser(text).parse_all(); }

}  // namespace universe
