#pragma once

// Runtime objects. Values are immutable; sharing substructure is safe.
// Operations that need the graph layer (typing, equality and copying of
// operation values) are declared here and defined in graph.hpp.

#include <cstdint>
#include <memory>
#include <string>
#include <variant>

#include "continuum.hpp"
#include "error.hpp"
#include "type.hpp"
#include "witness.hpp"

namespace universe {

class Graph;
struct Value;
using ValuePtr = std::shared_ptr<const Value>;

enum class Side : std::uint8_t { Left, Right };

struct Value {
  struct Nat {
    std::int64_t n = 1;
  };
  struct Pair {
    ValuePtr first, second;
  };
  struct Tagged {
    Side side = Side::Left;
    ValuePtr payload;
    TypeExpr type;  // the full sum type
  };
  struct Op {
    std::shared_ptr<const Graph> graph;
  };
  struct Type {
    TypeExpr type;
  };
  struct Proof {
    Witness w;
  };
  struct Continuum {
    std::shared_ptr<const CubicalComplex> c;
  };

  std::variant<Nat, Pair, Tagged, Op, Type, Proof, Continuum> data;

  static Value nat(std::int64_t n) {
    if (n < 1) throw EvalError("naturals start at 1, got " + std::to_string(n));
    return Value{Nat{n}};
  }
  static Value pair(Value a, Value b) {
    return Value{Pair{std::make_shared<const Value>(std::move(a)), std::make_shared<const Value>(std::move(b))}};
  }
  static Value tagged(Side side, Value payload, TypeExpr sum) {
    if (!sum.is(TypeTag::Sum)) throw TypeError("tagged value needs a sum type");
    return Value{Tagged{side, std::make_shared<const Value>(std::move(payload)), std::move(sum)}};
  }
  static Value op(std::shared_ptr<const Graph> g) {
    if (!g) throw EvalError("null operation value");
    return Value{Op{std::move(g)}};
  }
  static Value type(TypeExpr t) { return Value{Type{std::move(t)}}; }
  static Value proof(Witness w) { return Value{Proof{std::move(w)}}; }
  static Value continuum(CubicalComplex c) {
    return Value{Continuum{std::make_shared<const CubicalComplex>(std::move(c))}};
  }

  bool is_nat() const { return std::holds_alternative<Nat>(data); }
  bool is_pair() const { return std::holds_alternative<Pair>(data); }
  bool is_tagged() const { return std::holds_alternative<Tagged>(data); }
  bool is_op() const { return std::holds_alternative<Op>(data); }
  bool is_type() const { return std::holds_alternative<Type>(data); }
  bool is_proof() const { return std::holds_alternative<Proof>(data); }
  bool is_continuum() const { return std::holds_alternative<Continuum>(data); }

  std::int64_t as_nat() const { return get<Nat>("natural").n; }
  const Value& first() const { return *get<Pair>("pair").first; }
  const Value& second() const { return *get<Pair>("pair").second; }
  const Tagged& as_tagged() const { return get<Tagged>("tagged value"); }
  const std::shared_ptr<const Graph>& as_op() const { return get<Op>("operation").graph; }
  const TypeExpr& as_type() const { return get<Type>("type object").type; }
  const Witness& as_proof() const { return get<Proof>("witness").w; }
  const CubicalComplex& as_continuum() const { return *get<Continuum>("continuum object").c; }

 private:
  template <class T>
  const T& get(const char* what) const {
    if (const T* p = std::get_if<T>(&data)) return *p;
    throw EvalError(std::string("expected a ") + what);
  }
};

// Defined in graph.hpp.
inline TypeExpr type_of(const Value& v);
inline bool conforms(const Value& v, const TypeExpr& t);
inline bool value_equal(const Value& a, const Value& b);
inline Value deep_copy(const Value& v);
inline std::string to_string(const Value& v);

inline bool operator==(const Value& a, const Value& b) { return value_equal(a, b); }

}  // namespace universe
