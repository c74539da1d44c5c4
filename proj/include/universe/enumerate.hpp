#pragma once

// Canonical enumeration of level-0 types built from N and C with the binary
// constructors x, +, ->. Types are ordered by constructor count; within one
// size by constructor (x, +, ->), then by the rank of the left component
// (smaller size first), then by the rank of the right component.

#include <cstdint>
#include <limits>
#include <vector>

#include "type.hpp"

namespace universe {

namespace detail {

inline const std::vector<std::uint64_t>& level0_counts() {
  static const std::vector<std::uint64_t> counts = [] {
    constexpr auto kMax = std::numeric_limits<std::uint64_t>::max();
    std::vector<std::uint64_t> c{2};
    for (;;) {
      std::size_t s = c.size();
      unsigned __int128 total = 0;
      for (std::size_t i = 0; i < s; ++i) total += static_cast<unsigned __int128>(c[i]) * c[s - 1 - i];
      total *= 3;
      if (total > kMax / 2) break;
      c.push_back(static_cast<std::uint64_t>(total));
    }
    return c;
  }();
  return counts;
}

inline std::uint64_t pairs_of_size(std::size_t s) {
  const auto& c = level0_counts();
  std::uint64_t total = 0;
  for (std::size_t i = 0; i < s; ++i) total += c[i] * c[s - 1 - i];
  return total;
}

inline TypeExpr unrank(std::size_t size, std::uint64_t rank) {
  if (size == 0) return rank == 0 ? TypeExpr::nat() : TypeExpr::continuum();
  const auto& c = level0_counts();
  std::uint64_t block = pairs_of_size(size);
  auto ctor = static_cast<TypeCtor>(rank / block);
  rank %= block;
  for (std::size_t ls = 0; ls < size; ++ls) {
    std::uint64_t rs_count = c[size - 1 - ls];
    std::uint64_t span = c[ls] * rs_count;
    if (rank < span) return construct_type(ctor, unrank(ls, rank / rs_count), unrank(size - 1 - ls, rank % rs_count));
    rank -= span;
  }
  throw TypeError("unrank out of range");
}

inline unsigned ctor_index(const TypeExpr& t) {
  switch (t.tag()) {
    case TypeTag::Product:
      return 0;
    case TypeTag::Sum:
      return 1;
    case TypeTag::Arrow:
      return 2;
    default:
      throw TypeError("not a level-0 composite: " + to_string(t));
  }
}

inline std::pair<TypeExpr, TypeExpr> binary_parts(const TypeExpr& t) {
  if (t.is(TypeTag::Arrow)) {
    if (t.inputs().size() != 1 || t.outputs().size() != 1)
      throw TypeError("enumeration covers binary arrows only: " + to_string(t));
    return {t.inputs()[0], t.outputs()[0]};
  }
  return {t.left(), t.right()};
}

}  // namespace detail

// Number of constructors in an enumerable level-0 type.
inline unsigned type_size(const TypeExpr& t) {
  if (t.is(TypeTag::Nat) || t.is(TypeTag::Continuum)) return 0;
  detail::ctor_index(t);
  auto [l, r] = detail::binary_parts(t);
  return 1 + type_size(l) + type_size(r);
}

inline std::uint64_t level0_count(unsigned size) {
  const auto& c = detail::level0_counts();
  if (size >= c.size()) throw TypeError("type size beyond enumerable range");
  return c[size];
}

namespace detail {
inline std::uint64_t rank_within(const TypeExpr& t) {
  if (t.is(TypeTag::Nat)) return 0;
  if (t.is(TypeTag::Continuum)) return 1;
  const auto& c = level0_counts();
  auto [l, r] = binary_parts(t);
  unsigned s = type_size(t);
  unsigned ls = type_size(l);
  std::uint64_t rank = ctor_index(t) * pairs_of_size(s);
  for (unsigned i = 0; i < ls; ++i) rank += c[i] * c[s - 1 - i];
  return rank + rank_within(l) * c[s - 1 - ls] + rank_within(r);
}
}  // namespace detail

// Ind1: 1-based index -> level-0 type.
inline TypeExpr ind1(std::uint64_t n) {
  if (n < 1) throw TypeError("ind1 index must be >= 1");
  const auto& c = detail::level0_counts();
  std::uint64_t rank = n - 1;
  for (std::size_t s = 0; s < c.size(); ++s) {
    if (rank < c[s]) return detail::unrank(s, rank);
    rank -= c[s];
  }
  throw TypeError("ind1 index beyond enumerable range");
}

// Inverse of ind1.
inline std::uint64_t ind1_index(const TypeExpr& t) {
  unsigned s = type_size(t);
  const auto& c = detail::level0_counts();
  if (s >= c.size()) throw TypeError("type beyond enumerable range");
  std::uint64_t before = 0;
  for (unsigned i = 0; i < s; ++i) before += c[i];
  return before + detail::rank_within(t) + 1;
}

// Structural Goedel code: N -> 1, C -> 2, composite -> 3 * cantor(l, r) + ctor.
// Unlike ind1_index the code is not monotone in the enumeration order.
inline std::uint64_t type_code(const TypeExpr& t) {
  if (t.is(TypeTag::Nat)) return 1;
  if (t.is(TypeTag::Continuum)) return 2;
  unsigned ci = detail::ctor_index(t);
  auto [l, r] = detail::binary_parts(t);
  unsigned __int128 a = type_code(l), b = type_code(r);
  unsigned __int128 cantor = (a + b) * (a + b + 1) / 2 + b;
  unsigned __int128 code = 3 * cantor + ci;
  if (code > static_cast<unsigned __int128>(std::numeric_limits<std::int64_t>::max()))
    throw TypeError("type code overflow for " + to_string(t));
  return static_cast<std::uint64_t>(code);
}

}  // namespace universe
