#pragma once

// Plain-integer reference models for the reproductions. Nothing here goes
// through construction graphs.

#include <cstdint>
#include <functional>
#include <map>
#include <vector>

namespace reference {

using Fn = std::function<std::int64_t(std::int64_t)>;

inline std::int64_t iterate(const Fn& f, std::int64_t n, std::int64_t a) {
  for (std::int64_t i = 0; i < n; ++i) a = f(a);
  return a;
}

// R(a)(c)(1) = a, R(a)(c)(n+1) = c(n)(R(a)(c)(n))
inline std::int64_t grzegorczyk(std::int64_t a, const std::function<Fn(std::int64_t)>& c, std::int64_t n) {
  if (n == 1) return a;
  return c(n - 1)(grzegorczyk(a, c, n - 1));
}

// Least k <= n with enum(k) == target, otherwise 1.
inline std::int64_t linear_scan(const std::vector<std::int64_t>& enumerated, std::int64_t target, std::int64_t n) {
  for (std::int64_t k = 1; k <= n && k <= static_cast<std::int64_t>(enumerated.size()); ++k)
    if (enumerated[static_cast<std::size_t>(k - 1)] == target) return k;
  return 1;
}

// Mutable tree with the node/father/leaf tables of the tree example.
// node: 1 live, 2 deleted, 3 unused. leaf: 1 leaf, 2 inner or deleted.
struct MutableTree {
  std::int64_t n = 1;
  std::map<std::int64_t, std::int64_t> node{{1, 1}}, father, leaf{{1, 1}};

  static std::int64_t get(const std::map<std::int64_t, std::int64_t>& m, std::int64_t i, std::int64_t dflt) {
    auto it = m.find(i);
    return it == m.end() ? dflt : it->second;
  }
  std::int64_t node_at(std::int64_t i) const { return get(node, i, 3); }
  std::int64_t father_at(std::int64_t i) const { return get(father, i, 1); }
  std::int64_t leaf_at(std::int64_t i) const { return get(leaf, i, 3); }

  void add(std::int64_t o) {
    if (!(o > n || node_at(o) == 2)) {
      ++n;
      node[n] = 1;
      father[n] = o;
      leaf[n] = 1;
    }
    // the leaf flag of the parent is always revisited
    if (leaf_at(o) == 1) leaf[o] = 2;
  }

  void del(std::int64_t o) {
    if (!(o > n || node_at(o) == 2 || leaf_at(o) != 1 || o == 1)) {
      node[o] = 2;
      leaf[o] = 2;
    }
    // o has no sibling among 1..n, deleted ones included
    bool alone = true;
    for (std::int64_t i = 1; i <= n; ++i)
      if (i != o && father_at(i) == father_at(o)) alone = false;
    if (alone) leaf[father_at(o)] = 1;
  }
};

}  // namespace reference
