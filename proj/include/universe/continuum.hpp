#pragma once

// Uniform cubical complexes: a 2^k-per-axis grid over the unit d-cube with a
// set of active (white) cells. Inactive cells and a one-cell frame around the
// grid form the black dual; the frame is the border component.

#include <algorithm>
#include <cstdint>
#include <map>
#include <queue>
#include <set>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "error.hpp"

namespace universe {

class CubicalComplex {
 public:
  using Index = std::vector<std::int64_t>;  // 1-based, one entry per axis

  static constexpr std::size_t kMaxCells = std::size_t{1} << 26;

  CubicalComplex() : CubicalComplex(2, 0) {}

  CubicalComplex(unsigned dim, unsigned resolution, bool all_active = true) : dim_(dim), resolution_(resolution) {
    if (dim == 0) throw Error("cubical complex needs dimension >= 1");
    if (resolution >= 31) throw Error("resolution too large");
    std::size_t cells = 1;
    for (unsigned i = 0; i < dim; ++i) {
      cells *= side();
      if (cells > kMaxCells) throw Error("cubical complex too large");
    }
    active_.assign(cells, all_active ? 1 : 0);
  }

  // Unit cube, no subdivision.
  static CubicalComplex unit(unsigned dim) { return CubicalComplex(dim, 0); }

  unsigned dim() const { return dim_; }
  unsigned resolution() const { return resolution_; }
  std::int64_t side() const { return std::int64_t{1} << resolution_; }
  std::size_t cell_count() const { return active_.size(); }

  bool in_grid(const Index& idx) const {
    if (idx.size() != dim_) return false;
    return std::all_of(idx.begin(), idx.end(), [&](std::int64_t x) { return x >= 1 && x <= side(); });
  }

  std::size_t flat(const Index& idx) const {
    if (!in_grid(idx)) throw Error("cell index outside the grid");
    std::size_t f = 0;
    for (unsigned a = 0; a < dim_; ++a) f = f * static_cast<std::size_t>(side()) + static_cast<std::size_t>(idx[a] - 1);
    return f;
  }

  Index unflat(std::size_t f) const {
    Index idx(dim_);
    for (unsigned a = dim_; a-- > 0;) {
      idx[a] = static_cast<std::int64_t>(f % static_cast<std::size_t>(side())) + 1;
      f /= static_cast<std::size_t>(side());
    }
    return idx;
  }

  bool active(const Index& idx) const { return active_[flat(idx)] != 0; }
  bool active_flat(std::size_t f) const { return active_[f] != 0; }

  std::size_t active_count() const { return static_cast<std::size_t>(std::count(active_.begin(), active_.end(), 1)); }

  std::vector<Index> active_cells() const {
    std::vector<Index> out;
    for (std::size_t f = 0; f < active_.size(); ++f)
      if (active_[f]) out.push_back(unflat(f));
    return out;
  }

  friend bool operator==(const CubicalComplex& a, const CubicalComplex& b) {
    return a.dim_ == b.dim_ && a.resolution_ == b.resolution_ && a.active_ == b.active_;
  }

 private:
  friend CubicalComplex deactivate(const CubicalComplex&, const std::vector<Index>&);
  friend CubicalComplex subdivide(const CubicalComplex&);

  unsigned dim_;
  unsigned resolution_;
  std::vector<std::uint8_t> active_;
};

// Each cell splits into 2^dim children that inherit its state.
inline CubicalComplex subdivide(const CubicalComplex& c) {
  CubicalComplex out(c.dim(), c.resolution() + 1, false);
  for (std::size_t f = 0; f < c.cell_count(); ++f) {
    if (!c.active_flat(f)) continue;
    auto idx = c.unflat(f);
    for (std::size_t mask = 0; mask < (std::size_t{1} << c.dim()); ++mask) {
      CubicalComplex::Index child(c.dim());
      for (unsigned a = 0; a < c.dim(); ++a) child[a] = 2 * idx[a] - 1 + static_cast<std::int64_t>((mask >> a) & 1);
      out.active_[out.flat(child)] = 1;
    }
  }
  return out;
}

inline CubicalComplex deactivate(const CubicalComplex& c, const std::vector<CubicalComplex::Index>& cells) {
  CubicalComplex out = c;
  for (const auto& idx : cells) out.active_[out.flat(idx)] = 0;
  return out;
}

enum class Color : std::uint8_t { Black, White };

// Labels over the padded grid (side + 2 per axis); component 0 is the border.
struct ComponentLabeling {
  unsigned dim = 0;
  std::int64_t padded_side = 0;
  std::vector<int> label;
  std::vector<Color> color;  // per component
  int border = 0;

  std::size_t component_count() const { return color.size(); }
  std::size_t white_count() const { return static_cast<std::size_t>(std::count(color.begin(), color.end(), Color::White)); }
  std::size_t black_count() const { return component_count() - white_count(); }
};

namespace detail {
inline bool padded_white(const CubicalComplex& c, std::size_t pf, std::int64_t ps) {
  std::size_t f = 0;
  std::vector<std::int64_t> coord(c.dim());
  for (unsigned a = c.dim(); a-- > 0;) {
    coord[a] = static_cast<std::int64_t>(pf % static_cast<std::size_t>(ps));
    pf /= static_cast<std::size_t>(ps);
  }
  for (unsigned a = 0; a < c.dim(); ++a) {
    if (coord[a] == 0 || coord[a] == ps - 1) return false;
    f = f * static_cast<std::size_t>(c.side()) + static_cast<std::size_t>(coord[a] - 1);
  }
  return c.active_flat(f);
}
}  // namespace detail

// Connected components of white cells and of black cells under (d-1)-face
// adjacency. The padded frame seeds the border component.
inline ComponentLabeling unite(const CubicalComplex& c) {
  ComponentLabeling l;
  l.dim = c.dim();
  l.padded_side = c.side() + 2;
  const std::int64_t ps = l.padded_side;
  std::size_t total = 1;
  for (unsigned a = 0; a < c.dim(); ++a) total *= static_cast<std::size_t>(ps);

  std::vector<std::uint8_t> white(total);
  for (std::size_t pf = 0; pf < total; ++pf) white[pf] = detail::padded_white(c, pf, ps) ? 1 : 0;

  std::vector<std::size_t> stride(c.dim());
  {
    std::size_t s = 1;
    for (unsigned a = c.dim(); a-- > 0;) {
      stride[a] = s;
      s *= static_cast<std::size_t>(ps);
    }
  }
  auto coord = [&](std::size_t pf, unsigned a) { return static_cast<std::int64_t>((pf / stride[a]) % static_cast<std::size_t>(ps)); };

  l.label.assign(total, -1);
  auto flood = [&](std::size_t seed, int id) {
    std::queue<std::size_t> q;
    q.push(seed);
    l.label[seed] = id;
    while (!q.empty()) {
      std::size_t cur = q.front();
      q.pop();
      for (unsigned a = 0; a < c.dim(); ++a) {
        std::int64_t x = coord(cur, a);
        if (x > 0) {
          std::size_t nb = cur - stride[a];
          if (l.label[nb] < 0 && white[nb] == white[cur]) {
            l.label[nb] = id;
            q.push(nb);
          }
        }
        if (x + 1 < ps) {
          std::size_t nb = cur + stride[a];
          if (l.label[nb] < 0 && white[nb] == white[cur]) {
            l.label[nb] = id;
            q.push(nb);
          }
        }
      }
    }
  };

  // padded index 0 is a frame corner, always black
  l.border = 0;
  l.color.push_back(Color::Black);
  flood(0, 0);
  for (std::size_t pf = 0; pf < total; ++pf) {
    if (l.label[pf] >= 0) continue;
    int id = static_cast<int>(l.color.size());
    l.color.push_back(white[pf] ? Color::White : Color::Black);
    flood(pf, id);
  }
  return l;
}

// Aggregated bipartite relation between white and black components.
struct AdjacencyRelation {
  std::vector<Color> color;
  int border = 0;
  std::vector<std::pair<int, int>> edges;  // (white, black), sorted, unique

  std::size_t node_count() const { return color.size(); }
  std::vector<std::vector<int>> neighbours() const {
    std::vector<std::vector<int>> nb(color.size());
    for (auto [w, b] : edges) {
      nb[static_cast<std::size_t>(w)].push_back(b);
      nb[static_cast<std::size_t>(b)].push_back(w);
    }
    return nb;
  }
};

inline AdjacencyRelation aggregate_adjacency(const ComponentLabeling& l) {
  AdjacencyRelation r;
  r.color = l.color;
  r.border = l.border;
  std::set<std::pair<int, int>> edges;
  std::size_t total = l.label.size();
  std::size_t stride = 1;
  for (unsigned a = l.dim; a-- > 0;) {
    for (std::size_t pf = 0; pf < total; ++pf) {
      if ((pf / stride) % static_cast<std::size_t>(l.padded_side) + 1 == static_cast<std::size_t>(l.padded_side)) continue;
      int x = l.label[pf], y = l.label[pf + stride];
      if (x == y || l.color[static_cast<std::size_t>(x)] == l.color[static_cast<std::size_t>(y)]) continue;
      if (l.color[static_cast<std::size_t>(x)] == Color::Black) std::swap(x, y);
      edges.emplace(x, y);
    }
    stride *= static_cast<std::size_t>(l.padded_side);
  }
  r.edges.assign(edges.begin(), edges.end());
  return r;
}

struct ComponentTree {
  int root = 0;
  std::vector<Color> color;
  std::vector<int> parent;  // -1 at the root
  std::vector<std::vector<int>> children;

  std::size_t depth() const {
    std::size_t best = 0;
    for (std::size_t v = 0; v < parent.size(); ++v) {
      std::size_t d = 0;
      for (int u = static_cast<int>(v); parent[static_cast<std::size_t>(u)] >= 0; u = parent[static_cast<std::size_t>(u)]) ++d;
      best = std::max(best, d);
    }
    return best;
  }

  // AHU encoding with colors: B(...) / W(...), children sorted.
  std::string canonical(int v) const {
    std::vector<std::string> parts;
    for (int ch : children[static_cast<std::size_t>(v)]) parts.push_back(canonical(ch));
    std::sort(parts.begin(), parts.end());
    std::string s(1, color[static_cast<std::size_t>(v)] == Color::White ? 'W' : 'B');
    s += '(';
    for (auto& p : parts) s += p;
    s += ')';
    return s;
  }
  std::string canonical() const { return canonical(root); }
};

// Roots the relation at the border. Throws when the relation is not a tree.
inline ComponentTree component_tree(const AdjacencyRelation& r) {
  std::size_t n = r.node_count();
  if (r.edges.size() + 1 != n) throw Error("aggregated adjacency relation is not a tree");
  ComponentTree t;
  t.root = r.border;
  t.color = r.color;
  t.parent.assign(n, -1);
  t.children.assign(n, {});
  auto nb = r.neighbours();
  std::vector<std::uint8_t> seen(n, 0);
  std::vector<int> stack{r.border};
  seen[static_cast<std::size_t>(r.border)] = 1;
  std::size_t visited = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (int u : nb[static_cast<std::size_t>(v)]) {
      if (seen[static_cast<std::size_t>(u)]) continue;
      seen[static_cast<std::size_t>(u)] = 1;
      ++visited;
      t.parent[static_cast<std::size_t>(u)] = v;
      t.children[static_cast<std::size_t>(v)].push_back(u);
      stack.push_back(u);
    }
  }
  if (visited != n) throw Error("aggregated adjacency relation is not connected");
  return t;
}

inline bool is_tree(const AdjacencyRelation& r) {
  try {
    component_tree(r);
    return true;
  } catch (const Error&) {
    return false;
  }
}

namespace detail {

// Colored-graph isomorphism mapping border to border; refinement by
// (color, degree) and plain backtracking. Intended for small relations.
inline bool relation_isomorphic(const AdjacencyRelation& a, const AdjacencyRelation& b) {
  std::size_t n = a.node_count();
  if (n != b.node_count() || a.edges.size() != b.edges.size()) return false;
  auto na = a.neighbours(), nb = b.neighbours();
  auto key = [](const AdjacencyRelation& r, const std::vector<std::vector<int>>& nbs, std::size_t v) {
    return std::make_tuple(static_cast<int>(r.color[v]), nbs[v].size(), static_cast<int>(v) == r.border);
  };
  {
    std::multiset<std::tuple<int, std::size_t, bool>> ka, kb;
    for (std::size_t v = 0; v < n; ++v) {
      ka.insert(key(a, na, v));
      kb.insert(key(b, nb, v));
    }
    if (ka != kb) return false;
  }
  std::set<std::pair<int, int>> eb;
  for (auto [w, k] : b.edges) {
    eb.emplace(w, k);
    eb.emplace(k, w);
  }
  std::vector<int> map(n, -1), used(n, 0);
  // BFS order from the border keeps partial maps connected
  std::vector<int> order;
  {
    std::vector<std::uint8_t> seen(n, 0);
    for (std::size_t s0 = 0; s0 < n; ++s0) {
      std::size_t start = s0 == 0 ? static_cast<std::size_t>(a.border) : s0;
      if (seen[start]) continue;
      std::queue<int> q;
      q.push(static_cast<int>(start));
      seen[start] = 1;
      while (!q.empty()) {
        int v = q.front();
        q.pop();
        order.push_back(v);
        for (int u : na[static_cast<std::size_t>(v)])
          if (!seen[static_cast<std::size_t>(u)]) {
            seen[static_cast<std::size_t>(u)] = 1;
            q.push(u);
          }
      }
    }
  }
  auto rec = [&](auto&& self, std::size_t i) -> bool {
    if (i == order.size()) return true;
    int v = order[i];
    for (std::size_t c = 0; c < n; ++c) {
      if (used[c] || key(a, na, static_cast<std::size_t>(v)) != key(b, nb, c)) continue;
      bool ok = true;
      for (int u : na[static_cast<std::size_t>(v)]) {
        int mu = map[static_cast<std::size_t>(u)];
        if (mu >= 0 && !eb.count({static_cast<int>(c), mu})) {
          ok = false;
          break;
        }
      }
      if (!ok) continue;
      map[static_cast<std::size_t>(v)] = static_cast<int>(c);
      used[c] = 1;
      if (self(self, i + 1)) return true;
      map[static_cast<std::size_t>(v)] = -1;
      used[c] = 0;
    }
    return false;
  };
  return rec(rec, 0);
}

}  // namespace detail

inline bool similar_relations(const AdjacencyRelation& a, const AdjacencyRelation& b) {
  bool ta = is_tree(a), tb = is_tree(b);
  if (ta != tb) return false;
  if (ta) return component_tree(a).canonical() == component_tree(b).canonical();
  return detail::relation_isomorphic(a, b);
}

// Similarity: isomorphism of the aggregated relations, border to border.
inline bool similar(const CubicalComplex& c1, const CubicalComplex& c2) {
  return similar_relations(aggregate_adjacency(unite(c1)), aggregate_adjacency(unite(c2)));
}

}  // namespace universe
