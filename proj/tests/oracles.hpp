#pragma once

// Independent models used as test oracles. None of them touches the
// library's graph or complex machinery.

#include <algorithm>
#include <cstdint>
#include <functional>
#include <map>
#include <set>
#include <string>
#include <vector>

#include "reference.hpp"

namespace oracle {

using reference::grzegorczyk;
using reference::iterate;
using reference::linear_scan;
using reference::MutableTree;

// --- relations over plain integers ------------------------------------------

using Rel1 = std::function<bool(std::int64_t)>;

// R(k) or ... or R(k+n-1)
inline bool window_or(const Rel1& r, std::int64_t k, std::int64_t n) {
  for (std::int64_t i = k; i < k + n; ++i)
    if (r(i)) return true;
  return false;
}

inline bool window_and(const Rel1& r, std::int64_t k, std::int64_t n) {
  for (std::int64_t i = k; i < k + n; ++i)
    if (!r(i)) return false;
  return true;
}

// --- grids: recursive flood fill, face adjacency, black frame ---------------

struct Analysis {
  int white = 0, black = 0;
  std::set<std::pair<int, int>> edges;  // (white id, black id)
  std::vector<bool> is_white;           // per component id
  std::vector<int> label;               // per padded cell
  std::string canonical;                // empty when not a tree
};

// cells: side^dim activity flags, row-major, first axis slowest.
inline Analysis analyze(int dim, int side, const std::vector<bool>& cells) {
  const int ps = side + 2;
  int total = 1;
  for (int a = 0; a < dim; ++a) total *= ps;
  auto coords = [&](int f) {
    std::vector<int> c(dim);
    for (int a = dim - 1; a >= 0; --a) {
      c[a] = f % ps;
      f /= ps;
    }
    return c;
  };
  auto flat = [&](const std::vector<int>& c) {
    int f = 0;
    for (int a = 0; a < dim; ++a) f = f * ps + c[a];
    return f;
  };
  std::vector<char> white(total, 0);
  for (int f = 0; f < total; ++f) {
    auto c = coords(f);
    bool inside = std::all_of(c.begin(), c.end(), [&](int x) { return x >= 1 && x <= side; });
    if (!inside) continue;
    int g = 0;
    for (int a = 0; a < dim; ++a) g = g * side + (c[a] - 1);
    white[f] = cells[g] ? 1 : 0;
  }
  Analysis r;
  r.label.assign(total, -1);
  std::function<void(int, int)> fill = [&](int f, int id) {
    r.label[f] = id;
    auto c = coords(f);
    for (int a = 0; a < dim; ++a)
      for (int d : {-1, 1}) {
        auto n = c;
        n[a] += d;
        if (n[a] < 0 || n[a] >= ps) continue;
        int g = flat(n);
        if (r.label[g] < 0 && white[g] == white[f]) fill(g, id);
      }
  };
  int next = 0;
  for (int f = 0; f < total; ++f)
    if (r.label[f] < 0) {
      r.is_white.push_back(white[f] != 0);
      (white[f] ? r.white : r.black)++;
      fill(f, next++);
    }
  for (int f = 0; f < total; ++f) {
    auto c = coords(f);
    for (int a = 0; a < dim; ++a) {
      if (c[a] + 1 >= ps) continue;
      auto n = c;
      n[a]++;
      int x = r.label[f], y = r.label[flat(n)];
      if (r.is_white[x] == r.is_white[y]) continue;
      if (!r.is_white[x]) std::swap(x, y);
      r.edges.insert({x, y});
    }
  }
  // tree iff connected with components - 1 edges; root at the frame (id 0)
  if (static_cast<int>(r.edges.size()) + 1 == next) {
    std::vector<std::vector<int>> adj(next);
    for (auto [w, b] : r.edges) {
      adj[w].push_back(b);
      adj[b].push_back(w);
    }
    std::vector<bool> seen(next, false);
    std::function<std::string(int)> enc = [&](int v) {
      seen[v] = true;
      std::vector<std::string> kids;
      for (int u : adj[v])
        if (!seen[u]) kids.push_back(enc(u));
      std::sort(kids.begin(), kids.end());
      std::string s = r.is_white[v] ? "W(" : "B(";
      for (auto& k : kids) s += k;
      return s + ")";
    };
    std::string s = enc(0);
    if (std::all_of(seen.begin(), seen.end(), [](bool b) { return b; })) r.canonical = s;
  }
  return r;
}

inline Analysis analyze_rows(const std::vector<std::string>& rows) {
  std::vector<bool> cells;
  for (const auto& row : rows)
    for (char ch : row) cells.push_back(ch == '#');
  return analyze(2, static_cast<int>(rows.size()), cells);
}

}  // namespace oracle
