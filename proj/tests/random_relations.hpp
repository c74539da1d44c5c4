#pragma once

// Random relational conditions with a direct truth model, plus a few fixed
// unary relations over plain integers.

#include <functional>
#include <map>
#include <random>
#include <string>
#include <vector>

#include "oracles.hpp"

namespace randrel {

constexpr std::int64_t kBound = 6;

using Env = std::map<int, std::int64_t>;

struct Gen {
  std::string text;
  std::function<bool(const Env&)> truth;
};

// Random condition text with a direct truth model; quantifiers range over 1..kBound.
inline Gen random_relation(std::mt19937& rng, int depth, int vars) {
  auto slot = [&]() -> std::pair<std::string, std::function<std::int64_t(const Env&)>> {
    if (vars > 0 && rng() % 2) {
      int v = 1 + static_cast<int>(rng() % static_cast<unsigned>(vars));
      return {"_" + std::to_string(v), [v](const Env& e) { return e.at(v); }};
    }
    std::int64_t c = 1 + static_cast<std::int64_t>(rng() % 8);
    return {std::to_string(c), [c](const Env&) { return c; }};
  };
  unsigned k = depth <= 0 ? 0 : static_cast<unsigned>(rng() % 6);
  if (k <= 1) {
    auto [a, fa] = slot();
    auto [b, fb] = slot();
    static const char* names[] = {"eq", "lt", "gt"};
    int r = static_cast<int>(rng() % 3);
    return {std::string(names[r]) + "(" + a + ";" + b + ")", [=](const Env& e) {
              std::int64_t x = fa(e), y = fb(e);
              return r == 0 ? x == y : r == 1 ? x < y : x > y;
            }};
  }
  if (k == 2 || k == 3) {
    Gen a = random_relation(rng, depth - 1, vars), b = random_relation(rng, depth - 1, vars);
    bool conj = k == 2;
    return {std::string(conj ? "and(" : "or(") + a.text + ";" + b.text + ")",
            [=](const Env& e) { return conj ? a.truth(e) && b.truth(e) : a.truth(e) || b.truth(e); }};
  }
  if (k == 4) {
    Gen a = random_relation(rng, depth - 1, vars);
    return {"not(" + a.text + ")", [=](const Env& e) { return !a.truth(e); }};
  }
  int v = vars + 1;
  Gen body = random_relation(rng, depth - 1, v);
  bool all = rng() % 2;
  return {std::string(all ? "pi(_" : "sigma(_") + std::to_string(v) + ";" + body.text + ")", [=](const Env& e) {
            for (std::int64_t x = 1; x <= kBound; ++x) {
              Env f = e;
              f[v] = x;
              if (body.truth(f) != all) return !all;
            }
            return all;
          }};
}

struct Unary {
  const char* text;
  oracle::Rel1 truth;
};

inline std::vector<Unary> unary_relations() {
  return {{"eq(_1;3)", [](std::int64_t i) { return i == 3; }},
          {"gt(_1;4)", [](std::int64_t i) { return i > 4; }},
          {"lt(_1;3)", [](std::int64_t i) { return i < 3; }},
          {"or(eq(_1;2); eq(_1;7))", [](std::int64_t i) { return i == 2 || i == 7; }},
          {"not(eq(_1;5))", [](std::int64_t i) { return i != 5; }}};
}

}  // namespace randrel
